// Copyright 2026 The lgtsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LGTSIM_ERROR_HPP
#define LGTSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lgt {

enum class ErrorCode {
    kInvalidArgument = 1,
    kOutOfRange = 2,
    kUnsupported = 3,
    kResourceLimit = 4,
    kAssertionFailed = 5,
    kIo = 6,
};

/// Exception type thrown by every module. The code maps 1:1 onto the C API status values.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message) : std::runtime_error(message), code_(code) {
    }
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string &message) {
    if (!condition) {
        throw Error(code, message);
    }
}

}  // namespace lgt

#endif
