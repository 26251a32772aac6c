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


#ifndef LGTSIM_VERIFY_HPP
#define LGTSIM_VERIFY_HPP

#include <string>
#include <vector>

#include "lgtsim/group.hpp"

namespace lgt {

struct Check {
    enum class Kind { kAtMost, kAtLeast, kNear };
    std::string suite;
    std::string name;
    double value = 0;
    double tolerance = 0;
    /// Expected value for kNear.
    double target = 0;
    Kind kind = Kind::kAtMost;
    bool passed = false;
};

Check make_check(std::string suite, std::string name, double value, double tolerance, Check::Kind kind = Check::Kind::kAtMost,
                 double target = 0);

struct VerifyOptions {
    /// Fault injected into the fixtures: "" or "theta-sign" (D3 composition without the reflection sign).
    std::string fault;
    uint64_t seed = 7;
};

/// Suites: group, gauge, stator, trotter, atomic, all.
std::vector<std::string> suite_names();
std::vector<Check> run_suite(const std::string &suite, const VerifyOptions &options = {});

/// Dihedral D3 used by the fixtures, with the requested fault applied.
GroupSpec fixture_dihedral3(const VerifyOptions &options);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace lgt

#endif
