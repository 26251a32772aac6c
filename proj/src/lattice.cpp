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

#include "lgtsim/lattice.hpp"

#include <algorithm>

#include "lgtsim/error.hpp"

namespace lgt {

int Plaquette::plane() const {
    return k + l - 1;
}

Lattice::Lattice(std::vector<int> extents) : extents_(std::move(extents)) {
    require(dim() >= 1 && dim() <= 3, ErrorCode::kUnsupported, "lattice dimension must be 1, 2 or 3");
    long long count = 1;
    for (int e : extents_) {
        require(e >= 2, ErrorCode::kInvalidArgument, "every lattice extent must be >= 2");
        strides_.push_back((int)count);
        count *= e;
        require(count <= (1 << 20), ErrorCode::kResourceLimit, "lattice has too many vertices");
    }
    num_vertices_ = (int)count;

    link_index_.assign(num_vertices_ * dim(), -1);
    for (int v = 0; v < num_vertices_; v++) {
        for (int k = 0; k < dim(); k++) {
            if (shift(v, k) >= 0) {
                link_index_[v * dim() + k] = (int)links_.size();
                links_.push_back({v, k});
            }
        }
    }

    plaquette_index_.assign(num_vertices_ * std::max(1, num_planes()), -1);
    for (int v = 0; v < num_vertices_; v++) {
        for (int k = 0; k < dim(); k++) {
            for (int l = k + 1; l < dim(); l++) {
                int xk = shift(v, k), xl = shift(v, l);
                if (xk < 0 || xl < 0) {
                    continue;
                }
                Plaquette p;
                p.base = v;
                p.k = k;
                p.l = l;
                p.links = {link_id(v, k), link_id(xk, l), link_id(xl, k), link_id(v, l)};
                plaquette_index_[v * num_planes() + p.plane()] = (int)plaquettes_.size();
                plaquettes_.push_back(p);
            }
        }
    }
}

Lattice Lattice::cubic(int dim, int length) {
    require(dim >= 1 && dim <= 3, ErrorCode::kUnsupported, "lattice dimension must be 1, 2 or 3");
    return Lattice(std::vector<int>(dim, length));
}

std::vector<int> Lattice::coords(int vertex) const {
    require(vertex >= 0 && vertex < num_vertices_, ErrorCode::kOutOfRange, "vertex out of range");
    std::vector<int> c(dim());
    for (int k = 0; k < dim(); k++) {
        c[k] = vertex % extents_[k];
        vertex /= extents_[k];
    }
    return c;
}

int Lattice::vertex(const std::vector<int> &c) const {
    require((int)c.size() == dim(), ErrorCode::kInvalidArgument, "coordinate rank does not match lattice");
    int v = 0;
    for (int k = 0; k < dim(); k++) {
        if (c[k] < 0 || c[k] >= extents_[k]) {
            return -1;
        }
        v += c[k] * strides_[k];
    }
    return v;
}

int Lattice::shift(int vertex, int dir, int step) const {
    require(vertex >= 0 && vertex < num_vertices_, ErrorCode::kOutOfRange, "vertex out of range");
    require(dir >= 0 && dir < dim(), ErrorCode::kOutOfRange, "direction out of range");
    int c = (vertex / strides_[dir]) % extents_[dir] + step;
    if (c < 0 || c >= extents_[dir]) {
        return -1;
    }
    return vertex + step * strides_[dir];
}

int Lattice::parity(int vertex) const {
    int s = 0;
    for (int c : coords(vertex)) {
        s += c;
    }
    return s % 2;
}

const Link &Lattice::link(int id) const {
    require(id >= 0 && id < num_links(), ErrorCode::kOutOfRange, "link out of range");
    return links_[id];
}

int Lattice::link_id(int vertex, int dir) const {
    if (vertex < 0 || vertex >= num_vertices_ || dir < 0 || dir >= dim()) {
        return -1;
    }
    return link_index_[vertex * dim() + dir];
}

int Lattice::plaquette_id(int base, int plane) const {
    if (base < 0 || base >= num_vertices_ || plane < 0 || plane >= num_planes()) {
        return -1;
    }
    return plaquette_index_[base * num_planes() + plane];
}

std::pair<int, int> Lattice::plane_dirs(int plane) {
    switch (plane) {
        case 0:
            return {0, 1};
        case 1:
            return {0, 2};
        case 2:
            return {1, 2};
        default:
            fail(ErrorCode::kOutOfRange, "plane index out of range");
    }
}

std::vector<int> Lattice::cubes() const {
    std::vector<int> out;
    if (dim() < 2) {
        return out;
    }
    for (int v = 0; v < num_vertices_; v++) {
        int corner = v;
        for (int k = 0; k < dim() && corner >= 0; k++) {
            corner = shift(corner, k);
        }
        if (corner >= 0) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<int> Lattice::anchors() const {
    std::vector<int> out;
    for (int v = 0; v < num_vertices_; v++) {
        for (int k = 0; k < dim(); k++) {
            if (link_id(v, k) >= 0) {
                out.push_back(v);
                break;
            }
        }
    }
    return out;
}

std::array<int, 10> Lattice::cube_link_roles(int cube) const {
    auto all = cubes();
    require(
        std::find(all.begin(), all.end(), cube) != all.end(),
        ErrorCode::kInvalidArgument,
        "cube at vertex " + std::to_string(cube) + " touches the boundary or does not exist");
    std::array<int, 10> roles;
    roles.fill(-1);
    int x = cube;
    int x1 = shift(x, 0), x2 = shift(x, 1);
    roles[1] = link_id(x, 0);
    roles[2] = link_id(x1, 1);
    roles[3] = link_id(x2, 0);
    roles[4] = link_id(x, 1);
    if (dim() == 3) {
        int x3 = shift(x, 2);
        roles[5] = link_id(x, 2);
        roles[6] = link_id(x3, 0);
        roles[7] = link_id(x1, 2);
        roles[8] = link_id(x3, 1);
        roles[9] = link_id(x2, 2);
    }
    return roles;
}

std::array<int, 4> Lattice::plane_role_links(int anchor, int plane) const {
    int pid = plaquette_id(anchor, plane);
    require(pid >= 0, ErrorCode::kInvalidArgument, "no plaquette in plane " + std::to_string(plane) + " at vertex " + std::to_string(anchor));
    const auto &p = plaquettes_[pid];
    // p.links = (x,k), (x+k,l), (x+l,k), (x,l).
    if (plane == 0) {
        return p.links;
    }
    // Planes with the third direction use roles (5,6,7,1) and (5,8,9,4): the reversed orientation.
    return {p.links[3], p.links[2], p.links[1], p.links[0]};
}

std::string Lattice::describe_vertex(int vertex) const {
    auto c = coords(vertex);
    std::string s = "(";
    for (size_t i = 0; i < c.size(); i++) {
        s += (i ? "," : "") + std::to_string(c[i]);
    }
    return s + ")";
}

}  // namespace lgt
