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

#include <algorithm>
#include <map>
#include <set>

#include "gtest/gtest.h"
#include "lgtsim/error.hpp"
#include "lgtsim/lattice.hpp"

using namespace lgt;

namespace {

long long link_count_formula(const std::vector<int> &ext) {
    long long total = 0;
    for (size_t k = 0; k < ext.size(); k++) {
        long long term = ext[k] - 1;
        for (size_t j = 0; j < ext.size(); j++) {
            if (j != k) {
                term *= ext[j];
            }
        }
        total += term;
    }
    return total;
}

}  // namespace

TEST(lattice, counts_match_brute_force) {
    for (auto ext : std::vector<std::vector<int>>{{2}, {5}, {2, 2}, {3, 2}, {3, 3}, {2, 2, 2}, {3, 2, 4}}) {
        Lattice lat(ext);
        EXPECT_EQ(lat.num_links(), link_count_formula(ext));
        // Brute force: every ordered pair of vertices at unit distance.
        int pairs = 0, squares = 0;
        for (int v = 0; v < lat.num_vertices(); v++) {
            auto c = lat.coords(v);
            for (int k = 0; k < lat.dim(); k++) {
                auto ck = c;
                ck[k]++;
                pairs += lat.vertex(ck) >= 0;
                for (int l = k + 1; l < lat.dim(); l++) {
                    auto ckl = ck;
                    ckl[l]++;
                    squares += lat.vertex(ckl) >= 0;
                }
            }
        }
        EXPECT_EQ(lat.num_links(), pairs);
        EXPECT_EQ(lat.num_plaquettes(), squares);
    }
    Lattice cube = Lattice::cubic(3, 2);
    EXPECT_EQ(cube.num_links(), 12);
    EXPECT_EQ(cube.num_plaquettes(), 6);
    EXPECT_EQ(cube.cubes(), std::vector<int>{0});
    EXPECT_EQ(Lattice::cubic(3, 3).num_links(), 3 * 2 * 9);
}

TEST(lattice, vertex_order_and_parity) {
    Lattice lat = Lattice::cubic(3, 2);
    EXPECT_EQ(lat.coords(1), (std::vector<int>{1, 0, 0}));
    EXPECT_EQ(lat.coords(2), (std::vector<int>{0, 1, 0}));
    EXPECT_EQ(lat.coords(4), (std::vector<int>{0, 0, 1}));
    EXPECT_EQ(lat.parity(0), 0);
    EXPECT_EQ(lat.parity(3), 0);
    EXPECT_EQ(lat.parity(7), 1);
    EXPECT_EQ(lat.vertex({2, 0, 0}), -1);
    EXPECT_EQ(lat.shift(0, 2), 4);
    EXPECT_EQ(lat.shift(4, 2), -1);
    EXPECT_THROW(Lattice({2, 2, 2, 2}), Error);
    EXPECT_THROW(Lattice({1, 2}), Error);
}

TEST(lattice, cube_roles) {
    Lattice lat = Lattice::cubic(3, 2);
    auto roles = lat.cube_link_roles(0);
    auto link_at = [&](std::vector<int> c, int dir) { return lat.link_id(lat.vertex(c), dir); };
    EXPECT_EQ(roles[1], link_at({0, 0, 0}, 0));
    EXPECT_EQ(roles[2], link_at({1, 0, 0}, 1));
    EXPECT_EQ(roles[3], link_at({0, 1, 0}, 0));
    EXPECT_EQ(roles[4], link_at({0, 0, 0}, 1));
    EXPECT_EQ(roles[5], link_at({0, 0, 0}, 2));
    EXPECT_EQ(roles[6], link_at({0, 0, 1}, 0));
    EXPECT_EQ(roles[7], link_at({1, 0, 0}, 2));
    EXPECT_EQ(roles[8], link_at({0, 0, 1}, 1));
    EXPECT_EQ(roles[9], link_at({0, 1, 0}, 2));
    std::set<int> distinct(roles.begin() + 1, roles.end());
    EXPECT_EQ(distinct.size(), 9u);

    // Role sets of the three planes: roles 1, 4 and 5 are shared by two plaquettes each.
    std::map<int, int> uses;
    for (int plane = 0; plane < 3; plane++) {
        for (int l : lat.plane_role_links(0, plane)) {
            uses[l]++;
        }
    }
    EXPECT_EQ(uses[roles[1]], 2);
    EXPECT_EQ(uses[roles[4]], 2);
    EXPECT_EQ(uses[roles[5]], 2);
    EXPECT_EQ(uses[roles[2]], 1);
    auto p2 = lat.plane_role_links(0, 1);
    EXPECT_EQ(p2, (std::array<int, 4>{roles[5], roles[6], roles[7], roles[1]}));
    auto p3 = lat.plane_role_links(0, 2);
    EXPECT_EQ(p3, (std::array<int, 4>{roles[5], roles[8], roles[9], roles[4]}));

    EXPECT_THROW(lat.cube_link_roles(1), Error);
    Lattice flat = Lattice::cubic(2, 3);
    auto r2 = flat.cube_link_roles(4);
    EXPECT_EQ(r2[5], -1);
    EXPECT_EQ(flat.cubes().size(), 4u);
    EXPECT_THROW(flat.plane_role_links(2, 0), Error);
}

TEST(lattice, anchors_cover_every_link_base) {
    Lattice lat = Lattice::cubic(3, 2);
    auto anchors = lat.anchors();
    EXPECT_EQ(anchors.size(), 7u);
    for (const auto &l : lat.links()) {
        EXPECT_TRUE(std::find(anchors.begin(), anchors.end(), l.base) != anchors.end());
    }
    for (const auto &p : lat.plaquettes()) {
        EXPECT_TRUE(std::find(anchors.begin(), anchors.end(), p.base) != anchors.end());
    }
}
