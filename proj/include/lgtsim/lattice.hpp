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

#ifndef LGTSIM_LATTICE_HPP
#define LGTSIM_LATTICE_HPP

#include <array>
#include <string>
#include <vector>

namespace lgt {

/// Link between vertex `base` and its neighbour in direction `dir` (0-based).
struct Link {
    int base = 0;
    int dir = 0;
};

/// Elementary plaquette spanned by directions k < l at `base`.
struct Plaquette {
    int base = 0;
    int k = 0;
    int l = 1;
    /// Index of the (k, l) plane: 0 for (1,2), 1 for (1,3), 2 for (2,3) in 1-based naming.
    int plane() const;
    /// Links in trace order: (x,k), (x+k,l), (x+l,k), (x,l).
    std::array<int, 4> links{};
};

/// Hypercubic lattice with open boundaries in d = 1..3 dimensions.
/// Vertices are ordered lexicographically with the first coordinate fastest; links are ordered by base vertex,
/// then direction; plaquettes by base vertex, then plane.
class Lattice {
   public:
    explicit Lattice(std::vector<int> extents);
    static Lattice cubic(int dim, int length);

    int dim() const {
        return (int)extents_.size();
    }
    const std::vector<int> &extents() const {
        return extents_;
    }
    int num_vertices() const {
        return num_vertices_;
    }
    int num_links() const {
        return (int)links_.size();
    }
    int num_plaquettes() const {
        return (int)plaquettes_.size();
    }
    int num_planes() const {
        return dim() * (dim() - 1) / 2;
    }

    std::vector<int> coords(int vertex) const;
    /// Vertex index for coordinates, or -1 when outside the lattice.
    int vertex(const std::vector<int> &coords) const;
    /// Neighbour at +step along dir, or -1 at the boundary.
    int shift(int vertex, int dir, int step = 1) const;
    /// Sum of coordinates mod 2.
    int parity(int vertex) const;

    const Link &link(int id) const;
    /// Link id for (vertex, dir), or -1 when the link leaves the lattice.
    int link_id(int vertex, int dir) const;
    const std::vector<Link> &links() const {
        return links_;
    }

    const std::vector<Plaquette> &plaquettes() const {
        return plaquettes_;
    }
    /// Plaquette id at (base, plane), or -1.
    int plaquette_id(int base, int plane) const;
    static std::pair<int, int> plane_dirs(int plane);

    /// Full unit cells: vertices x with x + sum of unit vectors inside the lattice. In d = 2 these are the
    /// plaquettes viewed as degenerate cubes; in d = 1 there are none.
    std::vector<int> cubes() const;
    /// Vertices that anchor at least one link or plaquette. Every link (x,k) and plaquette based at x is served by
    /// the ancilla of the cell anchored at x, which may extend past the open boundary.
    std::vector<int> anchors() const;
    /// Roles 1..9 of a full cube (index 0 unused). In d = 2 only roles 1..4 are set; the rest are -1.
    std::array<int, 10> cube_link_roles(int cube) const;
    /// The four links of the role set hosting `plane` at `anchor`, in isometry order (a, b, c, d) such that the
    /// ancilla ends in g_a g_b g_c^-1 g_d^-1: roles (1,2,3,4), (5,6,7,1) or (5,8,9,4).
    std::array<int, 4> plane_role_links(int anchor, int plane) const;

    std::string describe_vertex(int vertex) const;

   private:
    std::vector<int> extents_;
    std::vector<int> strides_;
    int num_vertices_ = 0;
    std::vector<Link> links_;
    std::vector<int> link_index_;
    std::vector<Plaquette> plaquettes_;
    std::vector<int> plaquette_index_;
};

}  // namespace lgt

#endif
