#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace iwp {

struct DisconnectedCover : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAutomorphism : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WrongOrder : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Perm = std::vector<int>;

// Map on an oriented closed surface in the dart-permutation model: sigma
// rotates darts counterclockwise around their origin vertex, alpha swaps the
// two darts of each edge.  Vertices, edges and faces are the orbits of sigma,
// alpha and sigma∘alpha respectively.
struct CombMap {
  int n_darts = 0;
  Perm sigma;
  Perm alpha;
};

std::vector<std::vector<int>> permutation_orbits(const Perm& p);
Perm inverse_permutation(const Perm& p);

// sigma ∘ alpha (apply alpha first); its orbits are the faces.
Perm face_permutation(const CombMap& m);

int n_vertices(const CombMap& m);
int n_edges(const CombMap& m);
int n_faces(const CombMap& m);
int euler_characteristic(const CombMap& m);
int genus(const CombMap& m);
bool is_connected(const CombMap& m);
// Structural sanity: permutations are bijections, alpha a fixed-point-free
// involution.
bool is_valid(const CombMap& m);

// Doubled triangle: 3 vertices, 3 edges, 2 faces on the sphere.
CombMap build_base_sphere();

// N-fold cyclic cover of the doubled triangle, branched over its three
// vertices with monodromy (d1, d2, d3) mod N.  Crossing the cut at vertex
// class j shifts the sheet level by dj.  Throws DisconnectedCover when the
// lifted map is not connected.
CombMap build_cyclic_cover(const CombMap& base, const std::array<int, 3>& monodromy,
                           int N);

// A CombMap together with a geometric realization.
struct PolyMap {
  CombMap map;
  std::vector<Eigen::Vector3d> vertex_pos;  // indexed by vertex id
  std::vector<int> dart_origin;             // dart -> vertex id
  std::vector<int> dart_target;             // dart -> vertex id of alpha(dart)
};

// Octahedral 3^12: four octahedral annuli (regular octahedra minus two
// opposite faces, vertices at the 1:3 points of cube edges) in mirrored unit
// cubes, taken modulo the lattice spanned by (2,0,0), (0,2,0), (1,1,1).
PolyMap build_s312();

// Regular octahedron with vertices ±e_k; handy comparison map.
PolyMap build_octahedron();

// Builds an oriented CombMap from a triangulated closed surface given as
// vertex-index triples (orientations need not be consistent on input; a
// coherent orientation is chosen by propagation).
CombMap map_from_triangles(const std::vector<std::array<int, 3>>& tris,
                           std::vector<int>* dart_origin = nullptr,
                           std::vector<int>* dart_target = nullptr);

// Dart bijection commuting with (sigma, alpha) or with (sigma^-1, alpha);
// nullopt when the maps are not isomorphic.
std::optional<Perm> is_isomorphic(const CombMap& m1, const CombMap& m2);

int automorphism_count(const CombMap& m, bool orientation_preserving_only);
std::vector<Perm> automorphisms(const CombMap& m, bool orientation_preserving_only);

// Quotient by a free order-3 automorphism; sigma and alpha descend to dart
// orbits.  Throws NotAutomorphism / WrongOrder on contract violations.
CombMap quotient_by(const CombMap& m, const Perm& a);

std::string to_json(const CombMap& m);
std::string to_dot(const CombMap& m);

}  // namespace iwp
