#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <set>

#include "iwp/combmaps.hpp"

using namespace iwp;

namespace {

// Order of a permutation by repeated application.
int perm_order(const Perm& p) {
  Perm q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[i] = int(i);
  for (int ord = 1; ord <= int(p.size()) + 1; ++ord) {
    bool id = true;
    for (size_t i = 0; i < p.size(); ++i) {
      q[i] = p[q[i]];
      if (q[i] != int(i)) id = false;
    }
    if (id) return ord;
  }
  return -1;
}

Perm compose(const Perm& f, const Perm& g) {  // f after g
  Perm h(g.size());
  for (size_t i = 0; i < g.size(); ++i) h[i] = f[g[i]];
  return h;
}

// Sizes of the sigma-orbit fibers of the (d1,d2,d3) cover over the three base
// vertices A={0,5}, B={1,2}, C={3,4}, assuming dart ids j*N+k.
std::array<int, 3> fiber_sizes(const CombMap& cover, int N) {
  std::array<int, 3> fib{0, 0, 0};
  for (const auto& orb : permutation_orbits(cover.sigma)) {
    int base_dart = orb.front() / N;
    int cls = (base_dart == 0 || base_dart == 5) ? 0
              : (base_dart == 1 || base_dart == 2) ? 1 : 2;
    ++fib[cls];
  }
  return fib;
}

}  // namespace

TEST_CASE("doubled triangle: 3 vertices, 3 edges, 2 faces on the sphere") {
  CombMap m = build_base_sphere();
  CHECK(is_valid(m));
  CHECK(is_connected(m));
  CHECK(n_vertices(m) == 3);
  CHECK(n_edges(m) == 3);
  CHECK(n_faces(m) == 2);
  CHECK(euler_characteristic(m) == 2);
  CHECK(genus(m) == 0);
  for (const auto& f : permutation_orbits(face_permutation(m)))
    CHECK(f.size() == 3);
}

TEST_CASE("cyclic cover (1,4,7;12): counts, Euler characteristic, genus") {
  CombMap cover = build_cyclic_cover(build_base_sphere(), {1, 4, 7}, 12);
  CHECK(is_valid(cover));
  CHECK(is_connected(cover));
  CHECK(cover.n_darts == 72);
  CHECK(n_faces(cover) == 24);
  CHECK(n_edges(cover) == 36);
  CHECK(n_vertices(cover) == 6);
  CHECK(euler_characteristic(cover) == -6);
  CHECK(genus(cover) == 4);
  for (const auto& f : permutation_orbits(face_permutation(cover)))
    CHECK(f.size() == 3);  // all faces are triangles

  auto fib = fiber_sizes(cover, 12);
  CHECK(fib[0] == 1);
  CHECK(fib[1] == 4);
  CHECK(fib[2] == 1);

  // Riemann-Hurwitz oracle: chi = N*chi(sphere) - sum over branch points of
  // (N - fiber size).
  int deficiency = (12 - fib[0]) + (12 - fib[1]) + (12 - fib[2]);
  CHECK(euler_characteristic(cover) == 12 * 2 - deficiency);
}

TEST_CASE("trivial monodromy gives a disconnected cover") {
  CHECK_THROWS_AS(build_cyclic_cover(build_base_sphere(), {0, 0, 0}, 2),
                  DisconnectedCover);
}

TEST_CASE("octahedral 3^12: counts and genus") {
  PolyMap pm = build_s312();
  CHECK(is_valid(pm.map));
  CHECK(is_connected(pm.map));
  CHECK(pm.map.n_darts == 72);
  CHECK(n_faces(pm.map) == 24);
  CHECK(n_edges(pm.map) == 36);
  CHECK(n_vertices(pm.map) == 6);
  CHECK(genus(pm.map) == 4);
}

TEST_CASE("octahedral 3^12: regular octahedra from the 1:3 subdivision") {
  PolyMap pm = build_s312();
  // Every edge of the complex is an octahedron edge; the 1:3 proportion makes
  // them all equal, of squared length 9/8.
  for (int d = 0; d < pm.map.n_darts; ++d) {
    Eigen::Vector3d a = pm.vertex_pos[pm.dart_origin[d]];
    Eigen::Vector3d b = pm.vertex_pos[pm.dart_target[d]];
    // edges may wrap around the lattice; compare against the nearest
    // translate of b
    double best = 1e100;
    for (int i = -1; i <= 1; ++i)
      for (int j = -1; j <= 1; ++j)
        for (int k = -1; k <= 1; ++k) {
          Eigen::Vector3d t = b + i * Eigen::Vector3d(2, 0, 0) +
                              j * Eigen::Vector3d(0, 2, 0) +
                              k * Eigen::Vector3d(1, 1, 1);
          best = std::min(best, (t - a).squaredNorm());
        }
    CHECK(best == doctest::Approx(9.0 / 8.0).epsilon(1e-12));
  }
  // Each vertex sits at a 1:3 point of a cube edge: exactly one coordinate is
  // a quarter off an integer.
  for (const auto& p : pm.vertex_pos) {
    int off = 0;
    for (int c = 0; c < 3; ++c) {
      double frac = p[c] - std::floor(p[c]);
      if (std::abs(frac - 0.25) < 1e-14 || std::abs(frac - 0.75) < 1e-14) ++off;
    }
    CHECK(off == 1);
  }
}

TEST_CASE("octahedral 3^12: twelve triangles at every vertex") {
  PolyMap pm = build_s312();
  for (const auto& orb : permutation_orbits(pm.map.sigma)) CHECK(orb.size() == 12);
}

TEST_CASE("self-isomorphism is found and the raw cover differs from 3^12") {
  CombMap s312 = build_s312().map;
  auto self = is_isomorphic(s312, s312);
  REQUIRE(self.has_value());
  // The first seed is the identity.
  for (int d = 0; d < s312.n_darts; ++d) CHECK((*self)[d] == d);

  // The un-retiled (1,4,7;12) triangle map has a valence-24 vertex, so no
  // bijection exists despite the equal dart counts.
  CombMap cover = build_cyclic_cover(build_base_sphere(), {1, 4, 7}, 12);
  CHECK(cover.n_darts == s312.n_darts);
  CHECK(!is_isomorphic(cover, s312).has_value());
}

TEST_CASE("size mismatch short-circuits isomorphism") {
  CombMap cover = build_cyclic_cover(build_base_sphere(), {1, 4, 7}, 12);
  CombMap oct = build_octahedron().map;
  CHECK(!is_isomorphic(cover, oct).has_value());
}

TEST_CASE("octahedron map: classical symmetry counts") {
  CombMap oct = build_octahedron().map;
  CHECK(genus(oct) == 0);
  CHECK(automorphism_count(oct, true) == 24);
  CHECK(automorphism_count(oct, false) == 48);
}

TEST_CASE("octahedral 3^12 is pseudo-Platonic: 72 and 144 automorphisms") {
  CombMap s312 = build_s312().map;
  int op = automorphism_count(s312, true);
  CHECK(op == 72);
  CHECK(automorphism_count(s312, false) == 144);
  // Dart-transitivity: the orientation-preserving group is exactly as large
  // as the dart set, so any (vertex, adjacent edge) flag maps to any other.
  CHECK(op == s312.n_darts);
}

TEST_CASE("quotient by a free order-3 automorphism is the octahedron") {
  CombMap s312 = build_s312().map;
  auto auts = automorphisms(s312, true);
  REQUIRE(auts.size() == 72);

  // Take a vertex-rotation generator of order 12 and use its 4th power, the
  // order-3 element of that stabilizer.
  Perm chosen;
  for (const auto& a : auts) {
    if (perm_order(a) != 12) continue;
    Perm a4 = compose(compose(a, a), compose(a, a));
    bool free_action = true;
    for (size_t d = 0; d < a4.size(); ++d)
      if (a4[d] == int(d)) free_action = false;
    if (free_action) {
      chosen = a4;
      break;
    }
  }
  REQUIRE(!chosen.empty());
  CHECK(perm_order(chosen) == 3);

  CombMap q = quotient_by(s312, chosen);
  CHECK(q.n_darts == 24);
  CHECK(n_faces(q) == 8);
  CHECK(n_edges(q) == 12);
  CHECK(n_vertices(q) == 6);
  CHECK(genus(q) == 0);
  CHECK(is_isomorphic(q, build_octahedron().map).has_value());
}

TEST_CASE("quotient contract violations") {
  CombMap s312 = build_s312().map;
  Perm id(s312.n_darts);
  for (int d = 0; d < s312.n_darts; ++d) id[d] = d;
  CHECK_THROWS_AS(quotient_by(s312, id), WrongOrder);

  // An order-2 automorphism is rejected.
  for (const auto& a : automorphisms(s312, true))
    if (perm_order(a) == 2) {
      CHECK_THROWS_AS(quotient_by(s312, a), WrongOrder);
      break;
    }

  // A non-commuting permutation is rejected.
  Perm bad = id;
  std::swap(bad[0], bad[1]);
  CHECK_THROWS_AS(quotient_by(s312, bad), NotAutomorphism);
}

TEST_CASE("json and dot dumps") {
  CombMap m = build_base_sphere();
  auto j = nlohmann::json::parse(to_json(m));
  CHECK(j["n_darts"] == 6);
  CHECK(j["sigma"].size() == 6);
  CHECK(j["alpha"].size() == 6);
  std::string dot = to_dot(m);
  CHECK(dot.find("graph map") != std::string::npos);
  CHECK(dot.find("v2") != std::string::npos);
}
