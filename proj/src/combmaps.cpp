#include "iwp/combmaps.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace iwp {

std::vector<std::vector<int>> permutation_orbits(const Perm& p) {
  std::vector<std::vector<int>> orbits;
  std::vector<char> seen(p.size(), 0);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> orb;
    int d = int(i);
    while (!seen[d]) {
      seen[d] = 1;
      orb.push_back(d);
      d = p[d];
    }
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

Perm inverse_permutation(const Perm& p) {
  Perm inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = int(i);
  return inv;
}

Perm face_permutation(const CombMap& m) {
  Perm phi(m.n_darts);
  for (int d = 0; d < m.n_darts; ++d) phi[d] = m.sigma[m.alpha[d]];
  return phi;
}

int n_vertices(const CombMap& m) { return int(permutation_orbits(m.sigma).size()); }
int n_edges(const CombMap& m) { return int(permutation_orbits(m.alpha).size()); }
int n_faces(const CombMap& m) {
  return int(permutation_orbits(face_permutation(m)).size());
}
int euler_characteristic(const CombMap& m) {
  return n_vertices(m) - n_edges(m) + n_faces(m);
}
int genus(const CombMap& m) { return (2 - euler_characteristic(m)) / 2; }

bool is_connected(const CombMap& m) {
  if (m.n_darts == 0) return false;
  std::vector<char> seen(m.n_darts, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int d = stack.back();
    stack.pop_back();
    for (int nb : {m.sigma[d], m.alpha[d]}) {
      if (!seen[nb]) {
        seen[nb] = 1;
        ++count;
        stack.push_back(nb);
      }
    }
  }
  return count == m.n_darts;
}

bool is_valid(const CombMap& m) {
  if (int(m.sigma.size()) != m.n_darts || int(m.alpha.size()) != m.n_darts)
    return false;
  std::vector<char> hit_s(m.n_darts, 0), hit_a(m.n_darts, 0);
  for (int d = 0; d < m.n_darts; ++d) {
    if (m.sigma[d] < 0 || m.sigma[d] >= m.n_darts) return false;
    if (m.alpha[d] < 0 || m.alpha[d] >= m.n_darts) return false;
    hit_s[m.sigma[d]] = 1;
    hit_a[m.alpha[d]] = 1;
    if (m.alpha[d] == d) return false;                // fixed dart
    if (m.alpha[m.alpha[d]] != d) return false;       // not an involution
  }
  for (int d = 0; d < m.n_darts; ++d)
    if (!hit_s[d] || !hit_a[d]) return false;
  return true;
}

CombMap build_base_sphere() {
  // Vertices A, B, C; darts 0=AB, 1=BA, 2=BC, 3=CB, 4=CA, 5=AC.
  CombMap m;
  m.n_darts = 6;
  m.alpha = {1, 0, 3, 2, 5, 4};
  // Rotations (0 5) at A, (1 2) at B, (3 4) at C give the two triangular
  // faces {0,2,4} and {1,5,3} as orbits of sigma∘alpha.
  m.sigma = {5, 2, 1, 4, 3, 0};
  return m;
}

CombMap build_cyclic_cover(const CombMap& base, const std::array<int, 3>& monodromy,
                           int N) {
  // Specified for the doubled-triangle base: one cut per vertex class,
  // carried by darts 5 (at A), 1 (at B), 3 (at C).
  std::array<int, 6> shift{};
  shift[5] = monodromy[0];
  shift[1] = monodromy[1];
  shift[3] = monodromy[2];

  CombMap c;
  c.n_darts = base.n_darts * N;
  c.sigma.resize(c.n_darts);
  c.alpha.resize(c.n_darts);
  auto id = [N](int j, int k) { return j * N + ((k % N) + N) % N; };
  for (int j = 0; j < base.n_darts; ++j)
    for (int k = 0; k < N; ++k) {
      c.sigma[id(j, k)] = id(base.sigma[j], k + shift[j]);
      c.alpha[id(j, k)] = id(base.alpha[j], k);
    }
  if (!is_connected(c))
    throw DisconnectedCover("build_cyclic_cover: lifted map is disconnected");
  return c;
}

CombMap map_from_triangles(const std::vector<std::array<int, 3>>& tris,
                           std::vector<int>* dart_origin,
                           std::vector<int>* dart_target) {
  // Each undirected edge must bound exactly two triangles.
  std::map<std::pair<int, int>, std::vector<int>> edge_faces;
  for (size_t f = 0; f < tris.size(); ++f)
    for (int c = 0; c < 3; ++c) {
      int a = tris[f][c], b = tris[f][(c + 1) % 3];
      edge_faces[{std::min(a, b), std::max(a, b)}].push_back(int(f));
    }
  for (const auto& [e, fs] : edge_faces)
    if (fs.size() != 2)
      throw std::invalid_argument("map_from_triangles: surface is not closed");

  // Propagate a coherent orientation: adjacent faces must induce opposite
  // directions on their shared edge.
  std::vector<int> flip(tris.size(), -1);
  flip[0] = 0;
  std::vector<int> stack{0};
  auto oriented = [&](int f, int c) {
    int a = tris[f][c], b = tris[f][(c + 1) % 3];
    return flip[f] ? std::pair<int, int>{b, a} : std::pair<int, int>{a, b};
  };
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int c = 0; c < 3; ++c) {
      auto [a, b] = oriented(f, c);
      auto& fs = edge_faces[{std::min(a, b), std::max(a, b)}];
      int g = fs[0] == f ? fs[1] : fs[0];
      // g must traverse the edge as (b, a)
      int want = -1;
      for (int cg = 0; cg < 3; ++cg) {
        int ga = tris[g][cg], gb = tris[g][(cg + 1) % 3];
        if (ga == b && gb == a) want = 0;
        if (ga == a && gb == b) want = 1;
      }
      if (want < 0) throw std::invalid_argument("map_from_triangles: bad edge data");
      if (flip[g] < 0) {
        flip[g] = want;
        stack.push_back(g);
      } else if (flip[g] != want) {
        throw std::invalid_argument("map_from_triangles: surface not orientable");
      }
    }
  }
  for (int f : flip)
    if (f < 0)
      throw std::invalid_argument("map_from_triangles: triangulation disconnected");

  // Darts are the directed edges of the oriented triangulation.
  std::map<std::pair<int, int>, int> dart_id;
  std::vector<std::pair<int, int>> darts;
  for (size_t f = 0; f < tris.size(); ++f)
    for (int c = 0; c < 3; ++c) {
      auto e = oriented(int(f), c);
      if (dart_id.count(e))
        throw std::invalid_argument("map_from_triangles: duplicate directed edge");
      dart_id[e] = int(darts.size());
      darts.push_back(e);
    }

  CombMap m;
  m.n_darts = int(darts.size());
  m.sigma.assign(m.n_darts, -1);
  m.alpha.assign(m.n_darts, -1);
  // phi maps each boundary dart of a face to the next one around the face;
  // sigma = phi ∘ alpha then rotates darts around their origin vertex.
  Perm phi(m.n_darts);
  for (size_t f = 0; f < tris.size(); ++f)
    for (int c = 0; c < 3; ++c)
      phi[dart_id[oriented(int(f), c)]] = dart_id[oriented(int(f), (c + 1) % 3)];
  for (int d = 0; d < m.n_darts; ++d) {
    auto [a, b] = darts[d];
    m.alpha[d] = dart_id.at({b, a});
  }
  for (int d = 0; d < m.n_darts; ++d) m.sigma[d] = phi[m.alpha[d]];

  if (dart_origin) {
    dart_origin->resize(m.n_darts);
    for (int d = 0; d < m.n_darts; ++d) (*dart_origin)[d] = darts[d].first;
  }
  if (dart_target) {
    dart_target->resize(m.n_darts);
    for (int d = 0; d < m.n_darts; ++d) (*dart_target)[d] = darts[d].second;
  }
  return m;
}

namespace {

// Integer lattice point in quarter-units; canonical representative modulo the
// lattice spanned by (8,0,0), (0,8,0), (4,4,4) (quarter-units of the
// translations (2,0,0), (0,2,0), (1,1,1)).
std::array<int, 3> canonical_mod_lattice(std::array<int, 3> p) {
  int k = p[2] >= 0 ? p[2] / 4 : -((-p[2] + 3) / 4);
  p[0] -= 4 * k;
  p[1] -= 4 * k;
  p[2] -= 4 * k;
  p[0] = ((p[0] % 8) + 8) % 8;
  p[1] = ((p[1] % 8) + 8) % 8;
  return p;
}

}  // namespace

namespace {

using P3 = std::array<int, 3>;

P3 p3_add(P3 a, const P3& b) {
  for (int i = 0; i < 3; ++i) a[i] += b[i];
  return a;
}
P3 p3_sub(P3 a, const P3& b) {
  for (int i = 0; i < 3; ++i) a[i] -= b[i];
  return a;
}

// Canonical representative of the unordered edge {a, b} under simultaneous
// lattice translation of both endpoints.  The quotient surface has many edges
// joining the same vertex pair, so edges must be told apart geometrically.
std::pair<P3, P3> canonical_edge(const P3& a, const P3& b) {
  std::pair<P3, P3> best;
  bool have = false;
  for (const P3& anchor : {a, b}) {
    P3 t = p3_sub(canonical_mod_lattice(anchor), anchor);
    std::pair<P3, P3> cand = std::minmax(p3_add(a, t), p3_add(b, t));
    if (!have || cand < best) {
      best = cand;
      have = true;
    }
  }
  return best;
}

}  // namespace

PolyMap build_s312() {
  // Annulus vertices in one unit cube (quarter-units): Q_k at the 3:1 point
  // of the three edges at the origin corner, R_k mirrored at the far corner.
  const std::array<P3, 3> Q = {{{3, 0, 0}, {0, 3, 0}, {0, 0, 3}}};
  const std::array<P3, 3> R = {{{1, 4, 4}, {4, 1, 4}, {4, 4, 1}}};
  // 1-based vertex selectors: +k is Q_k, -k is R_k; the annulus keeps the six
  // mixed faces of the regular octahedron and drops Q1Q2Q3 and R1R2R3.
  const std::array<std::array<int, 3>, 6> faces = {{
      {1, 2, -3}, {2, 3, -1}, {3, 1, -2},      // Qa, Qb, Rc
      {-1, -2, 3}, {-2, -3, 1}, {-3, -1, 2},   // Ra, Rb, Qc
  }};
  // One cube per class of Z^3 modulo the lattice.
  const std::array<P3, 4> cubes = {{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  // Geometric triangles in quarter-unit integer coordinates.
  std::vector<std::array<P3, 3>> tris;
  for (const auto& cube : cubes)
    for (const auto& face : faces) {
      std::array<P3, 3> t;
      for (int c = 0; c < 3; ++c) {
        int s = face[c];
        P3 p = s > 0 ? Q[s - 1] : R[-s - 1];
        for (int ax = 0; ax < 3; ++ax)
          if (cube[ax]) p[ax] = 8 - p[ax];  // mirrored copy in the adjacent cube
        t[c] = p;
      }
      tris.push_back(t);
    }

  // Dart 3T+c stands for the side {v[c], v[c+1]} of triangle T; every side
  // pairs with exactly one side of another triangle modulo the lattice.
  const int n_tris = int(tris.size());
  const int n_darts = 3 * n_tris;
  std::map<std::pair<P3, P3>, std::vector<int>> by_edge;
  for (int t = 0; t < n_tris; ++t)
    for (int c = 0; c < 3; ++c)
      by_edge[canonical_edge(tris[t][c], tris[t][(c + 1) % 3])].push_back(3 * t + c);
  Perm alpha(n_darts, -1);
  for (const auto& [e, ds] : by_edge) {
    if (ds.size() != 2)
      throw std::logic_error("build_s312: annulus complex is not closed");
    alpha[ds[0]] = ds[1];
    alpha[ds[1]] = ds[0];
  }

  // Coherent orientation: paired sides must be traversed in opposite
  // directions after the aligning lattice translation.  flip[t] reverses
  // triangle t; agreement of directions is translation-invariant, so ordered
  // canonicalized endpoints are comparable directly.
  auto dir_key = [&](int d, bool flipped) {
    int t = d / 3, c = d % 3;
    P3 pa = tris[t][c], pb = tris[t][(c + 1) % 3];
    if (flipped) std::swap(pa, pb);
    P3 lo = std::min(pa, pb);
    P3 sh = p3_sub(canonical_mod_lattice(lo), lo);
    return std::pair<P3, P3>{p3_add(pa, sh), p3_add(pb, sh)};
  };
  std::vector<int> flip(n_tris, -1);
  flip[0] = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (int c = 0; c < 3; ++c) {
      int d = 3 * t + c, e = alpha[d];
      int te = e / 3;
      // the partner is flipped iff its unflipped traversal runs parallel to d
      int want = dir_key(e, false) == dir_key(d, flip[t] == 1) ? 1 : 0;
      if (flip[te] < 0) {
        flip[te] = want;
        stack.push_back(te);
      } else if (flip[te] != want) {
        throw std::logic_error("build_s312: complex not orientable");
      }
    }
  }

  // Face cycle: unflipped triangles advance c -> c+1, flipped ones c -> c-1.
  Perm phi(n_darts);
  for (int t = 0; t < n_tris; ++t)
    for (int c = 0; c < 3; ++c)
      phi[3 * t + c] = 3 * t + (flip[t] ? (c + 2) % 3 : (c + 1) % 3);

  PolyMap pm;
  pm.map.n_darts = n_darts;
  pm.map.alpha = alpha;
  pm.map.sigma.resize(n_darts);
  for (int d = 0; d < n_darts; ++d) pm.map.sigma[d] = phi[alpha[d]];

  std::map<P3, int> vid;
  pm.dart_origin.resize(n_darts);
  pm.dart_target.resize(n_darts);
  auto vertex_id = [&](const P3& p) {
    P3 cp = canonical_mod_lattice(p);
    auto it = vid.find(cp);
    if (it != vid.end()) return it->second;
    int id = int(pm.vertex_pos.size());
    vid[cp] = id;
    pm.vertex_pos.emplace_back(cp[0] / 4.0, cp[1] / 4.0, cp[2] / 4.0);
    return id;
  };
  for (int d = 0; d < n_darts; ++d) {
    int t = d / 3, c = d % 3;
    P3 pa = tris[t][c], pb = tris[t][(c + 1) % 3];
    if (flip[t]) std::swap(pa, pb);
    pm.dart_origin[d] = vertex_id(pa);
    pm.dart_target[d] = vertex_id(pb);
  }
  return pm;
}

PolyMap build_octahedron() {
  PolyMap pm;
  pm.vertex_pos = {Eigen::Vector3d(1, 0, 0),  Eigen::Vector3d(-1, 0, 0),
                   Eigen::Vector3d(0, 1, 0),  Eigen::Vector3d(0, -1, 0),
                   Eigen::Vector3d(0, 0, 1),  Eigen::Vector3d(0, 0, -1)};
  std::vector<std::array<int, 3>> tris = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                                          {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  pm.map = map_from_triangles(tris, &pm.dart_origin, &pm.dart_target);
  return pm;
}

namespace {

// Propagates f(d0) = t0 to a full dart bijection with f∘sigma1 = s2∘f and
// f∘alpha1 = alpha2∘f, where s2 is sigma2 or its inverse.
std::optional<Perm> try_seed(const CombMap& m1, const CombMap& m2,
                             const Perm& sigma2, int t0) {
  Perm f(m1.n_darts, -1);
  std::vector<char> used(m2.n_darts, 0);
  std::vector<int> stack;
  f[0] = t0;
  used[t0] = 1;
  stack.push_back(0);
  while (!stack.empty()) {
    int d = stack.back();
    stack.pop_back();
    const std::array<std::pair<int, int>, 2> steps = {
        std::pair<int, int>{m1.sigma[d], sigma2[f[d]]},
        std::pair<int, int>{m1.alpha[d], m2.alpha[f[d]]}};
    for (auto [d1, t1] : steps) {
      if (f[d1] < 0) {
        if (used[t1]) return std::nullopt;
        f[d1] = t1;
        used[t1] = 1;
        stack.push_back(d1);
      } else if (f[d1] != t1) {
        return std::nullopt;
      }
    }
  }
  for (int v : f)
    if (v < 0) return std::nullopt;  // m1 disconnected
  return f;
}

}  // namespace

std::optional<Perm> is_isomorphic(const CombMap& m1, const CombMap& m2) {
  if (m1.n_darts != m2.n_darts || m1.n_darts == 0) return std::nullopt;
  Perm sigma2_inv = inverse_permutation(m2.sigma);
  for (const Perm& s2 : {m2.sigma, sigma2_inv})
    for (int t0 = 0; t0 < m2.n_darts; ++t0)
      if (auto f = try_seed(m1, m2, s2, t0)) return f;
  return std::nullopt;
}

std::vector<Perm> automorphisms(const CombMap& m, bool orientation_preserving_only) {
  std::vector<Perm> out;
  for (int t0 = 0; t0 < m.n_darts; ++t0)
    if (auto f = try_seed(m, m, m.sigma, t0)) out.push_back(*f);
  if (!orientation_preserving_only) {
    Perm sigma_inv = inverse_permutation(m.sigma);
    for (int t0 = 0; t0 < m.n_darts; ++t0)
      if (auto f = try_seed(m, m, sigma_inv, t0)) out.push_back(*f);
  }
  return out;
}

int automorphism_count(const CombMap& m, bool orientation_preserving_only) {
  return int(automorphisms(m, orientation_preserving_only).size());
}

CombMap quotient_by(const CombMap& m, const Perm& a) {
  if (int(a.size()) != m.n_darts)
    throw NotAutomorphism("quotient_by: size mismatch");
  for (int d = 0; d < m.n_darts; ++d)
    if (a[m.sigma[d]] != m.sigma[a[d]] || a[m.alpha[d]] != m.alpha[a[d]])
      throw NotAutomorphism("quotient_by: does not commute with the map");
  bool identity = true;
  for (int d = 0; d < m.n_darts; ++d)
    if (a[d] != d) identity = false;
  if (identity) throw WrongOrder("quotient_by: automorphism has order 1");
  for (int d = 0; d < m.n_darts; ++d)
    if (a[a[a[d]]] != d) throw WrongOrder("quotient_by: automorphism order is not 3");
  for (int d = 0; d < m.n_darts; ++d)
    if (a[d] == d)
      throw NotAutomorphism("quotient_by: action is not free on darts");

  std::vector<int> rep(m.n_darts, -1), idx(m.n_darts, -1);
  int n = 0;
  for (int d = 0; d < m.n_darts; ++d) {
    if (rep[d] >= 0) continue;
    int orbit_min = std::min({d, a[d], a[a[d]]});
    if (idx[orbit_min] < 0) idx[orbit_min] = n++;
    for (int e : {d, a[d], a[a[d]]}) rep[e] = orbit_min;
  }
  CombMap q;
  q.n_darts = n;
  q.sigma.resize(n);
  q.alpha.resize(n);
  for (int d = 0; d < m.n_darts; ++d) {
    q.sigma[idx[rep[d]]] = idx[rep[m.sigma[d]]];
    q.alpha[idx[rep[d]]] = idx[rep[m.alpha[d]]];
  }
  return q;
}

std::string to_json(const CombMap& m) {
  nlohmann::json j;
  j["n_darts"] = m.n_darts;
  j["sigma"] = m.sigma;
  j["alpha"] = m.alpha;
  return j.dump();
}

std::string to_dot(const CombMap& m) {
  auto vorbs = permutation_orbits(m.sigma);
  std::vector<int> vert_of(m.n_darts);
  for (size_t v = 0; v < vorbs.size(); ++v)
    for (int d : vorbs[v]) vert_of[d] = int(v);
  std::ostringstream os;
  os << "graph map {\n";
  for (size_t v = 0; v < vorbs.size(); ++v)
    os << "  v" << v << " [label=\"v" << v << " (" << vorbs[v].size() << ")\"];\n";
  for (int d = 0; d < m.n_darts; ++d)
    if (d < m.alpha[d])
      os << "  v" << vert_of[d] << " -- v" << vert_of[m.alpha[d]] << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace iwp
