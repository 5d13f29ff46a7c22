#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <set>

#include "iwp/surface_mesh.hpp"

using namespace iwp;

namespace {

constexpr double kPi = 3.14159265358979323846;

const Mesh& patch0(int n) {
  static std::map<int, Mesh> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, dodecagon_patch(BonnetAngle::radians(0.0), n)).first;
  return it->second;
}

// Angle-weighted vertex normals (pseudo-normals): each incident face normal
// weighted by the interior angle at the vertex.
std::vector<Eigen::Vector3d> vertex_normals(const Mesh& m) {
  std::vector<Eigen::Vector3d> vn(m.vertices.size(), Eigen::Vector3d::Zero());
  for (const auto& t : m.triangles) {
    Eigen::Vector3d nrm = (m.vertices[t[1]] - m.vertices[t[0]])
                              .cross(m.vertices[t[2]] - m.vertices[t[0]])
                              .normalized();
    for (int i = 0; i < 3; ++i) {
      Eigen::Vector3d e1 = m.vertices[t[(i + 1) % 3]] - m.vertices[t[i]];
      Eigen::Vector3d e2 = m.vertices[t[(i + 2) % 3]] - m.vertices[t[i]];
      double ang =
          std::acos(std::clamp(e1.normalized().dot(e2.normalized()), -1.0, 1.0));
      vn[t[i]] += ang * nrm;
    }
  }
  for (auto& n : vn) n.normalize();
  return vn;
}

// Worst angle between discrete and analytic normals over interior vertices.
double worst_normal_angle(const Mesh& m) {
  std::vector<char> boundary(m.vertices.size(), 0);
  for (const auto& arc : m.boundary_arcs)
    for (int v : arc) boundary[v] = 1;
  auto vn = vertex_normals(m);
  double worst = 0.0;
  for (size_t i = 0; i < m.vertices.size(); ++i) {
    if (boundary[i]) continue;
    Eigen::Vector3d ref = analytic_normal(m.t_param[i]);
    double a = std::acos(std::clamp(std::abs(vn[i].dot(ref)), 0.0, 1.0));
    worst = std::max(worst, a);
  }
  return worst;
}

// Cotangent-Laplacian mean-curvature proxy: |sum cot-weights * (p_j - p_i)|
// over twice the barycentric vertex area, normalized by diameter.  Vanishes
// in the limit on a minimal surface.
double worst_mean_curvature(const Mesh& m) {
  size_t nv = m.vertices.size();
  std::vector<Eigen::Vector3d> lap(nv, Eigen::Vector3d::Zero());
  std::vector<double> area(nv, 0.0);
  std::vector<char> boundary(nv, 0);
  for (const auto& arc : m.boundary_arcs)
    for (int v : arc) boundary[v] = 1;
  for (const auto& t : m.triangles) {
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3], c = t[(i + 2) % 3];
      Eigen::Vector3d u = m.vertices[b] - m.vertices[a];
      Eigen::Vector3d v = m.vertices[c] - m.vertices[a];
      double cot = u.dot(v) / u.cross(v).norm();
      lap[b] += 0.5 * cot * (m.vertices[c] - m.vertices[b]);
      lap[c] += 0.5 * cot * (m.vertices[b] - m.vertices[c]);
      area[a] += u.cross(v).norm() / 6.0;
    }
  }
  double worst = 0.0;
  for (size_t i = 0; i < nv; ++i)
    if (!boundary[i] && area[i] > 0.0)
      worst = std::max(worst, lap[i].norm() / (2.0 * area[i]));
  return worst * m.diameter();
}

double chain_straightness(const Mesh& m, const std::vector<int>& chain) {
  Eigen::Vector3d a = m.vertices[chain.front()];
  Eigen::Vector3d b = m.vertices[chain.back()];
  Eigen::Vector3d d = (b - a).normalized();
  double worst = 0.0;
  for (int v : chain) {
    Eigen::Vector3d r = m.vertices[v] - a;
    worst = std::max(worst, (r - r.dot(d) * d).norm());
  }
  return worst / (b - a).norm();
}

}  // namespace

TEST_CASE("patch combinatorics: counts, orientation, boundary coverage") {
  const int n = 8;
  const Mesh& m = patch0(n);
  CHECK(m.vertices.size() == size_t(1 + 6 * n * (n + 1)));
  CHECK(m.triangles.size() == size_t(12 * n * n));
  CHECK(m.boundary_arcs.size() == 12);
  CHECK(m.t_param.size() == m.vertices.size());
  CHECK(m.resolution == n);
  CHECK(m.domain.find("dodecagon") == 0);
  for (const auto& arc : m.boundary_arcs) CHECK(arc.size() == size_t(n + 1));

  // consistent orientation: every directed edge appears at most once, and
  // every undirected edge once (boundary) or twice in opposite directions
  std::set<std::pair<int, int>> directed;
  std::map<std::pair<int, int>, int> undirected;
  for (const auto& t : m.triangles)
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3];
      CHECK(directed.insert({a, b}).second);
      ++undirected[{std::min(a, b), std::max(a, b)}];
    }
  std::set<std::pair<int, int>> boundary_edges;
  for (const auto& [e, c] : undirected) {
    CHECK(c <= 2);
    if (c == 1) boundary_edges.insert(e);
  }
  // boundary arcs cover the boundary edges exactly
  std::set<std::pair<int, int>> arc_edges;
  for (const auto& arc : m.boundary_arcs)
    for (size_t i = 0; i + 1 < arc.size(); ++i)
      arc_edges.insert({std::min(arc[i], arc[i + 1]),
                        std::max(arc[i], arc[i + 1])});
  CHECK(arc_edges == boundary_edges);
}

TEST_CASE("corner parameters are twelfth roots of unity over the 4-cycle of branch values") {
  const Mesh& m = patch0(8);
  // corners are the endpoints shared by consecutive boundary arcs
  std::vector<int> corners;
  for (const auto& arc : m.boundary_arcs) corners.push_back(arc.front());
  CHECK(corners.size() == 12);
  for (int k = 0; k < 12; ++k) {
    cplx t = m.t_param[corners[k]];
    CHECK(std::abs(std::pow(t, 12) - 1.0) < 1e-12);
    // Gauss map value z = t^-3 cycles through 1, -i, -1, i
    cplx z = 1.0 / std::pow(t, 3);
    cplx expected = std::exp(cplx(0.0, -kPi / 2.0 * double(k % 4)));
    // corners are in cyclic order, up to the starting corner's phase
    cplx z0 = 1.0 / std::pow(m.t_param[corners[0]], 3);
    CHECK(std::abs(z - z0 * expected) < 1e-12);
  }
}

TEST_CASE("theta + pi gives the point reflection through the base point") {
  const int n = 4;
  const Mesh& m0 = patch0(n);
  Mesh mpi = dodecagon_patch(BonnetAngle::radians(kPi), n);
  REQUIRE(mpi.vertices.size() == m0.vertices.size());
  double worst = 0.0;
  for (size_t i = 0; i < m0.vertices.size(); ++i)
    worst = std::max(worst, (mpi.vertices[i] + m0.vertices[i]).norm());
  CHECK(worst < 1e-9 * m0.diameter());
}

TEST_CASE("edge lengths follow the conformal factor |Phi|/sqrt(2)") {
  const int n = 16;
  const Mesh& m = patch0(n);
  std::set<std::pair<int, int>> edges;
  for (const auto& t : m.triangles)
    for (int i = 0; i < 3; ++i)
      edges.insert({std::min(t[i], t[(i + 1) % 3]),
                    std::max(t[i], t[(i + 1) % 3])});
  int checked = 0;
  for (const auto& [a, b] : edges) {
    cplx ta = m.t_param[a], tb = m.t_param[b];
    cplx mid = 0.5 * (ta + tb);
    if (std::abs(mid) > 0.8) continue;  // keep clear of the boundary blow-up
    double predicted = dodecagon_integrand(m.theta, mid).norm() / std::sqrt(2.0) *
                       std::abs(tb - ta);
    double actual = (m.vertices[a] - m.vertices[b]).norm();
    CHECK(std::abs(actual - predicted) < 0.05 * predicted);
    ++checked;
  }
  CHECK(checked > 500);
}

TEST_CASE("vertex normals converge to the analytic Gauss map") {
  double w8 = worst_normal_angle(patch0(8));
  double w16 = worst_normal_angle(patch0(16));
  CHECK(w8 < 0.10);
  CHECK(w16 < 0.05);
  CHECK(w16 < w8);
}

TEST_CASE("discrete mean curvature decreases under refinement") {
  double h8 = worst_mean_curvature(patch0(8));
  double h16 = worst_mean_curvature(patch0(16));
  CHECK(h16 < h8);
}

TEST_CASE("resolution below 2 is rejected") {
  CHECK_THROWS_AS(dodecagon_patch(BonnetAngle::radians(0.0), 1),
                  ResolutionTooLow);
  CHECK_THROWS_AS(dodecagon_patch(BonnetAngle::radians(0.0), -3),
                  ResolutionTooLow);
}

TEST_CASE("reflection extension: identity at depth 0, growth and new arcs at depth 1") {
  const Mesh& m = patch0(6);
  Mesh e0 = extend_by_reflections(m, 0);
  CHECK(e0.vertices.size() == m.vertices.size());
  CHECK(e0.triangles.size() == m.triangles.size());

  Mesh e1 = extend_by_reflections(m, 1);
  // the four planar boundary arcs of theta = 0 share a single horizontal
  // mirror plane, so depth 1 doubles the patch
  CHECK(e1.triangles.size() == 2 * m.triangles.size());
  // the four shared arcs (4 (n+1) vertices) are welded, not duplicated
  CHECK(e1.vertices.size() == 2 * m.vertices.size() - 4 * (m.resolution + 1));
  CHECK(e1.boundary_arcs.size() == 16);
  // the original patch survives verbatim at the front
  for (size_t i = 0; i < m.vertices.size(); ++i)
    CHECK((e1.vertices[i] - m.vertices[i]).norm() == 0.0);
  // the doubled patch is an oriented manifold: every directed edge once,
  // every undirected edge at most twice
  std::set<std::pair<int, int>> directed;
  for (const auto& t : e1.triangles)
    for (int i = 0; i < 3; ++i)
      CHECK(directed.insert({t[i], t[(i + 1) % 3]}).second);
}

TEST_CASE("reflection extension rejects a generic Bonnet angle") {
  Mesh m = dodecagon_patch(BonnetAngle::degrees(20.0), 6);
  CHECK_THROWS_AS(extend_by_reflections(m, 1), NonPlanarBoundary);
}

TEST_CASE("conjugate patch contour: straight box edges and half-diagonals") {
  StessmannReport r = stessmann_report(12);
  CHECK(r.arcs.size() == 8);
  CHECK(r.max_straightness < 1e-4);
  CHECK(r.vertical_edge > 0.0);
  CHECK(std::abs(r.box_ratio - std::sqrt(2.0) / 2.0) < 1e-3);
  // verticals and half-diagonals have the same length
  for (const auto& a : r.arcs)
    CHECK(std::abs(a.length - r.arcs[0].length) < 1e-3 * r.arcs[0].length);

  std::string j = to_json(r);
  CHECK(j.find("box_ratio") != std::string::npos);
  CHECK(j.find("vertical_edge") != std::string::npos);
}

TEST_CASE("negative control: theta = 0 boundary arcs are curved") {
  const Mesh& m = patch0(12);
  double worst = 0.0;
  for (const auto& arc : m.boundary_arcs)
    worst = std::max(worst, chain_straightness(m, arc));
  CHECK(worst > 0.05);
}

TEST_CASE("period lattice is body-centered cubic") {
  LatticeReport r = lattice_report(8);
  CHECK(r.bcc_ok);
  CHECK(r.cycles.size() >= 6);
  double det = std::abs(r.generators.determinant());
  CHECK(det > 1e-6);
  // primitive bcc generators all have length a * sqrt(3) / 2 and the cell
  // volume is a^3 / 2
  // independent shell count: a bcc lattice has 8 nearest neighbours at
  // a sqrt(3)/2 and 6 second neighbours at a, with cell volume a^3 / 2
  std::multiset<long long> shells;
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j)
      for (int k = -3; k <= 3; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        Eigen::Vector3d v = r.generators * Eigen::Vector3d(i, j, k);
        shells.insert(llround(v.norm() * 1e6));
      }
  auto it = shells.begin();
  double l1 = *it / 1e6;
  CHECK(shells.count(*it) == 8);
  it = shells.upper_bound(*it);
  double l2 = *it / 1e6;
  CHECK(shells.count(*it) == 6);
  CHECK(std::abs(l2 / l1 - 2.0 / std::sqrt(3.0)) < 1e-6);
  CHECK(std::abs(det - l2 * l2 * l2 / 2.0) < 1e-4 * det);
  CHECK((r.gram - r.generators.transpose() * r.generators).norm() < 1e-9);

  std::string j = to_json(r);
  CHECK(j.find("bcc_ok") != std::string::npos);
  CHECK(j.find("generators") != std::string::npos);
}

TEST_CASE("mesh export round-trips through OBJ and PLY") {
  const Mesh& m = patch0(3);
  for (MeshFormat f : {MeshFormat::OBJ, MeshFormat::PLY}) {
    std::string path = f == MeshFormat::OBJ ? "roundtrip_test.obj"
                                            : "roundtrip_test.ply";
    export_mesh(m, f, path);
    Mesh back = import_mesh(f, path);
    REQUIRE(back.vertices.size() == m.vertices.size());
    REQUIRE(back.triangles.size() == m.triangles.size());
    for (size_t i = 0; i < m.vertices.size(); ++i)
      CHECK((back.vertices[i] - m.vertices[i]).norm() == 0.0);  // bit exact
    for (size_t i = 0; i < m.triangles.size(); ++i)
      CHECK(back.triangles[i] == m.triangles[i]);
    std::remove(path.c_str());
  }
}
