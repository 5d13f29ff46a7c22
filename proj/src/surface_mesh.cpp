#include "iwp/surface_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "iwp/quadrature.hpp"

namespace iwp {

namespace {

constexpr double kPi = std::numbers::pi;

cplx pow_int(cplx t, int k) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= t;
  return r;
}

bool is_unity_root12(cplx t) { return std::abs(pow_int(t, 12) - 1.0) < 1e-9; }

// ---- dodecagon vertex layout -------------------------------------------
// ring j = 0..n; ring 0 is the center, ring j has 12j vertices at angles
// pi*a/(6j).
struct Layout {
  int n;
  int offset(int j) const { return j == 0 ? 0 : 1 + 6 * j * (j - 1); }
  int id(int j, int a) const {
    if (j == 0) return 0;
    int m = 12 * j;
    return offset(j) + ((a % m) + m) % m;
  }
  cplx t(int j, int a) const {
    if (j == 0) return {0.0, 0.0};
    return std::polar(double(j) / n, kPi * a / (6.0 * j));
  }
  int n_vertices() const { return offset(n) + 12 * n; }
};

Eigen::Vector3cd phi_edge_plain(BonnetAngle th, cplx ta, cplx tb, double s) {
  return dodecagon_integrand(th, ta + (tb - ta) * s) * (tb - ta);
}

// Edge integral of the patch integrand from ta to tb; if an endpoint is one of
// the twelve boundary singularities t^12 = 1, the substitution t = tau + d s^3
// makes the integrand analytic there.
Eigen::Vector3cd edge_integral(BonnetAngle th, cplx ta, cplx tb) {
  IntegrationOptions opts;
  if (is_unity_root12(tb)) return -edge_integral(th, tb, ta);
  if (is_unity_root12(ta)) {
    // snap to the exact root and factor 1 - t^12 = -d s^3 sum_k t^k tau^(11-k)
    // to avoid catastrophic cancellation at s = 0
    int k = int(std::lround(std::arg(ta) * 6.0 / kPi));
    cplx tau = std::polar(1.0, kPi * k / 6.0);
    cplx d = tb - tau;
    cplx rot = std::polar(1.0, th.theta);
    std::function<Eigen::Vector3cd(double)> f = [&](double s) {
      cplx t = tau + d * (s * s * s);
      cplx sum = 0.0, pt = 1.0;
      for (int i = 0; i <= 11; ++i) {
        sum += pt * std::polar(1.0, kPi * k * (11 - i) / 6.0);
        pt *= t;
      }
      // c^2 = s^2 cbrt(-d sum)^2 for s > 0, so the Jacobian factor 3 s^2 d
      // cancels the s^2 and the integrand is analytic on [0, 1]
      cplx cq = cbrt_principal(-d * sum);
      cplx t3 = t * t * t, t6 = t3 * t3;
      Eigen::Vector3cd v;
      v << 3.0 * (1.0 - t6), cplx(0.0, -3.0) * (1.0 + t6), -6.0 * t3;
      return (rot * 3.0 * d / (cq * cq) * v).eval();
    };
    return adaptive_gk<Eigen::Vector3cd>(f, opts);
  }
  std::function<Eigen::Vector3cd(double)> f = [&](double s) {
    return phi_edge_plain(th, ta, tb, s);
  };
  return adaptive_gk<Eigen::Vector3cd>(f, opts);
}

struct Plane {
  Eigen::Vector3d point;
  Eigen::Vector3d normal;
};

// PCA least-squares plane of a point chain; returns the max deviation too.
std::pair<Plane, double> fit_plane(const std::vector<Eigen::Vector3d>& pts) {
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& p : pts) c += p;
  c /= double(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) cov += (p - c) * (p - c).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  Eigen::Vector3d nrm = es.eigenvectors().col(0);  // smallest eigenvalue
  double dev = 0.0;
  for (const auto& p : pts) dev = std::max(dev, std::abs(nrm.dot(p - c)));
  return {{c, nrm}, dev};
}

std::map<std::pair<int, int>, int> undirected_edge_use(const Mesh& m) {
  std::map<std::pair<int, int>, int> use;
  for (const auto& t : m.triangles)
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3];
      ++use[{std::min(a, b), std::max(a, b)}];
    }
  return use;
}

}  // namespace

double Mesh::diameter() const {
  if (vertices.empty()) return 0.0;
  Eigen::Vector3d lo = vertices.front(), hi = vertices.front();
  for (const auto& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return (hi - lo).norm();
}

Eigen::Vector3cd dodecagon_integrand(BonnetAngle theta, cplx t) {
  cplx c = cbrt_principal(1.0 - pow_int(t, 12));
  cplx c2 = c * c;
  cplx t3 = t * t * t, t6 = t3 * t3;
  cplx rot = std::polar(1.0, theta.theta);
  Eigen::Vector3cd v;
  v << 3.0 * (1.0 - t6), cplx(0.0, -3.0) * (1.0 + t6), -6.0 * t3;
  return rot / c2 * v;
}

Eigen::Vector3d analytic_normal(cplx t) {
  if (std::abs(t) < 1e-100) return {0.0, 0.0, 1.0};
  cplx g = 1.0 / (t * t * t);  // G = z
  if (!std::isfinite(std::abs(g))) return {0.0, 0.0, 1.0};
  double n2 = std::norm(g);
  return Eigen::Vector3d(2.0 * g.real(), 2.0 * g.imag(), n2 - 1.0) / (n2 + 1.0);
}

Mesh dodecagon_patch(BonnetAngle theta, int n) {
  if (n < 2) throw ResolutionTooLow("dodecagon_patch: need n >= 2");
  Layout L{n};
  Mesh m;
  m.theta = theta;
  m.domain = "dodecagon |z| >= 1";
  m.resolution = n;
  m.t_param.resize(L.n_vertices());
  for (int j = 0; j <= n; ++j)
    for (int a = 0; a < std::max(1, 12 * j); ++a) m.t_param[L.id(j, a)] = L.t(j, a);

  for (int k = 0; k < 12; ++k)
    for (int j = 0; j < n; ++j)
      for (int mm = 0; mm <= j; ++mm) {
        m.triangles.push_back({L.id(j + 1, k * (j + 1) + mm),
                               L.id(j + 1, k * (j + 1) + mm + 1),
                               L.id(j, k * j + mm)});
        if (mm < j)
          m.triangles.push_back({L.id(j, k * j + mm),
                                 L.id(j + 1, k * (j + 1) + mm + 1),
                                 L.id(j, k * j + mm + 1)});
      }

  // complex potentials along a breadth-first spanning tree rooted at the
  // center, anchored so that the base point t0 = e^{-i pi/12} maps to 0
  std::vector<Eigen::Vector3cd> pot(L.n_vertices());
  std::vector<char> seen(L.n_vertices(), 0);
  cplx t0 = std::polar(1.0, -kPi / 12.0);
  pot[0] = edge_integral(theta, t0, {0.0, 0.0});
  seen[0] = 1;
  std::vector<std::vector<int>> adj(L.n_vertices());
  for (const auto& t : m.triangles)
    for (int i = 0; i < 3; ++i) {
      adj[t[i]].push_back(t[(i + 1) % 3]);
      adj[t[(i + 1) % 3]].push_back(t[i]);
    }
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v]) {
      if (seen[w]) continue;
      seen[w] = 1;
      pot[w] = pot[v] + edge_integral(theta, m.t_param[v], m.t_param[w]);
      q.push(w);
    }
  }
  m.vertices.resize(L.n_vertices());
  for (int v = 0; v < L.n_vertices(); ++v) m.vertices[v] = pot[v].real();

  for (int k = 0; k < 12; ++k) {
    std::vector<int> arc;
    for (int a = k * n; a <= (k + 1) * n; ++a) arc.push_back(L.id(n, a));
    m.boundary_arcs.push_back(std::move(arc));
  }
  return m;
}

Mesh extend_by_reflections(const Mesh& m, int depth) {
  if (depth == 0) return m;
  double diam = m.diameter();
  double weld_tol = 1e-6 * diam;
  Mesh cur = m;

  for (int step = 0; step < depth; ++step) {
    // The patch boundary arcs that sit in mirror planes of the surface are
    // detected by the planarity fit; generic associate-family members have
    // none and cannot be extended.
    std::vector<Plane> planes;
    for (const auto& arc : cur.boundary_arcs) {
      std::vector<Eigen::Vector3d> pts;
      for (int v : arc) pts.push_back(cur.vertices[v]);
      auto [pl, dev] = fit_plane(pts);
      if (dev <= 1e-4 * diam) planes.push_back(pl);
    }
    if (planes.empty())
      throw NonPlanarBoundary(
          "no boundary arc is planar; the surface has no reflective extension");

    // union of the mesh with one reflected copy per plane
    std::vector<Eigen::Vector3d> raw = cur.vertices;
    std::vector<std::array<int, 3>> tris = cur.triangles;
    std::vector<std::vector<int>> arcs = cur.boundary_arcs;
    int base_n = int(cur.vertices.size());
    for (size_t pi = 0; pi < planes.size(); ++pi) {
      const Plane& pl = planes[pi];
      int off = int(raw.size());
      for (const auto& p : cur.vertices)
        raw.push_back(p - 2.0 * pl.normal.dot(p - pl.point) * pl.normal);
      for (const auto& t : cur.triangles)
        tris.push_back({t[0] + off, t[2] + off, t[1] + off});  // mirror flips
      for (const auto& arc : cur.boundary_arcs) {
        std::vector<int> img;
        for (int v : arc) img.push_back(v + off);
        arcs.push_back(std::move(img));
      }
    }
    (void)base_n;

    // weld coincident vertices on a grid hash
    std::map<std::array<long long, 3>, int> cells;
    std::vector<int> remap(raw.size(), -1);
    std::vector<Eigen::Vector3d> welded;
    auto key_of = [&](const Eigen::Vector3d& p) {
      return std::array<long long, 3>{llround(p.x() / weld_tol),
                                      llround(p.y() / weld_tol),
                                      llround(p.z() / weld_tol)};
    };
    for (size_t v = 0; v < raw.size(); ++v) {
      auto k = key_of(raw[v]);
      int found = -1;
      for (long long dx = -1; dx <= 1 && found < 0; ++dx)
        for (long long dy = -1; dy <= 1 && found < 0; ++dy)
          for (long long dz = -1; dz <= 1 && found < 0; ++dz) {
            auto it = cells.find({k[0] + dx, k[1] + dy, k[2] + dz});
            if (it != cells.end() &&
                (welded[it->second] - raw[v]).norm() <= weld_tol)
              found = it->second;
          }
      if (found < 0) {
        found = int(welded.size());
        welded.push_back(raw[v]);
        cells[k] = found;
      }
      remap[v] = found;
    }

    Mesh next;
    next.theta = cur.theta;
    next.domain = cur.domain + " + reflections";
    next.resolution = cur.resolution;
    next.vertices = std::move(welded);
    std::map<std::array<int, 3>, char> tri_seen;
    for (auto& t : tris) {
      std::array<int, 3> w{remap[t[0]], remap[t[1]], remap[t[2]]};
      if (w[0] == w[1] || w[1] == w[2] || w[0] == w[2]) continue;
      std::array<int, 3> canon = w;
      std::sort(canon.begin(), canon.end());
      if (tri_seen[canon]++) continue;  // coincident copies collapse
      next.triangles.push_back(w);
    }

    // keep the arcs that are still on the topological boundary
    auto use = undirected_edge_use(next);
    std::map<std::vector<int>, char> arc_seen;
    for (const auto& arc : arcs) {
      std::vector<int> w;
      for (int v : arc) w.push_back(remap[v]);
      bool boundary = true;
      for (size_t i = 0; i + 1 < w.size(); ++i) {
        auto it = use.find({std::min(w[i], w[i + 1]), std::max(w[i], w[i + 1])});
        if (it == use.end() || it->second != 1) {
          boundary = false;
          break;
        }
      }
      if (!boundary) continue;
      std::vector<int> canon = w;
      if (canon.back() < canon.front()) std::reverse(canon.begin(), canon.end());
      if (arc_seen[canon]++) continue;
      next.boundary_arcs.push_back(std::move(w));
    }
    cur = std::move(next);
  }
  return cur;
}

namespace {

double chain_straightness(const Mesh& m, const std::vector<int>& chain,
                          double* len_out) {
  Eigen::Vector3d a = m.vertices[chain.front()], b = m.vertices[chain.back()];
  Eigen::Vector3d d = b - a;
  double len = d.norm();
  double dev = 0.0;
  for (int v : chain) {
    Eigen::Vector3d p = m.vertices[v] - a;
    dev = std::max(dev, (p - d.dot(p) / (len * len) * d).norm());
  }
  if (len_out) *len_out = len;
  return dev / len;
}

std::vector<int> spoke_chain(const Mesh& m, int k) {
  int n = m.resolution;
  std::vector<int> chain{0};
  for (int j = 1; j <= n; ++j) chain.push_back(1 + 6 * j * (j - 1) + k * j);
  return chain;
}

}  // namespace

StessmannReport stessmann_report(int n) {
  if (n < 8) throw ResolutionTooLow("stessmann_report: need n >= 8");
  Mesh m = dodecagon_patch(BonnetAngle::radians(kPi / 2.0), n);
  StessmannReport r;
  r.theta = kPi / 2.0;

  // The contour of the conjugate surface is made of the straight symmetry
  // curves of the patch: four boundary arcs map to the vertical box edges and
  // four spokes map to half-diagonals of the horizontal box faces (the center
  // of the patch is the midpoint of a full face diagonal).
  double sum_v = 0.0, sum_d = 0.0;
  int n_v = 0, n_d = 0;
  for (const auto& arc : m.boundary_arcs) {
    double len = 0.0, s = chain_straightness(m, arc, &len);
    if (s > 1e-5) continue;
    Eigen::Vector3d dir =
        (m.vertices[arc.back()] - m.vertices[arc.front()]).normalized();
    if (std::abs(dir.z()) < 1.0 - 1e-4) continue;
    r.arcs.push_back({s, len});
    r.max_straightness = std::max(r.max_straightness, s);
    sum_v += len;
    ++n_v;
  }
  for (int k = 0; k < 12; ++k) {
    std::vector<int> chain = spoke_chain(m, k);
    double len = 0.0, s = chain_straightness(m, chain, &len);
    if (s > 1e-5) continue;
    Eigen::Vector3d dir =
        (m.vertices[chain.back()] - m.vertices[chain.front()]).normalized();
    if (std::abs(dir.z()) > 1e-4) continue;
    r.arcs.push_back({s, len});
    r.max_straightness = std::max(r.max_straightness, s);
    sum_d += len;
    ++n_d;
  }
  if (n_v != 4 || n_d != 4)
    throw std::runtime_error("contour extraction expected 4+4 straight segments");
  r.vertical_edge = sum_v / n_v;
  r.horizontal_edge = 2.0 * (sum_d / n_d) / std::sqrt(2.0);
  r.box_ratio = r.vertical_edge / r.horizontal_edge;
  return r;
}

std::string to_json(const StessmannReport& r) {
  nlohmann::json j;
  j["theta"] = r.theta;
  j["arcs"] = nlohmann::json::array();
  for (const auto& a : r.arcs)
    j["arcs"].push_back({{"straightness", a.straightness}, {"length", a.length}});
  j["max_straightness"] = r.max_straightness;
  j["vertical_edge"] = r.vertical_edge;
  j["horizontal_edge"] = r.horizontal_edge;
  j["box_ratio"] = r.box_ratio;
  return j.dump(2);
}

namespace {

// Pair cycle around branch values b1 (counterclockwise) and b2 (clockwise),
// based at z = 2 on sheet 0; the opposite senses cancel the sheet shift, so
// the path closes on the curve.
SheetPath pair_cycle(cplx b1, cplx b2, int n) {
  std::vector<cplx> wp{cplx{2.0, 0.0}};
  int loop_m = std::max(16, 4 * n);
  auto push = [&](cplx z) {
    if (std::abs(z - wp.back()) > 1e-12) wp.push_back(z);
  };
  auto visit = [&](cplx b, int sense) {
    // the loop around z = 0 is approached along e^{i pi/4}, clear of the
    // other branch values
    double phase = std::abs(b) < 1e-12 ? kPi / 4.0 : std::arg(b);
    int arc_m = std::max(1, int(std::ceil(std::abs(phase) / (kPi / 16.0))));
    for (int i = 1; i <= arc_m; ++i) push(std::polar(2.0, phase * i / arc_m));
    push(b + std::polar(0.35, phase));
    for (int i = 1; i <= loop_m; ++i)
      push(b + std::polar(0.35, phase + sense * 2.0 * kPi * i / loop_m));
    push(std::polar(2.0, phase));
    for (int i = arc_m - 1; i >= 0; --i) push(std::polar(2.0, phase * i / arc_m));
  };
  visit(b1, +1);
  visit(b2, -1);
  return SheetPath(std::move(wp), lift(2.0, 0));
}

// Shrinks a set of lattice vectors to a basis of the group they generate.
// The coordinates of every period in a well-conditioned triple must be
// rationals with small denominator (up to quadrature noise); after clearing
// denominators the problem is an integer column-style Hermite reduction.
Eigen::Matrix3d reduce_to_basis(const std::vector<Eigen::Vector3d>& vecs) {
  double scale = 0.0;
  for (const auto& v : vecs) scale = std::max(scale, v.norm());
  if (scale == 0.0) throw RankDeficient("all periods vanish");

  Eigen::Matrix3d B0;
  double best = 0.0;
  for (size_t i = 0; i < vecs.size(); ++i)
    for (size_t j = i + 1; j < vecs.size(); ++j)
      for (size_t k = j + 1; k < vecs.size(); ++k) {
        Eigen::Matrix3d M;
        M << vecs[i], vecs[j], vecs[k];
        if (std::abs(M.determinant()) > best) {
          best = std::abs(M.determinant());
          B0 = M;
        }
      }
  if (best < std::pow(1e-3 * scale, 3))
    throw RankDeficient("periods do not span 3-space");

  const long long K = 24;  // denominator bound
  std::vector<std::array<long long, 3>> cols;
  for (const auto& v : vecs) {
    Eigen::Vector3d c = B0.inverse() * v * double(K);
    std::array<long long, 3> ic;
    for (int i = 0; i < 3; ++i) {
      ic[i] = llround(c[i]);
      if (std::abs(c[i] - double(ic[i])) > 1e-4)
        throw RankDeficient("periods are not commensurate");
    }
    cols.push_back(ic);
  }

  // column Euclid per row; column operations are unimodular
  for (int row = 0; row < 3; ++row) {
    while (true) {
      int piv = -1;
      for (size_t j = row; j < cols.size(); ++j)
        if (cols[j][row] != 0 &&
            (piv < 0 || std::llabs(cols[j][row]) < std::llabs(cols[piv][row])))
          piv = int(j);
      if (piv < 0) throw RankDeficient("integer reduction lost rank");
      std::swap(cols[row], cols[piv]);
      bool done = true;
      for (size_t j = row + 1; j < cols.size(); ++j) {
        if (cols[j][row] == 0) continue;
        long long q = cols[j][row] / cols[row][row];
        for (int i = 0; i < 3; ++i) cols[j][i] -= q * cols[row][i];
        if (cols[j][row] != 0) done = false;
      }
      if (done) break;
    }
  }
  Eigen::Matrix3d H;
  for (int c = 0; c < 3; ++c)
    H.col(c) = Eigen::Vector3d(double(cols[c][0]), double(cols[c][1]),
                               double(cols[c][2]));
  return B0 * H / double(K);
}

// Certifies that the lattice spanned by B is body-centered cubic up to
// similarity: shortest-vector shells of sizes 8 and 6 with length ratio
// 2/sqrt(3), and all generators integer-or-half-integer in the cubic frame.
bool certify_bcc(const Eigen::Matrix3d& B) {
  std::vector<Eigen::Vector3d> pts;
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j)
      for (int k = -3; k <= 3; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        pts.push_back(B * Eigen::Vector3d(i, j, k));
      }
  std::sort(pts.begin(), pts.end(),
            [](const auto& a, const auto& b) { return a.norm() < b.norm(); });
  double l1 = pts.front().norm();
  std::vector<Eigen::Vector3d> shell1, shell2;
  double l2 = 0.0;
  for (const auto& p : pts) {
    double l = p.norm();
    if (l < l1 * (1.0 + 1e-5)) {
      shell1.push_back(p);
    } else {
      if (l2 == 0.0) l2 = l;
      if (l < l2 * (1.0 + 1e-5))
        shell2.push_back(p);
      else
        break;
    }
  }
  if (shell1.size() != 8 || shell2.size() != 6) return false;
  if (std::abs(l2 / l1 - 2.0 / std::sqrt(3.0)) > 1e-5) return false;

  // cubic frame from three mutually orthogonal second-shell vectors
  Eigen::Vector3d e1 = shell2[0], e2, e3;
  bool got = false;
  for (size_t i = 1; i < shell2.size() && !got; ++i)
    for (size_t j = i + 1; j < shell2.size() && !got; ++j) {
      if (std::abs(e1.dot(shell2[i])) < 1e-5 * l2 * l2 &&
          std::abs(e1.dot(shell2[j])) < 1e-5 * l2 * l2 &&
          std::abs(shell2[i].dot(shell2[j])) < 1e-5 * l2 * l2) {
        e2 = shell2[i];
        e3 = shell2[j];
        got = true;
      }
    }
  if (!got) return false;
  for (int c = 0; c < 3; ++c) {
    Eigen::Vector3d g = B.col(c);
    Eigen::Vector3d coord(g.dot(e1), g.dot(e2), g.dot(e3));
    coord /= l2 * l2;
    for (int i = 0; i < 3; ++i) {
      double two = 2.0 * coord[i];
      if (std::abs(two - std::round(two)) > 1e-5) return false;
    }
  }
  return true;
}

}  // namespace

LatticeReport lattice_report(int n) {
  if (n < 8) throw ResolutionTooLow("lattice_report: need n >= 8");
  const cplx I{0.0, 1.0}, O{0.0, 0.0};
  std::vector<std::pair<cplx, cplx>> pairs = {
      {O, 1.0}, {O, I}, {O, -1.0}, {O, -I}, {1.0, I}, {I, -1.0}};
  VectorForm phi = associate_form(BonnetAngle::radians(0.0));
  std::vector<Eigen::Vector3d> periods;
  for (auto [b1, b2] : pairs) {
    SheetPath path = pair_cycle(b1, b2, n);
    periods.push_back(integrate(phi, path).real());
  }
  LatticeReport r;
  r.cycles = pairs;
  r.generators = reduce_to_basis(periods);
  r.gram = r.generators.transpose() * r.generators;
  r.bcc_ok = certify_bcc(r.generators);
  return r;
}

std::string to_json(const LatticeReport& r) {
  nlohmann::json j;
  j["generators"] = nlohmann::json::array();
  j["gram"] = nlohmann::json::array();
  for (int c = 0; c < 3; ++c) {
    j["generators"].push_back(
        {r.generators(0, c), r.generators(1, c), r.generators(2, c)});
    j["gram"].push_back({r.gram(c, 0), r.gram(c, 1), r.gram(c, 2)});
  }
  j["bcc_ok"] = r.bcc_ok;
  j["cycles"] = nlohmann::json::array();
  for (auto [b1, b2] : r.cycles)
    j["cycles"].push_back({{"around_ccw", {b1.real(), b1.imag()}},
                           {"around_cw", {b2.real(), b2.imag()}}});
  return j.dump(2);
}

void export_mesh(const Mesh& m, MeshFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  char buf[128];
  if (format == MeshFormat::OBJ) {
    for (const auto& v : m.vertices) {
      std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(),
                    v.z());
      out << buf;
    }
    for (const auto& t : m.triangles)
      out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  } else {
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << m.vertices.size() << '\n';
    out << "property double x\nproperty double y\nproperty double z\n";
    out << "element face " << m.triangles.size() << '\n';
    out << "property list uchar int vertex_indices\nend_header\n";
    for (const auto& v : m.vertices) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x(), v.y(),
                    v.z());
      out << buf;
    }
    for (const auto& t : m.triangles)
      out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
  if (!out.good()) throw std::runtime_error("write failure: " + path);
}

Mesh import_mesh(MeshFormat format, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Mesh m;
  std::string line;
  if (format == MeshFormat::OBJ) {
    while (std::getline(in, line)) {
      std::istringstream ss(line);
      std::string tag;
      ss >> tag;
      if (tag == "v") {
        double x, y, z;
        ss >> x >> y >> z;
        m.vertices.emplace_back(x, y, z);
      } else if (tag == "f") {
        int a, b, c;
        ss >> a >> b >> c;
        m.triangles.push_back({a - 1, b - 1, c - 1});
      }
    }
  } else {
    size_t nv = 0, nf = 0;
    while (std::getline(in, line) && line != "end_header") {
      std::istringstream ss(line);
      std::string w1, w2;
      ss >> w1 >> w2;
      if (w1 == "element" && w2 == "vertex") ss >> nv;
      if (w1 == "element" && w2 == "face") ss >> nf;
    }
    for (size_t i = 0; i < nv; ++i) {
      double x, y, z;
      in >> x >> y >> z;
      m.vertices.emplace_back(x, y, z);
    }
    for (size_t i = 0; i < nf; ++i) {
      int cnt, a, b, c;
      in >> cnt >> a >> b >> c;
      m.triangles.push_back({a, b, c});
    }
  }
  return m;
}

}  // namespace iwp
