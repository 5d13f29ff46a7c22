#include "iwp/flat_hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace iwp {

namespace {

constexpr double kPi = std::numbers::pi;

int base_dart(int dart, int N) { return dart / N; }

struct FaceIndex {
  std::vector<std::vector<int>> faces;  // darts in cyclic phi order
  std::vector<int> face_of, pos_of;

  explicit FaceIndex(const CombMap& m) {
    faces = permutation_orbits(face_permutation(m));
    face_of.assign(m.n_darts, -1);
    pos_of.assign(m.n_darts, -1);
    for (size_t f = 0; f < faces.size(); ++f)
      for (size_t i = 0; i < faces[f].size(); ++i) {
        face_of[faces[f][i]] = int(f);
        pos_of[faces[f][i]] = int(i);
      }
  }
};

// Positively oriented faces of the cover are lifts of the base face {0,2,4}.
bool face_positive(const std::vector<int>& face, int N) {
  int b = base_dart(face.front(), N);
  return b == 0 || b == 2 || b == 4;
}

cplxd mob_to0(cplxd w, cplxd z) { return (z - w) / (1.0 - std::conj(w) * z); }
cplxd mob_from0(cplxd w, cplxd z) { return (z + w) / (1.0 + std::conj(w) * z); }

double wrap_angle(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a < -kPi) a += 2.0 * kPi;
  return a;
}

}  // namespace

CombMap standard_cover() {
  return build_cyclic_cover(build_base_sphere(), {1, 4, 7}, 12);
}

int dart_class(int dart, int N) {
  switch (base_dart(dart, N)) {
    case 0:
    case 5:
      return 0;
    case 1:
    case 2:
      return 1;
    default:
      return 2;
  }
}

Developed24gon develop_hyperbolic(const CombMap& cover) {
  const int N = cover.n_darts / 6;
  FaceIndex fi(cover);
  Perm phi = face_permutation(cover);

  // Reference (pi/12, pi/6, pi/12) triangle from the angular cosine law,
  // A-corner (class p1) at the origin.
  const double A = kPi / 12.0, B = kPi / 6.0, C = kPi / 12.0;
  auto side = [](double opp, double adj1, double adj2) {
    double ch = (std::cos(opp) + std::cos(adj1) * std::cos(adj2)) /
                (std::sin(adj1) * std::sin(adj2));
    return std::acosh(ch);
  };
  const double len_ab = side(C, A, B);  // side c, opposite C
  const double len_ac = side(B, C, A);  // side b, opposite B
  std::array<cplxd, 3> ref_pos = {
      cplxd{0.0, 0.0}, cplxd{std::tanh(len_ab / 2.0), 0.0},
      std::polar(std::tanh(len_ac / 2.0), A)};
  std::array<cplxd, 3> ref_neg = {std::conj(ref_pos[0]), std::conj(ref_pos[1]),
                                  std::conj(ref_pos[2])};

  Developed24gon dev;
  dev.corners.assign(fi.faces.size(), {});
  dev.darts.assign(fi.faces.size(), {});
  for (size_t f = 0; f < fi.faces.size(); ++f)
    for (int i = 0; i < 3; ++i) dev.darts[f][i] = fi.faces[f][i];

  auto ref_of = [&](int face, int cls) -> cplxd {
    return face_positive(fi.faces[face], N) ? ref_pos[cls] : ref_neg[cls];
  };

  std::vector<char> placed(fi.faces.size(), 0);

  // Seed: a positive face with its p1 corner at the center.
  int d0 = -1;
  for (int d = 0; d < cover.n_darts; ++d)
    if (base_dart(d, N) == 0) {
      d0 = d;
      break;
    }
  int f0 = fi.face_of[d0];
  for (int i = 0; i < 3; ++i)
    dev.corners[f0][i] = ref_of(f0, dart_class(fi.faces[f0][i], N));
  placed[f0] = 1;

  // Places face g so that the corner of dart m lands at y and the next corner
  // at x, matching the already developed side across the shared edge.
  auto place = [&](int g, int m, cplxd y, cplxd x) {
    cplxd r0 = ref_of(g, dart_class(m, N));
    cplxd r1 = ref_of(g, dart_class(phi[m], N));
    cplxd a1 = mob_to0(r0, r1);
    cplxd b1 = mob_to0(y, x);
    cplxd rho = b1 / a1;
    rho /= std::abs(rho);
    for (int i = 0; i < 3; ++i) {
      cplxd r = ref_of(g, dart_class(fi.faces[g][i], N));
      dev.corners[g][i] = mob_from0(y, rho * mob_to0(r0, r));
    }
  };

  // Fan outwards around the center vertex: develop only across edges
  // incident to p1, so the 24 triangles arrange themselves into the 24-gon.
  std::vector<int> queue{f0};
  while (!queue.empty()) {
    int f = queue.back();
    queue.pop_back();
    for (int i = 0; i < 3; ++i) {
      int d = fi.faces[f][i];
      bool spoke = dart_class(d, N) == 0 || dart_class(phi[d], N) == 0;
      if (!spoke) continue;
      int m = cover.alpha[d];
      int g = fi.face_of[m];
      if (placed[g]) continue;
      cplxd x = dev.corners[f][i];
      cplxd y = dev.corners[f][fi.pos_of[phi[d]]];
      place(g, m, y, x);
      placed[g] = 1;
      queue.push_back(g);
    }
  }
  for (char p : placed)
    if (!p) throw PairingFailure("develop_hyperbolic: fan did not cover all faces");

  // Boundary: per face the one side avoiding the center (its p2p3 side).
  std::vector<int> boundary_index(cover.n_darts, -1);
  for (size_t f = 0; f < fi.faces.size(); ++f)
    for (int i = 0; i < 3; ++i) {
      int d = fi.faces[f][i];
      int b = base_dart(d, N);
      if (b != 2 && b != 3) continue;
      DevelopedSide s;
      s.a = dev.corners[f][i];
      s.b = dev.corners[f][fi.pos_of[phi[d]]];
      s.face = int(f);
      s.dart = d;
      boundary_index[d] = int(dev.boundary.size());
      dev.boundary.push_back(s);
    }
  for (size_t i = 0; i < dev.boundary.size(); ++i) {
    int j = boundary_index[cover.alpha[dev.boundary[i].dart]];
    if (j < 0) throw PairingFailure("develop_hyperbolic: unpaired boundary side");
    if (int(i) < j) dev.pairing.emplace_back(int(i), j);
  }
  return dev;
}

CombMap retile_equilateral(const CombMap& cover) {
  const int N = cover.n_darts / 6;
  Perm phi = face_permutation(cover);
  Perm phi2 = phi;
  // Flip every lift of the p3p1 edge (base darts 4 = CA and 5 = AC).  With
  // faces (d, b, c) and (m, e, f), removing the diagonal d/m of the glued
  // quadrilateral and inserting the other one yields faces (d, f, b) and
  // (m, c, e); the flips touch disjoint face pairs.
  for (int d = 0; d < cover.n_darts; ++d) {
    if (base_dart(d, N) != 4) continue;
    int m = cover.alpha[d];
    int b = phi[d], c = phi[b];
    int e = phi[m], f = phi[e];
    if (phi[c] != d || phi[f] != m)
      throw PairingFailure("retile_equilateral: faces are not triangles");
    phi2[d] = f;
    phi2[f] = b;
    phi2[b] = d;
    phi2[m] = c;
    phi2[c] = e;
    phi2[e] = m;
  }
  CombMap out;
  out.n_darts = cover.n_darts;
  out.alpha = cover.alpha;
  out.sigma.resize(cover.n_darts);
  for (int d = 0; d < cover.n_darts; ++d) out.sigma[d] = phi2[out.alpha[d]];
  return out;
}

namespace {

FlatStructure develop_flat(const CombMap& cover, const TriangleShape& shape,
                           const std::array<int, 3>& assign) {
  const int N = cover.n_darts / 6;
  FaceIndex fi(cover);
  Perm phi = face_permutation(cover);

  std::array<double, 3> ang;
  for (int k = 0; k < 3; ++k) ang[k] = assign[k] * kPi / 12.0;
  // Reference triangle: class-0 corner at 0, class-1 corner at 1; the law of
  // sines gives the remaining side.
  std::array<cplxd, 3> ref_pos = {
      cplxd{0.0, 0.0}, cplxd{1.0, 0.0},
      std::polar(std::sin(ang[1]) / std::sin(ang[2]), ang[0])};
  std::array<cplxd, 3> ref_neg = {std::conj(ref_pos[0]), std::conj(ref_pos[1]),
                                  std::conj(ref_pos[2])};
  auto ref_of = [&](int face, int cls) -> cplxd {
    return face_positive(fi.faces[face], N) ? ref_pos[cls] : ref_neg[cls];
  };

  FlatStructure fs;
  fs.shape = shape;
  fs.assignment = assign;
  fs.corners.assign(fi.faces.size(), {});
  fs.darts.assign(fi.faces.size(), {});
  for (size_t f = 0; f < fi.faces.size(); ++f)
    for (int i = 0; i < 3; ++i) fs.darts[f][i] = fi.faces[f][i];

  // Spanning-tree development over face adjacency.
  std::vector<char> placed(fi.faces.size(), 0);
  std::vector<char> tree_dart(cover.n_darts, 0);
  for (int i = 0; i < 3; ++i)
    fs.corners[0][i] = ref_of(0, dart_class(fi.faces[0][i], N));
  placed[0] = 1;
  std::vector<int> queue{0};
  size_t qh = 0;
  while (qh < queue.size()) {
    int f = queue[qh++];
    for (int i = 0; i < 3; ++i) {
      int d = fi.faces[f][i];
      int m = cover.alpha[d];
      int g = fi.face_of[m];
      if (placed[g]) continue;
      cplxd x = fs.corners[f][i];
      cplxd y = fs.corners[f][fi.pos_of[phi[d]]];
      cplxd r0 = ref_of(g, dart_class(m, N));
      cplxd r1 = ref_of(g, dart_class(phi[m], N));
      cplxd u = (x - y) / (r1 - r0);
      u /= std::abs(u);
      cplxd v = y - u * r0;
      for (int j = 0; j < 3; ++j)
        fs.corners[g][j] = u * ref_of(g, dart_class(fi.faces[g][j], N)) + v;
      placed[g] = 1;
      tree_dart[d] = tree_dart[m] = 1;
      queue.push_back(g);
    }
  }

  // Non-tree gluings: the transition F -> G along the shared edge must be a
  // translation.
  fs.max_rotation_defect = 0.0;
  for (int d = 0; d < cover.n_darts; ++d) {
    if (tree_dart[d]) continue;
    int m = cover.alpha[d];
    if (m < d) continue;
    int f = fi.face_of[d], g = fi.face_of[m];
    cplxd xf = fs.corners[f][fi.pos_of[d]];
    cplxd yf = fs.corners[f][fi.pos_of[phi[d]]];
    cplxd yg = fs.corners[g][fi.pos_of[m]];
    cplxd xg = fs.corners[g][fi.pos_of[phi[m]]];
    cplxd u = (xg - yg) / (xf - yf);
    fs.max_rotation_defect =
        std::max(fs.max_rotation_defect, std::abs(std::arg(u)));
  }

  // Cone angles per cover vertex, from the developed coordinates.
  auto vorbs = permutation_orbits(cover.sigma);
  fs.vertex_class.assign(vorbs.size(), -1);
  fs.cone_angle.assign(vorbs.size(), 0.0);
  std::vector<int> vert_of(cover.n_darts, -1);
  for (size_t v = 0; v < vorbs.size(); ++v) {
    fs.vertex_class[v] = dart_class(vorbs[v].front(), N);
    for (int d : vorbs[v]) vert_of[d] = int(v);
  }
  for (size_t f = 0; f < fi.faces.size(); ++f)
    for (int i = 0; i < 3; ++i) {
      cplxd p = fs.corners[f][i];
      cplxd q = fs.corners[f][(i + 1) % 3];
      cplxd r = fs.corners[f][(i + 2) % 3];
      double a = std::abs(wrap_angle(std::arg((q - p) / (r - p))));
      fs.cone_angle[vert_of[fi.faces[f][i]]] += a;
    }
  return fs;
}

}  // namespace

FlatStructure build_translation_structure(const CombMap& cover,
                                          const TriangleShape& shape) {
  if (shape.geometry != Geometry::Euclidean ||
      shape.angles[0] + shape.angles[1] + shape.angles[2] != 12)
    throw std::invalid_argument(
        "build_translation_structure: shape must be Euclidean with angle sum 12");
  std::array<int, 3> a = shape.angles;
  std::vector<std::array<int, 3>> candidates{a};
  std::array<int, 3> s = a;
  std::sort(s.begin(), s.end());
  do {
    if (s != a) candidates.push_back(s);
  } while (std::next_permutation(s.begin(), s.end()));
  for (const auto& assign : candidates) {
    FlatStructure fs = develop_flat(cover, shape, assign);
    if (fs.max_rotation_defect < 1e-9) return fs;
  }
  throw NotTranslation(
      "build_translation_structure: no angle assignment glues by translations");
}

DivisorReport divisors(const FlatStructure& fs) {
  DivisorReport rep;
  rep.order_by_class = {-2, -2, -2};
  rep.total = 0;
  for (size_t v = 0; v < fs.cone_angle.size(); ++v) {
    double k = fs.cone_angle[v] / (2.0 * kPi);
    double rounded = std::round(k);
    if (std::abs(k - rounded) > 1e-8)
      throw NonIntegralOrder("divisors: cone angle is not a multiple of 2*pi");
    int order = int(rounded) - 1;
    rep.order_by_vertex[int(v)] = order;
    rep.total += order;
    int cls = fs.vertex_class[v];
    if (rep.order_by_class[cls] == -2)
      rep.order_by_class[cls] = order;
    else if (rep.order_by_class[cls] != order)
      throw NonIntegralOrder("divisors: inconsistent orders within a vertex class");
  }
  return rep;
}

std::string divisor_report_json(const FlatStructure& fs) {
  DivisorReport rep = divisors(fs);
  nlohmann::json j;
  j["shape"] = fs.shape.angles;
  j["assignment"] = fs.assignment;
  nlohmann::json cones, orders;
  for (size_t v = 0; v < fs.cone_angle.size(); ++v) {
    std::string key = "p" + std::to_string(fs.vertex_class[v] + 1) + "_v" +
                      std::to_string(v);
    cones[key] = fs.cone_angle[v];
    orders[key] = rep.order_by_vertex[int(v)];
  }
  j["cone_angles"] = cones;
  j["orders"] = orders;
  j["order_by_class"] = rep.order_by_class;
  j["total_order"] = rep.total;
  j["max_rotation_defect"] = fs.max_rotation_defect;
  return j.dump(2);
}

namespace {

void svg_open(std::ostream& os, double lo, double hi) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
     << "viewBox=\"" << lo << " " << lo << " " << hi - lo << " " << hi - lo
     << "\">\n"
     << "<g transform=\"scale(1,-1)\" stroke-width=\""
     << (hi - lo) / 500.0 << "\">\n";
}

void svg_close(std::ostream& os) { os << "</g>\n</svg>\n"; }

// Geodesic from z1 to z2 as an SVG path segment: a circular arc orthogonal to
// the unit circle, or a straight line through the origin.
std::string geodesic_arc(cplxd z1, cplxd z2) {
  double det = z1.real() * z2.imag() - z1.imag() * z2.real();
  std::ostringstream os;
  os.precision(12);
  if (std::abs(det) < 1e-12) {  // diameter
    os << "L " << z2.real() << " " << z2.imag() << " ";
    return os.str();
  }
  // center c with z*conj(c) + conj(z)*c = |z|^2 + 1 for both endpoints
  double r1 = (std::norm(z1) + 1.0) / 2.0, r2 = (std::norm(z2) + 1.0) / 2.0;
  double cx = (r1 * z2.imag() - r2 * z1.imag()) / det;
  double cy = (r2 * z1.real() - r1 * z2.real()) / det;
  cplxd c{cx, cy};
  double rad = std::sqrt(std::norm(c) - 1.0);
  cplxd w1 = z1 - c, w2 = z2 - c;
  int sweep = (w1.real() * w2.imag() - w1.imag() * w2.real()) > 0 ? 1 : 0;
  os << "A " << rad << " " << rad << " 0 0 " << sweep << " " << z2.real() << " "
     << z2.imag() << " ";
  return os.str();
}

}  // namespace

void render_svg(const Developed24gon& dev, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("render_svg: cannot open " + path);
  svg_open(os, -1.05, 1.05);
  os << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\"/>\n";
  os.precision(12);
  for (size_t f = 0; f < dev.corners.size(); ++f) {
    const auto& c = dev.corners[f];
    os << "<path d=\"M " << c[0].real() << " " << c[0].imag() << " "
       << geodesic_arc(c[0], c[1]) << geodesic_arc(c[1], c[2])
       << geodesic_arc(c[2], c[0]) << "Z\" fill=\"none\" stroke=\"#1f4e99\"/>\n";
  }
  svg_close(os);
  if (!os.flush()) throw std::runtime_error("render_svg: write failed");
}

void render_svg(const FlatStructure& fs, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("render_svg: cannot open " + path);
  double lo = 1e100, hi = -1e100;
  for (const auto& c : fs.corners)
    for (const auto& z : c) {
      lo = std::min({lo, z.real(), z.imag()});
      hi = std::max({hi, z.real(), z.imag()});
    }
  double pad = 0.05 * (hi - lo);
  svg_open(os, lo - pad, hi + pad);
  os.precision(12);
  for (const auto& c : fs.corners)
    os << "<path d=\"M " << c[0].real() << " " << c[0].imag() << " L "
       << c[1].real() << " " << c[1].imag() << " L " << c[2].real() << " "
       << c[2].imag() << " Z\" fill=\"none\" stroke=\"#1f4e99\"/>\n";
  // mark cone points (vertices with excess angle)
  DivisorReport rep = divisors(fs);
  for (size_t f = 0; f < fs.corners.size(); ++f)
    for (int i = 0; i < 3; ++i) {
      // vertex id of this corner
      // (recomputing the orbit map here would duplicate develop_flat's work;
      // mark every corner whose class has a positive order)
      int cls = dart_class(fs.darts[f][i], 12);
      if (rep.order_by_class[cls] > 0)
        os << "<circle cx=\"" << fs.corners[f][i].real() << "\" cy=\""
           << fs.corners[f][i].imag() << "\" r=\"0.02\" fill=\"#c03020\"/>\n";
    }
  svg_close(os);
  if (!os.flush()) throw std::runtime_error("render_svg: write failed");
}

}  // namespace iwp
