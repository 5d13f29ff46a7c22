#include "iwp/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace iwp {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

cplx zeta3(int k) {
  int m = ((k % 3) + 3) % 3;
  switch (m) {
    case 0: return {1.0, 0.0};
    case 1: return {-0.5, std::sqrt(3.0) / 2.0};
    default: return {-0.5, -std::sqrt(3.0) / 2.0};
  }
}

cplx cbrt_principal(cplx m) {
  double r = std::abs(m);
  if (r == 0.0) return {0.0, 0.0};
  double phi = std::arg(m);  // (-pi, pi]
  return std::polar(std::cbrt(r), phi / 3.0);
}

const std::vector<cplx>& finite_branch_values() {
  static const std::vector<cplx> vals = {
      {0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  return vals;
}

bool is_branch_value(cplx z, double tol) {
  for (const cplx& b : finite_branch_values())
    if (std::abs(z - b) <= tol) return true;
  return false;
}

cplx CurvePoint::z() const {
  if (chart == Chart::Finite) return a;
  if (a == cplx{0.0, 0.0})
    return {std::numeric_limits<double>::infinity(), 0.0};
  return 1.0 / a;
}

cplx CurvePoint::w() const {
  if (chart == Chart::Finite) return b;
  if (a == cplx{0.0, 0.0})
    return {std::numeric_limits<double>::infinity(), 0.0};
  return b / (a * a);
}

double CurvePoint::curve_residual() const {
  if (chart == Chart::Finite) {
    cplx lhs = b * b * b;
    cplx rhs = a * (a * a * a * a - 1.0);
    double scale = 1.0 + std::pow(std::abs(a), 5.0);
    return std::abs(lhs - rhs) / scale;
  }
  // v^3 = u (1 - u^4)
  cplx lhs = b * b * b;
  cplx rhs = a * (1.0 - a * a * a * a);
  double scale = 1.0 + std::pow(std::abs(a), 5.0);
  return std::abs(lhs - rhs) / scale;
}

CurvePoint make_point(cplx z, cplx w) {
  CurvePoint p;
  if (std::abs(z) > kChartSwitchRadius) {
    p.chart = Chart::Infinity;
    p.a = 1.0 / z;
    p.b = w * p.a * p.a;
  } else {
    p.chart = Chart::Finite;
    p.a = z;
    p.b = w;
  }
  return p;
}

CurvePoint infinity_point() {
  CurvePoint p;
  p.chart = Chart::Infinity;
  p.a = {0.0, 0.0};
  p.b = {0.0, 0.0};
  return p;
}

CurvePoint lift(cplx z, int sheet) {
  if (is_branch_value(z))
    throw BranchPointLift("lift: fiber degenerates at a branch value");
  cplx w0 = cbrt_principal(z * (z * z * z * z - 1.0));
  return make_point(z, zeta3(sheet) * w0);
}

CurvePoint deck(const CurvePoint& p, int j) {
  CurvePoint q = p;
  q.b *= zeta3(j);  // both charts scale the fiber coordinate linearly
  return q;
}

CurvePoint tau(const CurvePoint& p) {
  const cplx rot12 = std::polar(1.0, kPi / 6.0);
  if (p.chart == Chart::Finite)
    return make_point(cplx{0.0, 1.0} * p.a, rot12 * p.b);
  // u -> u/i = -i u,  v = w u^2 -> e^{i pi/6} w * (-i u)^2 = -e^{i pi/6} v
  CurvePoint q;
  q.chart = Chart::Infinity;
  q.a = cplx{0.0, -1.0} * p.a;
  q.b = -rot12 * p.b;
  return q;
}

double segment_branch_clearance(cplx a, cplx b) {
  double best = std::numeric_limits<double>::infinity();
  cplx d = b - a;
  double len2 = std::norm(d);
  for (const cplx& v : finite_branch_values()) {
    // Endpoints may be branch values (regularized there); a branch value that
    // coincides with an endpoint does not count against the interior.
    if (std::abs(a - v) < 1e-12 || std::abs(b - v) < 1e-12) continue;
    double t = len2 > 0 ? std::clamp(((v - a) * std::conj(d)).real() / len2, 0.0, 1.0)
                        : 0.0;
    best = std::min(best, std::abs(a + t * d - v));
  }
  return best;
}

void SheetPath::check_clearance() const {
  for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
    if (segment_branch_clearance(waypoints[i], waypoints[i + 1]) < kBranchClearance)
      throw PathClearance("SheetPath: segment interior within r_min of a branch value");
  }
}

SheetPath SheetPath::reversed() const {
  SheetPath r;
  r.waypoints.assign(waypoints.rbegin(), waypoints.rend());
  r.start = continue_path(*this);
  return r;
}

namespace {

// Chooses among the three cube roots of z(z^4-1) the one nearest w_prev.
// Returns the root and the separation quality (ratio of runner-up distance to
// the winning distance; large is good).
std::pair<cplx, double> nearest_root(cplx z, cplx w_prev) {
  cplx w0 = cbrt_principal(z * (z * z * z * z - 1.0));
  cplx best{0.0, 0.0};
  double d_best = std::numeric_limits<double>::infinity();
  double d_second = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    cplx cand = zeta3(k) * w0;
    double d = std::abs(cand - w_prev);
    if (d < d_best) {
      d_second = d_best;
      d_best = d;
      best = cand;
    } else {
      d_second = std::min(d_second, d);
    }
  }
  double quality = d_best == 0.0 ? std::numeric_limits<double>::infinity()
                                 : d_second / d_best;
  return {best, quality};
}

// Continues w from z_a (value w_a) to z_b along the straight segment.
cplx continue_segment(cplx z_a, cplx z_b, cplx w_a) {
  double pos = 0.0;
  double step = 1.0;
  cplx w = w_a;
  while (pos < 1.0) {
    step = std::min(step, 1.0 - pos);
    bool accepted = false;
    while (!accepted) {
      cplx z_next = z_a + (pos + step) * (z_b - z_a);
      if (is_branch_value(z_next, 1e-14) && pos + step >= 1.0) {
        // Branch-value endpoint: all roots coalesce at w = 0.
        return {0.0, 0.0};
      }
      auto [w_next, quality] = nearest_root(z_next, w);
      if (quality >= 3.0) {
        w = w_next;
        pos += step;
        step *= 2.0;
        accepted = true;
      } else {
        step *= 0.5;
        if (step * std::abs(z_b - z_a) < 1e-12)
          throw StepCollapse("continue_path: step size underflow near a branch point");
      }
    }
  }
  return w;
}

}  // namespace

std::vector<cplx> continue_path_trace(const SheetPath& path) {
  if (path.waypoints.empty())
    throw std::invalid_argument("continue_path: empty waypoint list");
  if (std::abs(path.start.z() - path.waypoints.front()) > 1e-9)
    throw std::invalid_argument("continue_path: start point does not match first waypoint");
  path.check_clearance();
  std::vector<cplx> trace;
  cplx w = path.start.w();
  trace.push_back(w);
  for (size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
    w = continue_segment(path.waypoints[i], path.waypoints[i + 1], w);
    trace.push_back(w);
  }
  return trace;
}

CurvePoint continue_path(const SheetPath& path) {
  std::vector<cplx> trace = continue_path_trace(path);
  return make_point(path.waypoints.back(), trace.back());
}

std::vector<cplx> polygon_loop(cplx center, double radius, int ngon) {
  std::vector<cplx> pts;
  pts.reserve(ngon + 1);
  for (int k = 0; k <= ngon; ++k) {
    double phi = 2.0 * kPi * k / ngon;
    pts.push_back(center + std::polar(radius, phi));
  }
  return pts;
}

}  // namespace iwp
