#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

// The Riemann surface S modeled as the smooth plane curve
//
//     w^3 = z (z^4 - 1)
//
// a 3-sheeted cyclic cover of the z-sphere branched over {0, 1, i, -1, -i, inf}.
// Points with |z| > 2 are kept in the chart at infinity, u = 1/z with rescaled
// fiber coordinate v = w u^2, where the curve reads v^3 = u (1 - u^4).

namespace iwp {

using cplx = std::complex<double>;

inline constexpr double kOnCurveEps = 1e-10;   // relative on-curve tolerance
inline constexpr double kBranchClearance = 1e-3;  // r_min for path interiors
inline constexpr double kChartSwitchRadius = 2.0;

struct BranchPointLift : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StepCollapse : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PathClearance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// e^{2 pi i/3}
cplx zeta3(int k = 1);

// Principal cube root, argument in (-pi/3, pi/3].
cplx cbrt_principal(cplx m);

// The five finite branch values {0, 1, i, -1, -i}.
const std::vector<cplx>& finite_branch_values();

bool is_branch_value(cplx z, double tol = 1e-12);

enum class Chart { Finite, Infinity };

struct CurvePoint {
  Chart chart = Chart::Finite;
  // Finite chart: a = z, b = w.  Infinity chart: a = u = 1/z, b = v = w u^2.
  cplx a{0.0, 0.0};
  cplx b{0.0, 0.0};

  cplx z() const;  // may be inf in the infinity chart at u = 0
  cplx w() const;
  bool at_infinity() const { return chart == Chart::Infinity && a == cplx{0.0, 0.0}; }

  // |defining equation residual| relative to 1 + |z|^5 resp. 1 + |u|^5.
  double curve_residual() const;
  bool on_curve(double eps = kOnCurveEps) const { return curve_residual() <= eps; }
};

// Builds a finite-chart point and normalizes to the infinity chart for |z| > 2.
CurvePoint make_point(cplx z, cplx w);
CurvePoint infinity_point();  // the single point over z = inf

// Principal lift of z to sheet k in {0,1,2}: w = zeta3^k * cbrt(z(z^4-1)).
// Throws BranchPointLift at the five finite branch values.
CurvePoint lift(cplx z, int sheet);

// Deck transformation (z, w) -> (z, zeta3^j w).
CurvePoint deck(const CurvePoint& p, int j);

// Order-12 automorphism tau(z, w) = (i z, e^{i pi/6} w).
CurvePoint tau(const CurvePoint& p);

// A base-plane path (piecewise linear through the waypoints) plus starting
// point on the curve.  to_infinity appends a final leg to z = inf, radial in
// the u = 1/z chart.
struct SheetPath {
  std::vector<cplx> waypoints;
  CurvePoint start;
  bool to_infinity = false;

  SheetPath() = default;
  SheetPath(std::vector<cplx> wp, CurvePoint s)
      : waypoints(std::move(wp)), start(s) {}

  SheetPath reversed() const;  // requires the endpoint to be known; see below
  void check_clearance() const;  // throws PathClearance on r_min violation
};

// Distance from segment [a,b] interior to the nearest finite branch value.
double segment_branch_clearance(cplx a, cplx b);

// Analytic continuation of w along the path; adaptive nearest-root stepping.
// Throws StepCollapse if the step size underflows (path too close to a branch
// point).
CurvePoint continue_path(const SheetPath& path);

// Continuation that also reports the w value at each waypoint.
std::vector<cplx> continue_path_trace(const SheetPath& path);

// Convenience: polygonal loop (regular ngon) around center, CCW, starting and
// ending at center + radius.
std::vector<cplx> polygon_loop(cplx center, double radius, int ngon = 16);

}  // namespace iwp
