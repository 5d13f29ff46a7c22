#include "iwp/quadrature.hpp"

#include <array>
#include <optional>
#include <cmath>

namespace iwp {

namespace {

// QUADPACK dqk15 nodes and weights on [-1,1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {0.129484966168870, 0.279705391489277,
                                       0.381830050505119, 0.417959183673469};

double vnorm(const cplx& v) { return std::abs(v); }
double vnorm(const Eigen::Vector3cd& v) { return v.norm(); }

template <class Value>
void gk15(const std::function<Value(double)>& f, double a, double b,
          Value& k15, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Value fc = f(c);
  Value resk = kWgk[7] * fc;
  Value resg = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    Value s = f(c - h * kXgk[i]) + f(c + h * kXgk[i]);
    resk += kWgk[i] * s;
    if (i % 2 == 1) resg += kWg[i / 2] * s;
  }
  k15 = h * resk;
  err = std::abs(h) * vnorm(resk - resg);
}

template <class Value>
Value adapt(const std::function<Value(double)>& f, double a, double b,
            const IntegrationOptions& opts, int depth, double& err_acc) {
  Value val;
  double err;
  gk15(f, a, b, val, err);
  if (err <= opts.atol + opts.rtol * vnorm(val) || err < 1e-300) {
    err_acc += err;
    return val;
  }
  if (depth >= opts.max_depth)
    throw Nonconvergence("integrate: max_depth exceeded");
  double c = 0.5 * (a + b);
  Value left = adapt(f, a, c, opts, depth + 1, err_acc);
  return left + adapt(f, c, b, opts, depth + 1, err_acc);
}

}  // namespace

template <class Value>
Value adaptive_gk(const std::function<Value(double)>& f,
                  const IntegrationOptions& opts, double* err_out) {
  double err = 0.0;
  Value v = adapt(f, 0.0, 1.0, opts, 0, err);
  if (err_out) *err_out = err;
  return v;
}

template cplx adaptive_gk<cplx>(const std::function<cplx(double)>&,
                                const IntegrationOptions&, double*);
template Eigen::Vector3cd adaptive_gk<Eigen::Vector3cd>(
    const std::function<Eigen::Vector3cd(double)>&, const IntegrationOptions&,
    double*);

namespace {

// Tracks a continuously varying choice among the three cube-root branches of a
// nonvanishing quantity along a parameter interval.  candidates(s) returns the
// three branch values at parameter s; the table is refined until linear
// interpolation resolves the branch unambiguously.
class BranchTable {
 public:
  BranchTable(std::function<std::array<cplx, 3>(double)> candidates, double s0,
              cplx v0, double s1)
      : cand_(std::move(candidates)) {
    s_.push_back(s0);
    v_.push_back(v0);
    march(s0, v0, s1, 0);
  }

  cplx value(double s) const {
    size_t lo = 0, hi = s_.size() - 1;
    bool asc = s_.front() < s_.back();
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      if ((s_[mid] <= s) == asc)
        lo = mid;
      else
        hi = mid;
    }
    double span = s_[hi] - s_[lo];
    double f = span == 0.0 ? 0.0 : (s - s_[lo]) / span;
    f = std::clamp(f, 0.0, 1.0);
    cplx hint = (1.0 - f) * v_[lo] + f * v_[hi];
    return nearest(cand_(s), hint);
  }

 private:
  static cplx nearest(const std::array<cplx, 3>& c, cplx hint) {
    cplx best = c[0];
    double d = std::abs(c[0] - hint);
    for (int k = 1; k < 3; ++k) {
      double dk = std::abs(c[k] - hint);
      if (dk < d) {
        d = dk;
        best = c[k];
      }
    }
    return best;
  }

  // Forward continuation: the value at s1 is only accepted once the step from
  // the last resolved value is unambiguous, so a bad far-end guess can never
  // poison the table.
  cplx march(double s0, cplx v0, double s1, int depth) {
    cplx v1 = nearest(cand_(s1), v0);
    double sep = std::sqrt(3.0) * std::min(std::abs(v0), std::abs(v1));
    if (std::abs(v1 - v0) <= 0.25 * sep) {
      s_.push_back(s1);
      v_.push_back(v1);
      return v1;
    }
    if (depth > 48) throw StepCollapse("branch tracking: refinement underflow");
    double sm = 0.5 * (s0 + s1);
    cplx vm = march(s0, v0, sm, depth + 1);
    return march(sm, vm, s1, depth + 1);
  }

  std::function<std::array<cplx, 3>(double)> cand_;
  std::vector<double> s_;
  std::vector<cplx> v_;
};

std::array<cplx, 3> cube_roots(cplx m) {
  cplx r = cbrt_principal(m);
  return {r, zeta3(1) * r, zeta3(2) * r};
}

cplx curve_rhs(cplx z) { return z * (z * z * z * z - 1.0); }

struct Seg {
  cplx a, b;
};

template <class Value>
struct Accum {
  Value total;
  double err = 0.0;
};

// Segment with no branch-value endpoint; w continued from w_a.  Returns w at
// the segment end.
template <class Value>
cplx plain_segment(const FormEvaluator<Value>& form, Seg s, cplx w_a,
                   const IntegrationOptions& opts, Accum<Value>& acc) {
  BranchTable table(
      [s](double q) { return cube_roots(curve_rhs(s.a + q * (s.b - s.a))); },
      0.0, w_a, 1.0);
  cplx dz = s.b - s.a;
  std::function<Value(double)> f = [&](double q) -> Value {
    cplx z = s.a + q * dz;
    CurvePoint p = make_point(z, table.value(q));
    return form.dz_coeff(p) * dz;
  };
  double err;
  acc.total += adaptive_gk<Value>(f, opts, &err);
  acc.err += err;
  return table.value(1.0);
}

// Segment with exactly one branch-value endpoint; z = bv + sigma t^3 with
// sigma the unit direction toward the far end, t in (0, T].  We track
// H(t) = w/t, whose cube m(z(t))/t^3 is nonvanishing, so the usual nearest-
// branch tracking applies all the way into the branch point.
//
// at_end: the branch value is s.b.  w_far is w at the non-branch endpoint;
// when leaving a branch value with no anchor (w_far unset), the principal
// branch of H near t = 0 is used.
template <class Value>
cplx regularized_segment(const FormEvaluator<Value>& form, Seg s, bool at_end,
                         std::optional<cplx> w_far,
                         const IntegrationOptions& opts, Accum<Value>& acc) {
  cplx bv = at_end ? s.b : s.a;
  cplx far = at_end ? s.a : s.b;
  double T = std::cbrt(std::abs(far - bv));
  cplx sigma = (far - bv) / std::abs(far - bv);
  auto z_of_t = [bv, sigma](double t) { return bv + sigma * t * t * t; };
  // H^3 = m(z)/t^3 = sigma * q(z) with q = (z^5 - z)/(z - bv) by synthetic
  // division (exact: the remainder vanishes at every branch value), which
  // avoids the cancellation in z(z^4-1) for tiny t.
  cplx b2 = bv * bv;
  auto q_poly = [bv, b2](cplx z) {
    return (((z + bv) * z + b2) * z + b2 * bv) * z + (b2 * b2 - 1.0);
  };
  auto h_cand = [&](double t) {
    if (t <= 0.0) t = 1e-12 * T;
    return cube_roots(sigma * q_poly(z_of_t(t)));
  };
  cplx h_anchor;
  double s_anchor;
  if (w_far) {
    h_anchor = *w_far / T;
    s_anchor = T;
  } else {
    h_anchor = h_cand(1e-6 * T)[0];  // principal branch out of the cone point
    s_anchor = 1e-6 * T;
  }
  BranchTable table(h_cand, s_anchor, h_anchor, w_far ? 1e-8 * T : T);
  std::function<Value(double)> f = [&](double q) -> Value {
    double t = at_end ? T * (1.0 - q) : T * q;
    double dt_dq = at_end ? -T : T;
    if (t <= 0.0) t = 1e-300;
    cplx w = t * table.value(t);
    CurvePoint p = make_point(z_of_t(t), w);
    cplx jac = sigma * 3.0 * t * t * dt_dq;
    return form.dz_coeff(p) * jac;
  };
  double err;
  acc.total += adaptive_gk<Value>(f, opts, &err);
  acc.err += err;
  if (at_end) return {0.0, 0.0};
  return T * table.value(T);
}

// Terminal leg from the last waypoint to z = inf, radial in the u-chart,
// substituting u = t^3 on the ray u = (q t_far)^3, q in [1, 0].
template <class Value>
void infinity_leg(const FormEvaluator<Value>& form, cplx z_last, cplx w_last,
                  const IntegrationOptions& opts, Accum<Value>& acc) {
  if (std::abs(z_last) < 1.0 + kBranchClearance)
    throw BranchProximity("infinity leg must start outside the unit circle");
  if (!form.du_coeff)
    throw std::invalid_argument("integrate: form lacks a du-chart evaluator");
  cplx u_far = 1.0 / z_last;
  cplx t_far = cbrt_principal(u_far);
  cplx v_far = w_last * u_far * u_far;
  // v(q) = q t_far g(q) with g^3 = 1 - u^4; |u| < 1 keeps g near a constant.
  auto g_cand = [&](double q) {
    cplx t = q * t_far;
    cplx u = t * t * t;
    return cube_roots(1.0 - u * u * u * u);
  };
  BranchTable table(g_cand, 1.0, v_far / t_far, 0.0);
  std::function<Value(double)> f = [&](double s) -> Value {
    double q = 1.0 - s;
    cplx t = q * t_far;
    cplx u = t * t * t;
    CurvePoint p;
    p.chart = Chart::Infinity;
    p.a = u;
    p.b = t * table.value(q);
    cplx du_ds = 3.0 * t * t * (-t_far);
    return form.du_coeff(p) * du_ds;
  };
  double err;
  acc.total += adaptive_gk<Value>(f, opts, &err);
  acc.err += err;
}

template <class Value>
void run_integrate(const FormEvaluator<Value>& form, const SheetPath& path,
                   const IntegrationOptions& opts, Accum<Value>& acc) {
  if (path.waypoints.empty())
    throw std::invalid_argument("integrate: empty path");
  const auto& wp = path.waypoints;
  for (size_t i = 0; i + 1 < wp.size(); ++i) {
    if (segment_branch_clearance(wp[i], wp[i + 1]) < kBranchClearance)
      throw BranchProximity(
          "integrate: path interior within r_min of a branch value");
  }
  for (size_t i = 1; i + 1 < wp.size(); ++i) {
    if (is_branch_value(wp[i]))
      throw BranchProximity(
          "integrate: interior waypoint at a branch value; paths may only start or end there");
  }
  if (wp.size() >= 2 && is_branch_value(wp.front()) &&
      is_branch_value(wp.back()) && wp.size() == 2)
    throw BranchProximity(
        "integrate: segment joins two branch values; insert an intermediate waypoint");

  cplx w = path.start.w();
  for (size_t i = 0; i + 1 < wp.size(); ++i) {
    Seg s{wp[i], wp[i + 1]};
    if (std::abs(s.b - s.a) == 0.0) continue;
    bool ba = is_branch_value(s.a);
    bool bb = is_branch_value(s.b);
    if (bb) {
      w = regularized_segment(form, s, /*at_end=*/true, std::optional<cplx>(w),
                              opts, acc);
    } else if (ba) {
      w = regularized_segment(form, s, /*at_end=*/false, std::nullopt, opts,
                              acc);
    } else {
      w = plain_segment(form, s, w, opts, acc);
    }
  }
  if (path.to_infinity) infinity_leg(form, wp.back(), w, opts, acc);
}

}  // namespace

QuadResult integrate_full(const ScalarForm& form, const SheetPath& path,
                          const IntegrationOptions& opts) {
  Accum<cplx> acc{cplx{0.0, 0.0}, 0.0};
  run_integrate(form, path, opts, acc);
  return {acc.total, acc.err};
}

QuadResult3 integrate_full(const VectorForm& form, const SheetPath& path,
                           const IntegrationOptions& opts) {
  Accum<Eigen::Vector3cd> acc{Eigen::Vector3cd::Zero(), 0.0};
  run_integrate(form, path, opts, acc);
  return {acc.total, acc.err};
}

}  // namespace iwp
