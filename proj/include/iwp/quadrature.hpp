#pragma once

#include <functional>
#include <stdexcept>

#include <Eigen/Dense>

#include "iwp/curve.hpp"

// Adaptive contour integration of meromorphic 1-forms along SheetPaths.
// Branch-value endpoints are regularized by the substitution z = b + sigma t^3
// (exact for this curve: every branch point is totally ramified of order 3);
// a terminal leg to z = inf switches to the u = 1/z chart and substitutes
// u = t^3 there.

namespace iwp {

struct Nonconvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BranchProximity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegrationOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  int max_depth = 40;
};

// A 1-form given by its coefficient functions in the two charts:
//   dz_coeff: f with  omega = f(p) dz   (finite chart)
//   du_coeff: g with  omega = g(p) du   (infinity chart)
// du_coeff is only required for paths that touch the infinity chart.
template <class Value>
struct FormEvaluator {
  std::function<Value(const CurvePoint&)> dz_coeff;
  std::function<Value(const CurvePoint&)> du_coeff;
};

using ScalarForm = FormEvaluator<cplx>;
using VectorForm = FormEvaluator<Eigen::Vector3cd>;

struct QuadResult {
  cplx value;
  double error_estimate = 0.0;
};

struct QuadResult3 {
  Eigen::Vector3cd value;
  double error_estimate = 0.0;
};

QuadResult integrate_full(const ScalarForm& form, const SheetPath& path,
                          const IntegrationOptions& opts = {});
QuadResult3 integrate_full(const VectorForm& form, const SheetPath& path,
                           const IntegrationOptions& opts = {});

inline cplx integrate(const ScalarForm& form, const SheetPath& path,
                      const IntegrationOptions& opts = {}) {
  return integrate_full(form, path, opts).value;
}
inline Eigen::Vector3cd integrate(const VectorForm& form, const SheetPath& path,
                                  const IntegrationOptions& opts = {}) {
  return integrate_full(form, path, opts).value;
}

// Low-level driver: adaptive Gauss-Kronrod (G7,K15) on a real parameter
// interval [0,1] for a smooth integrand; used by the mesh builder as well.
template <class Value>
Value adaptive_gk(const std::function<Value(double)>& f,
                  const IntegrationOptions& opts, double* err_out = nullptr);

extern template cplx adaptive_gk<cplx>(const std::function<cplx(double)>&,
                                       const IntegrationOptions&, double*);
extern template Eigen::Vector3cd adaptive_gk<Eigen::Vector3cd>(
    const std::function<Eigen::Vector3cd(double)>&, const IntegrationOptions&,
    double*);

}  // namespace iwp
