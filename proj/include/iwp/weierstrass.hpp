#pragma once

#include <random>
#include <string>

#include "iwp/quadrature.hpp"

// Weierstrass data of the I-WP surface on w^3 = z(z^4-1):
//
//   G  = z                        (Gauss map, degree 3)
//   dh = z/w^2 dz                 (height differential)
//
// and the basis of holomorphic 1-forms, as dz-coefficients,
//
//   omega_1 = 4 dz / w^2
//   omega_2 = 4 dz / w
//   omega_3 = 4 z dz / w^2   (= 4 dh)
//   omega_4 = 4 z^2 dz / w^2
//
// The constant 4 comes from dx = 4 z^3 dz, so these match the x-model formulas
// y^k / (x (x-1)^m) dx exactly, not merely up to scale.  In the u = 1/z chart
// (v = w u^2, v^3 = u(1-u^4)) the du-coefficients are
//
//   dh      = -u du / v^2
//   omega_1 = -4 u^2 du / v^2
//   omega_2 = -4 du / v
//   omega_3 = -4 u du / v^2
//   omega_4 = -4 du / v^2

namespace iwp {

struct ChartSingularity : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class FormId { Omega1, Omega2, Omega3, Omega4, Dh, Gdh, GinvDh };

struct BonnetAngle {
  double theta = 0.0;  // radians, normalized mod 2 pi
  static BonnetAngle radians(double t);
  static BonnetAngle degrees(double d);
};

// Stereographically projected normal; infinity allowed.
cplx gauss_map(const CurvePoint& p);

// dz-coefficient (finite chart) resp. du-coefficient (infinity chart) of the
// named form at p.  Throws ChartSingularity exactly at branch points.
cplx eval_form(FormId id, const CurvePoint& p);

// Form evaluators wired for the quadrature module (both charts).
ScalarForm form(FormId id);

// e^{i theta} (1/G - G, i(G + 1/G), 2) * dh, as dz/du coefficients per chart.
Eigen::Vector3cd associate_integrand(BonnetAngle theta, const CurvePoint& p);
VectorForm associate_form(BonnetAngle theta);

struct RelationReport {
  double max_residual_quadric = 0.0;  // omega_3^2 = omega_1 omega_4
  double max_residual_cubic = 0.0;    // omega_2^3 = omega_3 (omega_4^2 - omega_1^2)
  int samples = 0;
};

// Max relative residuals of the two algebraic relations over random on-curve
// points (seeded).  Throws InvalidArgument for samples < 1.
RelationReport check_relations(int samples, unsigned seed = 0);

// Random on-curve point with |z| uniform-ish in [0.1, 10] away from branch
// values; used by property tests and check_relations.
CurvePoint random_point(std::mt19937_64& rng);

std::string form_name(FormId id);

}  // namespace iwp
