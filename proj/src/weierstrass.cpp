#include "iwp/weierstrass.hpp"

#include <cmath>

namespace iwp {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_off_branch(const CurvePoint& p) {
  if (std::abs(p.b) < 1e-14)
    throw ChartSingularity("eval_form: branch point (w = 0 resp. v = 0)");
}
}  // namespace

BonnetAngle BonnetAngle::radians(double t) {
  double m = std::fmod(t, 2.0 * kPi);
  if (m < 0) m += 2.0 * kPi;
  return BonnetAngle{m};
}

BonnetAngle BonnetAngle::degrees(double d) {
  return radians(d * kPi / 180.0);
}

cplx gauss_map(const CurvePoint& p) { return p.z(); }

cplx eval_form(FormId id, const CurvePoint& p) {
  require_off_branch(p);
  if (p.chart == Chart::Finite) {
    cplx z = p.a, w = p.b;
    cplx w2 = w * w;
    switch (id) {
      case FormId::Omega1: return 4.0 / w2;
      case FormId::Omega2: return 4.0 / w;
      case FormId::Omega3: return 4.0 * z / w2;
      case FormId::Omega4: return 4.0 * z * z / w2;
      case FormId::Dh: return z / w2;
      case FormId::Gdh: return z * z / w2;
      case FormId::GinvDh: return 1.0 / w2;
    }
  } else {
    cplx u = p.a, v = p.b;
    cplx v2 = v * v;
    switch (id) {
      case FormId::Omega1: return -4.0 * u * u / v2;
      case FormId::Omega2: return -4.0 / v;
      case FormId::Omega3: return -4.0 * u / v2;
      case FormId::Omega4: return -4.0 / v2;
      case FormId::Dh: return -u / v2;
      case FormId::Gdh: return -1.0 / v2;
      case FormId::GinvDh: return -u * u / v2;
    }
  }
  throw InvalidArgument("eval_form: unknown form id");
}

ScalarForm form(FormId id) {
  // eval_form returns the coefficient in the point's own chart; the dz view
  // converts with du/dz = -u^2 when the point sits in the infinity chart.
  ScalarForm f;
  f.dz_coeff = [id](const CurvePoint& p) {
    cplx c = eval_form(id, p);
    if (p.chart == Chart::Infinity) c *= -p.a * p.a;
    return c;
  };
  f.du_coeff = [id](const CurvePoint& p) {
    cplx c = eval_form(id, p);
    if (p.chart == Chart::Finite) c *= -p.a * p.a;  // dz/du = -z^2
    return c;
  };
  return f;
}

Eigen::Vector3cd associate_integrand(BonnetAngle theta, const CurvePoint& p) {
  require_off_branch(p);
  const cplx rot = std::polar(1.0, theta.theta);
  const cplx I{0.0, 1.0};
  Eigen::Vector3cd out;
  if (p.chart == Chart::Finite) {
    cplx z = p.a, w = p.b;
    cplx dhc = z / (w * w);
    out << (1.0 / z - z) * dhc, I * (z + 1.0 / z) * dhc, 2.0 * dhc;
  } else {
    cplx u = p.a, v = p.b;
    cplx v2 = v * v;
    out << (1.0 - u * u) / v2, -I * (1.0 + u * u) / v2, -2.0 * u / v2;
  }
  return rot * out;
}

VectorForm associate_form(BonnetAngle theta) {
  VectorForm f;
  f.dz_coeff = [theta](const CurvePoint& p) -> Eigen::Vector3cd {
    Eigen::Vector3cd c = associate_integrand(theta, p);
    if (p.chart == Chart::Infinity) c *= -p.a * p.a;
    return c;
  };
  f.du_coeff = [theta](const CurvePoint& p) -> Eigen::Vector3cd {
    Eigen::Vector3cd c = associate_integrand(theta, p);
    if (p.chart == Chart::Finite) c *= -p.a * p.a;
    return c;
  };
  return f;
}

CurvePoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (;;) {
    double r = std::pow(10.0, -1.0 + 2.0 * unif(rng));
    double phi = 2.0 * kPi * unif(rng);
    cplx z = std::polar(r, phi);
    bool clear = true;
    for (const cplx& b : finite_branch_values())
      if (std::abs(z - b) < 0.05) clear = false;
    if (!clear) continue;
    int sheet = static_cast<int>(unif(rng) * 3.0) % 3;
    return lift(z, sheet);
  }
}

RelationReport check_relations(int samples, unsigned seed) {
  if (samples < 1)
    throw InvalidArgument("check_relations: samples must be >= 1");
  std::mt19937_64 rng(seed);
  RelationReport rep;
  rep.samples = samples;
  for (int i = 0; i < samples; ++i) {
    CurvePoint p = random_point(rng);
    cplx o1 = eval_form(FormId::Omega1, p);
    cplx o2 = eval_form(FormId::Omega2, p);
    cplx o3 = eval_form(FormId::Omega3, p);
    cplx o4 = eval_form(FormId::Omega4, p);
    cplx q = o3 * o3 - o1 * o4;
    cplx c = o2 * o2 * o2 - o3 * (o4 * o4 - o1 * o1);
    double qs = std::max({std::abs(o3 * o3), std::abs(o1 * o4), 1e-300});
    double cs = std::max({std::abs(o2 * o2 * o2),
                          std::abs(o3) * (std::abs(o4 * o4) + std::abs(o1 * o1)),
                          1e-300});
    rep.max_residual_quadric = std::max(rep.max_residual_quadric, std::abs(q) / qs);
    rep.max_residual_cubic = std::max(rep.max_residual_cubic, std::abs(c) / cs);
  }
  return rep;
}

std::string form_name(FormId id) {
  switch (id) {
    case FormId::Omega1: return "omega1";
    case FormId::Omega2: return "omega2";
    case FormId::Omega3: return "omega3";
    case FormId::Omega4: return "omega4";
    case FormId::Dh: return "dh";
    case FormId::Gdh: return "G*dh";
    case FormId::GinvDh: return "G^-1*dh";
  }
  return "?";
}

}  // namespace iwp
