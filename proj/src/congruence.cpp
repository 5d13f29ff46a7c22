#include "iwp/congruence.hpp"

#include <cmath>
#include <functional>

#include <json.hpp>

#include "iwp/quadrature.hpp"
#include "iwp/surface_mesh.hpp"

namespace iwp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Base parameter of the dodecagon patch, z = e^{i pi/4} on sheet 0.
const cplx kBaseT = std::polar(1.0, -kPi / 12.0);

// Patch parameter t (unit disk, t^3 = 1/z) of a curve point over |z| >= 1.
cplx t_of_point(const CurvePoint& p) {
  cplx u, v;
  if (p.chart == Chart::Infinity) {
    u = p.a;
    v = p.b;
  } else {
    if (std::abs(p.a) < 1.0 - 1e-12)
      throw std::invalid_argument(
          "verify_shift_120: sample outside the patch |z| >= 1");
    u = 1.0 / p.a;
    v = p.b * u * u;
  }
  if (u == cplx{0.0, 0.0}) return {0.0, 0.0};
  cplx best{0.0, 0.0};
  double best_err = 1e300;
  cplx root = cbrt_principal(u);
  for (int j = 0; j < 3; ++j) {
    cplx t = root * zeta3(j);
    double err = std::abs(t * cbrt_principal(1.0 - std::pow(t, 12)) - v);
    if (err < best_err) {
      best_err = err;
      best = t;
    }
  }
  return best;
}

// f_theta at patch parameter t, integrated from the patch base point.
Eigen::Vector3d f_at(BonnetAngle theta, cplx t) {
  IntegrationOptions opts;
  cplx d = t - kBaseT;
  std::function<Eigen::Vector3cd(double)> f = [&](double s) {
    return (dodecagon_integrand(theta, kBaseT + d * s) * d).eval();
  };
  return adaptive_gk<Eigen::Vector3cd>(f, opts).real();
}

double cloud_diameter(const std::vector<Eigen::Vector3d>& pts) {
  Eigen::Vector3d lo = pts.front(), hi = pts.front();
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

// Vertex permutation of the dodecagon patch induced by deck^m (t -> zeta3^m t):
// ring j, slot a -> slot a + 4 j m.
std::vector<int> deck_permutation(int n, int m) {
  auto offset = [](int j) { return j == 0 ? 0 : 1 + 6 * j * (j - 1); };
  std::vector<int> perm(1 + 6 * n * (n + 1));
  perm[0] = 0;
  for (int j = 1; j <= n; ++j)
    for (int a = 0; a < 12 * j; ++a)
      perm[offset(j) + a] = offset(j) + (a + 4 * j * m) % (12 * j);
  return perm;
}

CongruenceCase make_case(double theta_deg, const std::string& target,
                         const Mesh& base, const Mesh& other, int perm_m) {
  std::vector<int> perm = deck_permutation(base.resolution, perm_m);
  std::vector<Eigen::Vector3d> A(base.vertices.size());
  for (size_t i = 0; i < A.size(); ++i) A[i] = base.vertices[perm[i]];
  RigidMotion rm = align(A, other.vertices);
  CongruenceCase c;
  c.theta_deg = theta_deg;
  c.target = target;
  c.rmsd_rel = rm.rmsd / other.diameter();
  c.pass = c.rmsd_rel < 1e-6;
  return c;
}

}  // namespace

RigidMotion align(const std::vector<Eigen::Vector3d>& A,
                  const std::vector<Eigen::Vector3d>& B) {
  if (A.size() != B.size() || A.size() < 3)
    throw DegenerateConfiguration("align: need two equal clouds of >= 3 points");
  size_t n = A.size();
  Eigen::Vector3d ca = Eigen::Vector3d::Zero(), cb = Eigen::Vector3d::Zero();
  for (size_t i = 0; i < n; ++i) {
    ca += A[i];
    cb += B[i];
  }
  ca /= double(n);
  cb /= double(n);
  Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
  double spread = 0.0;
  for (size_t i = 0; i < n; ++i) {
    H += (B[i] - cb) * (A[i] - ca).transpose();
    spread = std::max(spread, (A[i] - ca).norm());
  }
  // collinearity of the source cloud: second moment must have rank >= 2
  Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
  for (size_t i = 0; i < n; ++i) M += (A[i] - ca) * (A[i] - ca).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(M);
  if (spread == 0.0 || es.eigenvalues()(1) < 1e-12 * es.eigenvalues()(2))
    throw DegenerateConfiguration("align: source cloud is collinear");

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU |
                                               Eigen::ComputeFullV);
  RigidMotion rm;
  rm.R = svd.matrixU() * svd.matrixV().transpose();  // improper allowed
  rm.t = cb - rm.R * ca;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) ss += (rm.R * A[i] + rm.t - B[i]).squaredNorm();
  rm.rmsd = std::sqrt(ss / double(n));
  return rm;
}

ShiftReport verify_shift_120(BonnetAngle theta,
                             const std::vector<CurvePoint>& samples) {
  if (samples.size() < 10)
    throw InsufficientSamples("verify_shift_120: need at least 10 samples");
  BonnetAngle shifted = BonnetAngle::radians(theta.theta + 2.0 * kPi / 3.0);
  std::vector<Eigen::Vector3d> cloud, diffs;
  for (const CurvePoint& p : samples) {
    cplx t = t_of_point(p);
    Eigen::Vector3d base = f_at(theta, zeta3(1) * t);
    cloud.push_back(base);
    diffs.push_back(base - f_at(shifted, t));
  }
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& d : diffs) mean += d;
  mean /= double(diffs.size());
  ShiftReport r;
  r.theta = theta.theta;
  r.n_samples = int(samples.size());
  for (const auto& d : diffs)
    r.deviation = std::max(r.deviation, (d - mean).norm());
  r.diameter = cloud_diameter(cloud);
  r.pass = r.deviation < 1e-6 * r.diameter;
  return r;
}

CongruenceVerdicts verify_main_theorem(int n) {
  Mesh iwp = dodecagon_patch(BonnetAngle::degrees(0.0), n);
  Mesh stess = dodecagon_patch(BonnetAngle::degrees(90.0), n);
  CongruenceVerdicts v;
  for (int k = 0; k < 6; ++k) {
    // f_{60k}(t) = +/- f_0(zeta3^{2k} t) + const
    Mesh mk = dodecagon_patch(BonnetAngle::degrees(60.0 * k), n);
    v.cases.push_back(make_case(60.0 * k, "IWP", iwp, mk, (2 * k) % 3));
    // f_{30+60k}(t) = +/- f_90(zeta3^{2(k-1)} t) + const
    Mesh ms = dodecagon_patch(BonnetAngle::degrees(30.0 + 60.0 * k), n);
    v.cases.push_back(
        make_case(30.0 + 60.0 * k, "Stessmann", stess, ms, (2 * (k + 2)) % 3));
  }
  // controls: generic angles are not congruent to I-WP by this correspondence
  for (double deg : {45.0, 37.0}) {
    Mesh mc = dodecagon_patch(BonnetAngle::degrees(deg), n);
    v.cases.push_back(make_case(deg, "IWP", iwp, mc, 0));
  }
  return v;
}

std::string to_json(const CongruenceVerdicts& v) {
  nlohmann::json j;
  j["cases"] = nlohmann::json::array();
  for (const auto& c : v.cases)
    j["cases"].push_back({{"theta_deg", c.theta_deg},
                          {"target", c.target},
                          {"rmsd_rel", c.rmsd_rel},
                          {"pass", c.pass}});
  return j.dump(2);
}

}  // namespace iwp
