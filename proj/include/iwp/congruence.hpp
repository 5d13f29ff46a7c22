#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "iwp/curve.hpp"
#include "iwp/weierstrass.hpp"

// Rigid registration of corresponding point clouds and the congruence checks
// for the associate family: the deck transformation multiplies the height
// differential by e^{2 pi i / 3}, so a Bonnet rotation by 120 degrees is a
// reparametrization, and together with f_{theta + pi} = -f_theta every
// multiple of 60 degrees lands on the theta = 0 surface (even multiples) or
// on its conjugate (odd multiples, through theta = 90).

namespace iwp {

struct DegenerateConfiguration : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InsufficientSamples : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Element of O(3) x R^3 (det R = -1 allowed) with its registration residual.
struct RigidMotion {
  Eigen::Matrix3d R;
  Eigen::Vector3d t;
  double rmsd = 0.0;
};

// Least-squares rigid registration with known correspondence (orthogonal
// Procrustes).  Improper motions are allowed.  Throws DegenerateConfiguration
// if the clouds have fewer than 3 points, differ in size, or the centered
// source cloud is collinear.
RigidMotion align(const std::vector<Eigen::Vector3d>& A,
                  const std::vector<Eigen::Vector3d>& B);

struct ShiftReport {
  double theta = 0.0;     // radians
  int n_samples = 0;
  double deviation = 0.0; // max |D - mean D|, D(p) = f_theta(deck p) - f_{theta+120}(p)
  double diameter = 0.0;  // bounding-box diagonal of the sampled f_theta cloud
  bool pass = false;      // deviation < 1e-6 * diameter
};

// Verifies f_{theta + 2 pi/3}(p) = f_theta(deck(p, 1)) + const over the given
// samples, which must lie over |z| >= 1 (the dodecagon patch).  Throws
// InsufficientSamples for fewer than 10 samples.
ShiftReport verify_shift_120(BonnetAngle theta,
                             const std::vector<CurvePoint>& samples);

struct CongruenceCase {
  double theta_deg = 0.0;
  std::string target;   // "IWP" or "Stessmann"
  double rmsd_rel = 0.0;  // rmsd / diameter of the target cloud
  bool pass = false;      // rmsd_rel < 1e-6
};

struct CongruenceVerdicts {
  std::vector<CongruenceCase> cases;
};

// Checks theta = 60k degrees against theta = 0 and theta = 30 + 60k degrees
// against theta = 90, via the deck correspondence on dodecagon patches of the
// given resolution, plus the controls theta = 45 and theta = 37 against
// theta = 0 with the identity correspondence (expected to fail).
CongruenceVerdicts verify_main_theorem(int n = 16);

std::string to_json(const CongruenceVerdicts& v);

}  // namespace iwp
