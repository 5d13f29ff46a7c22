#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "iwp/weierstrass.hpp"

// Triangulated patches of the associate family.  The canonical patch is the
// dodecagon: the lifted region over {|z| >= 1} through the branch point over
// infinity, parametrized by the unit disk in the regularizing coordinate t
// (u = 1/z = t^3).  In that chart the integrand of f = Re int e^{i theta} Phi
// pulls back to
//
//   e^{i theta} ( 3(1 - t^6), -3i(1 + t^6), -6 t^3 ) / c^2  dt,   c^3 = 1 - t^12,
//
// with c the principal cube root, which is single-valued on the closed disk.
// The twelve boundary vertices t^12 = 1 sit over the branch values
// 1, -i, -1, i (cyclically, via z = t^-3).

namespace iwp {

struct ResolutionTooLow : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonPlanarBoundary : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RankDeficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Mesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> triangles;       // consistently oriented
  std::vector<std::vector<int>> boundary_arcs;     // vertex chains
  BonnetAngle theta;
  std::string domain;
  int resolution = 0;
  // Domain parameter per vertex for meshes built by dodecagon_patch; empty
  // after extend_by_reflections.
  std::vector<cplx> t_param;

  double diameter() const;  // bounding-box diagonal
};

// Integrand of the patch, as a dt-coefficient at domain parameter t.
Eigen::Vector3cd dodecagon_integrand(BonnetAngle theta, cplx t);

// Unit normal from the Gauss map G = z = t^-3 by inverse stereographic
// projection; t = 0 maps to (0,0,1).
Eigen::Vector3d analytic_normal(cplx t);

// The dodecagon patch at Bonnet angle theta, n subdivisions per curvilinear
// triangle (12 sectors), base point t0 = e^{-i pi/12} (z = e^{i pi/4}) at the
// origin.  Throws ResolutionTooLow for n < 2.
Mesh dodecagon_patch(BonnetAngle theta, int n);

// Reflects the mesh across least-squares planes fitted to its boundary arcs,
// recursively to `depth`, welding coincident vertices within 1e-6 * diameter.
// Throws NonPlanarBoundary if an arc deviates from its plane by more than
// 1e-4 * diameter.
Mesh extend_by_reflections(const Mesh& m, int depth);

struct ArcStats {
  double straightness = 0.0;  // max point-to-chord deviation / chord length
  double length = 0.0;        // chord length
};

struct StessmannReport {
  double theta = 0.0;
  std::vector<ArcStats> arcs;  // 4 vertical edges then 4 half-diagonals
  double max_straightness = 0.0;
  double vertical_edge = 0.0;    // box height
  double horizontal_edge = 0.0;  // box width, from the full face diagonal
  double box_ratio = 0.0;        // vertical / horizontal, sqrt(2)/2 for the box
};

// Contour report of the conjugate (theta = 90 degree) patch: extracts the
// straight symmetry curves (vertical box edges and face half-diagonals) and
// the box aspect ratio.
StessmannReport stessmann_report(int n);
std::string to_json(const StessmannReport& r);

struct LatticeReport {
  Eigen::Matrix3d generators;  // period vectors as columns
  Eigen::Matrix3d gram;
  bool bcc_ok = false;
  // branch-value pairs of the cycles the generators were reduced from
  std::vector<std::pair<cplx, cplx>> cycles;
};

// Translation lattice of the theta = 0 surface from pair-cycle periods.
// Throws RankDeficient if the computed periods do not span 3-space.
LatticeReport lattice_report(int n);
std::string to_json(const LatticeReport& r);

enum class MeshFormat { OBJ, PLY };

void export_mesh(const Mesh& m, MeshFormat format, const std::string& path);
Mesh import_mesh(MeshFormat format, const std::string& path);  // round-trip aid

}  // namespace iwp
