#pragma once

#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "iwp/combmaps.hpp"

namespace iwp {

using cplxd = std::complex<double>;

struct PairingFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotTranslation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonIntegralOrder : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Geometry { Hyperbolic, Euclidean };

// Triangle shape with angles in units of pi/12, listed in vertex-class order
// (p1, p2, p3).  Hyperbolic shapes have angle sum < 12, Euclidean ones = 12.
struct TriangleShape {
  Geometry geometry;
  std::array<int, 3> angles;
};

// Builds the (1,4,7;12) cover used throughout this module.
CombMap standard_cover();

// Base-sphere vertex class (0 = p1, 1 = p2, 2 = p3) of a cover dart's origin,
// assuming the dart indexing of build_cyclic_cover.
int dart_class(int dart, int N);

// One boundary side of the developed 24-gon.
struct DevelopedSide {
  cplxd a, b;  // endpoints in the unit disk
  int face;    // face index
  int dart;    // the cover dart realized by this side
};

struct Developed24gon {
  // per face: corner coordinates and the cover dart sitting at each corner
  std::vector<std::array<cplxd, 3>> corners;
  std::vector<std::array<int, 3>> darts;
  std::vector<DevelopedSide> boundary;        // the 24 outer geodesic sides
  std::vector<std::pair<int, int>> pairing;   // indices into boundary, glued
};

// Develops the (pi/12, pi/6, pi/12) hyperbolic structure around the single
// p1 vertex into the Poincare disk; p1 at the center.
Developed24gon develop_hyperbolic(const CombMap& cover);

// Swaps the diagonal in each (pi/12, pi/12) quadrilateral: flips the twelve
// p1p3-edges, turning the triangle map into the equilateral retiling S'_147.
CombMap retile_equilateral(const CombMap& cover);

struct FlatStructure {
  TriangleShape shape;
  std::array<int, 3> assignment;              // angle units placed at (p1,p2,p3)
  std::vector<std::array<cplxd, 3>> corners;  // per face, developed realization
  std::vector<std::array<int, 3>> darts;      // per face, dart at each corner
  std::vector<int> vertex_class;              // per cover vertex id
  std::vector<double> cone_angle;             // per cover vertex id, radians
  double max_rotation_defect = 0.0;           // worst gluing rotation, radians
};

// Realizes every face of the cover by the Euclidean triangle of the given
// shape, developed along a spanning tree; all non-tree gluings must be pure
// translations.  The angle-to-class assignment is searched exhaustively over
// the permutations of shape.angles, starting from the given order; throws
// NotTranslation if none works.
FlatStructure build_translation_structure(const CombMap& cover,
                                          const TriangleShape& shape);

struct DivisorReport {
  std::map<int, int> order_by_vertex;   // cover vertex id -> zero order
  std::array<int, 3> order_by_class;    // common order per vertex class
  int total;
};

// Cone angle 2*pi*k corresponds to a zero of order k-1.
DivisorReport divisors(const FlatStructure& fs);

std::string divisor_report_json(const FlatStructure& fs);

void render_svg(const Developed24gon& dev, const std::string& path);
void render_svg(const FlatStructure& fs, const std::string& path);

}  // namespace iwp
