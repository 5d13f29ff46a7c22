#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "iwp/curve.hpp"
#include "iwp/weierstrass.hpp"

using namespace iwp;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Brute-force continuation oracle: uniform micro-steps, nearest cube root.
cplx continue_brute(const std::vector<cplx>& pts, cplx w0, int steps_per_seg) {
  cplx w = w0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    for (int k = 1; k <= steps_per_seg; ++k) {
      cplx z = pts[i] + (double(k) / steps_per_seg) * (pts[i + 1] - pts[i]);
      cplx r0 = cbrt_principal(z * (z * z * z * z - 1.0));
      cplx best = r0;
      for (int j = 1; j < 3; ++j)
        if (std::abs(zeta3(j) * r0 - w) < std::abs(best - w)) best = zeta3(j) * r0;
      w = best;
    }
  }
  return w;
}

int sheet_of(const CurvePoint& p) {
  cplx w0 = cbrt_principal(p.z() * (std::pow(p.z(), 4) - 1.0));
  for (int k = 0; k < 3; ++k)
    if (std::abs(zeta3(k) * w0 - p.w()) < 1e-7) return k;
  return -1;
}
}  // namespace

TEST_CASE("lift: principal cube root examples") {
  CurvePoint p = lift(2.0, 0);
  CHECK(std::abs(p.w() - std::cbrt(30.0)) < 1e-12);
  CHECK(doctest::Approx(std::cbrt(30.0)).epsilon(1e-7) == 3.1072325);

  CurvePoint q = lift(2.0, 1);
  CHECK(std::abs(q.w() - zeta3(1) * std::cbrt(30.0)) < 1e-12);

  for (int k = 0; k < 3; ++k) {
    CurvePoint r = lift(-2.0, k);
    cplx cube = r.w() * r.w() * r.w();
    CHECK(std::abs(cube - cplx(-30.0, 0.0)) < 1e-9);
    CHECK(r.on_curve());
  }
}

TEST_CASE("lift: branch values rejected") {
  CHECK_THROWS_AS(lift(cplx(0.0, 0.0), 0), BranchPointLift);
  CHECK_THROWS_AS(lift(cplx(0.0, 1.0), 2), BranchPointLift);
}

TEST_CASE("fiber has exactly three points (degree 3)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    cplx z = std::polar(0.2 + 3.0 * unif(rng), 2.0 * kPi * unif(rng));
    if (is_branch_value(z, 1e-3)) continue;
    std::set<std::pair<double, double>> pts;
    for (int k = 0; k < 3; ++k) {
      CurvePoint p = lift(z, k);
      CHECK(p.on_curve());
      pts.insert({p.w().real(), p.w().imag()});
    }
    CHECK(pts.size() == 3);
  }
}

TEST_CASE("deck: definition, order 3, commutes with tau") {
  CHECK(std::abs(deck(lift(2.0, 0), 1).w() - lift(2.0, 1).w()) < 1e-14);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    CurvePoint p = random_point(rng);
    CurvePoint q = deck(deck(p, 1), 2);
    CHECK(std::abs(q.z() - p.z()) < 1e-12);
    CHECK(std::abs(q.w() - p.w()) < 1e-10 * (1.0 + std::abs(p.w())));

    CurvePoint a = deck(tau(p), 1);
    CurvePoint b = tau(deck(p, 1));
    CHECK(std::abs(a.a - b.a) < 1e-12);
    CHECK(std::abs(a.b - b.b) < 1e-12);
  }
}

TEST_CASE("tau: order 12, stays on curve, z-action of tau^3") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    CurvePoint p = random_point(rng);
    CurvePoint q = p;
    for (int k = 0; k < 12; ++k) {
      q = tau(q);
      CHECK(q.curve_residual() < 1e-10);
    }
    CHECK(std::abs(q.z() - p.z()) < 1e-9 * (1.0 + std::abs(p.z())));
    CHECK(std::abs(q.w() - p.w()) < 1e-9 * (1.0 + std::abs(p.w())));

    CurvePoint t3 = tau(tau(tau(p)));
    CHECK(std::abs(t3.z() - cplx(0.0, -1.0) * p.z()) <
          1e-9 * (1.0 + std::abs(p.z())));
  }
}

TEST_CASE("continuation: constant path is the identity") {
  SheetPath path({cplx(2.0, 0.0), cplx(2.0, 0.0)}, lift(2.0, 0));
  CurvePoint e = continue_path(path);
  CHECK(std::abs(e.w() - lift(2.0, 0).w()) < 1e-12);
}

TEST_CASE("continuation: circle of radius 1/2 around 0 shifts one sheet") {
  auto loop = polygon_loop(cplx(0.0, 0.0), 0.5, 64);
  SheetPath path(loop, lift(loop.front(), 0));
  CurvePoint e = continue_path(path);
  int s = sheet_of(e);

  // oracle: 1e5-step brute force decides the shift direction
  cplx w_brute = continue_brute(loop, lift(loop.front(), 0).w(), 2000);
  CHECK(std::abs(e.w() - w_brute) < 1e-6);
  CHECK(s == 1);  // frozen from the oracle: arg z(z^4-1) ~ arg(-z) winds once
}

TEST_CASE("continuation: big circle equals product of finite monodromies") {
  auto loop = polygon_loop(cplx(0.0, 0.0), 3.0, 96);
  SheetPath path(loop, lift(loop.front(), 0));
  CurvePoint e = continue_path(path);
  // five finite branch points, shift +1 each: total 5 = 2 mod 3
  CHECK(sheet_of(e) == 2);

  cplx w_brute = continue_brute(loop, lift(loop.front(), 0).w(), 3000);
  CHECK(std::abs(e.w() - w_brute) < 1e-5);
}

TEST_CASE("monodromy around each finite branch value is one deck step") {
  for (const cplx& b : finite_branch_values()) {
    auto loop = polygon_loop(b, 0.4, 48);
    SheetPath path(loop, lift(loop.front(), 0));
    CHECK(sheet_of(continue_path(path)) == 1);
  }
}

TEST_CASE("path-homotopy invariance in the punctured plane") {
  // two homotopic routes from 2 to -2i avoiding all branch values
  CurvePoint start = lift(cplx(2.0, 0.0), 0);
  SheetPath a({cplx(2.0, 0.0), cplx(2.0, -2.0), cplx(0.0, -2.0)}, start);
  SheetPath b({cplx(2.0, 0.0), cplx(2.5, -1.0), cplx(1.4, -2.4), cplx(0.0, -2.0)},
              start);
  CurvePoint ea = continue_path(a);
  CurvePoint eb = continue_path(b);
  CHECK(std::abs(ea.w() - eb.w()) < 1e-8);
}

TEST_CASE("clearance: segment through a branch value rejected") {
  SheetPath bad({cplx(2.0, 0.0), cplx(-2.0, 1e-5)}, lift(2.0, 0));
  CHECK_THROWS_AS(continue_path(bad), PathClearance);
}

TEST_CASE("deck fixed points are exactly the branch points") {
  // w = zeta3 w <=> w = 0; check no fixed point off the branch set
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    CurvePoint p = random_point(rng);
    CHECK(std::abs(deck(p, 1).w() - p.w()) > 1e-6);
  }
}
