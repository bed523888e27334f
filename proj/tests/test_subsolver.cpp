#include <doctest.h>

#include <cmath>
#include <random>

#include "sesem/subsolver.hpp"

using namespace sesem;

namespace {

// Wraps an objective with an exact call counter and an in-box assertion.
struct Probe {
  InnerObjective g;
  Box box;
  long long calls = 0;
  Scalar seen_min = std::numeric_limits<Scalar>::infinity();
  bool all_inside = true;

  InnerObjective wrapped() {
    return [this](const Vector& x) {
      ++calls;
      if (!box.contains(x, 0.0)) all_inside = false;
      Scalar f = g(x);
      seen_min = std::min(seen_min, f);
      return f;
    };
  }
};

}  // namespace

TEST_CASE("quadratic with interior minimum is solved to high accuracy") {
  Vector c(2);
  c << 0.3, -1.1;
  auto g = [c](const Vector& d) { return (d - c).squaredNorm(); };
  InnerReport report = nelder_mead_minimize(g, Vector::Zero(2), Box::centered(2, 5.0), 200, 1e-10);
  CHECK(report.f_best < 1e-8);
  CHECK(report.nevals <= 200);
}

TEST_CASE("constant objective returns the start point and converges") {
  auto g = [](const Vector&) { return 3.5; };
  Vector x0(3);
  x0 << 0.5, -0.25, 1.0;
  InnerReport report = nelder_mead_minimize(g, x0, Box::centered(3, 2.0), 500, 1e-8);
  CHECK(report.converged);
  CHECK((report.x_best.array() == x0.array()).all());
  CHECK(report.f_best == 3.5);
}

TEST_CASE("minimum outside the box lands on the nearest face") {
  // Separable quadratic: the box-constrained minimizer is the clamp of c.
  Vector c(3);
  c << 4.0, -0.2, 0.7;
  Box box = Box::centered(3, 1.0);
  Vector clamped = box.project(c);
  auto g = [c](const Vector& d) { return (d - c).squaredNorm(); };
  InnerReport report = nelder_mead_minimize(g, Vector::Zero(3), box, 600, 1e-10);
  CHECK((report.x_best - clamped).norm() < 1e-5);
  CHECK(box.contains(report.x_best));
}

TEST_CASE("never evaluates outside the box and counts calls exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<Scalar> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Index dim = 1 + (trial % 5);
    Box box;
    box.lower = Vector::NullaryExpr(dim, [&](Index) { return u(rng); });
    box.upper = box.lower + Vector::NullaryExpr(dim, [&](Index) { return 0.1 + std::abs(u(rng)); });
    Vector x0 = box.project(Vector::NullaryExpr(dim, [&](Index) { return u(rng); }));
    Vector c = Vector::NullaryExpr(dim, [&](Index) { return u(rng); });

    Probe probe{[c](const Vector& d) { return (d - c).squaredNorm(); }, box};
    InnerReport report = nelder_mead_minimize(probe.wrapped(), x0, box, 50 + trial * 10, 1e-9);
    CHECK(probe.all_inside);
    CHECK(report.nevals == probe.calls);
    CHECK(report.f_best == probe.seen_min);
    CHECK(box.contains(report.x_best));
  }
}

TEST_CASE("incumbent never exceeds the start value") {
  auto g = [](const Vector& d) { return std::sin(3.0 * d[0]) + d.squaredNorm(); };
  Vector x0(2);
  x0 << 0.9, 0.4;
  Scalar f0 = g(x0);
  InnerReport report = nelder_mead_minimize(g, x0, Box::centered(2, 3.0), 120, 1e-8);
  CHECK(report.f_best <= f0);
}

TEST_CASE("budget below dim+2 degenerates to the start point") {
  auto g = [](const Vector& d) { return d.squaredNorm(); };
  Vector x0 = Vector::Ones(4);
  InnerReport report = nelder_mead_minimize(g, x0, Box::centered(4, 2.0), 5, 1e-8);
  CHECK(report.nevals == 0);
  CHECK_FALSE(report.converged);
  CHECK((report.x_best.array() == x0.array()).all());
}

TEST_CASE("identical inputs give bitwise-identical results") {
  auto g = [](const Vector& d) { return (d[0] - 0.3) * (d[0] - 0.3) + std::abs(d[1]); };
  Vector x0(2);
  x0 << -0.5, 0.8;
  InnerReport a = nelder_mead_minimize(g, x0, Box::centered(2, 1.0), 90, 1e-9);
  InnerReport b = nelder_mead_minimize(g, x0, Box::centered(2, 1.0), 90, 1e-9);
  CHECK(a.nevals == b.nevals);
  CHECK((a.x_best.array() == b.x_best.array()).all());
  CHECK(a.f_best == b.f_best);
}
