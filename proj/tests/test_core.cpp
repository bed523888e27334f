#include <doctest.h>

#include <cmath>
#include <set>

#include "sesem/config.hpp"
#include "sesem/problem.hpp"
#include "sesem/rng.hpp"

using namespace sesem;

TEST_CASE("objective value halves the squared residual norm") {
  ResidualProblem zero(3, 3, [](const Vector&) { return Vector::Zero(3); });
  auto [f0, r0] = objective_value(zero, Vector::Zero(3));
  CHECK(f0 == 0.0);
  CHECK(r0.size() == 3);

  ResidualProblem p34(2, 2, [](const Vector&) {
    Vector r(2);
    r << 3.0, 4.0;
    return r;
  });
  auto [f, r] = objective_value(p34, Vector::Zero(2));
  CHECK(f == doctest::Approx(12.5).epsilon(0.0));
  CHECK(objective_of(r) == f);
}

TEST_CASE("every evaluation increments the counter by exactly one") {
  ResidualProblem p(2, 2, [](const Vector& x) { return Vector(2.0 * x); });
  CHECK(p.eval_count() == 0);
  p.evaluate(Vector::Zero(2));
  CHECK(p.eval_count() == 1);
  objective_value(p, Vector::Ones(2));
  CHECK(p.eval_count() == 2);
}

TEST_CASE("evaluation is deterministic and dimension-checked") {
  ResidualProblem p(3, 2, [](const Vector& x) {
    Vector r(2);
    r << x.sum(), x.squaredNorm();
    return r;
  });
  Vector x(3);
  x << 0.1, -2.5, 3.25;
  Vector a = p.evaluate(x);
  Vector b = p.evaluate(x);
  CHECK((a.array() == b.array()).all());
  CHECK_THROWS_AS(p.evaluate(Vector::Zero(2)), std::invalid_argument);
}

TEST_CASE("exhausted budget raises without consuming an evaluation") {
  ResidualProblem p(2, 2, [](const Vector& x) { return Vector(x); });
  p.set_eval_limit(2);
  p.evaluate(Vector::Zero(2));
  p.evaluate(Vector::Zero(2));
  CHECK_THROWS_AS(p.evaluate(Vector::Zero(2)), EvalBudgetExhausted);
  CHECK(p.eval_count() == 2);
}

TEST_CASE("eta sequence: definition and summability") {
  CHECK(eta(0, 1e-3) == 1e-3);
  CHECK(eta(3, 1e-3) == doctest::Approx(6.25e-5).epsilon(1e-15));

  // Partial sums stay below eta0 * pi^2 / 6; the first 1e6 terms already
  // exhaust the series to within 1e-5 relative.
  const Scalar eta0 = 1e-3;
  Scalar sum = 0.0;
  for (long long k = 0; k < 1000000; ++k) sum += eta(k, eta0);
  const Scalar bound = eta0 * M_PI * M_PI / 6.0;
  CHECK(sum < bound);
  CHECK(sum > bound * (1.0 - 1e-5));
  for (long long k = 0; k < 50; ++k) CHECK(eta(k, eta0) > 0.0);
}

TEST_CASE("config validation rejects out-of-range values") {
  SolverConfig config;
  CHECK_NOTHROW(config.validate());
  SolverConfig bad = config;
  bad.gamma = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.delta = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.reduction = ReductionKind::spline;
  bad.n_red = 7;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.rcond = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("rng substreams are purpose-separated and reproducible") {
  RngStreams a(42);
  RngStreams b(42);
  CHECK(a.direction()() == b.direction()());
  CHECK(a.obs_mask()() == b.obs_mask()());

  std::set<std::uint64_t> seeds;
  for (const char* tag :
       {"direction", "affine_matrix", "spline_init", "obs_mask", "manning_perturb"})
    seeds.insert(RngStreams::substream_seed(42, tag));
  CHECK(seeds.size() == 5);

  RngStreams c(43);
  CHECK(RngStreams::substream_seed(42, "direction") !=
        RngStreams::substream_seed(43, "direction"));
  CHECK(a.direction()() != c.direction()());
}
