#pragma once

#include <functional>
#include <optional>
#include <random>

#include "sesem/config.hpp"
#include "sesem/problem.hpp"
#include "sesem/reduction.hpp"
#include "sesem/result.hpp"
#include "sesem/rng.hpp"
#include "sesem/secant.hpp"
#include "sesem/subsolver.hpp"

namespace sesem {

// Current iterate with its cached residual; f is always 0.5 * ||F||^2 for
// the residual actually evaluated at x.
struct IterationState {
  long long k = 0;
  Vector x;
  Vector F;
  Scalar f = 0.0;
  Scalar eta_k = 0.0;
};

// Accepted trial point of one iteration; reduction steps always carry
// alpha = 1.
struct StepOutcome {
  Vector x_trial;
  Vector F_trial;
  Scalar f_trial = 0.0;
  Scalar alpha = 1.0;
  StepKind kind = StepKind::reduction;
};

// Trial acceptance for reduction proposals (unit step).
bool reduction_descent_test(Scalar f_trial, Scalar f_k, Scalar eta_k, Scalar gamma,
                            Scalar f_target);

// Trial acceptance along the fallback direction; the required decrease
// scales with alpha^2.
bool linesearch_descent_test(Scalar f_trial, Scalar f_k, Scalar eta_k, Scalar gamma,
                             Scalar alpha, Scalar f_target);

// Uniform draw on the unit sphere: standard-normal components, normalized.
Vector random_unit_vector(Index n, std::mt19937_64& rng);

// Closed-form minimizer of <v, d> over the Euclidean ball of radius delta.
inline Vector linear_direction(const Vector& v, Scalar delta) { return -delta * v; }

// Halves alpha from 1 until the descent test passes, evaluating the residual
// once per trial; empty when max_halvings trials all fail.
std::optional<StepOutcome> fallback_linesearch(ResidualProblem& problem,
                                               const IterationState& state, const Vector& v,
                                               const SolverConfig& config);

// One reduction trial point; an empty proposer disables the reduction path
// so every iteration goes through the random-direction line search.
using ReductionProposer =
    std::function<Vector(ResidualProblem&, const Vector& x_k, RngStreams&)>;

ReductionProposer make_reduction_proposer(const SolverConfig& config,
                                          Subsolver subsolver = nelder_mead_minimize);

// Outer descent loop: target test, reduction proposal, descent test,
// random-direction fallback when the proposal is rejected or does not move,
// then a secant acceleration attempt after every accepted trial.
SolveResult solve(ResidualProblem& problem, const Vector& x0, const SolverConfig& config);
SolveResult solve(ResidualProblem& problem, const Vector& x0, const SolverConfig& config,
                  const ReductionProposer& proposer);

}  // namespace sesem
