#include "sesem/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace sesem {

bool reduction_descent_test(Scalar f_trial, Scalar f_k, Scalar eta_k, Scalar gamma,
                            Scalar f_target) {
  return f_trial <= f_k + eta_k - gamma * (f_k - f_target);
}

bool linesearch_descent_test(Scalar f_trial, Scalar f_k, Scalar eta_k, Scalar gamma,
                             Scalar alpha, Scalar f_target) {
  return f_trial <= f_k + eta_k - gamma * alpha * alpha * (f_k - f_target);
}

Vector random_unit_vector(Index n, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("random_unit_vector: n must be positive");
  std::normal_distribution<Scalar> gauss(0.0, 1.0);
  Vector v(n);
  Scalar norm = 0.0;
  do {
    for (Index i = 0; i < n; ++i) v[i] = gauss(rng);
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

std::optional<StepOutcome> fallback_linesearch(ResidualProblem& problem,
                                               const IterationState& state, const Vector& v,
                                               const SolverConfig& config) {
  const Vector d = linear_direction(v, config.delta);
  const Scalar f_target = config.f_target();
  Scalar alpha = 1.0;
  for (int j = 0; j <= config.max_halvings; ++j) {
    Vector x_trial = state.x + alpha * d;
    auto [f_trial, F_trial] = objective_value(problem, x_trial);
    if (linesearch_descent_test(f_trial, state.f, state.eta_k, config.gamma, alpha, f_target))
      return StepOutcome{std::move(x_trial), std::move(F_trial), f_trial, alpha,
                         StepKind::linesearch};
    alpha *= 0.5;
  }
  return std::nullopt;
}

ReductionProposer make_reduction_proposer(const SolverConfig& config, Subsolver subsolver) {
  const long long budget = config.effective_subsolver_budget();
  switch (config.reduction) {
    case ReductionKind::none:
      return {};
    case ReductionKind::affine:
      return [n_red = config.n_red, delta = config.delta, tol = config.subsolver_tol, budget,
              subsolver](ResidualProblem& problem, const Vector& x_k, RngStreams& rng) {
        AffineMap map = sample_affine_map(x_k, n_red, rng.affine_matrix());
        return propose_affine(problem, map, subsolver, budget, delta, tol);
      };
    case ReductionKind::spline:
      return [kappa = config.spline_kappa(), v_box = config.delta, tol = config.subsolver_tol,
              budget, subsolver](ResidualProblem& problem, const Vector& x_k, RngStreams& rng) {
        return propose_spline(problem, x_k, kappa, subsolver, budget, v_box, tol,
                              rng.spline_init());
      };
  }
  return {};
}

namespace {

bool bitwise_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace

SolveResult solve(ResidualProblem& problem, const Vector& x0, const SolverConfig& config) {
  return solve(problem, x0, config, make_reduction_proposer(config));
}

SolveResult solve(ResidualProblem& problem, const Vector& x0, const SolverConfig& config,
                  const ReductionProposer& proposer) {
  config.validate();
  if (problem.n() < 2) throw std::invalid_argument("solve: problem dimension must be >= 2");
  if (x0.size() != problem.n()) throw std::invalid_argument("solve: x0 has wrong dimension");

  const long long start_count = problem.eval_count();
  const long long saved_limit = problem.eval_limit();
  problem.set_eval_limit(start_count + config.max_fevals);

  SolveResult result;
  RngStreams rng(config.seed);
  SecantHistory history(static_cast<std::size_t>(config.memory_p));
  const Scalar f_target = config.f_target();

  auto finish = [&](Termination why, long long iters) {
    result.termination = why;
    result.outer_iters = iters;
    result.fevals = problem.eval_count() - start_count;
    result.ssq_best = 2.0 * result.f_best;
    problem.set_eval_limit(saved_limit);
    return result;
  };

  IterationState state;
  state.x = x0;
  try {
    std::tie(state.f, state.F) = objective_value(problem, state.x);
  } catch (const EvalBudgetExhausted&) {
    return finish(Termination::feval_budget, 0);
  }
  result.x_best = state.x;
  result.f_best = state.f;

  const Scalar eta0 = config.eta0 > 0.0 ? config.eta0 : 1e-3 * std::max(Scalar(1), state.f);

  try {
    while (true) {
      if (2.0 * state.f <= config.ssq_target) return finish(Termination::target_reached, state.k);
      if (state.k >= config.max_outer_iters) return finish(Termination::iter_budget, state.k);
      state.eta_k = eta(state.k, eta0);

      std::optional<StepOutcome> step;
      if (proposer) {
        Vector x_trial = proposer(problem, state.x, rng);
        if (!bitwise_equal(x_trial, state.x)) {
          auto [f_trial, F_trial] = objective_value(problem, x_trial);
          if (reduction_descent_test(f_trial, state.f, state.eta_k, config.gamma, f_target))
            step = StepOutcome{std::move(x_trial), std::move(F_trial), f_trial, 1.0,
                               StepKind::reduction};
        }
      }
      if (!step) {
        Vector v = random_unit_vector(problem.n(), rng.direction());
        step = fallback_linesearch(problem, state, v, config);
        if (!step) return finish(Termination::stalled, state.k);
      }

      // Acceleration is attempted after every accepted trial, including
      // reduction-accepted ones; the candidate costs one evaluation and is
      // discarded without one when non-finite.
      Vector x_next = std::move(step->x_trial);
      Vector F_next = std::move(step->F_trial);
      Scalar f_next = step->f_trial;
      bool accel_used = false;
      if (config.use_acceleration && state.k >= 1) {
        auto candidate = accelerate(history, state.x, state.F, x_next, F_next, config.rcond);
        if (candidate && candidate->allFinite()) {
          auto [f_accel, F_accel] = objective_value(problem, *candidate);
          if (accept_accel(f_accel, step->f_trial)) {
            x_next = std::move(*candidate);
            F_next = std::move(F_accel);
            f_next = f_accel;
            accel_used = true;
            ++result.accel_accepts;
          } else {
            ++result.accel_rejects;
          }
        } else if (candidate) {
          ++result.accel_rejects;
        }
      }

      push_accepted(history, state.x, x_next, state.F, F_next);
      result.trace.push_back({state.k, state.f, step->f_trial, f_next, state.eta_k, step->alpha,
                              step->kind, accel_used, problem.eval_count() - start_count});
      if (f_next < result.f_best) {
        result.f_best = f_next;
        result.x_best = x_next;
      }
      state.x = std::move(x_next);
      state.F = std::move(F_next);
      state.f = f_next;
      ++state.k;
    }
  } catch (const EvalBudgetExhausted&) {
    return finish(Termination::feval_budget, state.k);
  }
}

}  // namespace sesem
