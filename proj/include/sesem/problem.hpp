#pragma once

#include <functional>
#include <stdexcept>
#include <utility>

#include "sesem/types.hpp"

namespace sesem {

// Thrown by ResidualProblem::evaluate once the caller-provided evaluation
// budget is used up. The solver catches it and returns its best iterate with
// the feval_budget termination reason.
class EvalBudgetExhausted : public std::runtime_error {
 public:
  explicit EvalBudgetExhausted(long long limit)
      : std::runtime_error("residual evaluation budget exhausted"), limit_(limit) {}
  long long limit() const { return limit_; }

 private:
  long long limit_;
};

// Evaluatable residual map F: R^n -> R^m with a monotone evaluation counter.
// Evaluation must be deterministic: the same point yields a bitwise-identical
// residual vector.
class ResidualProblem {
 public:
  using ResidualFn = std::function<Vector(const Vector&)>;

  ResidualProblem(Index n, Index m, ResidualFn fn);

  Index n() const { return n_; }
  Index m() const { return m_; }
  long long eval_count() const { return eval_count_; }

  // Absolute cap on eval_count; negative disables the cap.
  void set_eval_limit(long long limit) { eval_limit_ = limit; }
  long long eval_limit() const { return eval_limit_; }

  // Increments eval_count by exactly 1; throws EvalBudgetExhausted when the
  // cap would be exceeded (the evaluation then does not happen).
  Vector evaluate(const Vector& x);

 private:
  Index n_;
  Index m_;
  ResidualFn fn_;
  long long eval_count_ = 0;
  long long eval_limit_ = -1;
};

// f(x) = 0.5 * ||F(x)||^2; the residual is returned together with the value
// so callers never evaluate twice at the same point.
std::pair<Scalar, Vector> objective_value(ResidualProblem& problem, const Vector& x);

inline Scalar objective_of(const Vector& residual) { return 0.5 * residual.squaredNorm(); }

}  // namespace sesem
