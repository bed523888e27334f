#include "sesem/problem.hpp"

namespace sesem {

ResidualProblem::ResidualProblem(Index n, Index m, ResidualFn fn)
    : n_(n), m_(m), fn_(std::move(fn)) {
  if (n_ < 1 || m_ < 1) throw std::invalid_argument("ResidualProblem: n and m must be positive");
  if (!fn_) throw std::invalid_argument("ResidualProblem: missing residual function");
}

Vector ResidualProblem::evaluate(const Vector& x) {
  if (x.size() != n_) throw std::invalid_argument("ResidualProblem: point has wrong dimension");
  if (eval_limit_ >= 0 && eval_count_ >= eval_limit_) throw EvalBudgetExhausted(eval_limit_);
  ++eval_count_;
  Vector r = fn_(x);
  if (r.size() != m_) throw std::logic_error("ResidualProblem: residual has wrong dimension");
  return r;
}

std::pair<Scalar, Vector> objective_value(ResidualProblem& problem, const Vector& x) {
  Vector r = problem.evaluate(x);
  Scalar f = objective_of(r);
  return {f, std::move(r)};
}

}  // namespace sesem
