#pragma once

#include <random>
#include <vector>

#include "sesem/config.hpp"
#include "sesem/problem.hpp"
#include "sesem/result.hpp"

namespace sesem::testing {

// F(x) = A x - b; the least-squares solution solves the normal equations.
inline ResidualProblem affine_problem(const Matrix& A, const Vector& b) {
  return ResidualProblem(A.cols(), A.rows(), [A, b](const Vector& x) { return A * x - b; });
}

// F(x) = x - c, so f has its minimum 0 at c.
inline ResidualProblem shifted_identity_problem(const Vector& c) {
  return ResidualProblem(c.size(), c.size(), [c](const Vector& x) { return x - c; });
}

// Trace conformance used by the invariant suites: slack-bounded increase per
// step, the summed-slack bound against f(x^0), monotone acceptance of the
// acceleration decision, and iterate continuity. Returns the violation count.
inline int trace_violations(const SolveResult& result) {
  int bad = 0;
  Scalar slack_sum = 0.0;
  const Scalar f0 = result.trace.empty() ? result.f_best : result.trace.front().f;
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const TraceRow& row = result.trace[i];
    if (!(row.f_next <= row.f + row.eta_k)) ++bad;
    if (!(row.f_next <= row.f_trial)) ++bad;
    if (!(row.f <= f0 + slack_sum)) ++bad;
    if (row.kind == StepKind::reduction && row.alpha != 1.0) ++bad;
    if (i + 1 < result.trace.size() && result.trace[i + 1].f != row.f_next) ++bad;
    slack_sum += row.eta_k;
  }
  return bad;
}

}  // namespace sesem::testing
