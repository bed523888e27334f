#pragma once

#include <limits>
#include <vector>

#include "sesem/types.hpp"

namespace sesem {

enum class StepKind { reduction, linesearch };
enum class Termination { target_reached, feval_budget, iter_budget, stalled };

const char* to_string(StepKind kind);
const char* to_string(Termination reason);

// One completed outer iteration. f is the objective entering the iteration,
// f_trial the accepted trial, f_next the iterate after the acceleration
// decision; f_next <= f_trial always.
struct TraceRow {
  long long k = 0;
  Scalar f = 0.0;
  Scalar f_trial = 0.0;
  Scalar f_next = 0.0;
  Scalar eta_k = 0.0;
  Scalar alpha = 1.0;
  StepKind kind = StepKind::reduction;
  bool accel_used = false;
  long long fevals_cum = 0;
};

struct SolveResult {
  Vector x_best;
  Scalar f_best = std::numeric_limits<Scalar>::infinity();
  Scalar ssq_best = std::numeric_limits<Scalar>::infinity();  // always 2 * f_best
  long long outer_iters = 0;
  long long fevals = 0;
  long long accel_accepts = 0;
  long long accel_rejects = 0;
  Termination termination = Termination::iter_budget;
  std::vector<TraceRow> trace;
};

}  // namespace sesem
