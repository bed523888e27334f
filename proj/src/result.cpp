#include "sesem/result.hpp"

namespace sesem {

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::reduction: return "reduction";
    case StepKind::linesearch: return "linesearch";
  }
  return "unknown";
}

const char* to_string(Termination reason) {
  switch (reason) {
    case Termination::target_reached: return "target_reached";
    case Termination::feval_budget: return "feval_budget";
    case Termination::iter_budget: return "iter_budget";
    case Termination::stalled: return "stalled";
  }
  return "unknown";
}

}  // namespace sesem
