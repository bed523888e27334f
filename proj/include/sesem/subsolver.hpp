#pragma once

#include <functional>
#include <limits>

#include "sesem/types.hpp"

namespace sesem {

// Componentwise bounds for the reduced variable. Unbounded sides are
// represented by very large finite sentinels so clamping stays trivial.
struct Box {
  Vector lower;
  Vector upper;

  static Box centered(Index dim, Scalar half_width);

  bool contains(const Vector& x, Scalar slack = 0.0) const;
  Vector project(const Vector& x) const;
};

struct InnerReport {
  Vector x_best;
  Scalar f_best = std::numeric_limits<Scalar>::quiet_NaN();
  long long nevals = 0;
  bool converged = false;
};

using InnerObjective = std::function<Scalar(const Vector&)>;

using Subsolver = std::function<InnerReport(const InnerObjective& g, const Vector& x0,
                                            const Box& box, long long budget, Scalar tol)>;

// Bound-constrained derivative-free minimizer: Nelder-Mead simplex with
// componentwise projection onto the box and one restart from the incumbent
// when the simplex collapses below tol. Deterministic; never evaluates g
// outside the box; the returned evaluation count is exact. A budget below
// dim+2 yields a degenerate report (x0 returned, converged=false, no evals).
InnerReport nelder_mead_minimize(const InnerObjective& g, const Vector& x0, const Box& box,
                                 long long budget, Scalar tol);

}  // namespace sesem
