#pragma once

#include <cstdint>

#include "sesem/types.hpp"

namespace sesem {

enum class ReductionKind { none, affine, spline };

// All tunables of one solver run. The target lives on the ||F||^2 scale
// (the scale reports use); descent tests divide by two internally.
struct SolverConfig {
  Scalar ssq_target = 0.0;       // stop as soon as ||F(x^k)||^2 <= ssq_target
  Scalar delta = 10.0;           // radius of the fallback direction ball
  Scalar gamma = 1e-4;           // descent fraction, in (0,1)
  Scalar eta0 = 0.0;             // slack base; 0 means 1e-3 * max(1, f(x^0))
  int memory_p = 1000;           // secant history capacity
  int n_red = 4;                 // reduced dimension (spline: 2*kappa+2)
  ReductionKind reduction = ReductionKind::affine;
  int subsolver_budget = 0;      // residual evaluations per reduced solve; 0 = auto
  long long max_outer_iters = 100000;
  long long max_fevals = 1000000;
  int max_halvings = 60;         // alpha underflows double precision near 2^-60
  Scalar rcond = 1e-12;          // pseudo-inverse truncation ratio
  Scalar subsolver_tol = 1e-8;   // simplex-diameter stop for the inner solver
  bool use_acceleration = true;
  std::uint64_t seed = 1;

  Scalar f_target() const { return 0.5 * ssq_target; }
  int spline_kappa() const { return n_red / 2 - 1; }
  int effective_subsolver_budget() const;

  // Throws std::invalid_argument on any violated range.
  void validate() const;
};

// Summable per-iteration slack: eta_k = eta0 / (k+1)^2, so the series sums
// to eta0 * pi^2 / 6.
Scalar eta(long long k, Scalar eta0);

}  // namespace sesem
