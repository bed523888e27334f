#pragma once

#include <random>

#include "sesem/problem.hpp"
#include "sesem/subsolver.hpp"

namespace sesem {

// Affine trial map d -> base + M d with every entry of M in [-1,1];
// apply(0) is the base point.
struct AffineMap {
  Vector base;
  Matrix M;

  Vector apply(const Vector& d) const { return base + M * d; }
};

// Fresh matrix with i.i.d. uniform [-1,1] entries, one per outer iteration.
AffineMap sample_affine_map(const Vector& x_k, Index n_red, std::mt19937_64& rng);

// Minimizes ||F(x_k + M d)||^2 over d in [-delta, delta]^n_red starting from
// d = 0. Every inner evaluation counts against the problem's global budget.
// Subsolver failure degrades to returning x_k.
Vector propose_affine(ResidualProblem& problem, const AffineMap& map,
                      const Subsolver& subsolver, long long budget, Scalar delta, Scalar tol);

// Variable-node linear spline on [0,1]: ordinates v_0..v_{kappa+1} at the
// positions (0, p_1..p_kappa, 1). The reduced dimension is 2*kappa+2.
struct SplineParams {
  Vector values;  // v_0..v_{kappa+1}
  Vector nodes;   // p_1..p_kappa, each in [0,1]

  Index kappa() const { return nodes.size(); }
};

// Sorted node list with exact duplicates collapsed; produced only by
// canonicalize.
struct CanonicalSpline {
  Vector nodes;   // strictly increasing, nodes[0] = 0, nodes[last] = 1
  Vector values;
};

// Sorts the full node list and collapses groups of exactly-equal positions
// into one node carrying the arithmetic mean of the group's ordinates.
CanonicalSpline canonicalize(const SplineParams& params);

// Exact linear interpolation; t must lie in [0,1].
Scalar eval_spline(const CanonicalSpline& spline, Scalar t);

// Displacement sampled on the uniform grid t_i = i/(n-1), i = 0..n-1.
Vector spline_displacement(const CanonicalSpline& spline, Index n);

// Minimizes ||F(x_k + d(v,p))||^2 over the box {v in [-v_box, v_box]^{kappa+2},
// p in [0,1]^kappa}, starting from v = 0 and random p.
Vector propose_spline(ResidualProblem& problem, const Vector& x_k, Index kappa,
                      const Subsolver& subsolver, long long budget, Scalar v_box, Scalar tol,
                      std::mt19937_64& rng);

}  // namespace sesem
