#include "sesem/config.hpp"

#include <stdexcept>

namespace sesem {

int SolverConfig::effective_subsolver_budget() const {
  if (subsolver_budget > 0) return subsolver_budget;
  // Low-dimensional subspaces get a short leash and lean on acceleration;
  // the spline proposer carries more of the descent and pays for it.
  int per_dim = (reduction == ReductionKind::spline) ? 6 : 3;
  int budget = per_dim * n_red;
  return budget < n_red + 2 ? n_red + 2 : budget;
}

void SolverConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("config: gamma must be in (0,1)");
  if (!(delta > 0.0)) throw std::invalid_argument("config: delta must be positive");
  if (reduction != ReductionKind::none && n_red < 1)
    throw std::invalid_argument("config: n_red must be at least 1");
  if (reduction == ReductionKind::spline && (n_red < 2 || n_red % 2 != 0))
    throw std::invalid_argument("config: spline reduction needs even n_red >= 2");
  if (memory_p < 1) throw std::invalid_argument("config: memory_p must be at least 1");
  if (!(rcond > 0.0 && rcond < 1.0)) throw std::invalid_argument("config: rcond must be in (0,1)");
  if (eta0 < 0.0) throw std::invalid_argument("config: eta0 must be nonnegative");
  if (max_halvings < 1) throw std::invalid_argument("config: max_halvings must be positive");
  if (max_fevals < 1) throw std::invalid_argument("config: max_fevals must be positive");
  if (max_outer_iters < 0) throw std::invalid_argument("config: max_outer_iters must be nonnegative");
  if (subsolver_budget < 0) throw std::invalid_argument("config: subsolver_budget must be nonnegative");
  if (!(subsolver_tol > 0.0)) throw std::invalid_argument("config: subsolver_tol must be positive");
}

Scalar eta(long long k, Scalar eta0) {
  Scalar kk = static_cast<Scalar>(k + 1);
  return eta0 / (kk * kk);
}

}  // namespace sesem
