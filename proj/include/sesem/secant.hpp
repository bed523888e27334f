#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <utility>

#include "sesem/types.hpp"

namespace sesem {

// Bounded FIFO of (displacement, residual-difference) pairs, oldest first.
// Each stored y was formed from cached residuals, never re-evaluated.
class SecantHistory {
 public:
  explicit SecantHistory(std::size_t capacity);

  std::size_t size() const { return pairs_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return pairs_.empty(); }
  void clear() { pairs_.clear(); }

  const std::pair<Vector, Vector>& operator[](std::size_t i) const { return pairs_[i]; }

  // Appends a pair, evicting the oldest when over capacity.
  void push(Vector s, Vector y);

 private:
  std::size_t capacity_;
  std::deque<std::pair<Vector, Vector>> pairs_;
};

// Minimum-norm least-squares solution of Y z ~= r via singular value
// decomposition; singular values below rcond * sigma_max are treated as
// zero. An empty Y or a fully truncated spectrum yields z = 0.
Vector min_norm_lstsq(const Matrix& Y, const Vector& r, Scalar rcond);

// x_accel = x_k - S (Y^+ F_k), where the columns of S and Y are the history
// pairs followed by the trial pair (x_trial - x_k, F_trial - F_k). Columns
// with exactly zero residual difference are dropped together with their
// displacement partners; returns nothing when no columns survive.
std::optional<Vector> accelerate(const SecantHistory& history, const Vector& x_k,
                                 const Vector& F_k, const Vector& x_trial,
                                 const Vector& F_trial, Scalar rcond);

// The accelerated point wins ties: true iff f_accel <= f_trial (false for NaN).
bool accept_accel(Scalar f_accel, Scalar f_trial);

// Records the completed iteration's pair (x_next - x_k, F_next - F_k).
void push_accepted(SecantHistory& history, const Vector& x_k, const Vector& x_next,
                   const Vector& F_k, const Vector& F_next);

}  // namespace sesem
