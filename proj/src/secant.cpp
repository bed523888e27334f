#include "sesem/secant.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/SVD>
#include <lapacke.h>

namespace sesem {

SecantHistory::SecantHistory(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ < 1) throw std::invalid_argument("SecantHistory: capacity must be positive");
}

void SecantHistory::push(Vector s, Vector y) {
  if (!pairs_.empty() &&
      (pairs_.front().first.size() != s.size() || pairs_.front().second.size() != y.size()))
    throw std::logic_error("SecantHistory: pair dimensions changed mid-run");
  pairs_.emplace_back(std::move(s), std::move(y));
  while (pairs_.size() > capacity_) pairs_.pop_front();
}

namespace {

// Divide-and-conquer SVD least squares (dgelsd) carries the exact same
// truncation semantics and beats the dense Eigen SVD by a wide margin at the
// column counts the acceleration reaches; small systems stay on Eigen.
constexpr Index kLapackCutoff = 48;

Vector min_norm_lstsq_lapack(const Matrix& Y, const Vector& r, Scalar rcond) {
  const lapack_int m = static_cast<lapack_int>(Y.rows());
  const lapack_int q = static_cast<lapack_int>(Y.cols());
  Matrix A = Y;  // dgelsd overwrites its input
  Vector b = Vector::Zero(std::max(Y.rows(), Y.cols()));
  b.head(Y.rows()) = r;
  Vector sv(std::min(Y.rows(), Y.cols()));
  lapack_int rank = 0;
  lapack_int info = LAPACKE_dgelsd(LAPACK_COL_MAJOR, m, q, 1, A.data(), m, b.data(),
                                   std::max(m, q), sv.data(), rcond, &rank);
  if (info != 0) return Vector();  // no convergence; caller falls back
  return b.head(Y.cols());
}

}  // namespace

Vector min_norm_lstsq(const Matrix& Y, const Vector& r, Scalar rcond) {
  if (Y.cols() == 0) return Vector();
  if (Y.rows() >= kLapackCutoff || Y.cols() >= kLapackCutoff) {
    Vector z = min_norm_lstsq_lapack(Y, r, rcond);
    if (z.size() == Y.cols()) return z;
  }
  Eigen::BDCSVD<Matrix> svd(Y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(rcond);
  return svd.solve(r);
}

std::optional<Vector> accelerate(const SecantHistory& history, const Vector& x_k,
                                 const Vector& F_k, const Vector& x_trial,
                                 const Vector& F_trial, Scalar rcond) {
  const Index n = x_k.size();
  const Index m = F_k.size();

  Matrix S(n, static_cast<Index>(history.size()) + 1);
  Matrix Y(m, static_cast<Index>(history.size()) + 1);
  Index cols = 0;
  auto append = [&](const Vector& s, const Vector& y) {
    if (s.size() != n || y.size() != m)
      throw std::logic_error("accelerate: history pair dimension mismatch");
    if (y.squaredNorm() == 0.0) return;  // degenerate pair, skip with its partner
    S.col(cols) = s;
    Y.col(cols) = y;
    ++cols;
  };
  for (std::size_t j = 0; j < history.size(); ++j) append(history[j].first, history[j].second);
  append(x_trial - x_k, F_trial - F_k);
  if (cols == 0) return std::nullopt;

  Vector z = min_norm_lstsq(Y.leftCols(cols), F_k, rcond);
  return x_k - S.leftCols(cols) * z;
}

bool accept_accel(Scalar f_accel, Scalar f_trial) {
  return f_accel <= f_trial;  // NaN compares false
}

void push_accepted(SecantHistory& history, const Vector& x_k, const Vector& x_next,
                   const Vector& F_k, const Vector& F_next) {
  history.push(x_next - x_k, F_next - F_k);
}

}  // namespace sesem
