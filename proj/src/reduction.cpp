#include "sesem/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sesem {

AffineMap sample_affine_map(const Vector& x_k, Index n_red, std::mt19937_64& rng) {
  if (n_red < 1 || n_red > x_k.size())
    throw std::invalid_argument("sample_affine_map: need 1 <= n_red <= n");
  std::uniform_real_distribution<Scalar> unit(-1.0, 1.0);
  AffineMap map;
  map.base = x_k;
  map.M.resize(x_k.size(), n_red);
  for (Index j = 0; j < n_red; ++j)
    for (Index i = 0; i < x_k.size(); ++i) map.M(i, j) = unit(rng);
  return map;
}

Vector propose_affine(ResidualProblem& problem, const AffineMap& map,
                      const Subsolver& subsolver, long long budget, Scalar delta, Scalar tol) {
  const Index n_red = map.M.cols();
  auto g = [&](const Vector& d) -> Scalar {
    return problem.evaluate(map.apply(d)).squaredNorm();
  };
  InnerReport report = subsolver(g, Vector::Zero(n_red), Box::centered(n_red, delta), budget, tol);
  if (report.nevals == 0) return map.base;
  return map.apply(report.x_best);
}

CanonicalSpline canonicalize(const SplineParams& params) {
  const Index kappa = params.kappa();
  if (params.values.size() != kappa + 2)
    throw std::invalid_argument("canonicalize: values must have kappa+2 entries");

  // Full node list (0, p_1..p_kappa, 1) with its ordinates, sorted by position.
  std::vector<std::pair<Scalar, Scalar>> pts;
  pts.reserve(kappa + 2);
  pts.emplace_back(0.0, params.values[0]);
  for (Index j = 0; j < kappa; ++j) {
    Scalar p = params.nodes[j];
    if (p < 0.0 || p > 1.0) throw std::domain_error("canonicalize: node outside [0,1]");
    pts.emplace_back(p, params.values[j + 1]);
  }
  pts.emplace_back(1.0, params.values[kappa + 1]);
  std::stable_sort(pts.begin(), pts.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  // Groups of exactly-equal positions collapse to their ordinate average.
  std::vector<Scalar> nodes;
  std::vector<Scalar> values;
  std::size_t i = 0;
  while (i < pts.size()) {
    std::size_t j = i;
    Scalar sum = 0.0;
    while (j < pts.size() && pts[j].first == pts[i].first) sum += pts[j++].second;
    nodes.push_back(pts[i].first);
    values.push_back(sum / Scalar(j - i));
    i = j;
  }

  CanonicalSpline spline;
  spline.nodes = Eigen::Map<Vector>(nodes.data(), static_cast<Index>(nodes.size()));
  spline.values = Eigen::Map<Vector>(values.data(), static_cast<Index>(values.size()));
  return spline;
}

Scalar eval_spline(const CanonicalSpline& spline, Scalar t) {
  if (t < 0.0 || t > 1.0) throw std::domain_error("eval_spline: t outside [0,1]");
  const Vector& p = spline.nodes;
  const Vector& v = spline.values;
  // Rightmost segment whose left node is <= t.
  Index hi = 1;
  while (hi < p.size() - 1 && p[hi] < t) ++hi;
  if (t == p[hi]) return v[hi];
  if (t == p[hi - 1]) return v[hi - 1];
  Scalar w = (t - p[hi - 1]) / (p[hi] - p[hi - 1]);
  return v[hi - 1] + w * (v[hi] - v[hi - 1]);
}

Vector spline_displacement(const CanonicalSpline& spline, Index n) {
  if (n < 2) throw std::domain_error("spline_displacement: grid needs n >= 2");
  Vector d(n);
  for (Index i = 0; i < n; ++i) d[i] = eval_spline(spline, Scalar(i) / Scalar(n - 1));
  return d;
}

Vector propose_spline(ResidualProblem& problem, const Vector& x_k, Index kappa,
                      const Subsolver& subsolver, long long budget, Scalar v_box, Scalar tol,
                      std::mt19937_64& rng) {
  if (x_k.size() < 2) throw std::domain_error("propose_spline: problem dimension must be >= 2");
  const Index n_red = 2 * kappa + 2;
  const Index n = x_k.size();

  // Reduced variable layout: ordinates first, then interior node positions.
  auto displacement = [kappa, n](const Vector& z) {
    SplineParams params{z.head(kappa + 2), z.tail(kappa)};
    return spline_displacement(canonicalize(params), n);
  };
  auto g = [&](const Vector& z) -> Scalar {
    return problem.evaluate(x_k + displacement(z)).squaredNorm();
  };

  Box box;
  box.lower = Vector::Constant(n_red, -v_box);
  box.upper = Vector::Constant(n_red, v_box);
  box.lower.tail(kappa).setZero();
  box.upper.tail(kappa).setOnes();

  Vector z0 = Vector::Zero(n_red);
  std::uniform_real_distribution<Scalar> unit(0.0, 1.0);
  for (Index j = 0; j < kappa; ++j) z0[kappa + 2 + j] = unit(rng);

  InnerReport report = subsolver(g, z0, box, budget, tol);
  if (report.nevals == 0) return x_k;
  return x_k + displacement(report.x_best);
}

}  // namespace sesem
