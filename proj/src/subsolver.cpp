#include "sesem/subsolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace sesem {

Box Box::centered(Index dim, Scalar half_width) {
  Box b;
  b.lower = Vector::Constant(dim, -half_width);
  b.upper = Vector::Constant(dim, half_width);
  return b;
}

bool Box::contains(const Vector& x, Scalar slack) const {
  return (x.array() >= lower.array() - slack).all() &&
         (x.array() <= upper.array() + slack).all();
}

Vector Box::project(const Vector& x) const { return x.cwiseMax(lower).cwiseMin(upper); }

namespace {

// Counts evaluations, clamps every candidate into the box before calling g,
// and keeps the earliest incumbent minimum.
struct CountedObjective {
  const InnerObjective& g;
  const Box& box;
  long long budget;
  long long nevals = 0;
  Vector x_best;
  Scalar f_best = std::numeric_limits<Scalar>::infinity();

  // Replaces x by its projection; returns false when the budget is spent.
  bool eval(Vector& x, Scalar& f) {
    if (nevals >= budget) return false;
    x = box.project(x);
    f = g(x);
    ++nevals;
    if (f < f_best) {
      f_best = f;
      x_best = x;
    }
    return true;
  }
};

Scalar edge_length(const Box& box, Index i) {
  Scalar width = box.upper[i] - box.lower[i];
  return 0.1 * std::min(width, Scalar(1));
}

// Axis-aligned simplex around a base point, stepped away from the nearer
// box face so clamping cannot collapse an edge.
bool build_simplex(CountedObjective& counted, const Box& box, const Vector& base,
                   std::vector<Vector>& verts, std::vector<Scalar>& fvals) {
  const Index dim = base.size();
  verts.assign(1, base);
  fvals.assign(1, Scalar(0));
  if (!counted.eval(verts[0], fvals[0])) return false;
  for (Index i = 0; i < dim; ++i) {
    Scalar h = edge_length(box, i);
    Vector v = verts[0];
    if (v[i] + h > box.upper[i]) h = -h;
    v[i] += h;
    Scalar f = 0;
    if (!counted.eval(v, f)) return false;
    verts.push_back(std::move(v));
    fvals.push_back(f);
  }
  return true;
}

Scalar simplex_diameter(const std::vector<Vector>& verts, std::size_t best) {
  Scalar d = 0;
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (i != best) d = std::max(d, (verts[i] - verts[best]).norm());
  return d;
}

}  // namespace

InnerReport nelder_mead_minimize(const InnerObjective& g, const Vector& x0, const Box& box,
                                 long long budget, Scalar tol) {
  const Index dim = x0.size();
  if (budget < dim + 2) return {box.project(x0), std::numeric_limits<Scalar>::quiet_NaN(), 0, false};

  CountedObjective counted{g, box, budget, 0, Vector(), std::numeric_limits<Scalar>::infinity()};
  std::vector<Vector> verts;
  std::vector<Scalar> fvals;
  bool restarted = false;
  bool converged = false;

  bool alive = build_simplex(counted, box, box.project(x0), verts, fvals);
  while (alive) {
    std::vector<std::size_t> order(verts.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    if (simplex_diameter(verts, best) < tol) {
      if (restarted) {
        converged = true;
        break;
      }
      restarted = true;
      alive = build_simplex(counted, box, counted.x_best, verts, fvals);
      continue;
    }

    Vector centroid = Vector::Zero(dim);
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (i != worst) centroid += verts[i];
    centroid /= Scalar(verts.size() - 1);

    Vector reflected = centroid + (centroid - verts[worst]);
    Scalar f_reflected = 0;
    if (!counted.eval(reflected, f_reflected)) break;

    if (f_reflected < fvals[best]) {
      Vector expanded = centroid + 2.0 * (centroid - verts[worst]);
      Scalar f_expanded = 0;
      if (!counted.eval(expanded, f_expanded)) break;
      if (f_expanded < f_reflected) {
        verts[worst] = std::move(expanded);
        fvals[worst] = f_expanded;
      } else {
        verts[worst] = std::move(reflected);
        fvals[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < fvals[second_worst]) {
      verts[worst] = std::move(reflected);
      fvals[worst] = f_reflected;
      continue;
    }

    Vector contracted;
    if (f_reflected < fvals[worst]) {
      contracted = centroid + 0.5 * (reflected - centroid);
    } else {
      contracted = centroid - 0.5 * (centroid - verts[worst]);
    }
    Scalar f_contracted = 0;
    if (!counted.eval(contracted, f_contracted)) break;
    if (f_contracted < std::min(f_reflected, fvals[worst])) {
      verts[worst] = std::move(contracted);
      fvals[worst] = f_contracted;
      continue;
    }

    // Shrink toward the best vertex.
    bool out = false;
    for (std::size_t i = 0; i < verts.size() && !out; ++i) {
      if (i == best) continue;
      verts[i] = verts[best] + 0.5 * (verts[i] - verts[best]);
      out = !counted.eval(verts[i], fvals[i]);
    }
    if (out) break;
  }

  if (counted.nevals == 0)
    return {box.project(x0), std::numeric_limits<Scalar>::quiet_NaN(), 0, false};
  return {counted.x_best, counted.f_best, counted.nevals, converged};
}

}  // namespace sesem
