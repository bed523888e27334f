#include "sesem/sven/estimation.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sesem::sven {

namespace {
constexpr Scalar kBlowupResidual = 1e6;
}

Array true_manning(const ChannelSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<Scalar> unit(0.0, 1.0);
  Array xi(spec.points());
  for (Index j = 0; j < xi.size(); ++j) xi[j] = 0.0366 * (1.0 + 0.01 * unit(rng));
  return xi;
}

ObservationSet sample_observations(const Trajectory& traj, Scalar fraction,
                                   std::mt19937_64& rng) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("sample_observations: fraction must be in (0,1]");
  std::uniform_real_distribution<Scalar> unit(0.0, 1.0);
  ObservationSet obs;
  obs.n_t = traj.steps();
  for (Index i = 1; i <= traj.steps(); ++i)
    for (Index j = 0; j < traj.A.cols(); ++j)
      for (int k = 1; k <= 2; ++k) {
        if (unit(rng) >= fraction) continue;
        Scalar value = (k == 1) ? traj.A(i - 1, j) : traj.V(i - 1, j);
        obs.entries.push_back({i, j, k, value});
        obs.sum_sq += value * value;
      }
  if (obs.entries.empty())
    throw std::runtime_error("sample_observations: empty selection, problem is degenerate");
  return obs;
}

ObservationSet full_observations(const Trajectory& traj, Index first_step, Index last_step) {
  if (first_step < 1 || last_step > traj.steps() || first_step > last_step)
    throw std::invalid_argument("full_observations: bad step range");
  ObservationSet obs;
  obs.n_t = last_step;
  for (Index i = first_step; i <= last_step; ++i)
    for (Index j = 0; j < traj.A.cols(); ++j)
      for (int k = 1; k <= 2; ++k) {
        Scalar value = (k == 1) ? traj.A(i - 1, j) : traj.V(i - 1, j);
        obs.entries.push_back({i, j, k, value});
        obs.sum_sq += value * value;
      }
  return obs;
}

ResidualProblem make_problem(const ObservationSet& obs, const ChannelSpec& spec) {
  if (obs.entries.empty()) throw std::invalid_argument("make_problem: no observations");
  const Index m = obs.size();
  auto fn = [obs, spec, m](const Vector& x) -> Vector {
    Trajectory traj;
    try {
      traj = simulate(x.array(), spec, obs.n_t);
    } catch (const SimulationError&) {
      return Vector::Constant(m, kBlowupResidual);
    }
    Vector r(m);
    for (Index e = 0; e < m; ++e) {
      const Observation& o = obs.entries[static_cast<std::size_t>(e)];
      Scalar y = (o.kind == 1) ? traj.A(o.time - 1, o.space) : traj.V(o.time - 1, o.space);
      r[e] = y - o.value;
    }
    return r;
  };
  return ResidualProblem(spec.points(), m, std::move(fn));
}

Scalar ssq_target(const ObservationSet& obs, Scalar epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("ssq_target: epsilon must be positive");
  return epsilon * obs.sum_sq;
}

Scalar prediction_error(const Array& xi, const ObservationSet& obs_train,
                        const ObservationSet& obs_future, const ChannelSpec& spec) {
  Index horizon = std::max(obs_train.n_t, obs_future.n_t);
  Trajectory traj;
  try {
    traj = simulate(xi, spec, horizon);
  } catch (const SimulationError&) {
    return std::numeric_limits<Scalar>::infinity();
  }
  Scalar num = 0.0;
  Scalar den = 0.0;
  auto accumulate = [&](const ObservationSet& obs) {
    for (const Observation& o : obs.entries) {
      Scalar y = (o.kind == 1) ? traj.A(o.time - 1, o.space) : traj.V(o.time - 1, o.space);
      num += (y - o.value) * (y - o.value);
      den += o.value * o.value;
    }
  };
  accumulate(obs_train);
  accumulate(obs_future);
  if (den == 0.0) return std::numeric_limits<Scalar>::infinity();
  return num / den;
}

void write_observations(std::ostream& out, const ObservationSet& obs, const ChannelSpec& spec,
                        std::uint64_t seed) {
  out.precision(17);
  out << spec.n_x << ' ' << obs.n_t << ' ' << spec.dt << ' ' << spec.dx << ' ' << seed << '\n';
  for (const Observation& o : obs.entries)
    out << o.time << ' ' << o.space << ' ' << o.kind << ' ' << o.value << '\n';
}

LoadedObservations read_observations(std::istream& in) {
  LoadedObservations loaded;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("observations: missing header");
  {
    std::istringstream header(line);
    if (!(header >> loaded.spec.n_x >> loaded.obs.n_t >> loaded.spec.dt >> loaded.spec.dx >>
          loaded.seed))
      throw std::runtime_error("observations: malformed header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    Observation o;
    if (!(row >> o.time >> o.space >> o.kind >> o.value))
      throw std::runtime_error("observations: malformed entry");
    if (o.time < 1 || o.time > loaded.obs.n_t || o.space < 0 || o.space > loaded.spec.n_x ||
        (o.kind != 1 && o.kind != 2))
      throw std::runtime_error("observations: entry out of range");
    loaded.obs.sum_sq += o.value * o.value;
    loaded.obs.entries.push_back(o);
  }
  if (loaded.obs.entries.empty()) throw std::runtime_error("observations: no entries");
  return loaded;
}

void write_manning(std::ostream& out, const Array& xi) {
  out.precision(17);
  for (Index j = 0; j < xi.size(); ++j) out << xi[j] << '\n';
}

Array read_manning(std::istream& in) {
  std::vector<Scalar> values;
  Scalar v = 0;
  while (in >> v) values.push_back(v);
  if (values.empty()) throw std::runtime_error("manning: no values");
  return Eigen::Map<Array>(values.data(), static_cast<Index>(values.size()));
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const ChannelSpec& spec) {
  out.precision(17);
  out << "t,x,A,V\n";
  for (Index i = 1; i <= traj.steps(); ++i)
    for (Index j = 0; j < traj.A.cols(); ++j)
      out << Scalar(i) * spec.dt << ',' << spec.x_min + Scalar(j) * spec.dx << ','
          << traj.A(i - 1, j) << ',' << traj.V(i - 1, j) << '\n';
}

}  // namespace sesem::sven
