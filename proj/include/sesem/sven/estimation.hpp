#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "sesem/problem.hpp"
#include "sesem/sven/channel.hpp"

namespace sesem::sven {

// Reference friction field: 0.0366 per grid point plus an independent
// uniform perturbation of up to 1%.
Array true_manning(const ChannelSpec& spec, std::mt19937_64& rng);

struct Observation {
  Index time = 1;   // i >= 1
  Index space = 0;  // j in 0..n_x
  int kind = 1;     // 1 = wetted area, 2 = velocity
  Scalar value = 0.0;
};

// Masked measurements of one trajectory, in lexicographic (time, space,
// kind) order, with the sum of squared values cached.
struct ObservationSet {
  std::vector<Observation> entries;
  Index n_t = 0;        // observed horizon in steps
  Scalar t_min = 0.0;   // s
  Scalar sum_sq = 0.0;

  Index size() const { return static_cast<Index>(entries.size()); }
};

// Keeps each (time, space, kind) triple independently with the given
// probability; throws when the selection comes out empty.
ObservationSet sample_observations(const Trajectory& traj, Scalar fraction,
                                   std::mt19937_64& rng);

// Every triple for time indices first_step..last_step (used as the
// held-out prediction window).
ObservationSet full_observations(const Trajectory& traj, Index first_step, Index last_step);

// Least-squares problem over the n_x+1 Manning coefficients: one simulation
// per evaluation, residuals y(xi, t_i, x_j, k) - y_obs in entry order. A
// simulation blow-up yields a huge finite residual so descent tests simply
// reject the point.
ResidualProblem make_problem(const ObservationSet& obs, const ChannelSpec& spec);

// Stopping target on the ||F||^2 scale: epsilon times the observation sum
// of squares.
Scalar ssq_target(const ObservationSet& obs, Scalar epsilon);

// Relative squared prediction misfit over the union of the fitted and
// future observation sets, from one simulation spanning both horizons;
// +infinity when the simulation fails.
Scalar prediction_error(const Array& xi, const ObservationSet& obs_train,
                        const ObservationSet& obs_future, const ChannelSpec& spec);

// Line-oriented text format: header "n_x n_t dt dx seed", then one line
// "i j k value" per entry with full-precision values.
void write_observations(std::ostream& out, const ObservationSet& obs, const ChannelSpec& spec,
                        std::uint64_t seed);

struct LoadedObservations {
  ObservationSet obs;
  ChannelSpec spec;
  std::uint64_t seed = 0;
};
LoadedObservations read_observations(std::istream& in);

void write_manning(std::ostream& out, const Array& xi);
Array read_manning(std::istream& in);

// One "t,x,A,V" row per (time index, grid point).
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const ChannelSpec& spec);

}  // namespace sesem::sven
