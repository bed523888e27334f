#pragma once

#include <stdexcept>
#include <string>

#include "sesem/types.hpp"

namespace sesem::sven {

// Rectangular channel geometry and discretization constants. The grid has
// points j = 0..n_x at x_min + j*dx.
struct ChannelSpec {
  Scalar width = 5.0;        // m
  Scalar bed_slope = 0.001;  // (z_b)_x, dimensionless
  Scalar x_min = 0.0;        // m
  Scalar dx = 6.0;           // m
  Index n_x = 500;           // interior grid count
  Scalar gravity = 9.8;      // m/s^2
  Scalar theta = 0.9;        // artificial diffusion blend, in (0,1]
  Scalar dt = 0.1;           // s

  Index points() const { return n_x + 1; }
};

// Upstream flow-rate boundary condition: ramps 8.245 -> 200 m^3/s over the
// first 1200 s, back down to 8.245 by 3600 s, stationary afterwards.
Scalar inflow(Scalar t);

// Discrete channel state; arrays hold one value per grid point and the
// wetted area stays strictly positive.
struct FlowState {
  Array A;  // wetted area, m^2
  Array Q;  // flow rate, m^3/s
};

class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, Scalar time, Index index)
      : std::runtime_error(what + " at t=" + std::to_string(time) +
                           ", j=" + std::to_string(index)),
        time_(time),
        index_(index) {}
  Scalar time() const { return time_; }
  Index index() const { return index_; }

 private:
  Scalar time_;
  Index index_;
};

// Uniform depth of 1.2 m and flow rate matching the t=0 inflow.
FlowState initial_state(const ChannelSpec& spec);

// Free-surface slope term zhat = z_x / (1 + z_x^2) with z_x = h_x + bed
// slope; h_x by central differences in the interior, one-sided at the ends.
Array zhat(const Array& h, const ChannelSpec& spec);

// Largest (|V| + sqrt(g h)) * dt / dx over the grid.
Scalar cfl_number(const FlowState& state, const ChannelSpec& spec);

// One diffusion-blended explicit step. The left boundary takes the
// prescribed inflow; every other boundary value is extrapolated assuming a
// zero second derivative. Wetted areas are floored at 1e-6 m^2.
FlowState step_with_inflow(const FlowState& state, const Array& xi, const ChannelSpec& spec,
                           Scalar q_in, Scalar t_report);

// Same step with the standard inflow ramp evaluated at t + dt.
FlowState step(const FlowState& state, const Array& xi, const ChannelSpec& spec, Scalar t);

// Area and velocity snapshots for time indices 1..steps; row i-1 holds the
// state after i steps.
struct Trajectory {
  Matrix A;
  Matrix V;

  Index steps() const { return A.rows(); }
};

Trajectory simulate(const Array& xi, const ChannelSpec& spec, Index steps);

}  // namespace sesem::sven
