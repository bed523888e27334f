#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sesem/result.hpp"
#include "sesem/types.hpp"

namespace sesem::cli {

// Exit code contract shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

struct GenerateOptions {
  Index nx = 500;
  Index nt = 10;
  Scalar dt = 0.1;
  Scalar dx = 6.0;
  Scalar fraction = 0.1;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool dump_trajectory = false;
};

struct SolveOptions {
  std::string obs_file;
  std::string reduction = "spline";  // affine | spline
  int nred = 20;
  Scalar epsilon = 1e-9;
  int memory = 1000;
  bool accel = true;
  int replicates = 10;
  std::uint64_t seed = 1;
  long long budget_fevals = 1000000;
  long long max_iters = 100000;
  int subsolver_budget = 0;  // 0 = auto
  std::string out_dir = "sesem_runs";
  int jobs = 1;
};

struct ExperimentOptions {
  std::string name;  // nr1 | nr2 | nr3 | nr4
  std::string out_dir = "sesem_experiments";
  Index nx = 100;       // instance size for nr1-nr3
  Index max_nx = 700;   // upper end of the nr4 size sweep
  Index nt = 10;
  Scalar fraction = 0.1;
  Scalar epsilon = 1e-9;
  int replicates = 10;
  std::uint64_t seed = 1;
  std::vector<Index> nts;         // nr1 observation horizons (empty = desk default)
  std::vector<Scalar> epsilons;   // nr1 tolerances (empty = desk default)
  Index pred_steps = 600;         // nr1 prediction horizon in steps
  long long budget_fevals = 200000;
  int jobs = 1;
};

// Writes the observation file plus the generating Manning field (and
// optionally the truth trajectory) under out_dir.
int run_generate(const GenerateOptions& opts);

// Runs seeded replicates of the solver against an observation file, prints
// the JSON run record to stdout, and writes one trace CSV per replicate.
int run_solve(const SolveOptions& opts);

// Desk-scale reproductions of the four experiment families, emitted as CSV.
int run_experiment(const ExperimentOptions& opts);

// Worker-slot count actually used: the flag value capped by the
// SESEM_THREADS environment variable when it is set.
int effective_jobs(int requested);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace sesem::cli
