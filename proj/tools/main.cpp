#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sesem/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Derivative-free least-squares solver with subspace/spline reduction and "
               "secant acceleration, plus a channel-flow estimation testbed"};
  app.require_subcommand(1);

  sesem::cli::GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Create a synthetic observation set");
  generate->add_option("--nx", gen.nx, "interior grid count (points are 0..nx)")
      ->check(CLI::Range(Eigen::Index(2), Eigen::Index(1000000)));
  generate->add_option("--nt", gen.nt, "observed time steps")->check(CLI::PositiveNumber);
  generate->add_option("--dt", gen.dt, "time step in seconds")->check(CLI::PositiveNumber);
  generate->add_option("--dx", gen.dx, "grid spacing in meters")->check(CLI::PositiveNumber);
  generate->add_option("--fraction", gen.fraction, "inclusion probability per observation")
      ->check(CLI::Range(1e-9, 1.0));
  generate->add_option("--seed", gen.seed, "generator seed");
  generate->add_option("--out", gen.out_dir, "output directory");
  generate->add_flag("--dump-trajectory", gen.dump_trajectory, "also write trajectory.csv");

  sesem::cli::SolveOptions sol;
  auto* solve = app.add_subcommand("solve", "Estimate Manning coefficients from observations");
  solve->add_option("obsfile", sol.obs_file, "observation file from generate")->required();
  solve->add_option("--reduction", sol.reduction, "affine | spline")
      ->check(CLI::IsMember({"affine", "spline"}));
  solve->add_option("--nred", sol.nred, "reduced dimension")
      ->check(CLI::Range(1, 1000000));
  solve->add_option("--epsilon", sol.epsilon, "stopping tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--memory", sol.memory, "secant history capacity")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--accel,!--no-accel", sol.accel, "toggle secant acceleration");
  solve->add_option("--replicates", sol.replicates, "seeded replicate count")
      ->check(CLI::PositiveNumber);
  solve->add_option("--seed", sol.seed, "first replicate seed");
  solve->add_option("--budget-fevals", sol.budget_fevals, "residual evaluation budget")
      ->check(CLI::PositiveNumber);
  solve->add_option("--max-iters", sol.max_iters, "outer iteration budget")
      ->check(CLI::PositiveNumber);
  solve->add_option("--subsolver-budget", sol.subsolver_budget,
                    "evaluations per reduced solve (0 = auto)");
  solve->add_option("--out", sol.out_dir, "output directory for run.json and traces");
  solve->add_option("--jobs", sol.jobs, "parallel replicate slots")->check(CLI::PositiveNumber);

  sesem::cli::ExperimentOptions exp;
  auto* experiment = app.add_subcommand("experiment", "Desk-scale experiment families");
  experiment->add_option("name", exp.name, "nr1 | nr2 | nr3 | nr4")->required();
  experiment->add_option("--out", exp.out_dir, "output directory");
  experiment->add_option("--nx", exp.nx, "instance size for nr1-nr3")
      ->check(CLI::Range(Eigen::Index(2), Eigen::Index(1000000)));
  experiment->add_option("--max-nx", exp.max_nx, "upper end of the nr4 sweep")
      ->check(CLI::Range(Eigen::Index(500), Eigen::Index(1000000)));
  experiment->add_option("--nt", exp.nt, "observed time steps")->check(CLI::PositiveNumber);
  experiment->add_option("--fraction", exp.fraction, "observation inclusion probability")
      ->check(CLI::Range(1e-9, 1.0));
  experiment->add_option("--epsilon", exp.epsilon, "stopping tolerance")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--replicates", exp.replicates, "replicates per cell")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--seed", exp.seed, "base seed");
  experiment->add_option("--nts", exp.nts, "nr1 observation horizons")->delimiter(',');
  experiment->add_option("--epsilons", exp.epsilons, "nr1 tolerance grid")->delimiter(',');
  experiment->add_option("--pred-steps", exp.pred_steps, "nr1 prediction horizon in steps")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--budget-fevals", exp.budget_fevals, "per-run evaluation budget")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--jobs", exp.jobs, "parallel replicate slots")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? sesem::cli::kExitOk : sesem::cli::kExitUsage;
  }

  if (generate->parsed()) return sesem::cli::run_generate(gen);
  if (solve->parsed()) return sesem::cli::run_solve(sol);
  if (experiment->parsed()) return sesem::cli::run_experiment(exp);
  return sesem::cli::kExitUsage;
}
