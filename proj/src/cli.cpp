#include "sesem/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sesem/solver.hpp"
#include "sesem/sven/estimation.hpp"

namespace sesem::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sesem::sven;

namespace {

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void parallel_for(int jobs, int count, const std::function<void(int)>& work) {
  jobs = std::min(jobs, count);
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) work(i);
    });
  for (auto& th : pool) th.join();
}

struct ReplicateRun {
  std::uint64_t seed = 0;
  SolveResult result;
  double seconds = 0.0;
};

struct MeanStdev {
  double mean = 0.0;
  double stdev = 0.0;
};

MeanStdev aggregate(const std::vector<double>& xs) {
  MeanStdev a;
  if (xs.empty()) return a;
  for (double x : xs) a.mean += x;
  a.mean /= double(xs.size());
  if (xs.size() > 1) {
    double s = 0;
    for (double x : xs) s += (x - a.mean) * (x - a.mean);
    a.stdev = std::sqrt(s / double(xs.size() - 1));
  }
  return a;
}

SolverConfig base_config(const SolveOptions& opts, Scalar target) {
  SolverConfig config;
  config.ssq_target = target;
  config.reduction = opts.reduction == "affine" ? ReductionKind::affine : ReductionKind::spline;
  config.n_red = opts.nred;
  config.memory_p = opts.memory;
  config.use_acceleration = opts.accel;
  config.max_fevals = opts.budget_fevals;
  config.max_outer_iters = opts.max_iters;
  config.subsolver_budget = opts.subsolver_budget;
  return config;
}

json config_json(const SolverConfig& config) {
  return json{{"ssq_target", config.ssq_target},
              {"delta", config.delta},
              {"gamma", config.gamma},
              {"eta0", config.eta0},
              {"memory_p", config.memory_p},
              {"n_red", config.n_red},
              {"reduction", config.reduction == ReductionKind::affine ? "affine"
                            : config.reduction == ReductionKind::spline ? "spline"
                                                                        : "none"},
              {"subsolver_budget", config.subsolver_budget},
              {"max_outer_iters", config.max_outer_iters},
              {"max_fevals", config.max_fevals},
              {"max_halvings", config.max_halvings},
              {"rcond", config.rcond},
              {"accelerate", config.use_acceleration},
              {"seed", config.seed}};
}

std::vector<ReplicateRun> run_replicates(const ObservationSet& obs, const ChannelSpec& spec,
                                         const SolverConfig& base, std::uint64_t first_seed,
                                         int replicates, int jobs) {
  std::vector<ReplicateRun> runs(replicates);
  parallel_for(effective_jobs(jobs), replicates, [&](int r) {
    SolverConfig config = base;
    config.seed = first_seed + static_cast<std::uint64_t>(r);
    ResidualProblem problem = make_problem(obs, spec);
    auto t0 = std::chrono::steady_clock::now();
    SolveResult result = solve(problem, Vector::Zero(problem.n()), config);
    auto t1 = std::chrono::steady_clock::now();
    runs[r] = {config.seed, std::move(result),
               std::chrono::duration<double>(t1 - t0).count()};
  });
  return runs;
}

int exit_code_for(const std::vector<ReplicateRun>& runs) {
  bool all_target = true;
  bool any_budget = false;
  for (const auto& run : runs) {
    if (run.result.termination != Termination::target_reached) all_target = false;
    if (run.result.termination == Termination::feval_budget ||
        run.result.termination == Termination::iter_budget)
      any_budget = true;
  }
  if (all_target) return kExitOk;
  return any_budget ? kExitBudget : kExitRuntime;
}

// Sub-trajectory of the first `steps` time indices.
Trajectory head_of(const Trajectory& traj, Index steps) {
  Trajectory sub;
  sub.A = traj.A.topRows(steps);
  sub.V = traj.V.topRows(steps);
  return sub;
}

}  // namespace

int effective_jobs(int requested) {
  int jobs = std::max(1, requested);
  if (const char* cap = std::getenv("SESEM_THREADS")) {
    int limit = std::atoi(cap);
    if (limit >= 1) jobs = std::min(jobs, limit);
  }
  return jobs;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out.precision(17);
  out << "k,f,ssq,alpha,step_kind,accel_used,fevals_cum\n";
  for (const TraceRow& row : trace)
    out << row.k << ',' << row.f << ',' << 2.0 * row.f << ',' << row.alpha << ','
        << to_string(row.kind) << ',' << (row.accel_used ? 1 : 0) << ',' << row.fevals_cum
        << '\n';
}

int run_generate(const GenerateOptions& opts) {
  if (opts.nx < 2 || opts.nt < 1 || !(opts.fraction > 0.0 && opts.fraction <= 1.0) ||
      !(opts.dt > 0.0) || !(opts.dx > 0.0)) {
    std::cerr << "generate: invalid arguments (need nx >= 2, nt >= 1, fraction in (0,1], "
                 "positive dt/dx)\n";
    return kExitUsage;
  }
  ChannelSpec spec;
  spec.n_x = opts.nx;
  spec.dt = opts.dt;
  spec.dx = opts.dx;
  try {
    RngStreams streams(opts.seed);
    Array truth = true_manning(spec, streams.manning_perturb());
    Trajectory traj = simulate(truth, spec, opts.nt);
    ObservationSet obs = sample_observations(traj, opts.fraction, streams.obs_mask());

    fs::create_directories(opts.out_dir);
    {
      std::ofstream out(fs::path(opts.out_dir) / "observations.txt");
      write_observations(out, obs, spec, opts.seed);
    }
    {
      std::ofstream out(fs::path(opts.out_dir) / "truth.txt");
      write_manning(out, truth);
    }
    if (opts.dump_trajectory) {
      std::ofstream out(fs::path(opts.out_dir) / "trajectory.csv");
      write_trajectory_csv(out, traj, spec);
    }
    std::cout << "wrote " << obs.size() << " observations (n_x=" << spec.n_x
              << ", n_t=" << opts.nt << ", sum_sq=" << obs.sum_sq << ") to " << opts.out_dir
              << "\n";
  } catch (const std::exception& e) {
    std::cerr << "generate: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int run_solve(const SolveOptions& opts) {
  if (opts.reduction != "affine" && opts.reduction != "spline") {
    std::cerr << "solve: reduction must be affine or spline\n";
    return kExitUsage;
  }
  if (opts.nred < 1 || (opts.reduction == "spline" && (opts.nred < 2 || opts.nred % 2 != 0))) {
    std::cerr << "solve: invalid nred for the chosen reduction\n";
    return kExitUsage;
  }
  if (opts.replicates < 1 || !(opts.epsilon > 0.0) || opts.memory < 1) {
    std::cerr << "solve: invalid replicates/epsilon/memory\n";
    return kExitUsage;
  }

  try {
    std::ifstream in(opts.obs_file);
    if (!in) {
      std::cerr << "solve: cannot open " << opts.obs_file << "\n";
      return kExitRuntime;
    }
    LoadedObservations loaded = read_observations(in);
    const Scalar target = ssq_target(loaded.obs, opts.epsilon);

    SolverConfig base = base_config(opts, target);
    base.validate();
    std::vector<ReplicateRun> runs =
        run_replicates(loaded.obs, loaded.spec, base, opts.seed, opts.replicates, opts.jobs);

    fs::create_directories(opts.out_dir);
    json record;
    record["schema"] = 1;
    record["generated_at"] = utc_timestamp();
    record["obs_file"] = opts.obs_file;
    record["instance"] = {{"n_x", loaded.spec.n_x},   {"n_t", loaded.obs.n_t},
                          {"dt", loaded.spec.dt},     {"dx", loaded.spec.dx},
                          {"n_o", loaded.obs.size()}, {"sum_sq", loaded.obs.sum_sq},
                          {"generator_seed", loaded.seed}};
    record["epsilon"] = opts.epsilon;
    record["config"] = config_json(base);
    record["config"]["replicates"] = opts.replicates;
    record["config"]["first_seed"] = opts.seed;

    std::vector<double> times, iters, fevals;
    json reps = json::array();
    for (int r = 0; r < opts.replicates; ++r) {
      const ReplicateRun& run = runs[r];
      std::string trace_name = "trace_rep" + std::to_string(r) + ".csv";
      std::ofstream trace_out(fs::path(opts.out_dir) / trace_name);
      write_trace_csv(trace_out, run.result.trace);
      reps.push_back({{"seed", run.seed},
                      {"ssq_best", run.result.ssq_best},
                      {"f_best", run.result.f_best},
                      {"outer_iters", run.result.outer_iters},
                      {"fevals", run.result.fevals},
                      {"accel_accepts", run.result.accel_accepts},
                      {"accel_rejects", run.result.accel_rejects},
                      {"termination", to_string(run.result.termination)},
                      {"seconds", run.seconds},
                      {"trace_file", trace_name}});
      times.push_back(run.seconds);
      iters.push_back(double(run.result.outer_iters));
      fevals.push_back(double(run.result.fevals));
    }
    record["replicates"] = reps;
    MeanStdev t = aggregate(times), it = aggregate(iters), fe = aggregate(fevals);
    record["aggregate"] = {{"time", {{"mean", t.mean}, {"stdev", t.stdev}}},
                           {"iters", {{"mean", it.mean}, {"stdev", it.stdev}}},
                           {"fevals", {{"mean", fe.mean}, {"stdev", fe.stdev}}}};

    std::ofstream json_out(fs::path(opts.out_dir) / "run.json");
    json_out << record.dump(2) << "\n";
    std::cout << record.dump(2) << "\n";
    return exit_code_for(runs);
  } catch (const std::exception& e) {
    std::cerr << "solve: " << e.what() << "\n";
    return kExitRuntime;
  }
}

namespace {

struct Instance {
  ChannelSpec spec;
  Array truth;
  Trajectory traj;
  ObservationSet obs;
};

Instance make_instance(Index nx, Index nt, Scalar fraction, std::uint64_t seed,
                       Index sim_steps = 0) {
  Instance inst;
  inst.spec.n_x = nx;
  RngStreams streams(seed);
  inst.truth = true_manning(inst.spec, streams.manning_perturb());
  inst.traj = simulate(inst.truth, inst.spec, std::max(nt, sim_steps));
  Trajectory observed = head_of(inst.traj, nt);
  inst.obs = sample_observations(observed, fraction, streams.obs_mask());
  return inst;
}

SolverConfig experiment_config(const ExperimentOptions& opts, const std::string& reduction,
                               int nred, Scalar target, bool accel, int memory) {
  SolveOptions s;
  s.reduction = reduction;
  s.nred = nred;
  s.accel = accel;
  s.budget_fevals = opts.budget_fevals;
  s.max_iters = 20000;
  // The acceleration needs history spanning roughly the problem dimension,
  // so the capacity scales with the instance rather than the paper's 1000.
  s.memory = memory;
  return base_config(s, target);
}

int desk_memory(Index nx) { return static_cast<int>(2 * (nx + 1)); }

int run_nr1(const ExperimentOptions& opts) {
  std::vector<Index> nts = opts.nts.empty() ? std::vector<Index>{1, 2, 6, 10} : opts.nts;
  std::vector<Scalar> epsilons = opts.epsilons.empty()
                                     ? std::vector<Scalar>{1e-4, 1e-6, 1e-9, 1e-12}
                                     : opts.epsilons;
  fs::create_directories(opts.out_dir);
  std::ofstream out(fs::path(opts.out_dir) / "nr1.csv");
  out.precision(17);
  out << "nu,nt,epsilon,n_o,n_x,ssq_best,target,target_reached,eta,acceptable\n";

  ChannelSpec probe;  // only for dt in the nu column
  for (std::size_t row = 0; row < nts.size(); ++row) {
    Index nt = nts[row];
    Instance inst =
        make_instance(opts.nx, nt, opts.fraction, opts.seed + row, opts.pred_steps);
    ObservationSet future = full_observations(inst.traj, nt + 1, opts.pred_steps);
    for (Scalar eps : epsilons) {
      Scalar target = ssq_target(inst.obs, eps);
      // The affine fit has no smoothness bias, so under-observed instances
      // pin only the measured points and extrapolate poorly, which is the
      // effect this experiment measures.
      SolverConfig config =
          experiment_config(opts, "affine", 4, target, true, desk_memory(opts.nx));
      config.seed = opts.seed;
      ResidualProblem problem = make_problem(inst.obs, inst.spec);
      SolveResult result = solve(problem, Vector::Zero(problem.n()), config);
      Scalar eta_val =
          prediction_error(result.x_best.array(), inst.obs, future, inst.spec);
      Scalar nu = (Scalar(nt) * probe.dt) / (Scalar(opts.pred_steps) * probe.dt);
      out << nu << ',' << nt << ',' << eps << ',' << inst.obs.size() << ',' << opts.nx << ','
          << result.ssq_best << ',' << target << ','
          << (result.termination == Termination::target_reached ? 1 : 0) << ',' << eta_val
          << ',' << (eta_val <= 1e-4 ? 1 : 0) << '\n';
    }
  }
  std::cout << "wrote " << (fs::path(opts.out_dir) / "nr1.csv").string() << "\n";
  return kExitOk;
}

int run_nr2(const ExperimentOptions& opts) {
  Instance inst = make_instance(opts.nx, opts.nt, opts.fraction, opts.seed);
  Scalar target = ssq_target(inst.obs, opts.epsilon);
  fs::create_directories(opts.out_dir);
  std::ofstream out(fs::path(opts.out_dir) / "nr2.csv");
  out.precision(17);
  out << "method,n_red,replicate,seed,outer_iters,fevals,seconds,ssq_best,termination\n";

  auto sweep = [&](const std::string& method, const std::vector<int>& nreds) {
    for (int nred : nreds) {
      SolverConfig config =
          experiment_config(opts, method, nred, target, true, desk_memory(opts.nx));
      std::vector<ReplicateRun> runs = run_replicates(inst.obs, inst.spec, config, opts.seed,
                                                      opts.replicates, opts.jobs);
      for (int r = 0; r < opts.replicates; ++r)
        out << method << ',' << nred << ',' << r << ',' << runs[r].seed << ','
            << runs[r].result.outer_iters << ',' << runs[r].result.fevals << ','
            << runs[r].seconds << ',' << runs[r].result.ssq_best << ','
            << to_string(runs[r].result.termination) << '\n';
    }
  };
  sweep("affine", {2, 4, 6, 8});
  sweep("spline", {8, 14, 20});
  std::cout << "wrote " << (fs::path(opts.out_dir) / "nr2.csv").string() << "\n";
  return kExitOk;
}

int run_nr3(const ExperimentOptions& opts) {
  Instance inst = make_instance(opts.nx, opts.nt, opts.fraction, opts.seed);
  Scalar target = ssq_target(inst.obs, opts.epsilon);
  fs::create_directories(opts.out_dir);
  std::ofstream out(fs::path(opts.out_dir) / "nr3.csv");
  out.precision(17);
  out << "method,n_red,accel,replicate,seed,outer_iters,fevals,seconds,ssq_best,"
         "accel_accepts,termination,trace_file\n";

  auto arm = [&](const std::string& method, int nred, bool accel) {
    SolverConfig config =
        experiment_config(opts, method, nred, target, accel, desk_memory(opts.nx));
    std::vector<ReplicateRun> runs =
        run_replicates(inst.obs, inst.spec, config, opts.seed, opts.replicates, opts.jobs);
    for (int r = 0; r < opts.replicates; ++r) {
      std::string trace_name =
          "nr3_" + method + (accel ? "_accel" : "_plain") + "_rep" + std::to_string(r) + ".csv";
      std::ofstream trace_out(fs::path(opts.out_dir) / trace_name);
      write_trace_csv(trace_out, runs[r].result.trace);
      out << method << ',' << nred << ',' << (accel ? 1 : 0) << ',' << r << ',' << runs[r].seed
          << ',' << runs[r].result.outer_iters << ',' << runs[r].result.fevals << ','
          << runs[r].seconds << ',' << runs[r].result.ssq_best << ','
          << runs[r].result.accel_accepts << ',' << to_string(runs[r].result.termination) << ','
          << trace_name << '\n';
    }
  };
  arm("affine", 4, true);
  arm("affine", 4, false);
  arm("spline", 20, true);
  arm("spline", 20, false);
  std::cout << "wrote " << (fs::path(opts.out_dir) / "nr3.csv").string() << "\n";
  return kExitOk;
}

int run_nr4(const ExperimentOptions& opts) {
  fs::create_directories(opts.out_dir);
  std::ofstream out(fs::path(opts.out_dir) / "nr4.csv");
  out.precision(17);
  out << "n_x,n_o,method,ssq_mean,iters_mean,fevals_mean,time_mean,time_stdev,reached\n";

  for (Index nx = 500; nx <= opts.max_nx; nx += 100) {
    Instance inst = make_instance(nx, opts.nt, opts.fraction, opts.seed + nx);
    Scalar target = ssq_target(inst.obs, opts.epsilon);
    for (const std::string& method : {std::string("affine"), std::string("spline")}) {
      int nred = method == "affine" ? 4 : 20;
      SolverConfig config =
          experiment_config(opts, method, nred, target, true, desk_memory(nx));
      std::vector<ReplicateRun> runs = run_replicates(inst.obs, inst.spec, config, opts.seed,
                                                      opts.replicates, opts.jobs);
      std::vector<double> times, iters, fevals, ssqs;
      int reached = 0;
      for (const auto& run : runs) {
        times.push_back(run.seconds);
        iters.push_back(double(run.result.outer_iters));
        fevals.push_back(double(run.result.fevals));
        ssqs.push_back(run.result.ssq_best);
        if (run.result.termination == Termination::target_reached) ++reached;
      }
      MeanStdev t = aggregate(times);
      out << nx << ',' << inst.obs.size() << ',' << method << ',' << aggregate(ssqs).mean << ','
          << aggregate(iters).mean << ',' << aggregate(fevals).mean << ',' << t.mean << ','
          << t.stdev << ',' << reached << '\n';
    }
  }
  std::cout << "wrote " << (fs::path(opts.out_dir) / "nr4.csv").string() << "\n";
  return kExitOk;
}

}  // namespace

int run_experiment(const ExperimentOptions& opts) {
  try {
    if (opts.name == "nr1") return run_nr1(opts);
    if (opts.name == "nr2") return run_nr2(opts);
    if (opts.name == "nr3") return run_nr3(opts);
    if (opts.name == "nr4") return run_nr4(opts);
  } catch (const std::exception& e) {
    std::cerr << "experiment: " << e.what() << "\n";
    return kExitRuntime;
  }
  std::cerr << "experiment: unknown name " << opts.name << " (expected nr1..nr4)\n";
  return kExitUsage;
}

}  // namespace sesem::cli
