#include "vqco/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_map>

#include <fmt/format.h>

#include "vqco/hamiltonian.hpp"
#include "vqco/io.hpp"
#include "vqco/rng.hpp"
#include "vqco/statevector.hpp"

namespace vqco::experiment {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kEntropyStream = 0x656e74726f7079ULL;

constexpr std::string_view kRunsCsvHeader =
    "optimizer,ensemble,n,epsilon,index,seed,switched,success,iterations_to_converge,final_ar,final_optimal_norm,"
    "max_active_count,n_edges,max_entropy,rises_then_falls,trajectory_file";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream row(line);
  while (std::getline(row, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_real(const std::string& cell) {
  if (cell == "nan" || cell.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(cell, &used);
  if (used != cell.size()) throw std::invalid_argument("bad number '" + cell + "'");
  return v;
}

std::string epsilon_tag(double epsilon) { return fmt::format("{:.2f}", epsilon); }

}  // namespace

std::string_view to_string(Optimizer optimizer) { return optimizer == Optimizer::VarIt ? "varit" : "adam"; }

Optimizer parse_optimizer(std::string_view name) {
  if (name == "varit") return Optimizer::VarIt;
  if (name == "adam") return Optimizer::Adam;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "' (expected varit or adam)");
}

Convention ExperimentSpec::resolved_convention() const { return convention.value_or(default_convention(ensemble)); }

void ExperimentSpec::validate() const {
  if (sizes.empty()) throw std::invalid_argument("no sizes given");
  if (instances < 1) throw std::invalid_argument("instances must be at least 1");
  if (epsilons.empty()) throw std::invalid_argument("no pruning thresholds given");
  for (const double e : epsilons) {
    if (!(e >= 0.0)) throw std::invalid_argument("pruning thresholds must be nonnegative");
  }
  if (optimizer == Optimizer::Adam && (epsilons.size() != 1 || epsilons.front() != 0.0)) {
    throw std::invalid_argument("the ADAM baseline runs unpruned; epsilon must be 0");
  }
  for (const int n : sizes) {
    if (n < 2 || n > kMaxQubits) {
      throw std::invalid_argument(fmt::format("size {} outside [2, {}]", n, kMaxQubits));
    }
    if (ensemble == Ensemble::ThreeRegular && (n < 4 || n % 2 != 0)) {
      throw std::invalid_argument(fmt::format("3-regular graphs need an even size >= 4, got {}", n));
    }
    if (ensemble == Ensemble::NWS && n <= nws_k) {
      throw std::invalid_argument(fmt::format("NWS graphs need n > k = {}, got {}", nws_k, n));
    }
    if (entropy && n % 2 != 0) throw std::invalid_argument(fmt::format("entropy needs even sizes, got {}", n));
  }
  varit.validate();
  adam.validate();
}

std::uint64_t instance_seed(std::uint64_t master_seed, Ensemble ensemble, int n, int index) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(ensemble), static_cast<std::uint64_t>(n),
                     static_cast<std::uint64_t>(index));
}

WeightedGraph make_instance(const ExperimentSpec& spec, int n, int index) {
  const std::uint64_t seed = instance_seed(spec.master_seed, spec.ensemble, n, index);
  switch (spec.ensemble) {
    case Ensemble::ThreeRegular: return gen_three_regular(n, seed);
    case Ensemble::NWS: return gen_nws(n, spec.nws_k, spec.nws_p, seed);
    case Ensemble::SK: return gen_sk(n, seed);
    case Ensemble::Custom: return gen_complete_uniform(n, seed);
  }
  throw std::logic_error("unhandled ensemble");
}

std::string instance_name(Ensemble ensemble, int n, int index) {
  return fmt::format("{}_n{}_i{:03}", to_string(ensemble), n, index);
}

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4"}; }

std::string preset_description(std::string_view name) {
  if (name == "fig1") return "one 8-vertex complete U(0,1] graph, dtau 0.1, raw cost, exact imaginary-time reference";
  if (name == "fig2") return "three_regular, nws, sk at n=16, 100 instances, varit and adam";
  if (name == "fig3") return "three_regular n=8..16, 100 instances, epsilon 0.05, 0.10, 0.15";
  if (name == "fig4") return "sk n=8..16, 100 instances, entanglement entropy and volume-law fit";
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

std::vector<ExperimentSpec> presets(std::string_view name) {
  std::vector<ExperimentSpec> out;
  if (name == "fig1") {
    ExperimentSpec s;
    s.ensemble = Ensemble::Custom;
    s.sizes = {8};
    s.instances = 1;
    s.varit.dtau = 0.1;
    s.varit.use_sigmoid = false;
    s.exact_reference = true;
    out.push_back(s);
  } else if (name == "fig2") {
    for (const auto optimizer : {Optimizer::VarIt, Optimizer::Adam}) {
      for (const auto ensemble : {Ensemble::ThreeRegular, Ensemble::NWS, Ensemble::SK}) {
        ExperimentSpec s;
        s.ensemble = ensemble;
        s.optimizer = optimizer;
        s.sizes = {16};
        s.instances = 100;
        out.push_back(s);
      }
    }
  } else if (name == "fig3") {
    ExperimentSpec s;
    s.sizes = {8, 10, 12, 14, 16};
    s.instances = 100;
    s.epsilons = {0.05, 0.10, 0.15};
    out.push_back(s);
  } else if (name == "fig4") {
    ExperimentSpec s;
    s.ensemble = Ensemble::SK;
    s.sizes = {8, 10, 12, 14, 16};
    s.instances = 100;
    s.entropy = true;
    out.push_back(s);
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  }
  return out;
}

std::string InstanceResult::trajectory_file() const {
  return fmt::format("trajectories/{}_eps{}.csv", instance_name(ensemble, n, index), epsilon_tag(epsilon));
}

std::vector<double> exact_ite_ar(const WeightedGraph& graph, Convention convention, double dtau, int steps) {
  const CostHamiltonian h = CostHamiltonian::build(graph, convention);
  StateVector state = plus_state(graph.n_vertices);
  std::vector<double> out{approximation_ratio(energy(state, h), h)};
  for (int k = 0; k < steps; ++k) {
    state = exact_imaginary_time_step(state, h, dtau);
    out.push_back(approximation_ratio(energy(state, h), h));
  }
  return out;
}

InstanceResult run_instance(const ExperimentSpec& spec, int n, int index, double epsilon) {
  const WeightedGraph graph = make_instance(spec, n, index);
  const Convention convention = spec.resolved_convention();
  InstanceResult out;
  out.optimizer = spec.optimizer;
  out.ensemble = spec.ensemble;
  out.n = n;
  out.index = index;
  out.seed = graph.seed;
  out.epsilon = epsilon;

  std::optional<Ansatz> ansatz;
  if (spec.optimizer == Optimizer::VarIt) {
    varit::Config cfg = spec.varit;
    cfg.epsilon = epsilon;
    auto res = varit::run(graph, convention, cfg);
    out.trajectory = std::move(res.trajectory);
    ansatz = std::move(res.ansatz);
  } else {
    auto res = adam::run(graph, convention, spec.adam);
    out.trajectory = std::move(res.trajectory);
    ansatz = std::move(res.ansatz);
  }

  if (spec.entropy) {
    const auto trace = analysis::entropy_trace(out.trajectory, *ansatz, derive_seed(out.seed, kEntropyStream));
    if (!trace.empty()) out.max_entropy = *std::max_element(trace.begin(), trace.end());
    out.rises_then_falls = analysis::rises_then_falls(trace);
  }
  if (spec.exact_reference) {
    const auto flow = std::count_if(out.trajectory.records.begin(), out.trajectory.records.end(),
                                    [](const TrajectoryRecord& r) { return r.phase == Phase::Flow; });
    out.exact_ar = exact_ite_ar(graph, convention, spec.varit.dtau, static_cast<int>(flow) - 1);
  }
  return out;
}

std::vector<InstanceResult> run_batch(const std::vector<ExperimentSpec>& specs, int jobs) {
  struct Task {
    const ExperimentSpec* spec;
    int n;
    int index;
    double epsilon;
  };
  std::vector<Task> tasks;
  for (const auto& spec : specs) {
    spec.validate();
    for (const int n : spec.sizes) {
      for (int i = 0; i < spec.instances; ++i) {
        for (const double e : spec.epsilons) tasks.push_back({&spec, n, i, e});
      }
    }
  }

  std::vector<InstanceResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      try {
        results[k] = run_instance(*tasks[k].spec, tasks[k].n, tasks[k].index, tasks[k].epsilon);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const int threads = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::size_t write_instances(const std::vector<ExperimentSpec>& specs, const fs::path& dir) {
  std::set<std::string> seen;
  std::string manifest = "ensemble,n,index,seed,graph_file\n";
  for (const auto& spec : specs) {
    spec.validate();
    for (const int n : spec.sizes) {
      for (int i = 0; i < spec.instances; ++i) {
        const std::string name = instance_name(spec.ensemble, n, i);
        if (!seen.insert(name).second) continue;
        const WeightedGraph g = make_instance(spec, n, i);
        const std::string file = "graphs/" + name + ".graph";
        std::ostringstream text;
        write_graph(text, g);
        write_file_atomic(dir / file, text.str());
        manifest += fmt::format("{},{},{},{},{}\n", to_string(spec.ensemble), n, i, g.seed, file);
      }
    }
  }
  write_file_atomic(dir / "manifest.csv", manifest);
  return seen.size();
}

void write_results(const std::vector<InstanceResult>& results, const fs::path& dir) {
  std::map<Optimizer, std::string> runs;
  for (const auto& r : results) {
    const fs::path opt_dir = dir / std::string(to_string(r.optimizer));
    std::ostringstream traj;
    write_trajectory_csv(traj, r.trajectory);
    write_file_atomic(opt_dir / r.trajectory_file(), traj.str());

    auto& table = runs[r.optimizer];
    if (table.empty()) table = std::string(kRunsCsvHeader) + "\n";
    const auto& last = r.trajectory.final_record();
    table += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r.optimizer),
                         to_string(r.ensemble), r.n, format_real(r.epsilon), r.index, r.seed,
                         r.trajectory.switched ? 1 : 0, r.trajectory.converged() ? 1 : 0,
                         r.trajectory.iterations_to_converge(), format_real(last.ar),
                         format_real(last.optimal_norm), r.trajectory.max_active_count(), r.trajectory.n_edges,
                         format_real(r.max_entropy), r.rises_then_falls ? 1 : 0, r.trajectory_file());

    if (!r.exact_ar.empty()) {
      std::string cmp = "iteration,tau,varit_ar,exact_ar,abs_diff\n";
      for (std::size_t k = 0; k < r.exact_ar.size() && k < r.trajectory.records.size(); ++k) {
        const auto& rec = r.trajectory.records[k];
        cmp += fmt::format("{},{},{},{},{}\n", rec.iteration, format_real(rec.tau), format_real(rec.ar),
                           format_real(r.exact_ar[k]), format_real(std::abs(rec.ar - r.exact_ar[k])));
      }
      write_file_atomic(opt_dir / fmt::format("{}_exact.csv", instance_name(r.ensemble, r.n, r.index)), cmp);
    }
  }
  for (const auto& [optimizer, table] : runs) {
    write_file_atomic(dir / std::string(to_string(optimizer)) / "runs.csv", table);
  }
}

std::vector<fs::path> optimizer_dirs(const fs::path& dir) {
  std::vector<fs::path> out;
  if (fs::exists(dir / "runs.csv")) out.push_back(dir);
  for (const auto optimizer : {Optimizer::VarIt, Optimizer::Adam}) {
    const fs::path sub = dir / std::string(to_string(optimizer));
    if (fs::exists(sub / "runs.csv")) out.push_back(sub);
  }
  return out;
}

std::vector<SummaryRow> analyze(const fs::path& optimizer_dir) {
  const fs::path runs_path = optimizer_dir / "runs.csv";
  if (!fs::exists(runs_path)) throw std::invalid_argument("no runs.csv in " + optimizer_dir.string());
  std::istringstream runs(read_file(runs_path));
  std::string line;
  std::getline(runs, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRunsCsvHeader) throw std::invalid_argument("unexpected runs.csv header in " + runs_path.string());

  using Key = std::tuple<Ensemble, int, double>;
  struct Group {
    std::vector<Trajectory> trajectories;
    std::vector<double> max_entropy;  // converged instances only
  };
  std::map<Key, Group> groups;
  int line_no = 1;
  while (std::getline(runs, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 16) throw std::invalid_argument(fmt::format("runs.csv line {}: expected 16 fields", line_no));
    const Key key{parse_ensemble(cells[1]), std::stoi(cells[2]), parse_real(cells[3])};
    std::istringstream traj_text(read_file(optimizer_dir / cells[15]));
    Trajectory t = read_trajectory_csv(traj_text);
    if (t.records.empty()) throw std::invalid_argument("empty trajectory " + cells[15]);
    t.n_qubits = std::get<1>(key);
    t.n_edges = std::stoi(cells[12]);
    auto& g = groups[key];
    const double s = parse_real(cells[13]);
    if (t.converged() && std::isfinite(s)) g.max_entropy.push_back(s);
    g.trajectories.push_back(std::move(t));
  }
  if (groups.empty()) throw std::invalid_argument("runs.csv in " + optimizer_dir.string() + " lists no runs");

  std::vector<SummaryRow> rows;
  std::map<std::pair<Ensemble, double>, std::vector<analysis::SizePoint>> entropy_points;
  for (const auto& [key, g] : groups) {
    SummaryRow row;
    std::tie(row.ensemble, row.n, row.epsilon) = key;
    row.stats = analysis::batch_stats(g.trajectories);
    if (!g.max_entropy.empty()) {
      double mean = 0.0;
      for (const double s : g.max_entropy) mean += s;
      entropy_points[{row.ensemble, row.epsilon}].push_back(
          {static_cast<double>(row.n), mean / static_cast<double>(g.max_entropy.size())});
    }
    rows.push_back(std::move(row));
  }

  std::string report;
  for (const auto& [key, points] : entropy_points) {
    const auto [ensemble, epsilon] = key;
    if (points.size() < 3) {
      report += fmt::format("ensemble={} epsilon={} sizes={} fit=skipped (needs 3 sizes)\n", to_string(ensemble),
                            format_real(epsilon), points.size());
      continue;
    }
    const auto fit = analysis::volume_law_fit(points);
    report += fmt::format("ensemble={} epsilon={} sizes={} a={} stderr_a={} b={} stderr_b={}\n", to_string(ensemble),
                          format_real(epsilon), points.size(), format_real(fit.a), format_real(fit.stderr_a),
                          format_real(fit.b), format_real(fit.stderr_b));
    for (auto& row : rows) {
      if (row.ensemble == ensemble && row.epsilon == epsilon) {
        row.entropy_slope_a = fit.a;
        row.entropy_intercept_b = fit.b;
      }
    }
  }
  if (report.empty()) report = "no entropy data\n";

  std::string summary = std::string(kSummaryCsvHeader) + "\n";
  std::string convergence = "ensemble,n,epsilon,iteration,mean_ar_error,stderr_ar_error\n";
  for (const auto& row : rows) {
    summary += fmt::format("{},{},{},{},{},{},{},{},{}\n", to_string(row.ensemble), row.n, format_real(row.epsilon),
                           row.stats.instances, format_real(row.stats.success_fraction),
                           format_real(row.stats.mean_iterations), format_real(row.stats.mean_max_layers),
                           format_real(row.entropy_slope_a), format_real(row.entropy_intercept_b));
    for (std::size_t it = 0; it < row.stats.mean_ar_error.size(); ++it) {
      convergence += fmt::format("{},{},{},{},{},{}\n", to_string(row.ensemble), row.n, format_real(row.epsilon), it,
                                 format_real(row.stats.mean_ar_error[it]), format_real(row.stats.stderr_ar_error[it]));
    }
  }
  write_file_atomic(optimizer_dir / "summary.csv", summary);
  write_file_atomic(optimizer_dir / "convergence.csv", convergence);
  write_file_atomic(optimizer_dir / "fit.txt", report);
  return rows;
}

}  // namespace vqco::experiment
