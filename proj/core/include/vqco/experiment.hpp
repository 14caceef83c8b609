#pragma once

// Batch experiments: instance seeding, presets, a worker pool over instances
// and the on-disk layout of a run directory.
//
//   <dir>/manifest.csv                 one row per generated instance
//   <dir>/graphs/<instance>.graph
//   <dir>/<optimizer>/runs.csv         one row per finished run
//   <dir>/<optimizer>/trajectories/<instance>_eps<e>.csv
//   <dir>/<optimizer>/summary.csv      written by analyze
//   <dir>/<optimizer>/convergence.csv  long format, one row per iteration
//   <dir>/<optimizer>/fit.txt          volume-law fit report

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vqco/adam.hpp"
#include "vqco/analysis.hpp"
#include "vqco/graph.hpp"
#include "vqco/trajectory.hpp"
#include "vqco/varit.hpp"

namespace vqco::experiment {

enum class Optimizer { VarIt, Adam };

std::string_view to_string(Optimizer optimizer);
Optimizer parse_optimizer(std::string_view name);

struct ExperimentSpec {
  /// Ensemble::Custom stands for complete graphs with U(0, 1] weights.
  Ensemble ensemble = Ensemble::ThreeRegular;
  std::vector<int> sizes{8};
  int instances = 1;
  std::optional<Convention> convention;  // unset: per-ensemble default
  Optimizer optimizer = Optimizer::VarIt;
  varit::Config varit{.dtau = varit::kSigmoidDtau};
  adam::Config adam;
  std::vector<double> epsilons{0.0};
  std::uint64_t master_seed = 1;
  int nws_k = 4;
  double nws_p = 0.5;
  /// Fill the entropy column (even sizes only).
  bool entropy = false;
  /// Also evolve the exact e^{-tau H} state and write a comparison table.
  bool exact_reference = false;

  Convention resolved_convention() const;
  /// Throws std::invalid_argument on an inconsistent spec.
  void validate() const;
};

/// derive_seed(master, ensemble index, n, instance index).
std::uint64_t instance_seed(std::uint64_t master_seed, Ensemble ensemble, int n, int index);

WeightedGraph make_instance(const ExperimentSpec& spec, int n, int index);

/// "<ensemble>_n<n>_i<index>", zero-padded index.
std::string instance_name(Ensemble ensemble, int n, int index);

/// Names accepted by presets(): fig1, fig2, fig3, fig4.
std::vector<std::string> preset_names();
std::string preset_description(std::string_view name);
std::vector<ExperimentSpec> presets(std::string_view name);

struct InstanceResult {
  Optimizer optimizer = Optimizer::VarIt;
  Ensemble ensemble = Ensemble::ThreeRegular;
  int n = 0;
  int index = 0;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  Trajectory trajectory;
  double max_entropy = std::numeric_limits<double>::quiet_NaN();
  bool rises_then_falls = false;
  /// Per flow iteration AR of exact imaginary time evolution (fig1 only).
  std::vector<double> exact_ar;

  std::string trajectory_file() const;  // relative to the optimizer directory
};

/// Runs one instance at one pruning threshold.
InstanceResult run_instance(const ExperimentSpec& spec, int n, int index, double epsilon);

/// AR after each of `steps` exact imaginary time steps of size dtau from |+>,
/// starting with the initial state.
std::vector<double> exact_ite_ar(const WeightedGraph& graph, Convention convention, double dtau, int steps);

/// Every (size, instance, epsilon) of every spec, on `jobs` worker threads.
/// Results come back in a fixed order independent of `jobs`.
std::vector<InstanceResult> run_batch(const std::vector<ExperimentSpec>& specs, int jobs);

/// Writes graphs/ and manifest.csv. Returns the number of graphs written.
std::size_t write_instances(const std::vector<ExperimentSpec>& specs, const std::filesystem::path& dir);

/// Writes trajectories, runs.csv per optimizer and the fig1 comparison table
/// when present.
void write_results(const std::vector<InstanceResult>& results, const std::filesystem::path& dir);

/// One summary row per (ensemble, n, epsilon) group of an optimizer directory.
struct SummaryRow {
  Ensemble ensemble = Ensemble::ThreeRegular;
  int n = 0;
  double epsilon = 0.0;
  analysis::BatchSummary stats;
  double entropy_slope_a = std::numeric_limits<double>::quiet_NaN();
  double entropy_intercept_b = std::numeric_limits<double>::quiet_NaN();
};

inline constexpr std::string_view kSummaryCsvHeader =
    "ensemble,n,epsilon,instances,success_fraction,mean_iterations,mean_max_layers,entropy_slope_a,"
    "entropy_intercept_b";

/// Reads runs.csv and the trajectories below `optimizer_dir`, writes
/// summary.csv, convergence.csv and fit.txt, and returns the summary rows.
/// Throws std::invalid_argument when there is nothing to analyze.
std::vector<SummaryRow> analyze(const std::filesystem::path& optimizer_dir);

/// Optimizer subdirectories of a run directory that contain runs.csv.
std::vector<std::filesystem::path> optimizer_dirs(const std::filesystem::path& dir);

}  // namespace vqco::experiment
