#pragma once

#include <iosfwd>
#include <limits>
#include <string_view>
#include <vector>

namespace vqco {

enum class Phase { Flow, Jacobi, Done };

std::string_view to_string(Phase phase);
Phase parse_phase(std::string_view name);

struct TrajectoryRecord {
  int iteration = 0;
  double tau = 0.0;
  Phase phase = Phase::Flow;
  double energy = 0.0;
  double ar = 0.0;
  double optimal_norm = 0.0;
  int active_count = 0;
  double entropy = std::numeric_limits<double>::quiet_NaN();

  double ar_error() const noexcept { return 1.0 - ar; }
};

inline constexpr double kSuccessNorm = 0.99;

/// Per-iteration history of one optimization run. thetas[k] holds the
/// parameters that produced records[k], in pair_order sequence.
struct Trajectory {
  std::vector<TrajectoryRecord> records;
  std::vector<std::vector<double>> thetas;
  int n_qubits = 0;
  int n_edges = 0;
  double c_opt = 0.0;
  bool switched = false;  // flow stopped because the switch test fired

  const TrajectoryRecord& final_record() const { return records.back(); }
  bool converged() const { return !records.empty() && records.back().optimal_norm > kSuccessNorm; }
  int max_active_count() const;
  /// First iteration whose AR reaches 1 - 1e-9, or -1.
  int iterations_to_converge() const;
  /// AR error at `iteration`, holding the last record beyond the end.
  double ar_error_at(int iteration) const;
};

inline constexpr std::string_view kTrajectoryCsvHeader =
    "iteration,tau,phase,energy,ar,ar_error,optimal_norm,active_count,entropy";

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// Reads the records back; metadata fields stay default.
Trajectory read_trajectory_csv(std::istream& in);

/// One row per snapshot: iteration, then every theta in pair_order sequence.
void write_theta_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace vqco
