#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vqco/ansatz.hpp"
#include "vqco/graph.hpp"
#include "vqco/hamiltonian.hpp"
#include "vqco/statevector.hpp"
#include "vqco/trajectory.hpp"

namespace vqco::analysis {

/// chi_ij = (delta_ij - 1) <Z_i Z_j>: symmetric, zero diagonal.
struct CorrelationMatrix {
  Eigen::MatrixXd chi;
};

CorrelationMatrix correlation_matrix(const StateVector& state);
CorrelationMatrix correlation_matrix(std::span<const double> probabilities, int n_qubits);

struct RoundedCut {
  Bitstring best = 0;
  double cost = 0.0;
};

/// Sign-rounds every eigenvector of chi (0 rounds to +1, i.e. bit 0) and
/// returns the cheapest candidate among the roundings and their complements.
/// `graph` must be labelled like the state's qubits.
RoundedCut relaxed_round(const StateVector& state, const WeightedGraph& graph, Convention convention);
RoundedCut relaxed_round(std::span<const double> probabilities, const WeightedGraph& graph, Convention convention);

/// max(raw AR, AR of the rounded cut).
double reported_ar(double raw_ar, const RoundedCut& rounded, const CostHamiltonian& h);

/// Equal random bipartition: n/2 distinct qubits drawn from `partition_seed`,
/// ascending. Throws for odd n.
std::vector<int> random_half(int n_qubits, std::uint64_t partition_seed);

/// Entanglement entropy of one random equal bipartition at every recorded
/// parameter snapshot, stopping after the first snapshot whose optimal-subspace
/// fidelity reaches 1/2. `thetas` and `optimal_norms` are parallel.
std::vector<double> entropy_trace(std::span<const std::vector<double>> thetas, std::span<const double> optimal_norms,
                                  const Ansatz& ansatz, std::uint64_t partition_seed);

/// Convenience overload over a trajectory's flow records; writes the values
/// into the entropy column and returns them.
std::vector<double> entropy_trace(Trajectory& trajectory, const Ansatz& ansatz, std::uint64_t partition_seed);

/// True when the maximum sits strictly inside the trace and the last value is
/// below it.
bool rises_then_falls(std::span<const double> trace);

struct EntropyFit {
  double a = 0.0;  // slope, nats per qubit
  double b = 0.0;  // intercept, nats
  double stderr_a = 0.0;
  double stderr_b = 0.0;
};

struct SizePoint {
  double n = 0.0;
  double s = 0.0;
};

/// Ordinary least squares S = a N + b with standard errors; needs >= 3
/// points and at least two distinct sizes.
EntropyFit volume_law_fit(std::span<const SizePoint> points);

struct BatchSummary {
  std::size_t instances = 0;
  std::vector<double> mean_ar_error;    // per iteration, last record held
  std::vector<double> stderr_ar_error;
  double success_fraction = 0.0;
  double mean_iterations = 0.0;         // over instances that converge
  double stderr_iterations = 0.0;
  std::size_t converged_instances = 0;
  double mean_max_layers = 0.0;
  double max_max_layers = 0.0;
};

/// Aggregates a batch; `horizon` fixes the per-iteration series length
/// (defaults to the longest trajectory).
BatchSummary batch_stats(std::span<const Trajectory> trajectories, int horizon = -1);

}  // namespace vqco::analysis
