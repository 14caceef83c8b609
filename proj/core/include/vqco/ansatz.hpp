#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vqco/graph.hpp"
#include "vqco/statevector.hpp"

namespace vqco {

struct QubitPair {
  int r = 0;  // Z acts here
  int q = 0;  // Y acts here

  friend bool operator==(const QubitPair&, const QubitPair&) = default;
};

enum class RhoOrder { Descending, Ascending };

/// Fully connected ZY ansatz
///   |psi(theta)> = ... exp(i theta_1 Z_0 Y_2) exp(i theta_0 Z_0 Y_1) |+>^n
/// over qubits labelled by vertex-weight rank. Gate j acts in pair_order()
/// sequence, so (0,1) is applied first.
///
/// Pruning: with epsilon > 0 a gate is active iff |theta_j| >= epsilon.
/// The mask is derived from theta on every query, so it is always current.
/// Inactive gates act as the identity but keep their parameter.
class Ansatz {
 public:
  /// Ranks vertices by vertex weight (ties by ascending vertex id) and lays
  /// out pairs lexicographically in rank space. theta starts at zero.
  static Ansatz build(const WeightedGraph& graph, double epsilon = 0.0, RhoOrder order = RhoOrder::Descending);

  /// Identity ranking on n qubits.
  static Ansatz identity(int n_qubits, double epsilon = 0.0);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t n_params() const noexcept { return pairs_.size(); }
  std::span<const QubitPair> pair_order() const noexcept { return pairs_; }

  /// vertex_rank()[k] is the original vertex that sits on qubit k.
  std::span<const int> vertex_rank() const noexcept { return vertex_rank_; }

  std::span<const double> theta() const noexcept { return theta_; }
  std::span<double> theta() noexcept { return theta_; }
  void set_theta(std::span<const double> theta);

  double epsilon() const noexcept { return epsilon_; }
  void set_epsilon(double epsilon);

  bool is_active(std::size_t j) const noexcept;
  std::vector<bool> active_mask() const;

 private:
  int n_qubits_ = 0;
  std::vector<QubitPair> pairs_;
  std::vector<int> vertex_rank_;
  std::vector<double> theta_;
  double epsilon_ = 0.0;
};

/// Resets `workspace` to |+>^n and applies the active gates.
void prepare(const Ansatz& ansatz, StateVector& workspace);
StateVector prepare(const Ansatz& ansatz);

int active_gate_count(const Ansatz& ansatz);

/// count / |E|: the number of single QAOA layers with the same two-qubit
/// rotation count. Throws for an edgeless graph.
double qaoa_layer_equivalent(int count, const WeightedGraph& graph);

/// Graph with vertices renamed into the ansatz's rank space.
WeightedGraph ranked_graph(const WeightedGraph& graph, const Ansatz& ansatz);

// Real-amplitude engine. The ansatz is a product of real rotations applied to a
// real start vector, so the prepared state is real. The optimizers work on
// std::vector<double> amplitudes through the functions below.

/// A single gate evaluated at `angle` regardless of the pruning mask.
struct GateOverride {
  std::size_t index = 0;
  double angle = 0.0;
};

/// Applies gates [first, last) to a real state, honouring the mask and the
/// optional override.
void apply_gates(const Ansatz& ansatz, std::span<double> state, std::size_t first, std::size_t last,
                 std::optional<GateOverride> override_gate = std::nullopt);

/// Fills `out` with the real amplitudes of the prepared state.
void prepare_real(const Ansatz& ansatz, std::vector<double>& out,
                  std::optional<GateOverride> override_gate = std::nullopt);

void fill_plus_state(std::vector<double>& out, int n_qubits);

}  // namespace vqco
