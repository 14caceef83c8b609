#include "vqco/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "vqco/kernels.hpp"

namespace vqco {

namespace {

std::vector<QubitPair> lexicographic_pairs(int n) {
  std::vector<QubitPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int r = 0; r < n; ++r) {
    for (int q = r + 1; q < n; ++q) pairs.push_back({r, q});
  }
  return pairs;
}

}  // namespace

Ansatz Ansatz::build(const WeightedGraph& graph, double epsilon, RhoOrder order) {
  if (graph.n_vertices < 2) throw std::invalid_argument("the ZY ansatz needs at least 2 qubits");
  const auto rho = vertex_profile(graph).rho;
  Ansatz a = identity(graph.n_vertices, epsilon);
  std::stable_sort(a.vertex_rank_.begin(), a.vertex_rank_.end(), [&](int x, int y) {
    const double rx = rho[static_cast<std::size_t>(x)];
    const double ry = rho[static_cast<std::size_t>(y)];
    return order == RhoOrder::Descending ? rx > ry : rx < ry;
  });
  return a;
}

Ansatz Ansatz::identity(int n_qubits, double epsilon) {
  if (n_qubits < 2) throw std::invalid_argument("the ZY ansatz needs at least 2 qubits");
  Ansatz a;
  a.n_qubits_ = n_qubits;
  a.pairs_ = lexicographic_pairs(n_qubits);
  a.vertex_rank_.resize(static_cast<std::size_t>(n_qubits));
  std::iota(a.vertex_rank_.begin(), a.vertex_rank_.end(), 0);
  a.theta_.assign(a.pairs_.size(), 0.0);
  a.set_epsilon(epsilon);
  return a;
}

void Ansatz::set_theta(std::span<const double> theta) {
  if (theta.size() != theta_.size()) {
    throw std::invalid_argument("expected " + std::to_string(theta_.size()) + " parameters, got " +
                                std::to_string(theta.size()));
  }
  std::copy(theta.begin(), theta.end(), theta_.begin());
}

void Ansatz::set_epsilon(double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("pruning threshold must be nonnegative");
  epsilon_ = epsilon;
}

bool Ansatz::is_active(std::size_t j) const noexcept {
  return epsilon_ == 0.0 || std::abs(theta_[j]) >= epsilon_;
}

std::vector<bool> Ansatz::active_mask() const {
  std::vector<bool> mask(theta_.size());
  for (std::size_t j = 0; j < mask.size(); ++j) mask[j] = is_active(j);
  return mask;
}

void prepare(const Ansatz& ansatz, StateVector& workspace) {
  if (workspace.n_qubits() != ansatz.n_qubits()) throw std::invalid_argument("workspace has the wrong qubit count");
  for (const double t : ansatz.theta()) {
    if (!std::isfinite(t)) throw std::invalid_argument("ansatz parameters must be finite");
  }
  workspace = plus_state(ansatz.n_qubits());
  const auto pairs = ansatz.pair_order();
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    if (ansatz.is_active(j)) apply_zy(workspace, pairs[j].r, pairs[j].q, ansatz.theta()[j]);
  }
}

StateVector prepare(const Ansatz& ansatz) {
  StateVector state(ansatz.n_qubits());
  prepare(ansatz, state);
  return state;
}

int active_gate_count(const Ansatz& ansatz) {
  int count = 0;
  for (std::size_t j = 0; j < ansatz.n_params(); ++j) count += ansatz.is_active(j) ? 1 : 0;
  return count;
}

double qaoa_layer_equivalent(int count, const WeightedGraph& graph) {
  if (graph.edges.empty()) throw std::invalid_argument("layer equivalents are undefined for an edgeless graph");
  return static_cast<double>(count) / static_cast<double>(graph.edges.size());
}

WeightedGraph ranked_graph(const WeightedGraph& graph, const Ansatz& ansatz) {
  return relabel(graph, ansatz.vertex_rank());
}

void apply_gates(const Ansatz& ansatz, std::span<double> state, std::size_t first, std::size_t last,
                 std::optional<GateOverride> override_gate) {
  const auto pairs = ansatz.pair_order();
  const auto theta = ansatz.theta();
  for (std::size_t j = first; j < last; ++j) {
    double angle = 0.0;
    if (override_gate && override_gate->index == j) {
      angle = override_gate->angle;
    } else if (ansatz.is_active(j)) {
      angle = theta[j];
    } else {
      continue;
    }
    kernels::zy_rotate(state, pairs[j].r, pairs[j].q, std::cos(angle), std::sin(angle));
  }
}

void fill_plus_state(std::vector<double>& out, int n_qubits) {
  out.assign(std::size_t{1} << n_qubits, std::pow(2.0, -0.5 * n_qubits));
}

void prepare_real(const Ansatz& ansatz, std::vector<double>& out, std::optional<GateOverride> override_gate) {
  fill_plus_state(out, ansatz.n_qubits());
  apply_gates(ansatz, out, 0, ansatz.n_params(), override_gate);
}

}  // namespace vqco
