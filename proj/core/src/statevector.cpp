#include "vqco/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "vqco/kernels.hpp"

namespace vqco {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count must lie in [1, " + std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n));
  }
}

void check_qubit(const StateVector& state, int k) {
  if (k < 0 || k >= state.n_qubits()) {
    throw std::invalid_argument("qubit " + std::to_string(k) + " out of range for " +
                                std::to_string(state.n_qubits()) + " qubits");
  }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  check_qubit_count(n_qubits);
  amplitudes_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Amplitude> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(n_qubits);
  if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("amplitude vector has " + std::to_string(amplitudes_.size()) +
                                " entries, expected 2^" + std::to_string(n_qubits));
  }
}

double StateVector::norm_squared() const noexcept {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return total;
}

void StateVector::normalize() {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw std::domain_error("cannot normalize a zero or non-finite state");
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& a : amplitudes_) a *= scale;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), p.begin(), [](const Amplitude& a) { return std::norm(a); });
  return p;
}

StateVector plus_state(int n) {
  check_qubit_count(n);
  const double amp = std::pow(2.0, -0.5 * n);
  return StateVector(n, std::vector<StateVector::Amplitude>(std::size_t{1} << n, StateVector::Amplitude{amp, 0.0}));
}

void apply_zy(StateVector& state, int r, int q, double theta) {
  check_qubit(state, r);
  check_qubit(state, q);
  if (r == q) throw std::invalid_argument("ZY rotation needs two distinct qubits");
  kernels::zy_rotate(state.amplitudes(), r, q, std::cos(theta), std::sin(theta));
}

double expect_diagonal(const StateVector& state, std::span<const double> diagonal) {
  if (diagonal.size() != state.dimension()) {
    throw std::invalid_argument("diagonal has " + std::to_string(diagonal.size()) + " entries, state has " +
                                std::to_string(state.dimension()));
  }
  double total = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) total += std::norm(amps[z]) * diagonal[z];
  return total;
}

double expect_zz(const StateVector& state, int i, int j) {
  check_qubit(state, i);
  check_qubit(state, j);
  if (i == j) throw std::invalid_argument("expect_zz needs two distinct qubits");
  double total = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) {
    const double p = std::norm(amps[z]);
    total += (((z >> i) ^ (z >> j)) & 1U) ? -p : p;
  }
  return total;
}

double subspace_norm(const StateVector& state, std::span<const Bitstring> basis_states) {
  double total = 0.0;
  for (const Bitstring z : basis_states) {
    if (z >= state.dimension()) throw std::invalid_argument("basis state index out of range");
    total += std::norm(state[z]);
  }
  return total;
}

double entanglement_entropy(const StateVector& state, std::span<const int> subset) {
  const int n = state.n_qubits();
  if (subset.empty() || static_cast<int>(subset.size()) >= n) {
    throw std::invalid_argument("entropy needs a nonempty proper subset of the qubits");
  }
  std::vector<bool> in_subset(static_cast<std::size_t>(n), false);
  for (int k : subset) {
    check_qubit(state, k);
    if (in_subset[static_cast<std::size_t>(k)]) throw std::invalid_argument("entropy subset has a repeated qubit");
    in_subset[static_cast<std::size_t>(k)] = true;
  }
  std::vector<int> rest;
  for (int k = 0; k < n; ++k) {
    if (!in_subset[static_cast<std::size_t>(k)]) rest.push_back(k);
  }

  const Eigen::Index rows = Eigen::Index{1} << subset.size();
  const Eigen::Index cols = Eigen::Index{1} << rest.size();
  Eigen::MatrixXcd schmidt(rows, cols);
  const auto amps = state.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) {
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    for (std::size_t b = 0; b < subset.size(); ++b) row |= static_cast<Eigen::Index>((z >> subset[b]) & 1U) << b;
    for (std::size_t b = 0; b < rest.size(); ++b) col |= static_cast<Eigen::Index>((z >> rest[b]) & 1U) << b;
    schmidt(row, col) = amps[z];
  }

  const Eigen::BDCSVD<Eigen::MatrixXcd> svd(schmidt);
  double entropy = 0.0;
  for (const double sigma : svd.singularValues()) {
    const double lambda = sigma * sigma;
    if (lambda > kEntropyCutoff) entropy -= lambda * std::log(lambda);
  }
  return std::max(entropy, 0.0);
}

}  // namespace vqco
