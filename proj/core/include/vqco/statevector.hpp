#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "vqco/graph.hpp"

namespace vqco {

inline constexpr int kMaxQubits = 24;

/// Dense 2^n statevector. Amplitude index bit k is qubit k (little-endian).
class StateVector {
 public:
  using Amplitude = std::complex<double>;

  /// |0...0>.
  explicit StateVector(int n_qubits);

  /// Takes ownership of `amplitudes`; its size must be exactly 2^n.
  StateVector(int n_qubits, std::vector<Amplitude> amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }

  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }
  const Amplitude& operator[](std::size_t z) const { return amplitudes_[z]; }
  Amplitude& operator[](std::size_t z) { return amplitudes_[z]; }

  double norm_squared() const noexcept;
  /// Throws std::domain_error for the zero vector.
  void normalize();

  std::vector<double> probabilities() const;

 private:
  int n_qubits_;
  std::vector<Amplitude> amplitudes_;
};

/// |+>^n, every amplitude 2^(-n/2).
StateVector plus_state(int n);

/// In place exp(i theta Z_r Y_q) = cos(theta) I + i sin(theta) Z_r Y_q.
void apply_zy(StateVector& state, int r, int q, double theta);

/// sum_z |psi(z)|^2 d[z].
double expect_diagonal(const StateVector& state, std::span<const double> diagonal);

/// <Z_i Z_j>; requires i != j.
double expect_zz(const StateVector& state, int i, int j);

/// Probability mass on the listed basis states.
double subspace_norm(const StateVector& state, std::span<const Bitstring> basis_states);

inline constexpr double kEntropyCutoff = 1e-12;

/// Von Neumann entropy (natural log) of the reduced state on `subset`,
/// from the Schmidt coefficients of the amplitude matrix. Requires a nonempty
/// proper subset of distinct qubits.
double entanglement_entropy(const StateVector& state, std::span<const int> subset);

}  // namespace vqco
