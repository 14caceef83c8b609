#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vqco/graph.hpp"
#include "vqco/statevector.hpp"

namespace vqco {

/// One Pauli string coefficient * Z_i Z_j of the cost operator.
struct ZZTerm {
  int i = 0;
  int j = 0;
  double coefficient = 0.0;
};

/// Diagonal MAXCUT cost operator with its full diagonal materialized.
///
/// Physics:         H = sum w Z_i Z_j
/// ComputerScience: H = -sum w (1 - Z_i Z_j) / 2 = sum (w/2) Z_i Z_j - sum w/2
class CostHamiltonian {
 public:
  /// Builds the diagonal and the optimum. Requires n <= kMaxEnumerationVertices.
  static CostHamiltonian build(const WeightedGraph& graph, Convention convention);

  int n_qubits() const noexcept { return n_qubits_; }
  Convention convention() const noexcept { return convention_; }
  std::span<const ZZTerm> terms() const noexcept { return terms_; }
  double constant_offset() const noexcept { return constant_offset_; }
  std::span<const double> diagonal() const noexcept { return diagonal_; }
  double c_opt() const noexcept { return c_opt_; }
  std::span<const Bitstring> optimal_set() const noexcept { return optimal_set_; }

 private:
  CostHamiltonian() = default;

  int n_qubits_ = 0;
  Convention convention_ = Convention::ComputerScience;
  std::vector<ZZTerm> terms_;
  double constant_offset_ = 0.0;
  std::vector<double> diagonal_;
  double c_opt_ = 0.0;
  std::vector<Bitstring> optimal_set_;
};

/// Current energy and spread of H, plus the spread in |+>^n.
struct SpectralStats {
  double e_tau = 0.0;
  double sigma_tau = 0.0;
  double sigma_0 = 0.0;
};

double energy(const StateVector& state, const CostHamiltonian& h);

/// <H^2> - <H>^2, with round-off negatives clamped to zero.
double variance(const StateVector& state, const CostHamiltonian& h);

/// Same quantities from a probability vector |psi(z)|^2.
double energy(std::span<const double> probabilities, const CostHamiltonian& h);
double variance(std::span<const double> probabilities, const CostHamiltonian& h);

/// Standard deviation of H in |+>^n, evaluated numerically.
double plus_state_sigma(const CostHamiltonian& h);

SpectralStats spectral_stats(std::span<const double> probabilities, const CostHamiltonian& h, double sigma_0);

/// e / c_opt. Throws std::domain_error when c_opt is zero.
double approximation_ratio(double e, const CostHamiltonian& h);

inline constexpr double kSigmaFloor = 1e-9;

/// f(c) = 1 / (1 + exp(-sigma_0 (c - E) / (4 sigma^2))) over the diagonal.
/// Returns nullopt when sigma_tau is below kSigmaFloor (the state is an
/// eigenstate and the transform degenerates into a step). Throws when
/// sigma_0 is not positive.
std::optional<std::vector<double>> sigmoid_transform(const CostHamiltonian& h, const SpectralStats& stats);

/// exp(-dtau H) |psi>, renormalized.
StateVector exact_imaginary_time_step(const StateVector& state, const CostHamiltonian& h, double dtau);

/// Same step for an arbitrary real diagonal of length 2^n.
StateVector exact_imaginary_time_step(const StateVector& state, std::span<const double> diagonal, double dtau);

/// Returns sum_z weights[z] * P(z) for every term P of `h`, where P(z) = +-1 is
/// the Z_i Z_j eigenvalue. With `weights` = probabilities this is <Z_i Z_j>.
/// Uses a Walsh-Hadamard pass when there are more terms than qubits.
std::vector<double> term_expectations(std::span<const double> weights, const CostHamiltonian& h);

}  // namespace vqco
