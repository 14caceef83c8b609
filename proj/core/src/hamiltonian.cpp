#include "vqco/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vqco/kernels.hpp"

namespace vqco {

CostHamiltonian CostHamiltonian::build(const WeightedGraph& graph, Convention convention) {
  validate(graph);
  if (graph.n_vertices > kMaxEnumerationVertices) {
    throw std::invalid_argument("cost operator limited to " + std::to_string(kMaxEnumerationVertices) +
                                " qubits, got " + std::to_string(graph.n_vertices));
  }
  CostHamiltonian h;
  h.n_qubits_ = graph.n_vertices;
  h.convention_ = convention;
  double weight_sum = 0.0;
  for (const auto& e : graph.edges) {
    const double coefficient = convention == Convention::Physics ? e.weight : 0.5 * e.weight;
    h.terms_.push_back({e.u, e.v, coefficient});
    weight_sum += e.weight;
  }
  h.constant_offset_ = convention == Convention::Physics ? 0.0 : -0.5 * weight_sum;

  const std::size_t dim = std::size_t{1} << h.n_qubits_;
  h.diagonal_.assign(dim, h.constant_offset_);
  for (const auto& t : h.terms_) {
    for (std::size_t z = 0; z < dim; ++z) {
      h.diagonal_[z] += (((z >> t.i) ^ (z >> t.j)) & 1U) ? -t.coefficient : t.coefficient;
    }
  }

  auto optimum = brute_force_optimum(graph, convention);
  h.c_opt_ = optimum.c_opt;
  h.optimal_set_ = std::move(optimum.optimal_set);
  return h;
}

namespace {

void check_size(std::size_t got, const CostHamiltonian& h) {
  if (got != h.diagonal().size()) {
    throw std::invalid_argument("state dimension " + std::to_string(got) + " does not match cost operator dimension " +
                                std::to_string(h.diagonal().size()));
  }
}

}  // namespace

double energy(std::span<const double> probabilities, const CostHamiltonian& h) {
  check_size(probabilities.size(), h);
  const auto d = h.diagonal();
  double total = 0.0;
  for (std::size_t z = 0; z < d.size(); ++z) total += probabilities[z] * d[z];
  return total;
}

double variance(std::span<const double> probabilities, const CostHamiltonian& h) {
  check_size(probabilities.size(), h);
  const auto d = h.diagonal();
  double first = 0.0;
  double second = 0.0;
  for (std::size_t z = 0; z < d.size(); ++z) {
    first += probabilities[z] * d[z];
    second += probabilities[z] * d[z] * d[z];
  }
  const double var = second - first * first;
  return var > -1e-12 ? std::max(var, 0.0) : var;
}

double energy(const StateVector& state, const CostHamiltonian& h) {
  check_size(state.dimension(), h);
  return expect_diagonal(state, h.diagonal());
}

double variance(const StateVector& state, const CostHamiltonian& h) {
  return variance(state.probabilities(), h);
}

double plus_state_sigma(const CostHamiltonian& h) {
  const std::vector<double> uniform(h.diagonal().size(), 1.0 / static_cast<double>(h.diagonal().size()));
  return std::sqrt(variance(uniform, h));
}

SpectralStats spectral_stats(std::span<const double> probabilities, const CostHamiltonian& h, double sigma_0) {
  return {energy(probabilities, h), std::sqrt(variance(probabilities, h)), sigma_0};
}

double approximation_ratio(double e, const CostHamiltonian& h) {
  if (h.c_opt() == 0.0) throw std::domain_error("approximation ratio undefined: optimal cost is zero");
  return e / h.c_opt();
}

std::optional<std::vector<double>> sigmoid_transform(const CostHamiltonian& h, const SpectralStats& stats) {
  if (!(stats.sigma_0 > 0.0)) throw std::invalid_argument("sigmoid transform needs a positive initial spread");
  if (!(stats.sigma_tau >= kSigmaFloor)) return std::nullopt;
  const double sharpness = stats.sigma_0 / (4.0 * stats.sigma_tau * stats.sigma_tau);
  const auto d = h.diagonal();
  std::vector<double> f(d.size());
  for (std::size_t z = 0; z < d.size(); ++z) {
    // f = 1 / (1 + e^x) with x = -sharpness (c - E); exp only sees x <= 0.
    const double x = -sharpness * (d[z] - stats.e_tau);
    if (x >= 0.0) {
      const double ex = std::exp(-x);
      f[z] = ex / (1.0 + ex);
    } else {
      f[z] = 1.0 / (1.0 + std::exp(x));
    }
  }
  return f;
}

StateVector exact_imaginary_time_step(const StateVector& state, std::span<const double> diagonal, double dtau) {
  if (diagonal.size() != state.dimension()) {
    throw std::invalid_argument("diagonal length " + std::to_string(diagonal.size()) +
                                " does not match state dimension " + std::to_string(state.dimension()));
  }
  if (!(dtau > 0.0)) throw std::invalid_argument("imaginary time step must be positive");
  // Shift by the minimum so the largest factor is exactly 1 and nothing overflows.
  const double shift = *std::min_element(diagonal.begin(), diagonal.end());
  StateVector next = state;
  auto amps = next.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) amps[z] *= std::exp(-dtau * (diagonal[z] - shift));
  next.normalize();
  return next;
}

StateVector exact_imaginary_time_step(const StateVector& state, const CostHamiltonian& h, double dtau) {
  check_size(state.dimension(), h);
  return exact_imaginary_time_step(state, h.diagonal(), dtau);
}

std::vector<double> term_expectations(std::span<const double> weights, const CostHamiltonian& h) {
  check_size(weights.size(), h);
  const auto terms = h.terms();
  std::vector<double> out(terms.size(), 0.0);
  if (static_cast<int>(terms.size()) > h.n_qubits()) {
    std::vector<double> spectrum(weights.begin(), weights.end());
    kernels::walsh_hadamard(spectrum);
    for (std::size_t a = 0; a < terms.size(); ++a) {
      out[a] = spectrum[(std::size_t{1} << terms[a].i) | (std::size_t{1} << terms[a].j)];
    }
    return out;
  }
  for (std::size_t a = 0; a < terms.size(); ++a) {
    const int i = terms[a].i;
    const int j = terms[a].j;
    double total = 0.0;
    for (std::size_t z = 0; z < weights.size(); ++z) {
      total += (((z >> i) ^ (z >> j)) & 1U) ? -weights[z] : weights[z];
    }
    out[a] = total;
  }
  return out;
}

}  // namespace vqco
