#pragma once

#include <span>
#include <vector>

#include "vqco/ansatz.hpp"
#include "vqco/hamiltonian.hpp"
#include "vqco/trajectory.hpp"

namespace vqco::detail {

inline std::vector<double> squared(std::span<const double> amps) {
  std::vector<double> p(amps.size());
  for (std::size_t z = 0; z < amps.size(); ++z) p[z] = amps[z] * amps[z];
  return p;
}

inline double optimal_mass(std::span<const double> probabilities, const CostHamiltonian& h) {
  double total = 0.0;
  for (const Bitstring z : h.optimal_set()) total += probabilities[z];
  return total;
}

inline void append_record(Trajectory& t, const Ansatz& ansatz, std::span<const double> probabilities,
                          const CostHamiltonian& h, int iteration, double tau, Phase phase) {
  TrajectoryRecord r;
  r.iteration = iteration;
  r.tau = tau;
  r.phase = phase;
  r.energy = energy(probabilities, h);
  r.ar = approximation_ratio(r.energy, h);
  r.optimal_norm = optimal_mass(probabilities, h);
  r.active_count = active_gate_count(ansatz);
  t.records.push_back(r);
  t.thetas.emplace_back(ansatz.theta().begin(), ansatz.theta().end());
}

}  // namespace vqco::detail
