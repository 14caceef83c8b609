#pragma once

#include <optional>
#include <vector>

#include "vqco/ansatz.hpp"
#include "vqco/hamiltonian.hpp"
#include "vqco/trajectory.hpp"

namespace vqco::adam {

struct Config {
  double learning_rate = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps_hat = 1e-8;
  int max_iterations = 100;

  void validate() const;
};

/// dE/dtheta_j = E(theta_j + pi/4) - E(theta_j - pi/4), two shifted
/// preparations per parameter.
std::vector<double> gradient_shift_rule(const Ansatz& ansatz, const CostHamiltonian& h);

/// Same gradient by reverse-mode propagation: one forward preparation and one
/// backward sweep carrying H|psi>.
std::vector<double> gradient(const Ansatz& ansatz, const CostHamiltonian& h);

struct RunResult {
  Trajectory trajectory;
  Ansatz ansatz;
};

/// Bias-corrected ADAM descent on <H> over the full ansatz (no pruning),
/// recording iterations 0..max_iterations.
RunResult run(const WeightedGraph& graph, Convention convention, const Config& config,
              std::optional<std::vector<double>> initial_theta = std::nullopt);

}  // namespace vqco::adam
