#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vqco/ansatz.hpp"
#include "vqco/graph.hpp"
#include "vqco/hamiltonian.hpp"
#include "vqco/statevector.hpp"
#include "vqco/trajectory.hpp"

namespace vqco::varit {

/// How the G matrix is evaluated. Both give the same matrix; ShiftRule
/// costs 2 * N_p full state preparations.
enum class GRoute { Analytic, ShiftRule };

/// Step used with the sigmoid on. f squeezes the spectrum into (0, 1), so
/// near tau = 0 the flow moves about 16 sigma_0 times slower than on raw H.
inline constexpr double kSigmoidDtau = 1.5;

struct Config {
  double dtau = 0.1;
  double svd_cutoff_ratio = 0.01;
  int max_iterations = 100;
  double switch_threshold = 0.5;
  double probability_floor = 1e-6;
  bool use_sigmoid = true;
  double epsilon = 0.0;
  /// Halve G, i.e. read the shifted-expectation sinusoid as
  /// a + b cos(2d) + 2 G sin(2d) instead of a + b cos(2d) + G sin(2d).
  bool literal_shift_factor = false;
  RhoOrder order = RhoOrder::Descending;
  GRoute g_route = GRoute::Analytic;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// G theta_dot = D, one row per cost term.
struct GDSystem {
  Eigen::MatrixXd G;
  Eigen::VectorXd D;
};

/// D_a = -(<P_a g> - <P_a><g>), where g is the sigmoid-transformed diagonal
/// when `use_sigmoid` is set and the raw diagonal otherwise. nullopt signals a
/// converged spectrum (sigma_tau under kSigmaFloor with the sigmoid on).
std::optional<Eigen::VectorXd> compute_D(std::span<const double> probabilities, const CostHamiltonian& h,
                                         const SpectralStats& stats, bool use_sigmoid);
std::optional<Eigen::VectorXd> compute_D(const StateVector& state, const CostHamiltonian& h,
                                         const SpectralStats& stats, bool use_sigmoid);

/// Column j of G by the two-point shift rule:
///   (<P_a>(theta_j + pi/4) - <P_a>(theta_j - pi/4)) / 2,
/// with gate j forced active in both shifted preparations.
Eigen::VectorXd compute_G_column(const Ansatz& ansatz, std::size_t j, const CostHamiltonian& h);

/// Full G by the shift rule, column by column.
Eigen::MatrixXd compute_G_shift_rule(const Ansatz& ansatz, const CostHamiltonian& h);

/// Full G from tangent vectors: G_aj = Re <psi_j| P_a d_j psi_j>, where psi_j
/// is the state with gate j forced active at theta_j. One pass of prefix
/// states, a suffix propagation per column and a Walsh-Hadamard projection.
Eigen::MatrixXd compute_G(const Ansatz& ansatz, const CostHamiltonian& h);

/// Truncated pseudoinverse solve: singular values below
/// svd_cutoff_ratio * sigma_max are dropped; an all-zero G gives zero.
Eigen::VectorXd solve_step(const GDSystem& system, const Config& config);

/// theta += dtau * theta_dot.
void euler_update(std::span<double> theta, std::span<const double> theta_dot, double dtau);

/// True when the lowest-cost basis state carrying at least
/// probability_floor holds switch_threshold of the probability (states within
/// 1e-9 of that cost are pooled).
bool switch_ready(std::span<const double> probabilities, const CostHamiltonian& h, const Config& config);
bool switch_ready(const StateVector& state, const CostHamiltonian& h, const Config& config);

/// One pass of exact single-parameter line minimization of <H> over every
/// parameter in pair order. Returns the per-parameter shifts applied.
std::vector<double> jacobi_sweep(Ansatz& ansatz, const CostHamiltonian& h);

/// Everything a run produces besides the trajectory.
struct RunResult {
  Trajectory trajectory;
  Ansatz ansatz;          // final parameters
  WeightedGraph ranked;   // graph relabelled into qubit order
};

/// Flow phase (G, D, solve, Euler) until switch_ready, a converged spectrum or
/// max_iterations, then one Jacobi sweep. The ansatz starts from theta = 0
/// unless `initial_theta` is given.
RunResult run(const WeightedGraph& graph, Convention convention, const Config& config,
              std::optional<std::vector<double>> initial_theta = std::nullopt);

}  // namespace vqco::varit
