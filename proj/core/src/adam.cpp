#include "vqco/adam.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "run_support.hpp"
#include "vqco/kernels.hpp"

namespace vqco::adam {

namespace {

constexpr double kQuarterTurn = std::numbers::pi / 4.0;

double shifted_energy(const Ansatz& ansatz, std::size_t j, double angle, const CostHamiltonian& h,
                      std::vector<double>& work) {
  prepare_real(ansatz, work, GateOverride{j, angle});
  const auto d = h.diagonal();
  double e = 0.0;
  for (std::size_t z = 0; z < work.size(); ++z) e += work[z] * work[z] * d[z];
  return e;
}

/// sum_z lambda[z] * (i Z_r Y_q phi)[z]
double generator_overlap(std::span<const double> lambda, std::span<const double> phi, int r, int q) {
  const std::size_t qmask = std::size_t{1} << q;
  double total = 0.0;
  for (std::size_t block = 0; block < phi.size(); block += 2 * qmask) {
    for (std::size_t a = block; a < block + qmask; ++a) {
      const double z = ((a >> r) & 1U) ? -1.0 : 1.0;
      total += z * (lambda[a] * phi[a + qmask] - lambda[a + qmask] * phi[a]);
    }
  }
  return total;
}

}  // namespace

void Config::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
  if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0)) {
    throw std::invalid_argument("ADAM moment decay rates must lie in (0, 1)");
  }
  if (!(eps_hat > 0.0)) throw std::invalid_argument("ADAM eps_hat must be positive");
  if (max_iterations < 0) throw std::invalid_argument("max_iterations must be nonnegative");
}

std::vector<double> gradient_shift_rule(const Ansatz& ansatz, const CostHamiltonian& h) {
  std::vector<double> grad(ansatz.n_params());
  std::vector<double> work;
  for (std::size_t j = 0; j < grad.size(); ++j) {
    const double theta = ansatz.theta()[j];
    grad[j] = shifted_energy(ansatz, j, theta + kQuarterTurn, h, work) -
              shifted_energy(ansatz, j, theta - kQuarterTurn, h, work);
  }
  return grad;
}

std::vector<double> gradient(const Ansatz& ansatz, const CostHamiltonian& h) {
  for (std::size_t j = 0; j < ansatz.n_params(); ++j) {
    if (!ansatz.is_active(j)) return gradient_shift_rule(ansatz, h);
  }
  std::vector<double> phi;
  prepare_real(ansatz, phi);
  const auto d = h.diagonal();
  std::vector<double> lambda(phi.size());
  for (std::size_t z = 0; z < phi.size(); ++z) lambda[z] = d[z] * phi[z];

  const auto pairs = ansatz.pair_order();
  const auto theta = ansatz.theta();
  std::vector<double> grad(ansatz.n_params());
  for (std::size_t j = grad.size(); j-- > 0;) {
    grad[j] = 2.0 * generator_overlap(lambda, phi, pairs[j].r, pairs[j].q);
    const double c = std::cos(theta[j]);
    const double s = -std::sin(theta[j]);
    kernels::zy_rotate<double>(phi, pairs[j].r, pairs[j].q, c, s);
    kernels::zy_rotate<double>(lambda, pairs[j].r, pairs[j].q, c, s);
  }
  return grad;
}

RunResult run(const WeightedGraph& graph, Convention convention, const Config& config,
              std::optional<std::vector<double>> initial_theta) {
  config.validate();
  Ansatz ansatz = Ansatz::build(graph);
  const WeightedGraph ranked = ranked_graph(graph, ansatz);
  const CostHamiltonian h = CostHamiltonian::build(ranked, convention);
  if (h.c_opt() == 0.0) throw std::invalid_argument("degenerate instance: optimal cost is zero");
  if (initial_theta) ansatz.set_theta(*initial_theta);

  Trajectory t;
  t.n_qubits = graph.n_vertices;
  t.n_edges = static_cast<int>(graph.edges.size());
  t.c_opt = h.c_opt();

  std::vector<double> m(ansatz.n_params(), 0.0);
  std::vector<double> v(ansatz.n_params(), 0.0);
  std::vector<double> amps;
  for (int step = 0;; ++step) {
    prepare_real(ansatz, amps);
    const Phase phase = step == config.max_iterations ? Phase::Done : Phase::Flow;
    detail::append_record(t, ansatz, detail::squared(amps), h, step, static_cast<double>(step), phase);
    if (step == config.max_iterations) break;

    const auto grad = gradient(ansatz, h);
    const double bias1 = 1.0 - std::pow(config.beta1, step + 1);
    const double bias2 = 1.0 - std::pow(config.beta2, step + 1);
    auto theta = ansatz.theta();
    for (std::size_t j = 0; j < grad.size(); ++j) {
      m[j] = config.beta1 * m[j] + (1.0 - config.beta1) * grad[j];
      v[j] = config.beta2 * v[j] + (1.0 - config.beta2) * grad[j] * grad[j];
      theta[j] -= config.learning_rate * (m[j] / bias1) / (std::sqrt(v[j] / bias2) + config.eps_hat);
    }
  }
  return {std::move(t), std::move(ansatz)};
}

}  // namespace vqco::adam
