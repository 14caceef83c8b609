#include "vqco/varit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "run_support.hpp"
#include "vqco/kernels.hpp"

namespace vqco::varit {

namespace {

constexpr double kQuarterTurn = std::numbers::pi / 4.0;

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::VectorXd shifted_term_expectations(const Ansatz& ansatz, std::size_t j, double angle,
                                          const CostHamiltonian& h, std::vector<double>& work) {
  prepare_real(ansatz, work, GateOverride{j, angle});
  return to_eigen(term_expectations(detail::squared(work), h));
}

double suffix_energy(const Ansatz& ansatz, const std::vector<double>& prefix, std::size_t j, double angle,
                     const CostHamiltonian& h, std::vector<double>& work) {
  work = prefix;
  apply_gates(ansatz, work, j, ansatz.n_params(), GateOverride{j, angle});
  const auto d = h.diagonal();
  double e = 0.0;
  for (std::size_t z = 0; z < work.size(); ++z) e += work[z] * work[z] * d[z];
  return e;
}

}  // namespace

void Config::validate() const {
  if (!(dtau > 0.0)) throw std::invalid_argument("dtau must be positive");
  if (!(svd_cutoff_ratio >= 0.0 && svd_cutoff_ratio < 1.0)) {
    throw std::invalid_argument("svd cutoff ratio must lie in [0, 1)");
  }
  if (max_iterations < 0) throw std::invalid_argument("max_iterations must be nonnegative");
  if (!(switch_threshold > 0.0 && switch_threshold <= 1.0)) {
    throw std::invalid_argument("switch threshold must lie in (0, 1]");
  }
  if (!(probability_floor >= 0.0)) throw std::invalid_argument("probability floor must be nonnegative");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("pruning threshold must be nonnegative");
}

std::optional<Eigen::VectorXd> compute_D(std::span<const double> probabilities, const CostHamiltonian& h,
                                         const SpectralStats& stats, bool use_sigmoid) {
  std::vector<double> g;
  if (use_sigmoid) {
    auto transformed = sigmoid_transform(h, stats);
    if (!transformed) return std::nullopt;
    g = std::move(*transformed);
  } else {
    g.assign(h.diagonal().begin(), h.diagonal().end());
  }
  double mean_g = 0.0;
  std::vector<double> weighted(probabilities.size());
  for (std::size_t z = 0; z < probabilities.size(); ++z) {
    weighted[z] = probabilities[z] * g[z];
    mean_g += weighted[z];
  }
  const auto p_g = term_expectations(weighted, h);
  const auto p = term_expectations(probabilities, h);
  Eigen::VectorXd d(static_cast<Eigen::Index>(p.size()));
  for (std::size_t a = 0; a < p.size(); ++a) d[static_cast<Eigen::Index>(a)] = -(p_g[a] - p[a] * mean_g);
  return d;
}

std::optional<Eigen::VectorXd> compute_D(const StateVector& state, const CostHamiltonian& h,
                                         const SpectralStats& stats, bool use_sigmoid) {
  return compute_D(state.probabilities(), h, stats, use_sigmoid);
}

Eigen::VectorXd compute_G_column(const Ansatz& ansatz, std::size_t j, const CostHamiltonian& h) {
  if (j >= ansatz.n_params()) throw std::out_of_range("gate index out of range");
  std::vector<double> work;
  const double theta = ansatz.theta()[j];
  const Eigen::VectorXd plus = shifted_term_expectations(ansatz, j, theta + kQuarterTurn, h, work);
  const Eigen::VectorXd minus = shifted_term_expectations(ansatz, j, theta - kQuarterTurn, h, work);
  return 0.5 * (plus - minus);
}

Eigen::MatrixXd compute_G_shift_rule(const Ansatz& ansatz, const CostHamiltonian& h) {
  Eigen::MatrixXd g(static_cast<Eigen::Index>(h.terms().size()), static_cast<Eigen::Index>(ansatz.n_params()));
  for (std::size_t j = 0; j < ansatz.n_params(); ++j) g.col(static_cast<Eigen::Index>(j)) = compute_G_column(ansatz, j, h);
  return g;
}

Eigen::MatrixXd compute_G(const Ansatz& ansatz, const CostHamiltonian& h) {
  const std::size_t n_params = ansatz.n_params();
  const auto pairs = ansatz.pair_order();
  const auto theta = ansatz.theta();
  Eigen::MatrixXd g(static_cast<Eigen::Index>(h.terms().size()), static_cast<Eigen::Index>(n_params));

  std::vector<double> full;
  prepare_real(ansatz, full);
  std::vector<double> prefix;
  fill_plus_state(prefix, ansatz.n_qubits());
  std::vector<double> gated;
  std::vector<double> tangent;
  std::vector<double> own;
  std::vector<double> weights(full.size());

  for (std::size_t j = 0; j < n_params; ++j) {
    const double c = std::cos(theta[j]);
    const double s = std::sin(theta[j]);
    gated = prefix;
    kernels::zy_rotate<double>(gated, pairs[j].r, pairs[j].q, c, s);
    tangent = gated;
    kernels::zy_generator<double>(tangent, pairs[j].r, pairs[j].q);
    apply_gates(ansatz, tangent, j + 1, n_params);

    // An inactive gate is still differentiated at theta_j: the base state is
    // the preparation with this gate switched on.
    const std::vector<double>* base = &full;
    if (!ansatz.is_active(j) && theta[j] != 0.0) {
      own = gated;
      apply_gates(ansatz, own, j + 1, n_params);
      base = &own;
    }
    for (std::size_t z = 0; z < weights.size(); ++z) weights[z] = (*base)[z] * tangent[z];
    g.col(static_cast<Eigen::Index>(j)) = to_eigen(term_expectations(weights, h));

    if (ansatz.is_active(j)) prefix.swap(gated);
  }
  return g;
}

Eigen::VectorXd solve_step(const GDSystem& system, const Config& config) {
  if (!system.G.allFinite() || !system.D.allFinite()) throw std::domain_error("G or D has non-finite entries");
  if (system.G.rows() != system.D.size()) throw std::invalid_argument("G and D row counts differ");
  Eigen::VectorXd theta_dot = Eigen::VectorXd::Zero(system.G.cols());
  if (system.G.size() == 0) return theta_dot;
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(system.G, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv[0] : 0.0;
  if (!(sigma_max > 0.0)) return theta_dot;
  const double cutoff = config.svd_cutoff_ratio * sigma_max;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv[k] < cutoff || sv[k] == 0.0) continue;
    theta_dot += svd.matrixV().col(k) * (svd.matrixU().col(k).dot(system.D) / sv[k]);
  }
  return theta_dot;
}

void euler_update(std::span<double> theta, std::span<const double> theta_dot, double dtau) {
  if (theta.size() != theta_dot.size()) throw std::invalid_argument("theta and theta_dot sizes differ");
  for (std::size_t j = 0; j < theta.size(); ++j) theta[j] += dtau * theta_dot[j];
}

bool switch_ready(std::span<const double> probabilities, const CostHamiltonian& h, const Config& config) {
  const auto d = h.diagonal();
  if (probabilities.size() != d.size()) throw std::invalid_argument("probability vector has the wrong size");
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t z = 0; z < d.size(); ++z) {
    if (probabilities[z] >= config.probability_floor) lowest = std::min(lowest, d[z]);
  }
  if (!std::isfinite(lowest)) throw std::domain_error("no basis state reaches the probability floor");
  double mass = 0.0;
  for (std::size_t z = 0; z < d.size(); ++z) {
    if (probabilities[z] >= config.probability_floor && std::abs(d[z] - lowest) <= 1e-9) mass += probabilities[z];
  }
  return mass >= config.switch_threshold;
}

bool switch_ready(const StateVector& state, const CostHamiltonian& h, const Config& config) {
  return switch_ready(state.probabilities(), h, config);
}

std::vector<double> jacobi_sweep(Ansatz& ansatz, const CostHamiltonian& h) {
  const auto pairs = ansatz.pair_order();
  std::vector<double> shifts(ansatz.n_params(), 0.0);
  std::vector<double> prefix;
  fill_plus_state(prefix, ansatz.n_qubits());
  std::vector<double> work;
  for (std::size_t j = 0; j < ansatz.n_params(); ++j) {
    const double theta = ansatz.theta()[j];
    const double e0 = suffix_energy(ansatz, prefix, j, theta, h, work);
    const double ep = suffix_energy(ansatz, prefix, j, theta + kQuarterTurn, h, work);
    const double em = suffix_energy(ansatz, prefix, j, theta - kQuarterTurn, h, work);
    // E(d) = A + B cos 2d + C sin 2d
    const double a = 0.5 * (ep + em);
    const double b = e0 - a;
    const double c = 0.5 * (ep - em);
    if (std::hypot(b, c) > 1e-12 * std::max(1.0, std::abs(a))) {
      shifts[j] = 0.5 * std::atan2(-c, -b);
      ansatz.theta()[j] = theta + shifts[j];
    }
    if (ansatz.is_active(j)) {
      const double t = ansatz.theta()[j];
      kernels::zy_rotate<double>(prefix, pairs[j].r, pairs[j].q, std::cos(t), std::sin(t));
    }
  }
  return shifts;
}

RunResult run(const WeightedGraph& graph, Convention convention, const Config& config,
              std::optional<std::vector<double>> initial_theta) {
  config.validate();
  Ansatz ansatz = Ansatz::build(graph, config.epsilon, config.order);
  WeightedGraph ranked = ranked_graph(graph, ansatz);
  const CostHamiltonian h = CostHamiltonian::build(ranked, convention);
  if (h.c_opt() == 0.0) throw std::invalid_argument("degenerate instance: optimal cost is zero");
  if (initial_theta) ansatz.set_theta(*initial_theta);
  const double sigma_0 = plus_state_sigma(h);

  Trajectory t;
  t.n_qubits = graph.n_vertices;
  t.n_edges = static_cast<int>(graph.edges.size());
  t.c_opt = h.c_opt();

  std::vector<double> amps;
  int iteration = 0;
  double tau = 0.0;
  for (;; ++iteration) {
    tau = iteration * config.dtau;
    prepare_real(ansatz, amps);
    const auto probabilities = detail::squared(amps);
    detail::append_record(t, ansatz, probabilities, h, iteration, tau, Phase::Flow);
    if (iteration >= config.max_iterations) break;
    if (switch_ready(probabilities, h, config)) {
      t.switched = true;
      break;
    }
    const SpectralStats stats = spectral_stats(probabilities, h, sigma_0);
    auto d = compute_D(probabilities, h, stats, config.use_sigmoid);
    if (!d) break;
    GDSystem system{config.g_route == GRoute::Analytic ? compute_G(ansatz, h) : compute_G_shift_rule(ansatz, h),
                    std::move(*d)};
    if (config.literal_shift_factor) system.G *= 0.5;
    const Eigen::VectorXd theta_dot = solve_step(system, config);
    euler_update(ansatz.theta(), std::span<const double>(theta_dot.data(), static_cast<std::size_t>(theta_dot.size())),
                 config.dtau);
  }

  jacobi_sweep(ansatz, h);
  prepare_real(ansatz, amps);
  detail::append_record(t, ansatz, detail::squared(amps), h, iteration + 1, tau, Phase::Jacobi);
  return {std::move(t), std::move(ansatz), std::move(ranked)};
}

}  // namespace vqco::varit
