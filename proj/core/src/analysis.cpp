#include "vqco/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "vqco/kernels.hpp"
#include "vqco/rng.hpp"

namespace vqco::analysis {

CorrelationMatrix correlation_matrix(std::span<const double> probabilities, int n_qubits) {
  if (probabilities.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("probability vector does not match the qubit count");
  }
  std::vector<double> spectrum(probabilities.begin(), probabilities.end());
  kernels::walsh_hadamard(spectrum);
  CorrelationMatrix out{Eigen::MatrixXd::Zero(n_qubits, n_qubits)};
  for (int i = 0; i < n_qubits; ++i) {
    for (int j = i + 1; j < n_qubits; ++j) {
      const double zz = spectrum[(std::size_t{1} << i) | (std::size_t{1} << j)];
      out.chi(i, j) = -zz;
      out.chi(j, i) = -zz;
    }
  }
  return out;
}

CorrelationMatrix correlation_matrix(const StateVector& state) {
  return correlation_matrix(state.probabilities(), state.n_qubits());
}

RoundedCut relaxed_round(std::span<const double> probabilities, const WeightedGraph& graph, Convention convention) {
  const int n = graph.n_vertices;
  const CorrelationMatrix corr = correlation_matrix(probabilities, n);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(corr.chi);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition of the correlation matrix failed");

  const Bitstring all = n >= 64 ? ~Bitstring{0} : (Bitstring{1} << n) - 1;
  RoundedCut best{0, std::numeric_limits<double>::infinity()};
  for (Eigen::Index k = 0; k < solver.eigenvectors().cols(); ++k) {
    Bitstring z = 0;
    for (int i = 0; i < n; ++i) {
      if (solver.eigenvectors()(i, k) < 0.0) z |= Bitstring{1} << i;  // spin -1 is bit 1
    }
    for (const Bitstring candidate : {z, z ^ all}) {
      const double c = cut_cost(graph, candidate, convention);
      if (c < best.cost) best = {candidate, c};
    }
  }
  return best;
}

RoundedCut relaxed_round(const StateVector& state, const WeightedGraph& graph, Convention convention) {
  if (state.n_qubits() != graph.n_vertices) throw std::invalid_argument("state and graph sizes differ");
  return relaxed_round(state.probabilities(), graph, convention);
}

double reported_ar(double raw_ar, const RoundedCut& rounded, const CostHamiltonian& h) {
  return std::max(raw_ar, approximation_ratio(rounded.cost, h));
}

std::vector<int> random_half(int n_qubits, std::uint64_t partition_seed) {
  if (n_qubits < 2 || n_qubits % 2 != 0) throw std::invalid_argument("equal bipartitions need an even qubit count");
  std::vector<int> qubits(static_cast<std::size_t>(n_qubits));
  std::iota(qubits.begin(), qubits.end(), 0);
  Rng rng(partition_seed);
  rng.shuffle(qubits.begin(), qubits.end());
  qubits.resize(qubits.size() / 2);
  std::sort(qubits.begin(), qubits.end());
  return qubits;
}

std::vector<double> entropy_trace(std::span<const std::vector<double>> thetas, std::span<const double> optimal_norms,
                                  const Ansatz& ansatz, std::uint64_t partition_seed) {
  if (thetas.size() != optimal_norms.size()) throw std::invalid_argument("theta and norm histories differ in length");
  const auto subset = random_half(ansatz.n_qubits(), partition_seed);
  Ansatz work = ansatz;
  StateVector state(ansatz.n_qubits());
  std::vector<double> trace;
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    work.set_theta(thetas[k]);
    prepare(work, state);
    trace.push_back(entanglement_entropy(state, subset));
    if (optimal_norms[k] >= 0.5) break;
  }
  return trace;
}

std::vector<double> entropy_trace(Trajectory& trajectory, const Ansatz& ansatz, std::uint64_t partition_seed) {
  std::vector<double> norms;
  std::size_t flow = 0;
  for (const auto& r : trajectory.records) {
    if (r.phase != Phase::Flow) break;
    norms.push_back(r.optimal_norm);
    ++flow;
  }
  const auto trace = entropy_trace(std::span(trajectory.thetas).first(flow), norms, ansatz, partition_seed);
  for (std::size_t k = 0; k < trace.size(); ++k) trajectory.records[k].entropy = trace[k];
  return trace;
}

bool rises_then_falls(std::span<const double> trace) {
  if (trace.size() < 3) return false;
  const auto peak = std::max_element(trace.begin(), trace.end());
  return peak != trace.begin() && peak != trace.end() - 1 && trace.back() < *peak;
}

EntropyFit volume_law_fit(std::span<const SizePoint> points) {
  const std::size_t m = points.size();
  if (m < 3) throw std::invalid_argument("volume-law fit needs at least 3 points");
  double mean_n = 0.0;
  double mean_s = 0.0;
  for (const auto& p : points) {
    mean_n += p.n;
    mean_s += p.s;
  }
  mean_n /= static_cast<double>(m);
  mean_s /= static_cast<double>(m);
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& p : points) {
    sxx += (p.n - mean_n) * (p.n - mean_n);
    sxy += (p.n - mean_n) * (p.s - mean_s);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("volume-law fit needs at least two distinct sizes");
  EntropyFit fit;
  fit.a = sxy / sxx;
  fit.b = mean_s - fit.a * mean_n;
  double ssr = 0.0;
  for (const auto& p : points) {
    const double r = p.s - (fit.a * p.n + fit.b);
    ssr += r * r;
  }
  const double s2 = ssr / static_cast<double>(m - 2);
  fit.stderr_a = std::sqrt(s2 / sxx);
  fit.stderr_b = std::sqrt(s2 * (1.0 / static_cast<double>(m) + mean_n * mean_n / sxx));
  return fit;
}

namespace {

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr mean_stderr(std::span<const double> xs) {
  MeanStderr out;
  if (xs.empty()) return out;
  out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stderr_ = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return out;
}

}  // namespace

BatchSummary batch_stats(std::span<const Trajectory> trajectories, int horizon) {
  if (trajectories.empty()) throw std::invalid_argument("batch_stats needs at least one trajectory");
  BatchSummary out;
  out.instances = trajectories.size();
  if (horizon < 0) {
    for (const auto& t : trajectories) {
      if (t.records.empty()) throw std::invalid_argument("trajectory without records");
      horizon = std::max(horizon, t.final_record().iteration);
    }
  }

  std::vector<double> column(trajectories.size());
  for (int it = 0; it <= horizon; ++it) {
    for (std::size_t k = 0; k < trajectories.size(); ++k) column[k] = trajectories[k].ar_error_at(it);
    const auto ms = mean_stderr(column);
    out.mean_ar_error.push_back(ms.mean);
    out.stderr_ar_error.push_back(ms.stderr_);
  }

  std::vector<double> iterations;
  std::vector<double> layers;
  std::size_t successes = 0;
  for (const auto& t : trajectories) {
    if (t.converged()) ++successes;
    const int it = t.iterations_to_converge();
    if (it >= 0) iterations.push_back(static_cast<double>(it));
    if (t.n_edges > 0) layers.push_back(static_cast<double>(t.max_active_count()) / static_cast<double>(t.n_edges));
  }
  out.success_fraction = static_cast<double>(successes) / static_cast<double>(trajectories.size());
  out.converged_instances = iterations.size();
  const auto it_stats = mean_stderr(iterations);
  out.mean_iterations = iterations.empty() ? std::numeric_limits<double>::quiet_NaN() : it_stats.mean;
  out.stderr_iterations = it_stats.stderr_;
  if (!layers.empty()) {
    out.mean_max_layers = mean_stderr(layers).mean;
    out.max_max_layers = *std::max_element(layers.begin(), layers.end());
  }
  return out;
}

}  // namespace vqco::analysis
