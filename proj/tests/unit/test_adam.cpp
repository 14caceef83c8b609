#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "vqco/adam.hpp"

using namespace vqco;

namespace {

WeightedGraph edge() { return make_graph(2, {{0, 1, 1.0}}); }

double energy_at(const Ansatz& a, const CostHamiltonian& h) { return energy(prepare(a), h); }

}  // namespace

TEST_CASE("gradient examples") {
  const auto h = CostHamiltonian::build(edge(), Convention::Physics);
  Ansatz a = Ansatz::identity(2);
  CHECK(adam::gradient(a, h)[0] == doctest::Approx(2.0));
  CHECK(adam::gradient_shift_rule(a, h)[0] == doctest::Approx(2.0));
  a.theta()[0] = -std::numbers::pi / 4;
  CHECK(std::abs(adam::gradient(a, h)[0]) < 1e-12);
  // The energy maximum is stationary up to round-off. ADAM divides by
  // sqrt(v), so a run started here still leaves it.
  a.theta()[0] = std::numbers::pi / 4;
  CHECK(std::abs(adam::gradient(a, h)[0]) < 1e-15);
  CHECK(std::abs(adam::gradient_shift_rule(a, h)[0]) < 1e-15);
}

TEST_CASE("gradient: adjoint, shift rule and finite differences agree") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 3 + trial % 3;
    const auto g = trial % 2 ? gen_sk(n, trial) : oracle::random_complete(n, gen);
    const auto conv = trial % 2 ? Convention::Physics : Convention::ComputerScience;
    const auto h = CostHamiltonian::build(g, conv);
    Ansatz a = Ansatz::identity(n);
    for (auto& t : a.theta()) t = u(gen);
    const auto adj = adam::gradient(a, h);
    const auto shift = adam::gradient_shift_rule(a, h);
    REQUIRE(adj.size() == a.n_params());
    for (std::size_t j = 0; j < a.n_params(); ++j) {
      Ansatz p = a;
      Ansatz m = a;
      const double step = 1e-5;
      p.theta()[j] += step;
      m.theta()[j] -= step;
      const double fd = (energy_at(p, h) - energy_at(m, h)) / (2 * step);
      CHECK(adj[j] == doctest::Approx(shift[j]).epsilon(1e-11));
      CHECK(std::abs(adj[j] - fd) < 1e-6);
    }
  }
}

TEST_CASE("run: two qubits reach the cut") {
  adam::Config cfg;
  cfg.learning_rate = 0.05;
  const auto res = adam::run(edge(), Convention::Physics, cfg);
  CHECK(res.trajectory.records.size() == 101);
  CHECK(res.trajectory.converged());
  CHECK(res.trajectory.final_record().phase == Phase::Done);
}

TEST_CASE("run: the first bias-corrected step has length lr") {
  adam::Config cfg;
  cfg.max_iterations = 1;
  cfg.learning_rate = 0.05;
  const auto res = adam::run(edge(), Convention::Physics, cfg);
  REQUIRE(res.trajectory.thetas.size() == 2);
  CHECK(res.trajectory.thetas[1][0] == doctest::Approx(-0.05).epsilon(1e-8));
  CHECK(res.ansatz.theta()[0] == doctest::Approx(-0.05).epsilon(1e-8));
}

TEST_CASE("run: deterministic and energy improves on SK") {
  const auto g = gen_sk(6, 9);
  adam::Config cfg;
  cfg.max_iterations = 40;
  const auto a = adam::run(g, Convention::Physics, cfg);
  const auto b = adam::run(g, Convention::Physics, cfg);
  REQUIRE(a.trajectory.records.size() == b.trajectory.records.size());
  for (std::size_t k = 0; k < a.trajectory.records.size(); ++k) {
    CHECK(a.trajectory.records[k].energy == b.trajectory.records[k].energy);
  }
  CHECK(a.trajectory.final_record().ar > a.trajectory.records.front().ar + 0.3);
  CHECK(a.trajectory.records.front().ar == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Config validation") {
  adam::Config c;
  c.learning_rate = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = adam::Config{};
  c.beta1 = 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = adam::Config{};
  c.max_iterations = -2;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
