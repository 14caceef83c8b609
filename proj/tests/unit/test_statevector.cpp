#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "vqco/statevector.hpp"

using namespace vqco;
using cd = std::complex<double>;

namespace {

StateVector from(int n, std::vector<cd> amps) { return StateVector(n, std::move(amps)); }

StateVector ghz(int n) {
  std::vector<cd> amps(std::size_t{1} << n);
  amps.front() = amps.back() = 1.0 / std::sqrt(2.0);
  return from(n, amps);
}

double max_diff(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  for (std::size_t z = 0; z < a.dimension(); ++z) d = std::max(d, std::abs(a[z] - b[z]));
  return d;
}

}  // namespace

TEST_CASE("plus_state") {
  const auto one = plus_state(1);
  CHECK(one[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(one[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  const auto two = plus_state(2);
  for (std::size_t z = 0; z < 4; ++z) CHECK(two[z] == cd(0.5, 0.0));
  for (int n = 1; n <= 12; ++n) CHECK(plus_state(n).norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS(plus_state(0));
  CHECK_THROWS(plus_state(kMaxQubits + 1));
}

TEST_CASE("StateVector construction and normalize") {
  CHECK_THROWS_AS(StateVector(2, std::vector<cd>(3)), std::invalid_argument);
  StateVector zero(2, std::vector<cd>(4));
  CHECK_THROWS_AS(zero.normalize(), std::domain_error);
  StateVector s(1);
  CHECK(s[0] == cd(1.0, 0.0));
  CHECK(s.probabilities() == std::vector<double>{1.0, 0.0});
}

TEST_CASE("apply_zy matches the matrix exponential") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  const int n = 3;
  for (int r = 0; r < n; ++r) {
    for (int q = 0; q < n; ++q) {
      if (r == q) continue;
      const double theta = angle(gen);
      StateVector s = oracle::random_state(n, gen);
      const Eigen::VectorXcd expected = oracle::zy_unitary(n, r, q, theta) * oracle::to_eigen(s);
      apply_zy(s, r, q, theta);
      CHECK((oracle::to_eigen(s) - expected).norm() < 1e-12);
    }
  }
}

TEST_CASE("apply_zy examples") {
  StateVector s = plus_state(2);
  apply_zy(s, 0, 1, 0.0);
  CHECK(max_diff(s, plus_state(2)) == 0.0);

  StateVector bell = ghz(2);
  apply_zy(bell, 0, 1, std::numbers::pi / 2);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(bell[0]) < 1e-15);
  CHECK(std::abs(bell[3]) < 1e-15);
  CHECK(std::abs(bell[1] - cd(-h, 0)) < 1e-15);
  CHECK(std::abs(bell[2] - cd(-h, 0)) < 1e-15);

  StateVector p = plus_state(2);
  apply_zy(p, 0, 1, std::numbers::pi / 4);
  CHECK(expect_zz(p, 0, 1) == doctest::Approx(1.0));

  for (double theta : {0.1, 0.7, -1.2}) {
    StateVector t = plus_state(2);
    apply_zy(t, 0, 1, theta);
    CHECK(expect_zz(t, 0, 1) == doctest::Approx(std::sin(2 * theta)));
  }
  CHECK_THROWS_AS(apply_zy(s, 1, 1, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(apply_zy(s, 0, 2, 0.3), std::invalid_argument);
}

TEST_CASE("apply_zy: unitarity, inverse and the pi shift") {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> qubit(0, 4);
  std::uniform_real_distribution<double> angle(-4.0, 4.0);
  StateVector s = oracle::random_state(5, gen);
  for (int k = 0; k < 10000; ++k) {
    int r = qubit(gen);
    int q = qubit(gen);
    if (r == q) q = (q + 1) % 5;
    apply_zy(s, r, q, angle(gen));
  }
  CHECK(std::abs(s.norm_squared() - 1.0) < 1e-10);

  const StateVector before = s;
  apply_zy(s, 1, 3, 0.83);
  apply_zy(s, 1, 3, -0.83);
  CHECK(max_diff(s, before) < 1e-10);

  StateVector a = before;
  StateVector b = before;
  apply_zy(a, 4, 0, 0.4);
  apply_zy(b, 4, 0, 0.4 + std::numbers::pi);
  for (std::size_t z = 0; z < a.dimension(); ++z) CHECK(std::abs(a[z] + b[z]) < 1e-12);
}

TEST_CASE("expect_diagonal and expect_zz") {
  std::mt19937_64 gen(5);
  const StateVector s = oracle::random_state(4, gen);
  std::vector<double> d(16);
  for (std::size_t z = 0; z < 16; ++z) d[z] = std::sin(static_cast<double>(z));
  double expected = 0.0;
  for (std::size_t z = 16; z-- > 0;) expected += std::norm(s[z]) * d[z];
  CHECK(expect_diagonal(s, d) == doctest::Approx(expected).epsilon(1e-14));

  std::vector<cd> basis(16);
  basis[9] = 1.0;
  CHECK(expect_diagonal(from(4, basis), d) == doctest::Approx(d[9]));
  CHECK_THROWS_AS(expect_diagonal(s, std::vector<double>(8)), std::invalid_argument);

  CHECK(expect_zz(plus_state(2), 0, 1) == doctest::Approx(0.0));
  CHECK(expect_zz(ghz(2), 0, 1) == doctest::Approx(1.0));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(expect_zz(from(2, {0, h, h, 0}), 0, 1) == doctest::Approx(-1.0));
  CHECK(expect_zz(s, 1, 3) == doctest::Approx(oracle::zz(s.probabilities(), 1, 3)));
  CHECK_THROWS_AS(expect_zz(s, 2, 2), std::invalid_argument);
}

TEST_CASE("subspace_norm") {
  const auto s = plus_state(3);
  std::vector<Bitstring> all{0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(subspace_norm(s, all) == doctest::Approx(1.0));
  CHECK(subspace_norm(s, {}) == 0.0);
  const std::vector<Bitstring> ends{0, 3};
  CHECK(subspace_norm(ghz(2), ends) == doctest::Approx(1.0));
}

TEST_CASE("entanglement_entropy") {
  const std::vector<int> half{0, 1};
  CHECK(entanglement_entropy(plus_state(4), half) == doctest::Approx(0.0).epsilon(1e-12));
  for (int n = 2; n <= 6; ++n) {
    const std::vector<int> first{0};
    CHECK(entanglement_entropy(ghz(n), first) == doctest::Approx(std::log(2.0)));
  }

  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector s = oracle::random_state(5, gen);
    const std::vector<int> a{0, 3};
    const std::vector<int> b{1, 2, 4};
    const double sa = entanglement_entropy(s, a);
    CHECK(sa == doctest::Approx(entanglement_entropy(s, b)).epsilon(1e-10));
    CHECK(sa == doctest::Approx(oracle::entropy_partial_trace(s, {0, 3})).epsilon(1e-10));
    CHECK(sa >= 0.0);
    CHECK(sa <= 2 * std::log(2.0) + 1e-12);
  }
  const std::vector<int> empty;
  const std::vector<int> full{0, 1};
  const std::vector<int> dup{0, 0};
  CHECK_THROWS_AS(entanglement_entropy(plus_state(2), empty), std::invalid_argument);
  CHECK_THROWS_AS(entanglement_entropy(plus_state(2), full), std::invalid_argument);
  CHECK_THROWS_AS(entanglement_entropy(plus_state(3), dup), std::invalid_argument);
}
