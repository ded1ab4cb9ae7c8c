#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cmech/circuit.hpp"
#include "cmech/errors.hpp"

using namespace cmech;
using namespace cmech::circuit;

namespace {

constexpr double kPi = std::numbers::pi;

Qubit projector(int k) {
  Qubit m;
  m(k, k) = 1.0;
  return m;
}

TwoQubit basis_projector(int index) {
  TwoQubit m;
  m(index, index) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("environment qubit") {
  const auto pure = env_qubit(0.0);
  CHECK((pure - projector(0)).max_abs() == 0.0);
  const auto hot = env_qubit(1.0);
  CHECK((hot - Complex(0.5) * Qubit::identity()).max_abs() == 0.0);
  const auto half = env_qubit(0.5);
  CHECK(half(0, 0).real() == 0.75);
  CHECK(half(1, 1).real() == 0.25);
  CHECK(half(0, 1) == Complex(0.0));
  CHECK_THROWS_AS(env_qubit(1.5), OutOfRange);
  CHECK_THROWS_AS(env_qubit(-0.1), OutOfRange);
}

TEST_CASE("controlled X_kappa") {
  CHECK((cx_kappa_unitary(0.0) - TwoQubit::identity()).max_abs() < 1e-15);

  // Environment |1> (odd indices) picks up i X on the observer.
  const auto cnot = cx_kappa_unitary(kPi / 2);
  CHECK(std::abs(cnot(0, 0) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(cnot(2, 2) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(cnot(1, 3) - Complex(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(cnot(3, 1) - Complex(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(cnot(1, 1)) < 1e-15);

  const auto quarter = cx_kappa_unitary(kPi / 4);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(quarter(1, 1) - Complex(r)) < 1e-15);
  CHECK(std::abs(quarter(1, 3) - Complex(0.0, r)) < 1e-15);

  for (int i = 0; i <= 16; ++i) CHECK(unitarity_error(cx_kappa_unitary(i * kPi / 32)) <= 1e-12);
  CHECK_THROWS_AS(cx_kappa_unitary(2.0), OutOfRange);
}

TEST_CASE("probabilistic swap") {
  // |01> is index 1, |10> is index 2.
  const auto in = basis_projector(1);
  CHECK((pswap_channel(in, 0.0) - in).max_abs() == 0.0);
  CHECK((pswap_channel(in, 1.0) - basis_projector(2)).max_abs() == 0.0);
  const auto mixed = pswap_channel(in, 0.5);
  CHECK((mixed - (Complex(0.5) * basis_projector(1) + Complex(0.5) * basis_projector(2))).max_abs() == 0.0);

  TwoQubit not_density = basis_projector(1);
  not_density(0, 0) = 1.0;
  CHECK_THROWS_AS(pswap_channel(not_density, 0.5), InvalidDensity);
  CHECK_THROWS_AS(pswap_channel(in, 1.5), OutOfRange);
}

TEST_CASE("partial trace over the environment") {
  CHECK((partial_trace_env(basis_projector(0)) - projector(0)).max_abs() == 0.0);

  TwoQubit bell;  // (|00> + |11>)/sqrt2
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  CHECK((partial_trace_env(bell) - Complex(0.5) * Qubit::identity()).max_abs() < 1e-15);

  // Product state: observer factor comes back unchanged.
  Qubit a;
  a(0, 0) = 0.3;
  a(1, 1) = 0.7;
  a(0, 1) = Complex(0.1, 0.2);
  a(1, 0) = Complex(0.1, -0.2);
  CHECK((partial_trace_env(kron(a, env_qubit(0.37))) - a).max_abs() < 1e-15);

  // Entangled state with a PSD violation hidden off the diagonal.
  TwoQubit bad;
  bad(0, 0) = bad(3, 3) = 0.5;
  bad(0, 3) = bad(3, 0) = 0.9;
  CHECK_THROWS_AS(partial_trace_env(bad), InvalidDensity);
}

TEST_CASE("single-step flip probabilities") {
  for (double kappa : {0.0, 0.5, kPi / 2})
    for (double g : {0.0, 0.3, 1.0}) {
      CHECK(step_flip_probability({0, {0.0, kappa, g}}) == doctest::Approx(0.0));
      CHECK(std::abs(step_flip_probability({1, {0.0, kappa, g}}) - g) < 1e-15);
    }
  CHECK(std::abs(step_flip_probability({0, {1.0, kPi / 2, 0.5}}) - 0.5) < 1e-15);
  CHECK_THROWS_AS(step_flip_probability({2, {0.5, 0.5, 0.5}}), OutOfRange);
}

TEST_CASE("every stage stays a density matrix and matches the closed-form rates") {
  double worst = 0.0;
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j <= 4; ++j)
      for (int l = 0; l <= 4; ++l)
        for (int k = 0; k < 2; ++k) {
          const CloudParams params{i / 10.0, j * kPi / 8, l / 4.0};
          const auto s = simulate_step({k, params});
          for (const auto* m : {&s.input, &s.after_interaction, &s.after_swap}) {
            CHECK(std::abs(m->trace() - Complex(1.0)) <= 1e-12);
            CHECK(hermiticity_error(*m) <= 1e-12);
            CHECK(min_eigenvalue(*m) >= -1e-12);
          }
          CHECK(std::abs(s.observer.trace() - Complex(1.0)) <= 1e-12);
          CHECK(hermiticity_error(s.observer) <= 1e-12);

          const auto rates = cloud_rates(params);
          const double expected = k == 0 ? rates.q0 : rates.q1;
          worst = std::max(worst, std::abs(step_flip_probability({k, params}) - expected));
        }
  CHECK(worst <= 1e-10);
}

TEST_CASE("controlled-NOT regime reproduces the four transition probabilities") {
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 10; ++j) {
      const double lambda = i / 20.0, g = j / 10.0;
      const auto t = cnot_transitions(lambda, g);
      const double f0 = step_flip_probability({0, {lambda, kPi / 2, g}});
      const double f1 = step_flip_probability({1, {lambda, kPi / 2, g}});
      CHECK(std::abs(1.0 - f0 - t.stay0) <= 1e-10);
      CHECK(std::abs(f0 - t.flip0) <= 1e-10);
      CHECK(std::abs(f1 - t.flip1) <= 1e-10);
      CHECK(std::abs(1.0 - f1 - t.stay1) <= 1e-10);
    }
}
