#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cmech/errors.hpp"
#include "cmech/inference.hpp"
#include "cmech/processes.hpp"
#include "cmech/quantum.hpp"

using namespace cmech;

namespace {

constexpr double kH2_075 = 0.811278124459132863909695792039;
constexpr double kH2_01 = 0.468995593589281221253589330383;

SymbolSequence text(const char* s) { return parse_sequence(s, Alphabet::binary()); }

SymbolSequence coin_sample(double q0, double q1, std::size_t n, std::uint64_t seed) {
  return sample(perturbed_coin_machine({q0, q1}), std::nullopt, n, seed);
}

}  // namespace

TEST_CASE("conditional estimates on noiseless sequences") {
  const auto zeros = estimate_conditionals(text("0000000000"), 1);
  CHECK(zeros.conditional({0}, 0) == 1.0);
  CHECK(zeros.totals.at({0}) == 9u);
  CHECK(zeros.counts.size() == 1);

  const auto alt = estimate_conditionals(text("101010"), 1);
  CHECK(alt.conditional({1}, 0) == 1.0);
  CHECK(alt.conditional({0}, 1) == 1.0);
  CHECK(alt.conditional({1, 1}, 0) == 0.0);
}

TEST_CASE("order-2 windows") {
  const auto m = estimate_conditionals(text("0011011"), 2);
  // windows: 00->1, 01->1, 11->0, 10->1, 01->1
  CHECK(m.totals.at({0, 1}) == 2u);
  CHECK(m.conditional({0, 1}, 1) == 1.0);
  CHECK(m.conditional({1, 1}, 0) == 1.0);
  std::uint64_t sum = 0;
  for (const auto& [h, t] : m.totals) {
    std::uint64_t row = 0;
    for (auto c : m.counts.at(h)) row += c;
    CHECK(row == t);
    sum += t;
  }
  CHECK(sum == 5u);
}

TEST_CASE("short sequences and bad orders") {
  CHECK_THROWS_AS(estimate_conditionals(text("0"), 1), TooShort);
  CHECK_THROWS_AS(estimate_conditionals(text("01"), 2), TooShort);
  CHECK_THROWS_AS(estimate_conditionals(text("0101"), 0), OutOfRange);
}

TEST_CASE("reconstruction from noiseless sequences is exact") {
  for (double tol : {0.0, 0.01, 0.1, 0.5}) {
    const auto zeros = reconstruct_machine(estimate_conditionals(text("0000000000"), 1), {tol, 1});
    CHECK(zeros.machine.num_states() == 1);
    CHECK(statistical_complexity(zeros.machine) == 0.0);

    const auto alt = reconstruct_machine(estimate_conditionals(text("1010101010"), 1), {tol, 1});
    CHECK(alt.machine.num_states() == 2);
    CHECK(statistical_complexity(alt.machine) == doctest::Approx(1.0).epsilon(1e-14));
    const auto s0 = alt.state_of.at({0});
    const auto s1 = alt.state_of.at({1});
    CHECK(alt.machine.prob(s0, 1, s1) == 1.0);
    CHECK(alt.machine.prob(s1, 0, s0) == 1.0);
  }
  // Period-3 pattern needs order 2 to be seen as three states.
  const auto p3 = reconstruct_machine(estimate_conditionals(text("001001001001001001"), 2), {0.0, 1});
  CHECK(p3.machine.num_states() == 3);
  CHECK(statistical_complexity(p3.machine) == doctest::Approx(std::log2(3.0)));
}

TEST_CASE("default tolerance is zero on deterministic data") {
  CHECK(default_merge_tol(estimate_conditionals(text("1010101010"), 1)) == 0.0);
}

TEST_CASE("minimum count") {
  CHECK_THROWS_AS(reconstruct_machine(estimate_conditionals(text("1010101010"), 1)), InsufficientData);
  CHECK_NOTHROW(reconstruct_machine(estimate_conditionals(text("1010101010"), 1), {0.0, 4}));
}

TEST_CASE("edges into unseen histories are dropped") {
  // "1" only appears as the final symbol, so it never becomes a state.
  const auto rec = reconstruct_machine(estimate_conditionals(text("0000000001"), 1), {0.0, 1});
  CHECK(rec.machine.num_states() == 1);
  CHECK(rec.machine.prob(0, 0, 0) == 1.0);
  CHECK(rec.state_of.count({1}) == 0);
}

TEST_CASE("rows of reconstructed machines sum to one") {
  const auto seq = coin_sample(0.3, 0.45, 200'000, 5);
  for (std::size_t order : {1u, 2u, 3u}) {
    const auto rec = reconstruct_machine(estimate_conditionals(seq, order), {0.0, 100});
    const auto& m = rec.machine;
    for (std::size_t j = 0; j < m.num_states(); ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < m.alphabet_size(); ++r)
        for (std::size_t k = 0; k < m.num_states(); ++k) s += m.prob(j, r, k);
      CHECK(std::abs(s - 1.0) <= 1e-14);
    }
  }
}

TEST_CASE("coin (0.2, 0.6) round trip") {
  const auto seq = coin_sample(0.2, 0.6, 1'000'000, 17);
  const auto model = estimate_conditionals(seq, 1);
  const double n0 = static_cast<double>(model.totals.at({0}));
  CHECK(std::abs(model.conditional({0}, 1) - 0.2) <= 3.0 * std::sqrt(0.16 / n0));

  const auto rec = reconstruct_machine(model, {0.02, 100});
  REQUIRE(rec.machine.num_states() == 2);
  const auto s0 = rec.state_of.at({0});
  const auto s1 = rec.state_of.at({1});
  CHECK(std::abs(rec.machine.prob(s0, 1, s1) - 0.2) <= 0.01);
  CHECK(std::abs(rec.machine.prob(s1, 0, s0) - 0.6) <= 0.01);
}

TEST_CASE("order 2 on a Markov coin still merges to two states") {
  const auto seq = coin_sample(0.2, 0.6, 1'000'000, 23);
  const auto rec = reconstruct_machine(estimate_conditionals(seq, 2), {0.02, 100});
  CHECK(rec.machine.num_states() == 2);
  CHECK(rec.state_of.at({0, 0}) == rec.state_of.at({1, 0}));
  CHECK(rec.state_of.at({0, 1}) == rec.state_of.at({1, 1}));
}

TEST_CASE("empirical complexities") {
  const auto zeros = empirical_complexities(text("00000000000000000000"), 1, {std::nullopt, 1});
  CHECK(zeros.c_mu == 0.0);
  CHECK(zeros.c_q == 0.0);

  const auto sym = empirical_complexities(coin_sample(0.3, 0.3, 1'000'000, 31));
  CHECK(std::abs(sym.c_mu - 1.0) <= 0.01);

  const auto quantum = empirical_complexities(coin_sample(0.2, 0.2, 1'000'000, 37));
  CHECK(std::abs(quantum.c_q - kH2_01) <= 0.01);

  const auto asym = empirical_complexities(coin_sample(0.2, 0.6, 1'000'000, 41));
  CHECK(std::abs(asym.c_mu - kH2_075) <= 0.01);
}

TEST_CASE("error shrinks with sample size") {
  // Average absolute error of q0 over a seed family at n and 100 n.
  auto mean_error = [](std::size_t n) {
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto model = estimate_conditionals(coin_sample(0.2, 0.6, n, seed), 1);
      total += std::abs(model.conditional({0}, 1) - 0.2);
    }
    return total / 20.0;
  };
  const double small = mean_error(10'000);
  const double large = mean_error(1'000'000);
  CHECK(large < small / 4.0);
  CHECK(large > small / 25.0);
}
