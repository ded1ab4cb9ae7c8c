#pragma once

#include <random>
#include <vector>

#include "cmech/errors.hpp"
#include "cmech/machine.hpp"

namespace cmech::testing {

/// Random machines with 1..max_states states and 1..max_symbols symbols.
/// Roughly a third of the tensor entries are zeroed; draws whose marginal
/// chain lacks a unique stationary distribution are rejected.
class MachineGenerator {
 public:
  explicit MachineGenerator(std::uint64_t seed, std::size_t max_states = 5,
                            std::size_t max_symbols = 4)
      : engine_(seed), max_states_(max_states), max_symbols_(max_symbols) {}

  EpsilonMachine next() {
    while (true) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_states_)(engine_);
      const std::size_t m = std::uniform_int_distribution<std::size_t>(1, max_symbols_)(engine_);
      std::vector<std::string> symbols;
      for (std::size_t i = 0; i < m; ++i) symbols.push_back(std::to_string(i));
      std::vector<double> t(n * m * n);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const std::size_t row = m * n;
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < row; ++i) {
          const double x = u(engine_) < 0.3 ? 0.0 : u(engine_);
          t[j * row + i] = x;
          sum += x;
        }
        if (sum == 0.0) {
          ok = false;
          break;
        }
        for (std::size_t i = 0; i < row; ++i) t[j * row + i] /= sum;
      }
      if (!ok) continue;
      EpsilonMachine machine(Alphabet(symbols), n, std::move(t));
      try {
        (void)stationary(machine);
      } catch (const NonUniqueStationary&) {
        continue;
      }
      return machine;
    }
  }

 private:
  std::mt19937_64 engine_;
  std::size_t max_states_;
  std::size_t max_symbols_;
};

}  // namespace cmech::testing
