#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmech/linalg.hpp"

namespace cmech {

/// Default total-variation tolerance used when merging causal states.
inline constexpr double kDefaultMergeTol = 1e-9;

/// Ordered set of emission labels. Index order is stable.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);
  static Alphabet binary();

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<std::size_t> index_of(std::string_view s) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

/// An edge-emitting hidden Markov model: T(j, r, k) is the probability that a
/// machine in causal state j emits symbol r and moves to state k.
///
/// Construction validates the tensor (entries in [0,1], every row summing to
/// one within 1e-12) and throws InvalidMachine otherwise. Instances are
/// immutable afterwards.
class EpsilonMachine {
 public:
  /// `tensor` is laid out as ((j * |alphabet|) + r) * num_states + k.
  EpsilonMachine(Alphabet alphabet, std::size_t num_states, std::vector<double> tensor);

  std::size_t num_states() const { return num_states_; }
  std::size_t alphabet_size() const { return alphabet_.size(); }
  const Alphabet& alphabet() const { return alphabet_; }

  double prob(std::size_t j, std::size_t r, std::size_t k) const {
    return tensor_[(j * alphabet_.size() + r) * num_states_ + k];
  }
  std::span<const double> tensor() const { return tensor_; }

  /// State-to-state chain with the emitted symbol summed out; row j is the
  /// distribution of the successor of state j.
  Matrix marginal() const;

  /// At most one successor per (state, symbol) pair.
  bool is_unifilar() const;

 private:
  Alphabet alphabet_;
  std::size_t num_states_;
  std::vector<double> tensor_;
};

/// Probability weights over causal states.
class StationaryDistribution {
 public:
  explicit StationaryDistribution(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

/// A finite run of emitted symbols plus where it came from.
struct SymbolSequence {
  Alphabet alphabet = Alphabet::binary();
  std::vector<std::uint32_t> symbols;
  std::uint64_t seed = 0;
  std::string generator;   // RNG algorithm, empty when read from text
  std::string machine_id;  // free-form description of the source
};

/// Direct null-space solve of p = pP on the marginal chain.
/// Throws NonUniqueStationary when the chain has more than one closed class.
StationaryDistribution stationary(const EpsilonMachine& machine);

/// Power iteration on the lazy chain (P + I) / 2, which shares its stationary
/// vector with P but is aperiodic. Used to cross-check `stationary`.
StationaryDistribution stationary_power_iteration(const EpsilonMachine& machine,
                                                  double tol = 1e-13,
                                                  std::size_t max_iterations = 1'000'000);

/// Largest |p - pP| component.
double stationary_residual(const EpsilonMachine& machine, const StationaryDistribution& p);

/// Shannon entropy in bits, with 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities);
inline double shannon_entropy(const StationaryDistribution& d) {
  return shannon_entropy(d.weights());
}

/// Block index per state; blocks are numbered by first appearance.
using Partition = std::vector<std::size_t>;

/// Coarsest partition that is stable under refinement by next-(symbol, block)
/// distributions, where two states stay together while their distributions
/// lie within `tol` in total-variation distance of the block's first member.
Partition equivalence_partition(const EpsilonMachine& machine, double tol);

/// Quotient machine over `partition`. Each block's row is the `weights`-weighted
/// mean of its members' rows, with successor probabilities summed per block.
/// Empty `weights` means uniform.
EpsilonMachine quotient(const EpsilonMachine& machine, const Partition& partition,
                        std::span<const double> weights = {});

/// Bisimulation quotient; idempotent, never increases the state count.
EpsilonMachine merge_equivalent_states(const EpsilonMachine& machine,
                                       double tol = kDefaultMergeTol);

/// C_mu: entropy of the stationary distribution of the merged machine.
double statistical_complexity(const EpsilonMachine& machine, double tol = kDefaultMergeTol);

/// Draws `length` symbols. A missing `start` draws the initial state from the
/// stationary distribution. Uses std::mt19937_64 with 53-bit uniform doubles,
/// so output is reproducible for a given seed.
SymbolSequence sample(const EpsilonMachine& machine, std::optional<std::size_t> start,
                      std::size_t length, std::uint64_t seed);

/// One `j r k probability` line per nonzero entry, 17 significant digits.
std::string to_tensor_listing(const EpsilonMachine& machine);

/// Concatenated canonical symbols, e.g. "0110".
std::string format_sequence(const SymbolSequence& seq);

/// Inverse of format_sequence for single-character alphabets. A trailing
/// newline (LF or CRLF) is accepted; anything else off-alphabet throws InvalidSymbol.
SymbolSequence parse_sequence(std::string_view text, const Alphabet& alphabet);

}  // namespace cmech
