#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmech/machine.hpp"

namespace cmech {

/// The last L symbols before a prediction, oldest first.
using History = std::vector<std::uint32_t>;

/// Sliding-window next-symbol counts for every observed length-L history.
struct EmpiricalModel {
  std::size_t order = 1;
  Alphabet alphabet = Alphabet::binary();
  std::map<History, std::vector<std::uint64_t>> counts;  // per next symbol
  std::map<History, std::uint64_t> totals;

  /// Maximum-likelihood P(symbol | history); 0 for an unseen history.
  double conditional(const History& h, std::uint32_t symbol) const;
};

/// Throws TooShort unless seq.symbols.size() > order, OutOfRange for order 0.
EmpiricalModel estimate_conditionals(const SymbolSequence& seq, std::size_t order = 1);

struct ReconstructOptions {
  /// Missing means 3 * sqrt(max_h max_r p(1-p) / n_h), scaled to sampling noise.
  std::optional<double> merge_tol;
  std::uint64_t min_count = 100;
};

struct Reconstruction {
  EpsilonMachine machine;
  std::map<History, std::size_t> state_of;  // the causal-state function
  double merge_tol = 0.0;
};

/// Noise-scaled default merge tolerance for a model.
double default_merge_tol(const EmpiricalModel& model);

/// Candidate states are the observed histories; a history emitting r moves to
/// the history formed by dropping its oldest symbol and appending r. Edges to
/// histories that were never observed are dropped and the row renormalized.
/// Throws InsufficientData when a history has fewer than min_count samples.
Reconstruction reconstruct_machine(const EmpiricalModel& model, const ReconstructOptions& options = {});

struct EmpiricalComplexities {
  double c_mu = 0.0;
  double c_q = 0.0;
  Reconstruction reconstruction;
};

EmpiricalComplexities empirical_complexities(const SymbolSequence& seq, std::size_t order = 1,
                                             const ReconstructOptions& options = {});

std::string format_history(const History& h, const Alphabet& alphabet);

}  // namespace cmech
