#include "cmech/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "cmech/errors.hpp"
#include "cmech/quantum.hpp"

namespace cmech {

double EmpiricalModel::conditional(const History& h, std::uint32_t symbol) const {
  const auto it = counts.find(h);
  if (it == counts.end() || symbol >= it->second.size()) return 0.0;
  const auto total = totals.at(h);
  return total == 0 ? 0.0 : static_cast<double>(it->second[symbol]) / static_cast<double>(total);
}

EmpiricalModel estimate_conditionals(const SymbolSequence& seq, std::size_t order) {
  if (order == 0) throw OutOfRange("history order must be at least 1");
  const auto& s = seq.symbols;
  if (s.size() <= order) throw TooShort("sequence must be longer than the history order");
  const std::size_t m = seq.alphabet.size();
  for (auto x : s)
    if (x >= m) throw InvalidSymbol("symbol index outside the alphabet");

  // Histories are folded into base-m codes while counting.
  const double code_bits = static_cast<double>(order) * std::log2(static_cast<double>(m));
  if (code_bits > 63.0) throw OutOfRange("alphabet^order does not fit in 64 bits");
  std::uint64_t modulus = 1;
  for (std::size_t i = 0; i < order; ++i) modulus *= m;

  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> by_code;
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < order; ++i) code = code * m + s[i];
  for (std::size_t t = order; t < s.size(); ++t) {
    auto& row = by_code[code];
    if (row.empty()) row.assign(m, 0);
    ++row[s[t]];
    code = (code * m + s[t]) % modulus;
  }

  EmpiricalModel model;
  model.order = order;
  model.alphabet = seq.alphabet;
  for (auto& [c, row] : by_code) {
    History h(order);
    std::uint64_t rest = c;
    for (std::size_t i = order; i-- > 0;) {
      h[i] = static_cast<std::uint32_t>(rest % m);
      rest /= m;
    }
    std::uint64_t total = 0;
    for (auto n : row) total += n;
    model.totals.emplace(h, total);
    model.counts.emplace(std::move(h), std::move(row));
  }
  return model;
}

double default_merge_tol(const EmpiricalModel& model) {
  double worst = 0.0;
  for (const auto& [h, row] : model.counts) {
    const double n = static_cast<double>(model.totals.at(h));
    if (n == 0.0) continue;
    for (auto c : row) {
      const double p = static_cast<double>(c) / n;
      worst = std::max(worst, p * (1.0 - p) / n);
    }
  }
  return 3.0 * std::sqrt(worst);
}

Reconstruction reconstruct_machine(const EmpiricalModel& model, const ReconstructOptions& options) {
  const std::size_t m = model.alphabet.size();
  std::map<History, std::size_t> index;
  for (const auto& [h, total] : model.totals) {
    if (total == 0) continue;
    if (total < options.min_count)
      throw InsufficientData("history '" + format_history(h, model.alphabet) + "' observed " +
                             std::to_string(total) + " times, below the minimum " +
                             std::to_string(options.min_count));
    index.emplace(h, index.size());
  }
  if (index.empty()) throw InsufficientData("no history was observed");

  const std::size_t n = index.size();
  std::vector<double> tensor(n * m * n, 0.0);
  std::vector<double> weight(n, 0.0);
  for (const auto& [h, j] : index) {
    const auto& row = model.counts.at(h);
    std::vector<std::pair<std::size_t, std::size_t>> kept;  // (symbol, successor)
    std::uint64_t kept_total = 0;
    for (std::size_t r = 0; r < m; ++r) {
      if (row[r] == 0) continue;
      History next(h.begin() + 1, h.end());
      next.push_back(static_cast<std::uint32_t>(r));
      const auto it = index.find(next);
      if (it == index.end()) continue;
      kept.emplace_back(r, it->second);
      kept_total += row[r];
    }
    if (kept_total == 0)
      throw InsufficientData("history '" + format_history(h, model.alphabet) +
                             "' only leads to unobserved histories");
    for (const auto& [r, k] : kept)
      tensor[(j * m + r) * n + k] = static_cast<double>(row[r]) / static_cast<double>(kept_total);
    weight[j] = static_cast<double>(kept_total);
  }

  const EpsilonMachine raw(model.alphabet, n, std::move(tensor));
  const double tol = options.merge_tol.value_or(default_merge_tol(model));
  const Partition blocks = equivalence_partition(raw, tol);

  Reconstruction out{quotient(raw, blocks, weight), {}, tol};
  for (const auto& [h, j] : index) out.state_of.emplace(h, blocks[j]);
  return out;
}

EmpiricalComplexities empirical_complexities(const SymbolSequence& seq, std::size_t order,
                                             const ReconstructOptions& options) {
  auto rec = reconstruct_machine(estimate_conditionals(seq, order), options);
  const double c_mu = statistical_complexity(rec.machine, rec.merge_tol);
  const double c_q = quantum_complexity(rec.machine, rec.merge_tol);
  return {c_mu, c_q, std::move(rec)};
}

std::string format_history(const History& h, const Alphabet& alphabet) {
  std::string out;
  for (auto s : h) out += alphabet.symbol(s);
  return out;
}

}  // namespace cmech
