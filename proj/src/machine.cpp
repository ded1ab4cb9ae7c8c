#include "cmech/machine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "cmech/errors.hpp"

namespace cmech {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kDistributionTol = 1e-12;

std::string describe_row(std::size_t j, double sum) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "row %zu sums to %.17g", j, sum);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------- Alphabet --

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InvalidMachine("alphabet must not be empty");
  std::set<std::string> seen(symbols_.begin(), symbols_.end());
  if (seen.size() != symbols_.size()) throw InvalidMachine("alphabet symbols must be distinct");
}

Alphabet Alphabet::binary() { return Alphabet({"0", "1"}); }

std::optional<std::size_t> Alphabet::index_of(std::string_view s) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == s) return i;
  return std::nullopt;
}

// ---------------------------------------------------------- EpsilonMachine --

EpsilonMachine::EpsilonMachine(Alphabet alphabet, std::size_t num_states,
                               std::vector<double> tensor)
    : alphabet_(std::move(alphabet)), num_states_(num_states), tensor_(std::move(tensor)) {
  if (num_states_ == 0) throw InvalidMachine("machine needs at least one state");
  const std::size_t row = alphabet_.size() * num_states_;
  if (tensor_.size() != num_states_ * row)
    throw InvalidMachine("transition tensor has the wrong number of entries");
  for (double x : tensor_)
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidMachine("transition probability outside [0,1]");
  for (std::size_t j = 0; j < num_states_; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < row; ++i) sum += tensor_[j * row + i];
    if (std::abs(sum - 1.0) > kRowSumTol) throw InvalidMachine(describe_row(j, sum));
  }
}

Matrix EpsilonMachine::marginal() const {
  Matrix m(num_states_, num_states_);
  for (std::size_t j = 0; j < num_states_; ++j)
    for (std::size_t r = 0; r < alphabet_size(); ++r)
      for (std::size_t k = 0; k < num_states_; ++k) m(j, k) += prob(j, r, k);
  return m;
}

bool EpsilonMachine::is_unifilar() const {
  for (std::size_t j = 0; j < num_states_; ++j)
    for (std::size_t r = 0; r < alphabet_size(); ++r) {
      int successors = 0;
      for (std::size_t k = 0; k < num_states_; ++k)
        if (prob(j, r, k) > 0.0) ++successors;
      if (successors > 1) return false;
    }
  return true;
}

// -------------------------------------------------- StationaryDistribution --

StationaryDistribution::StationaryDistribution(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw InvalidMachine("empty distribution");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw InvalidMachine("negative or NaN probability weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kDistributionTol) throw InvalidMachine("weights do not sum to one");
}

// -------------------------------------------------------------- stationary --

namespace {

// reach[i][j]: j reachable from i in zero or more steps.
std::vector<std::vector<bool>> reachability(const Matrix& p) {
  const std::size_t n = p.rows();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    reach[s][s] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v)
        if (p(u, v) > 0.0 && !reach[s][v]) {
          reach[s][v] = true;
          stack.push_back(v);
        }
    }
  }
  return reach;
}

std::size_t closed_class_count(const Matrix& p) {
  const std::size_t n = p.rows();
  const auto reach = reachability(p);
  std::vector<bool> counted(n, false);
  std::size_t classes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (counted[i]) continue;
    bool closed = true;
    for (std::size_t j = 0; j < n && closed; ++j)
      if (reach[i][j] && !reach[j][i]) closed = false;
    if (!closed) continue;
    ++classes;
    for (std::size_t j = 0; j < n; ++j)
      if (reach[i][j]) counted[j] = true;
  }
  return classes;
}

std::vector<double> clamp_and_normalize(std::vector<double> p) {
  double sum = 0.0;
  for (double& x : p) {
    x = std::max(x, 0.0);
    sum += x;
  }
  for (double& x : p) x /= sum;
  return p;
}

}  // namespace

StationaryDistribution stationary(const EpsilonMachine& machine) {
  const Matrix p = machine.marginal();
  const std::size_t n = p.rows();
  if (closed_class_count(p) != 1)
    throw NonUniqueStationary("marginal chain has more than one closed communicating class");

  // (P^T - I) x = 0 has rank n-1; its rows sum to zero, so any one of them can
  // be replaced by the normalization constraint.
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = p(j, i) - (i == j ? 1.0 : 0.0);
  std::vector<double> b(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = 1.0;
  b[n - 1] = 1.0;
  return StationaryDistribution(clamp_and_normalize(solve_linear(std::move(a), std::move(b))));
}

StationaryDistribution stationary_power_iteration(const EpsilonMachine& machine, double tol,
                                                  std::size_t max_iterations) {
  const Matrix p = machine.marginal();
  const std::size_t n = p.rows();
  if (closed_class_count(p) != 1)
    throw NonUniqueStationary("marginal chain has more than one closed communicating class");
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), next(n);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0.5 * x[k];
      for (std::size_t j = 0; j < n; ++j) s += 0.5 * x[j] * p(j, k);
      next[k] = s;
    }
    double delta = 0.0;
    for (std::size_t k = 0; k < n; ++k) delta = std::max(delta, std::abs(next[k] - x[k]));
    x.swap(next);
    if (delta <= tol) break;
  }
  return StationaryDistribution(clamp_and_normalize(std::move(x)));
}

double stationary_residual(const EpsilonMachine& machine, const StationaryDistribution& d) {
  const Matrix p = machine.marginal();
  if (d.size() != p.rows()) throw DimensionMismatch("distribution size differs from state count");
  double worst = 0.0;
  for (std::size_t k = 0; k < p.rows(); ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < p.rows(); ++j) s += d[j] * p(j, k);
    worst = std::max(worst, std::abs(s - d[k]));
  }
  return worst;
}

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities)
    if (p > 0.0) h -= p * std::log2(p);
  return std::max(h, 0.0);
}

// ------------------------------------------------------------------ merging --

Partition equivalence_partition(const EpsilonMachine& machine, double tol) {
  if (!(tol >= 0.0)) throw OutOfRange("merge tolerance must be non-negative");
  const std::size_t n = machine.num_states();
  const std::size_t m = machine.alphabet_size();
  Partition blocks(n, 0);
  std::size_t num_blocks = 1;

  while (true) {
    std::vector<std::vector<double>> signature(n, std::vector<double>(m * num_blocks, 0.0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k < n; ++k)
          signature[j][r * num_blocks + blocks[k]] += machine.prob(j, r, k);

    struct Cluster {
      std::size_t parent;
      std::size_t representative;
    };
    std::vector<Cluster> clusters;
    Partition refined(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t assigned = clusters.size();
      for (std::size_t c = 0; c < clusters.size(); ++c) {
        if (clusters[c].parent != blocks[j]) continue;
        const auto& rep = signature[clusters[c].representative];
        double tv = 0.0;
        for (std::size_t i = 0; i < rep.size(); ++i) tv += std::abs(rep[i] - signature[j][i]);
        if (0.5 * tv <= tol) {
          assigned = c;
          break;
        }
      }
      if (assigned == clusters.size()) clusters.push_back({blocks[j], j});
      refined[j] = assigned;
    }
    const bool stable = clusters.size() == num_blocks;
    blocks = std::move(refined);
    num_blocks = clusters.size();
    if (stable) break;
  }
  return blocks;
}

EpsilonMachine quotient(const EpsilonMachine& machine, const Partition& partition,
                        std::span<const double> weights) {
  const std::size_t n = machine.num_states();
  const std::size_t m = machine.alphabet_size();
  if (partition.size() != n) throw DimensionMismatch("partition size differs from state count");
  if (!weights.empty() && weights.size() != n)
    throw DimensionMismatch("weight count differs from state count");
  const std::size_t nb = *std::max_element(partition.begin(), partition.end()) + 1;

  std::vector<double> block_weight(nb, 0.0);
  std::vector<std::size_t> block_size(nb, 0);
  for (std::size_t j = 0; j < n; ++j) {
    block_weight[partition[j]] += weights.empty() ? 1.0 : weights[j];
    ++block_size[partition[j]];
  }
  for (std::size_t b = 0; b < nb; ++b)
    if (block_size[b] == 0) throw InvalidMachine("partition has an empty block");

  std::vector<double> tensor(nb * m * nb, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t b = partition[j];
    // Zero total weight in a block falls back to a uniform mean.
    const double w = block_weight[b] > 0.0
                         ? (weights.empty() ? 1.0 : weights[j]) / block_weight[b]
                         : 1.0 / static_cast<double>(block_size[b]);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t k = 0; k < n; ++k)
        tensor[(b * m + r) * nb + partition[k]] += w * machine.prob(j, r, k);
  }
  // Averaging can round a certain transition to 1 + ulp.
  for (double& x : tensor) x = std::min(x, 1.0);
  return EpsilonMachine(machine.alphabet(), nb, std::move(tensor));
}

EpsilonMachine merge_equivalent_states(const EpsilonMachine& machine, double tol) {
  return quotient(machine, equivalence_partition(machine, tol));
}

double statistical_complexity(const EpsilonMachine& machine, double tol) {
  return shannon_entropy(stationary(merge_equivalent_states(machine, tol)));
}

// ----------------------------------------------------------------- sampling --

SymbolSequence sample(const EpsilonMachine& machine, std::optional<std::size_t> start,
                      std::size_t length, std::uint64_t seed) {
  const std::size_t n = machine.num_states();
  const std::size_t m = machine.alphabet_size();
  if (start && *start >= n) throw InvalidStart("start state index out of range");

  std::mt19937_64 engine(seed);
  auto uniform = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };

  std::size_t state = 0;
  if (start) {
    state = *start;
  } else {
    const auto p = stationary(machine);
    double u = uniform(), acc = 0.0;
    state = n - 1;
    for (std::size_t j = 0; j < n; ++j) {
      acc += p[j];
      if (u < acc) {
        state = j;
        break;
      }
    }
  }

  SymbolSequence out;
  out.alphabet = machine.alphabet();
  out.seed = seed;
  out.generator = "mt19937_64";
  out.symbols.reserve(length);
  for (std::size_t t = 0; t < length; ++t) {
    const double u = uniform();
    double acc = 0.0;
    std::size_t chosen_r = m, chosen_k = n;
    std::size_t last_r = 0, last_k = 0;
    for (std::size_t r = 0; r < m && chosen_r == m; ++r)
      for (std::size_t k = 0; k < n; ++k) {
        const double w = machine.prob(state, r, k);
        if (w <= 0.0) continue;
        last_r = r;
        last_k = k;
        acc += w;
        if (u < acc) {
          chosen_r = r;
          chosen_k = k;
          break;
        }
      }
    // Rounding can leave acc a hair below one; take the last positive entry.
    if (chosen_r == m) {
      chosen_r = last_r;
      chosen_k = last_k;
    }
    out.symbols.push_back(static_cast<std::uint32_t>(chosen_r));
    state = chosen_k;
  }
  return out;
}

// ---------------------------------------------------------------------- I/O --

std::string to_tensor_listing(const EpsilonMachine& machine) {
  std::string out;
  char buf[128];
  for (std::size_t j = 0; j < machine.num_states(); ++j)
    for (std::size_t r = 0; r < machine.alphabet_size(); ++r)
      for (std::size_t k = 0; k < machine.num_states(); ++k) {
        const double p = machine.prob(j, r, k);
        if (p == 0.0) continue;
        std::snprintf(buf, sizeof buf, "%zu %zu %zu %.17g\n", j, r, k, p);
        out += buf;
      }
  return out;
}

std::string format_sequence(const SymbolSequence& seq) {
  std::string out;
  out.reserve(seq.symbols.size());
  for (auto s : seq.symbols) out += seq.alphabet.symbol(s);
  return out;
}

SymbolSequence parse_sequence(std::string_view text, const Alphabet& alphabet) {
  if (text.ends_with('\n')) text.remove_suffix(1);
  if (text.ends_with('\r')) text.remove_suffix(1);
  SymbolSequence seq;
  seq.alphabet = alphabet;
  seq.symbols.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto idx = alphabet.index_of(text.substr(i, 1));
    if (!idx) throw InvalidSymbol("symbol at offset " + std::to_string(i) + " is not in the alphabet");
    seq.symbols.push_back(static_cast<std::uint32_t>(*idx));
  }
  return seq;
}

}  // namespace cmech
