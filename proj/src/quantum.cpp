#include "cmech/quantum.hpp"

#include <algorithm>
#include <cmath>

#include "cmech/errors.hpp"

namespace cmech {

namespace {
constexpr double kDensityTol = 1e-9;
}

std::vector<QuantumCausalState> quantum_causal_states(const EpsilonMachine& machine) {
  const std::size_t n = machine.num_states();
  const std::size_t m = machine.alphabet_size();
  std::vector<QuantumCausalState> states(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto& amp = states[j].amplitudes;
    amp.resize(m * n);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t k = 0; k < n; ++k) amp[r * n + k] = std::sqrt(machine.prob(j, r, k));
  }
  return states;
}

GramMatrix gram(const std::vector<QuantumCausalState>& states) {
  const std::size_t n = states.size();
  for (const auto& s : states)
    if (s.amplitudes.size() != states[0].amplitudes.size())
      throw DimensionMismatch("quantum causal states differ in dimension");
  GramMatrix g{Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t a = 0; a < states[i].amplitudes.size(); ++a)
        s += states[i].amplitudes[a] * states[j].amplitudes[a];
      g.entries(i, j) = g.entries(j, i) = s;
    }
  }
  return g;
}

MixedStateOperator weighted_gram_operator(const GramMatrix& g, const StationaryDistribution& p) {
  const std::size_t n = g.entries.rows();
  if (p.size() != n) throw DimensionMismatch("distribution size differs from Gram matrix");
  MixedStateOperator op{Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      op.matrix(i, j) = std::sqrt(p[i] * p[j]) * g.entries(i, j);
  return op;
}

MixedStateOperator full_density_operator(const std::vector<QuantumCausalState>& states,
                                         const StationaryDistribution& p) {
  if (states.size() != p.size()) throw DimensionMismatch("distribution size differs from state count");
  const std::size_t d = states.empty() ? 0 : states[0].amplitudes.size();
  MixedStateOperator op{Matrix(d, d)};
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& a = states[i].amplitudes;
    if (a.size() != d) throw DimensionMismatch("quantum causal states differ in dimension");
    for (std::size_t x = 0; x < d; ++x) {
      if (a[x] == 0.0) continue;
      for (std::size_t y = 0; y < d; ++y) op.matrix(x, y) += p[i] * a[x] * a[y];
    }
  }
  return op;
}

double von_neumann_entropy(const MixedStateOperator& op) {
  const double trace = op.matrix.trace();
  if (std::abs(trace - 1.0) > kDensityTol)
    throw NotDensityOperator("operator trace differs from one");
  // Rescale by the trace so a pure state gives exactly zero.
  std::vector<double> values = symmetric_eigenvalues(op.matrix);
  for (double& v : values) v /= trace;
  double h = 0.0;
  for (double v : values) {
    if (v < -kDensityTol) throw NotDensityOperator("operator has a negative eigenvalue");
    const double lambda = std::clamp(v, 0.0, 1.0);
    if (lambda > 0.0) h -= lambda * std::log2(lambda);
  }
  return std::max(h, 0.0);
}

double quantum_complexity(const EpsilonMachine& machine, double tol) {
  const EpsilonMachine merged = merge_equivalent_states(machine, tol);
  const auto p = stationary(merged);
  return von_neumann_entropy(weighted_gram_operator(gram(quantum_causal_states(merged)), p));
}

double quantum_complexity_full(const EpsilonMachine& machine, double tol) {
  const EpsilonMachine merged = merge_equivalent_states(machine, tol);
  const auto p = stationary(merged);
  return von_neumann_entropy(full_density_operator(quantum_causal_states(merged), p));
}

}  // namespace cmech
