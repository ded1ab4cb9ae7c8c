#pragma once

#include <vector>

#include "cmech/linalg.hpp"
#include "cmech/machine.hpp"

namespace cmech {

/// |S_j> = sum_{r,k} sqrt(T(j,r,k)) |r>|k>, stored with index r * N + k.
/// Amplitudes are real and nonnegative by construction.
struct QuantumCausalState {
  std::vector<double> amplitudes;
};

/// G_ij = <S_i|S_j>.
struct GramMatrix {
  Matrix entries;
};

/// Real symmetric PSD operator of unit trace. Either the full
/// sum_i p_i |S_i><S_i| or the weighted Gram form sqrt(p_i p_j) G_ij, which
/// shares its nonzero spectrum.
struct MixedStateOperator {
  Matrix matrix;
};

std::vector<QuantumCausalState> quantum_causal_states(const EpsilonMachine& machine);

/// Throws DimensionMismatch if amplitude vectors differ in length.
GramMatrix gram(const std::vector<QuantumCausalState>& states);

/// N x N operator sqrt(p_i p_j) G_ij.
MixedStateOperator weighted_gram_operator(const GramMatrix& g, const StationaryDistribution& p);

/// |alphabet| N square operator sum_i p_i |S_i><S_i|.
MixedStateOperator full_density_operator(const std::vector<QuantumCausalState>& states,
                                         const StationaryDistribution& p);

/// -Tr rho log2 rho. Throws NotDensityOperator when the trace is off by more
/// than 1e-9 or an eigenvalue lies below -1e-9; smaller excursions are clamped.
double von_neumann_entropy(const MixedStateOperator& op);

/// C_q via the Gram fast path, after merging equivalent states.
double quantum_complexity(const EpsilonMachine& machine, double tol = kDefaultMergeTol);

/// C_q via the full |alphabet| N dimensional operator. Same merge step.
double quantum_complexity_full(const EpsilonMachine& machine, double tol = kDefaultMergeTol);

}  // namespace cmech
