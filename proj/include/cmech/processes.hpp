#pragma once

#include "cmech/machine.hpp"

namespace cmech {

/// Flip probabilities of the perturbed coin from heads (q0) and tails (q1).
/// Values in [0,1]; the endpoints are accepted but produce degenerate chains.
struct CoinParams {
  double q0 = 0.0;
  double q1 = 0.0;
};

/// Thermalizing qubit cloud: thermalization lambda in [0,1], interaction
/// strength kappa in [0, pi/2], swap probability g in [0,1].
struct CloudParams {
  double lambda = 0.0;
  double kappa = 0.0;
  double g = 0.0;
};

/// Throws OutOfRange when a field leaves its domain.
void validate(const CoinParams& p);
void validate(const CloudParams& p);

/// Two states, binary alphabet, unifilar: emitting r always lands in state r.
EpsilonMachine perturbed_coin_machine(const CoinParams& p);

/// Binary entropy of the stationary split q1/(q0+q1). Throws Degenerate when
/// q0 + q1 = 0. Not meaningful at q0 = q1 = 0.5, where the two states merge.
double coin_complexity_closed_form(const CoinParams& p);

/// Flip rates induced on the observer's qubit:
///   q0 = g lambda/2 + (1-g)(lambda/2) sin^2 kappa
///   q1 = (1-g)(lambda/2) sin^2 kappa + g (1 - lambda/2)
CoinParams cloud_rates(const CloudParams& p);

EpsilonMachine cloud_machine(const CloudParams& p);

/// Transition probabilities of the cloud process in the controlled-NOT regime
/// (kappa = pi/2), written out independently of cloud_rates.
struct CnotTransitions {
  double stay0;  // S0 -> S0, emits 0
  double flip0;  // S0 -> S1, emits 1
  double flip1;  // S1 -> S0, emits 0
  double stay1;  // S1 -> S1, emits 1
};
CnotTransitions cnot_transitions(double lambda, double g);

/// Closed-form stationary pair for the kappa = pi/2 cloud:
///   p0 = (lambda - 2g(lambda-1)) / (2(g + lambda - g lambda))
///   p1 = lambda / (2(g + lambda - g lambda))
/// Throws Degenerate at g = lambda = 0.
struct StationaryPair {
  double p0;
  double p1;
};
StationaryPair appendix_b_stationary(double lambda, double g);

}  // namespace cmech
