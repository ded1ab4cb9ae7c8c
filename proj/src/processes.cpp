#include "cmech/processes.hpp"

#include <cmath>
#include <numbers>

#include "cmech/errors.hpp"

namespace cmech {

namespace {

void require_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw OutOfRange(std::string(name) + " must lie in [0,1]");
}

}  // namespace

void validate(const CoinParams& p) {
  require_unit(p.q0, "q0");
  require_unit(p.q1, "q1");
}

void validate(const CloudParams& p) {
  require_unit(p.lambda, "lambda");
  require_unit(p.g, "g");
  if (!(p.kappa >= 0.0 && p.kappa <= std::numbers::pi / 2))
    throw OutOfRange("kappa must lie in [0, pi/2]");
}

EpsilonMachine perturbed_coin_machine(const CoinParams& p) {
  validate(p);
  // Index ((j * 2) + r) * 2 + k; emitting r moves to k = r.
  std::vector<double> t(8, 0.0);
  t[(0 * 2 + 0) * 2 + 0] = 1.0 - p.q0;
  t[(0 * 2 + 1) * 2 + 1] = p.q0;
  t[(1 * 2 + 0) * 2 + 0] = p.q1;
  t[(1 * 2 + 1) * 2 + 1] = 1.0 - p.q1;
  return EpsilonMachine(Alphabet::binary(), 2, std::move(t));
}

double coin_complexity_closed_form(const CoinParams& p) {
  validate(p);
  const double total = p.q0 + p.q1;
  if (total == 0.0) throw Degenerate("q0 + q1 = 0 has no unique stationary distribution");
  const double a = p.q0 / total;
  const double b = p.q1 / total;
  double h = 0.0;
  if (a > 0.0) h -= a * std::log2(a);
  if (b > 0.0) h -= b * std::log2(b);
  return h;
}

CoinParams cloud_rates(const CloudParams& p) {
  validate(p);
  const double half = p.lambda / 2.0;
  const double s2 = std::sin(p.kappa) * std::sin(p.kappa);
  return {p.g * half + (1.0 - p.g) * half * s2,
          (1.0 - p.g) * half * s2 + p.g * (1.0 - half)};
}

EpsilonMachine cloud_machine(const CloudParams& p) {
  return perturbed_coin_machine(cloud_rates(p));
}

CnotTransitions cnot_transitions(double lambda, double g) {
  require_unit(lambda, "lambda");
  require_unit(g, "g");
  const double half = lambda / 2.0;
  return {1.0 - half, half, g * (1.0 - half) + (1.0 - g) * half,
          g * half + (1.0 - g) * (1.0 - half)};
}

StationaryPair appendix_b_stationary(double lambda, double g) {
  require_unit(lambda, "lambda");
  require_unit(g, "g");
  const double denom = g + lambda - g * lambda;
  if (denom == 0.0) throw Degenerate("g = lambda = 0 has no unique stationary distribution");
  return {(-2.0 * g * (lambda - 1.0) + lambda) / (2.0 * denom), lambda / (2.0 * denom)};
}

}  // namespace cmech
