#include "cmech/circuit.hpp"

#include <cmath>
#include <numbers>

#include "cmech/errors.hpp"

namespace cmech::circuit {

namespace {
constexpr double kDensityTol = 1e-10;
}

TwoQubit kron(const Qubit& observer, const Qubit& environment) {
  TwoQubit out;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t d = 0; d < 2; ++d)
          out(2 * a + c, 2 * b + d) = observer(a, b) * environment(c, d);
  return out;
}

Qubit env_qubit(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw OutOfRange("lambda must lie in [0,1]");
  Qubit rho;
  rho(0, 0) = (1.0 - lambda) + lambda / 2.0;
  rho(1, 1) = lambda / 2.0;
  return rho;
}

TwoQubit cx_kappa_unitary(double kappa) {
  if (!(kappa >= 0.0 && kappa <= std::numbers::pi / 2))
    throw OutOfRange("kappa must lie in [0, pi/2]");
  Qubit x_kappa;
  x_kappa(0, 0) = x_kappa(1, 1) = std::cos(kappa);
  x_kappa(0, 1) = x_kappa(1, 0) = Complex(0.0, std::sin(kappa));

  Qubit env0, env1;
  env0(0, 0) = 1.0;
  env1(1, 1) = 1.0;
  return kron(Qubit::identity(), env0) + kron(x_kappa, env1);
}

TwoQubit swap_unitary() {
  TwoQubit s;
  // |oe> -> |eo>: indices 0 and 3 fixed, 1 <-> 2.
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 3) = 1.0;
  return s;
}

TwoQubit pswap_channel(const TwoQubit& rho, double g) {
  if (!(g >= 0.0 && g <= 1.0)) throw OutOfRange("g must lie in [0,1]");
  if (!is_density(rho, kDensityTol)) throw InvalidDensity("pswap input is not a density matrix");
  const TwoQubit s = swap_unitary();
  return Complex(g) * (s * rho * s.adjoint()) + Complex(1.0 - g) * rho;
}

Qubit partial_trace_env(const TwoQubit& rho) {
  if (!is_density(rho, kDensityTol))
    throw InvalidDensity("partial trace input is not a density matrix");
  Qubit out;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      out(a, b) = rho(2 * a + 0, 2 * b + 0) + rho(2 * a + 1, 2 * b + 1);
  return out;
}

StepStages simulate_step(const ObserverStep& step) {
  if (step.last_outcome != 0 && step.last_outcome != 1)
    throw OutOfRange("last outcome must be 0 or 1");
  validate(step.params);

  Qubit observer;
  observer(step.last_outcome, step.last_outcome) = 1.0;

  StepStages s;
  s.input = kron(observer, env_qubit(step.params.lambda));
  const TwoQubit u = cx_kappa_unitary(step.params.kappa);
  s.after_interaction = u * s.input * u.adjoint();
  s.after_swap = pswap_channel(s.after_interaction, step.params.g);
  s.observer = partial_trace_env(s.after_swap);
  return s;
}

double step_flip_probability(const ObserverStep& step) {
  const auto stages = simulate_step(step);
  const std::size_t other = step.last_outcome == 0 ? 1 : 0;
  return stages.observer(other, other).real();
}

}  // namespace cmech::circuit
