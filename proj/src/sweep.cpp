#include "cmech/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "cmech/circuit.hpp"
#include "cmech/errors.hpp"
#include "cmech/quantum.hpp"

namespace cmech {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kFlatThreshold = 1e-12;
constexpr double kGridStep = 0.01;

void check_range(const Range& r, double lo, double hi, const char* name) {
  if (r.steps < 2) throw InvalidSpec(std::string(name) + ": steps must be at least 2");
  if (!(r.min <= r.max)) throw InvalidSpec(std::string(name) + ": min exceeds max");
  if (!(r.min >= lo && r.max <= hi)) throw InvalidSpec(std::string(name) + ": range outside domain");
}

void append_number(std::string& out, double x) {
  if (std::isnan(x)) {
    out += "nan";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  out += buf;
}

struct Complexities {
  double c_mu = kNaN;
  double c_q = kNaN;
};

Complexities complexities_or_nan(const EpsilonMachine& m, double merge_tol) {
  try {
    return {statistical_complexity(m, merge_tol), quantum_complexity(m, merge_tol)};
  } catch (const NonUniqueStationary&) {
    return {};
  }
}

}  // namespace

std::vector<double> Range::points() const {
  std::vector<double> out(steps);
  const double span = max - min;
  for (std::size_t i = 0; i < steps; ++i)
    out[i] = min + span * static_cast<double>(i) / static_cast<double>(steps - 1);
  out.back() = max;
  return out;
}

void validate_coin_spec(const SweepSpec& spec) {
  check_range(spec.q, 0.0, 1.0, "q");
  if (!(spec.merge_tol >= 0.0)) throw InvalidSpec("merge tolerance must be non-negative");
}

void validate_cloud_spec(const SweepSpec& spec) {
  check_range(spec.lambda, 0.0, 1.0, "lambda");
  if (spec.kappas.empty() || spec.gs.empty()) throw InvalidSpec("kappa and g lists must be non-empty");
  for (double k : spec.kappas)
    if (!(k >= 0.0 && k <= std::numbers::pi / 2)) throw InvalidSpec("kappa outside [0, pi/2]");
  for (double g : spec.gs)
    if (!(g >= 0.0 && g <= 1.0)) throw InvalidSpec("g outside [0,1]");
  if (!(spec.merge_tol >= 0.0)) throw InvalidSpec("merge tolerance must be non-negative");
}

std::vector<CoinRow> coin_sweep(const SweepSpec& spec) {
  validate_coin_spec(spec);
  std::vector<CoinRow> rows;
  for (double q : spec.q.points()) {
    const auto c = complexities_or_nan(perturbed_coin_machine({q, q}), spec.merge_tol);
    rows.push_back({q, c.c_mu, c.c_q});
  }
  return rows;
}

std::vector<SweepRow> cloud_sweep(const SweepSpec& spec) {
  validate_cloud_spec(spec);
  std::vector<SweepRow> rows;
  for (double lambda : spec.lambda.points())
    for (double kappa : spec.kappas)
      for (double g : spec.gs) {
        const CloudParams params{lambda, kappa, g};
        const CoinParams rates = cloud_rates(params);
        const EpsilonMachine machine = perturbed_coin_machine(rates);
        SweepRow row{lambda, kappa, g, rates.q0, rates.q1, kNaN, kNaN, kNaN, kNaN};
        try {
          const auto p = stationary(machine);
          row.p0 = p[0];
          row.p1 = p[1];
        } catch (const NonUniqueStationary&) {
        }
        const auto c = complexities_or_nan(machine, spec.merge_tol);
        row.c_mu = c.c_mu;
        row.c_q = c.c_q;
        rows.push_back(row);
      }
  return rows;
}

std::string coin_csv(const std::vector<CoinRow>& rows) {
  std::string out = "q,c_mu,c_q\n";
  for (const auto& r : rows) {
    append_number(out, r.q);
    out += ',';
    append_number(out, r.c_mu);
    out += ',';
    append_number(out, r.c_q);
    out += '\n';
  }
  return out;
}

std::string cloud_csv(const std::vector<SweepRow>& rows) {
  std::string out = "lambda,kappa,g,q0,q1,p0,p1,c_mu,c_q\n";
  for (const auto& r : rows) {
    for (double x : {r.lambda, r.kappa, r.g, r.q0, r.q1, r.p0, r.p1, r.c_mu}) {
      append_number(out, x);
      out += ',';
    }
    append_number(out, r.c_q);
    out += '\n';
  }
  return out;
}

// --------------------------------------------------------------- peak search --

Peak find_peak(double g, double kappa, double tol, double merge_tol) {
  if (!(tol > 0.0)) throw InvalidSpec("peak tolerance must be positive");
  validate(CloudParams{0.0, kappa, g});

  // Degenerate points (no unique stationary distribution) score as zero.
  auto cq = [&](double lambda) {
    try {
      return quantum_complexity(cloud_machine({lambda, kappa, g}), merge_tol);
    } catch (const NonUniqueStationary&) {
      return 0.0;
    }
  };

  const std::size_t cells = static_cast<std::size_t>(std::lround(1.0 / kGridStep));
  std::vector<double> grid(cells + 1), values(cells + 1);
  std::size_t best = 0;
  for (std::size_t i = 0; i <= cells; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(cells);
    values[i] = cq(grid[i]);
    if (values[i] > values[best]) best = i;
  }
  if (values[best] <= kFlatThreshold) throw FlatFunction("C_q vanishes across the lambda grid");

  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[std::min(best + 1, cells)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = cq(c), fd = cq(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = cq(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = cq(d);
    }
  }
  const double lambda = 0.5 * (a + b);
  const double value = cq(lambda);
  if (value < values[best]) return {grid[best], values[best], true};
  return {lambda, value, false};
}

// ------------------------------------------------------------- oracle check --

OracleGrid OracleGrid::standard() {
  OracleGrid grid;
  for (int i = 0; i <= 10; ++i) grid.lambdas.push_back(i / 10.0);
  for (int i = 0; i <= 4; ++i) grid.kappas.push_back(i * std::numbers::pi / 8.0);
  for (int i = 0; i <= 4; ++i) grid.gs.push_back(i / 4.0);
  return grid;
}

OracleReport oracle_check(const OracleGrid& grid, double tol, double q0_offset) {
  if (!(tol >= 0.0)) throw InvalidSpec("tolerance must be non-negative");
  if (grid.lambdas.empty() || grid.kappas.empty() || grid.gs.empty())
    throw InvalidSpec("oracle grid must be non-empty");
  for (double x : grid.lambdas)
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidSpec("lambda outside [0,1]");
  for (double x : grid.kappas)
    if (!(x >= 0.0 && x <= std::numbers::pi / 2)) throw InvalidSpec("kappa outside [0, pi/2]");
  for (double x : grid.gs)
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidSpec("g outside [0,1]");

  OracleReport report;
  for (double lambda : grid.lambdas)
    for (double kappa : grid.kappas)
      for (double g : grid.gs) {
        const CloudParams params{lambda, kappa, g};
        const CoinParams rates = cloud_rates(params);
        for (int k = 0; k < 2; ++k) {
          const double simulated = circuit::step_flip_probability({k, params});
          const double formula = k == 0 ? rates.q0 + q0_offset : rates.q1;
          report.max_rate_deviation = std::max(report.max_rate_deviation, std::abs(simulated - formula));
          ++report.points;
        }
      }

  const double cnot = std::numbers::pi / 2;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 10; ++j) {
      const double lambda = i / 20.0;
      const double g = j / 10.0;
      const CnotTransitions t = cnot_transitions(lambda, g);
      const double flip0 = circuit::step_flip_probability({0, {lambda, cnot, g}});
      const double flip1 = circuit::step_flip_probability({1, {lambda, cnot, g}});
      const EpsilonMachine machine = cloud_machine({lambda, cnot, g});
      double dev = std::max({std::abs(t.stay0 - (1.0 - flip0)), std::abs(t.flip0 - flip0),
                             std::abs(t.flip1 - flip1), std::abs(t.stay1 - (1.0 - flip1)),
                             std::abs(t.stay0 - machine.prob(0, 0, 0)),
                             std::abs(t.flip0 - machine.prob(0, 1, 1)),
                             std::abs(t.flip1 - machine.prob(1, 0, 0)),
                             std::abs(t.stay1 - machine.prob(1, 1, 1))});
      if (lambda + g > 0.0) {
        const auto closed = appendix_b_stationary(lambda, g);
        const auto p = stationary(machine);
        dev = std::max({dev, std::abs(closed.p0 - p[0]), std::abs(closed.p1 - p[1])});
      }
      report.max_cnot_deviation = std::max(report.max_cnot_deviation, dev);
      ++report.cnot_points;
    }

  report.pass = report.max_rate_deviation <= tol && report.max_cnot_deviation <= tol;
  return report;
}

double parse_angle(const std::string& text) {
  auto parse_real = [&](const std::string& s) {
    if (s.empty()) throw InvalidSpec("empty number in angle '" + text + "'");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw InvalidSpec("cannot parse angle '" + text + "'");
    }
    if (used != s.size()) throw InvalidSpec("cannot parse angle '" + text + "'");
    return v;
  };

  const auto pi_at = text.find("pi");
  if (pi_at == std::string::npos) return parse_real(text);
  const std::string head = text.substr(0, pi_at);
  std::string tail = text.substr(pi_at + 2);
  double value = std::numbers::pi * (head.empty() ? 1.0 : parse_real(head == "-" ? "-1" : head));
  if (!tail.empty()) {
    if (tail[0] != '/') throw InvalidSpec("cannot parse angle '" + text + "'");
    const double denom = parse_real(tail.substr(1));
    if (denom == 0.0) throw InvalidSpec("zero denominator in angle '" + text + "'");
    value /= denom;
  }
  return value;
}

}  // namespace cmech
