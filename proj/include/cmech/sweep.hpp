#pragma once

#include <string>
#include <vector>

#include "cmech/machine.hpp"
#include "cmech/processes.hpp"

namespace cmech {

/// Evenly spaced closed interval [min, max] with `steps` points.
struct Range {
  double min = 0.0;
  double max = 1.0;
  std::size_t steps = 101;

  std::vector<double> points() const;
};

struct SweepSpec {
  Range q{0.0, 1.0, 101};
  Range lambda{0.0, 1.0, 101};
  std::vector<double> kappas;
  std::vector<double> gs;
  double merge_tol = kDefaultMergeTol;
};

/// Throws InvalidSpec when steps < 2, min > max, or a value leaves its domain.
void validate_coin_spec(const SweepSpec& spec);
void validate_cloud_spec(const SweepSpec& spec);

/// Degenerate grid points (no unique stationary distribution, e.g. q = 0 or
/// lambda = g = 0) carry NaN in every derived column.
struct CoinRow {
  double q;
  double c_mu;
  double c_q;
};

struct SweepRow {
  double lambda;
  double kappa;
  double g;
  double q0;
  double q1;
  double p0;  // stationary weights of the unmerged two-state machine
  double p1;
  double c_mu;
  double c_q;
};

/// Symmetric coin q0 = q1 = q over spec.q.
std::vector<CoinRow> coin_sweep(const SweepSpec& spec);

/// Rows ordered with lambda outermost, then kappa, then g.
std::vector<SweepRow> cloud_sweep(const SweepSpec& spec);

/// Lowercase header, 12 significant digits, comma separated, LF line ends.
std::string coin_csv(const std::vector<CoinRow>& rows);
std::string cloud_csv(const std::vector<SweepRow>& rows);

struct Peak {
  double lambda;
  double c_q;
  bool used_grid_fallback = false;
};

/// Maximizes C_q over lambda for a fixed (g, kappa): argmax over a 0.01 grid,
/// then golden-section refinement on the neighbouring cells until the bracket
/// is no wider than `tol`. Falls back to the grid argmax if refinement ends
/// lower than it. Throws FlatFunction when C_q <= 1e-12 on the whole grid.
Peak find_peak(double g, double kappa, double tol = 1e-6, double merge_tol = kDefaultMergeTol);

struct OracleGrid {
  std::vector<double> lambdas;
  std::vector<double> kappas;
  std::vector<double> gs;

  /// lambda in {0, 0.1, ..., 1}, kappa in {0, pi/8, ..., pi/2}, g in {0, 0.25, ..., 1}.
  static OracleGrid standard();
};

struct OracleReport {
  std::size_t points = 0;
  double max_rate_deviation = 0.0;      // |simulated flip - closed-form rate|
  std::size_t cnot_points = 0;
  double max_cnot_deviation = 0.0;      // kappa = pi/2 transitions and stationary pair
  bool pass = false;
};

/// Compares the density-matrix simulation with the closed-form flip rates on
/// `grid`, and the controlled-NOT closed forms with both the simulation and the
/// generic stationary solver on a 21 x 11 (lambda, g) grid. `q0_offset` is
/// added to the closed-form q0 to check that the comparator can fail.
OracleReport oracle_check(const OracleGrid& grid, double tol, double q0_offset = 0.0);

/// Parses a real number or a multiple of pi such as "pi/2", "3pi/8", "0.5pi".
/// Throws InvalidSpec on malformed input.
double parse_angle(const std::string& text);

}  // namespace cmech
