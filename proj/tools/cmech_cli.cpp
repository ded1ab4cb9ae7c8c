// Command-line driver: complexity sweeps, peak search, oracle check, inference.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cmech/errors.hpp"
#include "cmech/inference.hpp"
#include "cmech/machine.hpp"
#include "cmech/processes.hpp"
#include "cmech/quantum.hpp"
#include "cmech/sweep.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt12(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file '" + path + "'");
  out << text;
}

std::vector<double> parse_angles(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& s : items) out.push_back(cmech::parse_angle(s));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical and quantum statistical complexity of stochastic processes"};
  app.require_subcommand(1);

  std::string out_path;
  double merge_tol = cmech::kDefaultMergeTol;

  // coin
  auto* coin = app.add_subcommand("coin", "C_mu and C_q of the symmetric perturbed coin over q");
  cmech::SweepSpec coin_spec;
  coin->add_option("--q-min", coin_spec.q.min, "Smallest flip probability")->capture_default_str();
  coin->add_option("--q-max", coin_spec.q.max, "Largest flip probability")->capture_default_str();
  coin->add_option("--steps", coin_spec.q.steps, "Number of grid points")->capture_default_str();

  // cloud
  auto* cloud = app.add_subcommand("cloud", "Thermalizing qubit cloud sweep over (lambda, kappa, g)");
  cmech::SweepSpec cloud_spec;
  std::vector<std::string> cloud_kappas{"pi/2"};
  cloud_spec.gs = {0.25, 0.5, 0.75};
  cloud->add_option("--lambda-min", cloud_spec.lambda.min)->capture_default_str();
  cloud->add_option("--lambda-max", cloud_spec.lambda.max)->capture_default_str();
  cloud->add_option("--lambda-steps,--steps", cloud_spec.lambda.steps)->capture_default_str();
  cloud->add_option("--kappa", cloud_kappas, "Interaction strengths (accepts pi/2 style)")
      ->delimiter(',')
      ->capture_default_str();
  cloud->add_option("--g", cloud_spec.gs, "Swap probabilities")->delimiter(',')->capture_default_str();

  // peak
  auto* peak = app.add_subcommand("peak", "Locate the lambda maximizing C_q");
  double peak_g = 0.5;
  std::string peak_kappa = "pi/2";
  double peak_tol = 1e-6;
  peak->add_option("--g", peak_g)->capture_default_str();
  peak->add_option("--kappa", peak_kappa)->capture_default_str();
  peak->add_option("--tol", peak_tol, "Final bracket width")->capture_default_str();

  // oracle-check
  auto* oracle = app.add_subcommand("oracle-check", "Circuit simulation versus closed-form flip rates");
  std::size_t oracle_lambda_steps = 11;
  std::vector<std::string> oracle_kappas{"0", "pi/8", "pi/4", "3pi/8", "pi/2"};
  std::vector<double> oracle_gs{0.0, 0.25, 0.5, 0.75, 1.0};
  double oracle_tol = 1e-10;
  double oracle_perturb = 0.0;
  oracle->add_option("--lambda-steps,--steps", oracle_lambda_steps)->capture_default_str();
  oracle->add_option("--kappa", oracle_kappas)->delimiter(',')->capture_default_str();
  oracle->add_option("--g", oracle_gs)->delimiter(',')->capture_default_str();
  oracle->add_option("--tol", oracle_tol)->capture_default_str();
  oracle->add_option("--perturb-q0", oracle_perturb, "Offset added to the closed-form q0")
      ->group("");

  // sample
  auto* samp = app.add_subcommand("sample", "Emit a perturbed-coin symbol sequence");
  double sample_q0 = 0.2, sample_q1 = 0.6;
  std::size_t sample_length = 1000;
  std::uint64_t sample_seed = 1;
  std::optional<std::size_t> sample_start;
  samp->add_option("--q0", sample_q0)->capture_default_str();
  samp->add_option("--q1", sample_q1)->capture_default_str();
  samp->add_option("--length", sample_length)->capture_default_str();
  samp->add_option("--seed", sample_seed)->capture_default_str();
  samp->add_option("--start", sample_start, "Initial state (default: stationary draw)");

  // infer
  auto* infer = app.add_subcommand("infer", "Reconstruct a machine from a symbol sequence");
  std::string infer_input;
  double infer_q0 = 0.2, infer_q1 = 0.6;
  std::size_t infer_length = 1'000'000;
  std::uint64_t infer_seed = 1;
  std::size_t infer_order = 1;
  std::optional<double> infer_tol;
  std::uint64_t infer_min_count = 100;
  infer->add_option("--input", infer_input, "Sequence file (one line of 0/1); omit to sample a coin");
  infer->add_option("--q0", infer_q0)->capture_default_str();
  infer->add_option("--q1", infer_q1)->capture_default_str();
  infer->add_option("--length", infer_length)->capture_default_str();
  infer->add_option("--seed", infer_seed)->capture_default_str();
  infer->add_option("--order", infer_order)->capture_default_str();
  infer->add_option("--min-count", infer_min_count)->capture_default_str();

  for (auto* sub : {coin, cloud, peak, oracle, samp, infer})
    sub->add_option("--out", out_path, "Output path (default: standard output)");
  for (auto* sub : {coin, cloud, peak})
    sub->add_option("--merge-tol", merge_tol)->capture_default_str();
  infer->add_option("--merge-tol", infer_tol, "Merge tolerance (default: scaled to sampling noise)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*coin) {
      coin_spec.merge_tol = merge_tol;
      emit(out_path, cmech::coin_csv(cmech::coin_sweep(coin_spec)));
    } else if (*cloud) {
      cloud_spec.kappas = parse_angles(cloud_kappas);
      cloud_spec.merge_tol = merge_tol;
      emit(out_path, cmech::cloud_csv(cmech::cloud_sweep(cloud_spec)));
    } else if (*peak) {
      const double kappa = cmech::parse_angle(peak_kappa);
      const auto p = cmech::find_peak(peak_g, kappa, peak_tol, merge_tol);
      emit(out_path, "g,kappa,lambda,c_q\n" + fmt12(peak_g) + "," + fmt12(kappa) + "," +
                         fmt12(p.lambda) + "," + fmt12(p.c_q) + "\n");
    } else if (*oracle) {
      if (oracle_lambda_steps < 2) throw UsageError("--lambda-steps must be at least 2");
      cmech::OracleGrid grid;
      grid.lambdas = cmech::Range{0.0, 1.0, oracle_lambda_steps}.points();
      grid.kappas = parse_angles(oracle_kappas);
      grid.gs = oracle_gs;
      const auto r = cmech::oracle_check(grid, oracle_tol, oracle_perturb);
      std::string text;
      text += "rate_points " + std::to_string(r.points) + "\n";
      text += "max_rate_deviation " + fmt12(r.max_rate_deviation) + "\n";
      text += "cnot_points " + std::to_string(r.cnot_points) + "\n";
      text += "max_cnot_deviation " + fmt12(r.max_cnot_deviation) + "\n";
      text += "tolerance " + fmt12(oracle_tol) + "\n";
      text += r.pass ? "PASS\n" : "FAIL\n";
      emit(out_path, text);
      return r.pass ? 0 : kExitFail;
    } else if (*samp) {
      const auto machine = cmech::perturbed_coin_machine({sample_q0, sample_q1});
      auto seq = cmech::sample(machine, sample_start, sample_length, sample_seed);
      emit(out_path, cmech::format_sequence(seq) + "\n");
    } else if (*infer) {
      cmech::SymbolSequence seq;
      if (!infer_input.empty()) {
        seq = cmech::parse_sequence(read_file(infer_input), cmech::Alphabet::binary());
      } else {
        const auto machine = cmech::perturbed_coin_machine({infer_q0, infer_q1});
        seq = cmech::sample(machine, std::nullopt, infer_length, infer_seed);
      }
      const auto result =
          cmech::empirical_complexities(seq, infer_order, {infer_tol, infer_min_count});
      const auto& rec = result.reconstruction;
      std::string text;
      text += "symbols " + std::to_string(seq.symbols.size()) + "\n";
      text += "order " + std::to_string(infer_order) + "\n";
      text += "merge_tol " + fmt12(rec.merge_tol) + "\n";
      text += "states " + std::to_string(rec.machine.num_states()) + "\n";
      for (const auto& [h, s] : rec.state_of)
        text += "history " + cmech::format_history(h, seq.alphabet) + " " + std::to_string(s) + "\n";
      text += "transitions\n" + cmech::to_tensor_listing(rec.machine);
      text += "c_mu " + fmt12(result.c_mu) + "\n";
      text += "c_q " + fmt12(result.c_q) + "\n";
      emit(out_path, text);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cmech::InvalidSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cmech::OutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cmech::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return 0;
}
