#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "immocz/reference_vectors.hpp"
#include "immocz/sim_io.hpp"
#include "immocz/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitVectorMismatch = 2;
constexpr int kExitIo = 3;

struct SimulateArgs {
  std::string config_path;
  std::string preset;
  std::string output = "sweep.csv";
  std::int64_t trials_override = 0;
  std::uint64_t seed = 1;
  bool seed_given = false;
  int workers = 0;
  bool plot = false;
};

std::string bits_to_string(const immocz::Message& bits) {
  std::string s;
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

int run_simulate(const SimulateArgs& args) {
  using namespace immocz;
  if (args.config_path.empty() == args.preset.empty()) {
    std::cerr << "simulate: pass exactly one of --config or --preset\n";
    return kExitValidation;
  }

  std::vector<SimConfig> runs;
  if (!args.preset.empty()) {
    runs = preset_runs(args.preset, args.seed, args.workers > 0 ? args.workers : 1);
  } else {
    runs.push_back(load_sim_config(args.config_path));
  }
  for (SimConfig& config : runs) {
    if (args.seed_given) config.master_seed = args.seed;
    if (args.workers > 0) config.workers = args.workers;
    if (args.trials_override > 0) {
      for (SweepPoint& point : config.points) point.trials = args.trials_override;
    }
  }

  std::string csv = csv_header();
  bool all_valid = true;
  for (const SimConfig& config : runs) {
    std::cerr << "sweep: " << to_string(config.scheme) << " "
              << to_string(config.detector) << " N=" << config.params.message_bits
              << " K=" << config.params.explicit_bits << "\n";
    const auto t0 = std::chrono::steady_clock::now();
    const BerCurve curve = run_sweep(config, [&](int index, const PointStats& s) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      std::fprintf(stderr,
                   "  point %d/%d  Eb/N0=%g dB  trials=%lld  ber=%.3e  (%.1fs)\n",
                   index + 1, static_cast<int>(config.points.size()), s.ebn0_db,
                   static_cast<long long>(s.trials), s.ber, elapsed);
    });
    all_valid &= curve.valid;
    csv += csv_rows(curve);
  }

  write_file_atomic(args.output, csv);
  std::cout << "wrote " << args.output << "\n";
  if (args.plot) {
    const std::string script_path = args.output + ".plot.py";
    write_file_atomic(script_path, plot_script_for(args.output));
    std::cout << "wrote " << script_path << "\n";
  }
  if (!all_valid) {
    std::cerr << "simulate: root-finding failures exceeded 0.01% of trials; "
                 "sweep marked invalid\n";
    return kExitValidation;
  }
  return kExitOk;
}

int run_vectors() {
  using namespace immocz;
  const ReferenceScenario& scenario = reference_scenario();
  const ReferenceRecomputation computed = recompute_reference_matrices();

  auto print_deltas = [](const char* name, const Eigen::MatrixXd& got,
                         const Eigen::MatrixXd& want) {
    std::printf("%s (computed | delta vs stored):\n", name);
    for (Eigen::Index i = 0; i < got.rows(); ++i) {
      std::printf(" ");
      for (Eigen::Index k = 0; k < got.cols(); ++k) {
        std::printf(" %8.4f", got(i, k));
      }
      std::printf("   |");
      for (Eigen::Index k = 0; k < got.cols(); ++k) {
        std::printf(" %+.1e", got(i, k) - want(i, k));
      }
      std::printf("\n");
    }
  };
  print_deltas("P_RFMD", computed.rfmd_penalties, scenario.rfmd_penalties);
  print_deltas("P_DiZeT", computed.dizet_penalties, scenario.dizet_penalties);

  const VectorReport report = run_reference_checks();
  for (const CheckLine& line : report.lines) {
    std::printf("%-18s max_delta=%.2e tolerance=%.2e %s%s\n", line.name.c_str(),
                line.max_delta, line.tolerance, line.pass ? "PASS" : "FAIL",
                line.detail.c_str());
  }
  RngStream rng(7u);
  const CodebookSet set = build_codebook_set(reference_scenario().params);
  const DetectionResult result =
      decode(reference_received_signal(), set, Detector::kRfmd, rng);
  std::printf("decoded message: %s\n", bits_to_string(result.message).c_str());
  std::printf("%s\n", report.pass ? "PASS" : "FAIL");
  return report.pass ? kExitOk : kExitVectorMismatch;
}

int run_codebook(int n, int k, double r) {
  using namespace immocz;
  SystemParams params;
  params.message_bits = n;
  params.explicit_bits = k;
  params.channel_taps = 1;  // irrelevant to zero locations
  params.outer_radius = r;
  const CodebookSet set = build_codebook_set(params);
  std::cout << format_codebook_dump(set);
  return kExitOk;
}

int run_decode(const std::string& file, int n, int k, int l_ch, double r,
               const std::string& detector_token, std::uint64_t seed) {
  using namespace immocz;
  SystemParams params;
  params.message_bits = n;
  params.explicit_bits = k;
  params.channel_taps = l_ch;
  params.outer_radius = r;
  params.validate();
  const Detector detector = parse_detector(detector_token);
  const ComplexVector y = read_signal_file(file, params.received_length());
  const CodebookSet set = build_codebook_set(params);
  RngStream rng(seed);
  const DetectionResult result = decode(y, set, detector, rng);

  std::printf("chosen_index: %d\n", result.chosen_index);
  std::printf("votes:");
  for (int v : result.votes) std::printf(" %d", v);
  std::printf("\n");
  std::printf("message: %s\n", bits_to_string(result.message).c_str());
  std::printf("per_sector_winners:");
  for (int w : result.sector_winners) std::printf(" %d", w);
  std::printf("\n");
  std::printf("tie_occurred: %s\n", result.tie_occurred ? "yes" : "no");
  std::printf("detector_invocations: %d\n", result.detector_invocations);
  std::printf("empty_sector_events: %d\n", result.empty_sector_events);
  return kExitOk;
}

int run_se_table(int n, int l_ch, const std::vector<int>& k_values) {
  using namespace immocz;
  SystemParams base;
  base.message_bits = n;
  base.explicit_bits = n;
  base.channel_taps = l_ch;
  base.outer_radius = 1.1974;
  base.validate();
  const double mocz_se = spectral_efficiency(base, Scheme::kMocz);
  std::printf("N=%d L_ch=%d MOCZ SE=%.6g bits/sec/Hz\n", n, l_ch, mocz_se);
  std::printf("%4s %12s %10s\n", "K", "SE", "gain");
  for (int k : k_values) {
    SystemParams params = base;
    params.explicit_bits = k;
    params.validate();
    const double se = spectral_efficiency(params, Scheme::kImMocz);
    const double gain = spectral_efficiency_gain(params);
    std::printf("%4d %12.6g %9.2f%%\n", k, se, 100.0 * gain);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IM-MOCZ link-level simulator"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "run a Monte Carlo BER sweep");
  simulate->add_option("--config", sim.config_path, "key=value sweep config file");
  simulate->add_option("--preset", sim.preset, "built-in parameter set");
  simulate->add_option("--output", sim.output, "CSV output path");
  simulate->add_option("--trials", sim.trials_override, "override trials per point");
  simulate->add_option("--seed", sim.seed, "master seed")
      ->each([&](const std::string&) { sim.seed_given = true; });
  simulate->add_option("--workers", sim.workers, "worker thread count");
  simulate->add_flag("--plot", sim.plot, "emit a companion plot script");

  CLI::App* vectors =
      app.add_subcommand("vectors", "check detectors against reference vectors");

  int cb_n = 0, cb_k = 0;
  double cb_r = 1.1974;
  CLI::App* codebook = app.add_subcommand("codebook", "dump all codebook zeros");
  codebook->add_option("--n", cb_n, "total message bits N")->required();
  codebook->add_option("--k", cb_k, "explicit bits K")->required();
  codebook->add_option("--r", cb_r, "outer zero radius R");

  std::string dec_file, dec_detector = "rfmd";
  int dec_n = 0, dec_k = 0, dec_l = 0;
  double dec_r = 1.1974;
  std::uint64_t dec_seed = 1;
  CLI::App* decode_cmd =
      app.add_subcommand("decode", "decode one received signal file");
  decode_cmd->add_option("--file", dec_file, "signal file, one 're im' per line")
      ->required();
  decode_cmd->add_option("--n", dec_n, "total message bits N")->required();
  decode_cmd->add_option("--k", dec_k, "explicit bits K")->required();
  decode_cmd->add_option("--lch", dec_l, "channel taps L_ch")->required();
  decode_cmd->add_option("--r", dec_r, "outer zero radius R");
  decode_cmd->add_option("--detector", dec_detector, "rfmd or dizet");
  decode_cmd->add_option("--seed", dec_seed, "tie-break seed");

  int se_n = 0, se_l = 0;
  std::vector<int> se_k;
  CLI::App* se_table =
      app.add_subcommand("se-table", "spectral efficiency and gain per K");
  se_table->add_option("--n", se_n, "total message bits N")->required();
  se_table->add_option("--lch", se_l, "channel taps L_ch")->required();
  se_table->add_option("--k", se_k, "K values")->required()->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*vectors) return run_vectors();
    if (*codebook) return run_codebook(cb_n, cb_k, cb_r);
    if (*decode_cmd) {
      return run_decode(dec_file, dec_n, dec_k, dec_l, dec_r, dec_detector,
                        dec_seed);
    }
    if (*se_table) return run_se_table(se_n, se_l, se_k);
  } catch (const immocz::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
