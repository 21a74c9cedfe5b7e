#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "immocz/channel.hpp"
#include "immocz/detection.hpp"

namespace immocz {

struct SweepPoint {
  double ebn0_db = 0.0;
  std::int64_t trials = 0;
};

struct SimConfig {
  SystemParams params;
  Scheme scheme = Scheme::kImMocz;
  Detector detector = Detector::kDizet;
  std::vector<SweepPoint> points;
  std::uint64_t master_seed = 1;
  int workers = 1;
  ChannelNormalization channel_normalization = ChannelNormalization::kExpectation;
  Ebn0Convention ebn0_convention = Ebn0Convention::kPerExplicitBit;

  void validate() const;
};

/// Per-trial error bookkeeping. Implicit errors live in the N-K codebook
/// index bits, explicit errors in the K zero-mapped bits.
struct TrialOutcome {
  int bit_errors_total = 0;
  int bit_errors_implicit = 0;
  int bit_errors_explicit = 0;
  int codebook_error = 0;
  int tie_events = 0;
  int empty_sector_events = 0;
  bool root_failure = false;  // degenerate received polynomial, trial not counted
};

struct PointStats {
  double ebn0_db = 0.0;
  std::int64_t trials = 0;
  std::int64_t counted_trials = 0;  // trials minus root failures
  std::int64_t bits = 0;            // N * counted_trials
  std::int64_t bit_errors = 0;
  std::int64_t implicit_errors = 0;
  std::int64_t explicit_errors = 0;
  std::int64_t codebook_errors = 0;
  std::int64_t ties = 0;
  std::int64_t empty_sectors = 0;
  std::int64_t root_failures = 0;
  double ber = 0.0;
  double implicit_ber = 0.0;
  double explicit_ber = 0.0;
  double codebook_error_rate = 0.0;
  double ci95 = 0.0;  // normal-approximation half-width on ber
  bool valid = true;  // root failures within 0.01% of trials
};

struct BerCurve {
  SimConfig config;
  std::vector<PointStats> points;
  bool valid = true;
};

/// One end-to-end trial, fully determined by (master_seed, point_index,
/// trial_index): random message, channel and noise from the trial's private
/// stream, then encode -> convolve -> AWGN -> decode -> bitwise compare.
TrialOutcome run_trial(const SimConfig& config, const CodebookSet& set,
                       int point_index, std::int64_t trial_index);

using ProgressFn = std::function<void(int point_index, const PointStats&)>;

/// Runs every sweep point, distributing trials over config.workers threads.
/// Aggregates are plain sums of per-trial counts, so the result depends only
/// on the master seed, never on worker count or scheduling.
BerCurve run_sweep(const SimConfig& config, const ProgressFn& progress = nullptr);

/// Bits per channel use: N/(N+L_ch) for MOCZ, N/(K+L_ch) for IM-MOCZ.
double spectral_efficiency(const SystemParams& params, Scheme scheme);

/// IM-MOCZ spectral efficiency over the MOCZ baseline, as ratio - 1.
double spectral_efficiency_gain(const SystemParams& params);

}  // namespace immocz
