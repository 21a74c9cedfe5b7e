#include "immocz/simulator.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace immocz {

void SimConfig::validate() const {
  params.validate();
  if (scheme == Scheme::kMocz && params.explicit_bits != params.message_bits) {
    throw std::invalid_argument("config: MOCZ requires K == N");
  }
  if (points.empty()) {
    throw std::invalid_argument("config: need at least one Eb/N0 point");
  }
  for (const SweepPoint& point : points) {
    if (!std::isfinite(point.ebn0_db)) {
      throw std::invalid_argument("config: Eb/N0 point must be finite");
    }
    if (point.trials < 1) {
      throw std::invalid_argument("config: every point needs trials >= 1");
    }
  }
  if (workers < 1) {
    throw std::invalid_argument("config: need workers >= 1");
  }
}

TrialOutcome run_trial(const SimConfig& config, const CodebookSet& set,
                       int point_index, std::int64_t trial_index) {
  const SystemParams& p = config.params;
  RngStream rng = RngStream::derive(config.master_seed,
                                    static_cast<std::uint64_t>(point_index),
                                    static_cast<std::uint64_t>(trial_index));

  Message message(p.message_bits);
  for (int b = 0; b < p.message_bits; ++b) {
    message[b] = rng.next_bit() ? 1 : 0;
  }

  const ComplexVector x = encode(message, set);
  const ChannelRealization h =
      sample_channel(p, rng, config.channel_normalization);
  const NoiseSpec noise =
      noise_variance(p, config.scheme, config.points[point_index].ebn0_db,
                     config.ebn0_convention);
  const ComplexVector y = add_awgn(convolve(x, h), noise, rng);

  TrialOutcome outcome;
  DetectionResult result;
  try {
    result = decode(y, set, config.detector, rng);
  } catch (const DegeneratePolynomialError&) {
    outcome.root_failure = true;
    return outcome;
  } catch (const std::domain_error&) {
    outcome.root_failure = true;
    return outcome;
  }

  const int width = p.implicit_bits();
  for (int b = 0; b < p.message_bits; ++b) {
    if (result.message[b] != message[b]) {
      ++outcome.bit_errors_total;
      if (b < width) {
        ++outcome.bit_errors_implicit;
      } else {
        ++outcome.bit_errors_explicit;
      }
    }
  }
  const int true_index =
      bits_to_index(std::span<const std::uint8_t>(message).first(width));
  outcome.codebook_error = result.chosen_index != true_index ? 1 : 0;
  outcome.tie_events = (result.tie_occurred ? 1 : 0) + result.coin_flip_events;
  outcome.empty_sector_events = result.empty_sector_events;
  return outcome;
}

namespace {

struct Accumulator {
  std::int64_t bit_errors = 0;
  std::int64_t implicit_errors = 0;
  std::int64_t explicit_errors = 0;
  std::int64_t codebook_errors = 0;
  std::int64_t ties = 0;
  std::int64_t empty_sectors = 0;
  std::int64_t root_failures = 0;

  void add(const TrialOutcome& t) {
    if (t.root_failure) {
      ++root_failures;
      return;
    }
    bit_errors += t.bit_errors_total;
    implicit_errors += t.bit_errors_implicit;
    explicit_errors += t.bit_errors_explicit;
    codebook_errors += t.codebook_error;
    ties += t.tie_events;
    empty_sectors += t.empty_sector_events;
  }

  void merge(const Accumulator& other) {
    bit_errors += other.bit_errors;
    implicit_errors += other.implicit_errors;
    explicit_errors += other.explicit_errors;
    codebook_errors += other.codebook_errors;
    ties += other.ties;
    empty_sectors += other.empty_sectors;
    root_failures += other.root_failures;
  }
};

PointStats finalize_point(const SimConfig& config, int point_index,
                          const Accumulator& acc) {
  const SystemParams& p = config.params;
  PointStats stats;
  stats.ebn0_db = config.points[point_index].ebn0_db;
  stats.trials = config.points[point_index].trials;
  stats.root_failures = acc.root_failures;
  stats.counted_trials = stats.trials - acc.root_failures;
  stats.bits = stats.counted_trials * p.message_bits;
  stats.bit_errors = acc.bit_errors;
  stats.implicit_errors = acc.implicit_errors;
  stats.explicit_errors = acc.explicit_errors;
  stats.codebook_errors = acc.codebook_errors;
  stats.ties = acc.ties;
  stats.empty_sectors = acc.empty_sectors;
  if (stats.bits > 0) {
    stats.ber = static_cast<double>(acc.bit_errors) / stats.bits;
    stats.ci95 = 1.96 * std::sqrt(stats.ber * (1.0 - stats.ber) / stats.bits);
  }
  if (stats.counted_trials > 0) {
    const int width = p.implicit_bits();
    if (width > 0) {
      stats.implicit_ber = static_cast<double>(acc.implicit_errors) /
                           (static_cast<double>(width) * stats.counted_trials);
    }
    stats.explicit_ber =
        static_cast<double>(acc.explicit_errors) /
        (static_cast<double>(p.explicit_bits) * stats.counted_trials);
    stats.codebook_error_rate =
        static_cast<double>(acc.codebook_errors) / stats.counted_trials;
  }
  // Silent exclusion of failed root-finds would bias the estimate; beyond
  // 0.01% of trials the point is flagged invalid.
  stats.valid = acc.root_failures * 10000 <= stats.trials;
  return stats;
}

}  // namespace

BerCurve run_sweep(const SimConfig& config, const ProgressFn& progress) {
  config.validate();
  const CodebookSet set = build_codebook_set(config.params);

  BerCurve curve;
  curve.config = config;
  curve.points.reserve(config.points.size());

  for (int point_index = 0; point_index < static_cast<int>(config.points.size());
       ++point_index) {
    const std::int64_t trials = config.points[point_index].trials;
    const int workers = config.workers;

    std::vector<Accumulator> partial(workers);
    auto work = [&](int worker) {
      Accumulator& acc = partial[worker];
      for (std::int64_t trial = worker; trial < trials; trial += workers) {
        acc.add(run_trial(config, set, point_index, trial));
      }
    };

    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(workers);
      for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
      for (std::thread& t : threads) t.join();
    }

    Accumulator total;
    for (const Accumulator& acc : partial) total.merge(acc);

    curve.points.push_back(finalize_point(config, point_index, total));
    curve.valid &= curve.points.back().valid;
    if (progress) progress(point_index, curve.points.back());
  }
  return curve;
}

double spectral_efficiency(const SystemParams& params, Scheme scheme) {
  const double n = params.message_bits;
  const double denom = scheme == Scheme::kMocz
                           ? params.message_bits + params.channel_taps
                           : params.explicit_bits + params.channel_taps;
  return n / denom;
}

double spectral_efficiency_gain(const SystemParams& params) {
  return spectral_efficiency(params, Scheme::kImMocz) /
             spectral_efficiency(params, Scheme::kMocz) -
         1.0;
}

}  // namespace immocz
