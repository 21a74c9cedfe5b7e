#pragma once

#include "immocz/polynomial.hpp"
#include "immocz/rng.hpp"
#include "immocz/system_params.hpp"

namespace immocz {

enum class Scheme { kMocz, kImMocz };

/// Eb/N0 accounting for the index-modulated scheme: per-explicit-bit
/// charges the transmit energy to the K zero-mapped bits only; the
/// per-information-bit alternative divides by N for both schemes.
enum class Ebn0Convention { kPerExplicitBit, kPerInformationBit };

/// Expectation: taps are i.i.d. CN(0, 1/L_ch), so E||h||^2 = 1.
/// PerRealization: each draw is rescaled to ||h||^2 = 1 exactly.
enum class ChannelNormalization { kExpectation, kPerRealization };

struct ChannelRealization {
  ComplexVector taps;  // length L_ch
};

struct NoiseSpec {
  double ebn0_db = 0.0;
  double sigma2 = 0.0;  // per-sample complex noise variance N_0
};

/// Draws a flat-power-delay-profile Rayleigh channel.
ChannelRealization sample_channel(const SystemParams& params, RngStream& rng,
                                  ChannelNormalization normalization =
                                      ChannelNormalization::kExpectation);

/// Noiseless received samples: full convolution x * h, length K + L_ch.
ComplexVector convolve(const ComplexVector& x, const ChannelRealization& h);

/// Per-sample complex noise variance for the requested operating point:
/// sigma2 = (N + L_ch) / (D * 10^(ebn0_db/10)), D = N for MOCZ and D = K for
/// IM-MOCZ under the per-explicit-bit convention.
NoiseSpec noise_variance(const SystemParams& params, Scheme scheme, double ebn0_db,
                         Ebn0Convention convention = Ebn0Convention::kPerExplicitBit);

/// Adds i.i.d. circularly symmetric complex Gaussian noise of variance sigma2.
ComplexVector add_awgn(const ComplexVector& y_clean, const NoiseSpec& spec,
                       RngStream& rng);

}  // namespace immocz
