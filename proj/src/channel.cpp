#include "immocz/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace immocz {

ChannelRealization sample_channel(const SystemParams& params, RngStream& rng,
                                  ChannelNormalization normalization) {
  const int taps = params.channel_taps;
  if (taps < 1) throw std::invalid_argument("sample_channel: need L_ch >= 1");
  ChannelRealization h;
  h.taps.resize(taps);
  const double tap_variance = 1.0 / taps;
  for (int t = 0; t < taps; ++t) {
    h.taps(t) = rng.next_complex_gaussian(tap_variance);
  }
  if (normalization == ChannelNormalization::kPerRealization) {
    const double energy = h.taps.squaredNorm();
    if (energy > 0.0) h.taps /= std::sqrt(energy);
  }
  return h;
}

ComplexVector convolve(const ComplexVector& x, const ChannelRealization& h) {
  return convolve_full(x, h.taps);
}

NoiseSpec noise_variance(const SystemParams& params, Scheme scheme, double ebn0_db,
                         Ebn0Convention convention) {
  if (std::isnan(ebn0_db)) {
    throw std::invalid_argument("noise_variance: Eb/N0 must not be NaN");
  }
  const double divisor = (scheme == Scheme::kImMocz &&
                          convention == Ebn0Convention::kPerExplicitBit)
                             ? params.explicit_bits
                             : params.message_bits;
  const double ebn0_linear = std::pow(10.0, ebn0_db / 10.0);
  NoiseSpec spec;
  spec.ebn0_db = ebn0_db;
  spec.sigma2 = params.transmit_energy() / (divisor * ebn0_linear);
  return spec;
}

ComplexVector add_awgn(const ComplexVector& y_clean, const NoiseSpec& spec,
                       RngStream& rng) {
  if (spec.sigma2 < 0.0) throw std::invalid_argument("add_awgn: sigma2 < 0");
  if (spec.sigma2 == 0.0) return y_clean;
  ComplexVector y = y_clean;
  for (Eigen::Index m = 0; m < y.size(); ++m) {
    y(m) += rng.next_complex_gaussian(spec.sigma2);
  }
  return y;
}

}  // namespace immocz
