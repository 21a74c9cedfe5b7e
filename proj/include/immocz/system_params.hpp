#pragma once

#include <stdexcept>
#include <string>

namespace immocz {

/// Link-level dimensioning shared by every module.
///
/// A message carries `message_bits` bits total; the last `explicit_bits` of
/// them are zero-mapped, the leading `message_bits - explicit_bits` select
/// one of `codebook_count()` phase-rotated codebooks.
struct SystemParams {
  int message_bits = 0;       // N
  int explicit_bits = 0;      // K
  int channel_taps = 0;       // L_ch
  double outer_radius = 0.0;  // R, radius of the outer codebook zeros

  int implicit_bits() const { return message_bits - explicit_bits; }
  int codebook_count() const { return 1 << implicit_bits(); }
  int coefficient_count() const { return explicit_bits + 1; }
  int received_length() const { return explicit_bits + channel_taps; }
  int received_root_count() const { return explicit_bits + channel_taps - 1; }
  double transmit_energy() const {
    return static_cast<double>(message_bits + channel_taps);
  }

  /// Throws std::invalid_argument on any violated constraint.
  void validate() const {
    if (explicit_bits < 1 || explicit_bits > message_bits) {
      throw std::invalid_argument("params: need 1 <= K <= N, got K=" +
                                  std::to_string(explicit_bits) + " N=" +
                                  std::to_string(message_bits));
    }
    if (channel_taps < 1) {
      throw std::invalid_argument("params: need L_ch >= 1");
    }
    if (!(outer_radius > 1.0)) {
      throw std::invalid_argument("params: need R > 1");
    }
    if (implicit_bits() > 24) {
      throw std::invalid_argument(
          "params: N-K > 24 would require more than 2^24 codebooks");
    }
  }
};

}  // namespace immocz
