#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "immocz/polynomial.hpp"
#include "immocz/system_params.hpp"

namespace immocz {

/// Conjugate-reciprocal zero pair: inner = 1/conj(outer), so both share the
/// same phase and the radii are R and 1/R.
struct ZeroPair {
  Complex outer;
  Complex inner;
};

enum class PairMember : std::uint8_t { kInner = 0, kOuter = 1 };

/// One candidate codebook: the base zero grid rotated by theta.
struct Codebook {
  int index = 0;     // 1-based codebook index i
  double theta = 0;  // phase offset applied to the base codebook
  std::vector<ZeroPair> pairs;  // K pairs, ascending outer-zero angle

  Complex member(int sector, PairMember m) const {
    return m == PairMember::kOuter ? pairs[sector].outer : pairs[sector].inner;
  }
};

struct CodebookSet {
  SystemParams params;
  std::vector<Codebook> books;  // 2^(N-K) books, books[i].index == i+1
};

/// Message bits, b_1 first. Implicit codebook-selection bits come first,
/// the K zero-mapped bits last.
using Message = std::vector<std::uint8_t>;

/// Builds the full phase-rotated codebook set. Book 1 places outer zeros at
/// R*exp(j*2*pi*(k-1)/K); book i applies the offset
/// theta_i = 2*pi*(i-1)/(K*2^(N-K)).
CodebookSet build_codebook_set(const SystemParams& params);

/// Binary expansion of index-1, MSB first, exactly `width` bits.
std::vector<std::uint8_t> index_to_bits(int index, int width);

/// Inverse of index_to_bits: MSB-first bits -> 1-based codebook index.
int bits_to_index(std::span<const std::uint8_t> bits);

/// Maps the K explicit bits onto zeros: bit 1 -> outer, bit 0 -> inner.
std::vector<Complex> select_zeros(std::span<const std::uint8_t> explicit_bits,
                                  const Codebook& book);

/// Monic transmit polynomial for the selected zeros, ascending powers,
/// built by iterated first-order factor convolution. Not yet normalized.
ComplexVector zeros_to_coefficients(std::span<const Complex> zeros);

/// Scales x so that sum |x_m|^2 == N + L_ch. Zeros are unchanged.
ComplexVector normalize_energy(const ComplexVector& x, const SystemParams& params);

/// Full transmit chain: implicit bits pick the codebook, explicit bits pick
/// the zeros, expansion and energy normalization produce the K+1 samples.
ComplexVector encode(const Message& message, const CodebookSet& set);

/// Inverse of select_zeros on detected pair members: outer -> 1, inner -> 0.
std::vector<std::uint8_t> demap_zeros_to_bits(std::span<const PairMember> row,
                                              const Codebook& book);

}  // namespace immocz
