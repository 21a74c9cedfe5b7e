#include "immocz/codebook.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace immocz {

CodebookSet build_codebook_set(const SystemParams& params) {
  params.validate();
  const int K = params.explicit_bits;
  const int count = params.codebook_count();
  const double R = params.outer_radius;

  CodebookSet set;
  set.params = params;
  set.books.reserve(count);
  for (int i = 1; i <= count; ++i) {
    Codebook book;
    book.index = i;
    book.theta = 2.0 * std::numbers::pi * (i - 1) / (static_cast<double>(K) * count);
    book.pairs.reserve(K);
    for (int k = 0; k < K; ++k) {
      const double angle = 2.0 * std::numbers::pi * k / K + book.theta;
      const Complex outer = std::polar(R, angle);
      // inner = 1/conj(outer): same phase, radius 1/R
      const Complex inner = outer / std::norm(outer);
      book.pairs.push_back({outer, inner});
    }
    set.books.push_back(std::move(book));
  }
  return set;
}

std::vector<std::uint8_t> index_to_bits(int index, int width) {
  if (width < 0 || width > 24) {
    throw std::invalid_argument("index_to_bits: width out of range");
  }
  if (index < 1 || index > (1 << width)) {
    throw std::out_of_range("index_to_bits: index out of range");
  }
  std::vector<std::uint8_t> bits(width);
  const unsigned value = static_cast<unsigned>(index - 1);
  for (int b = 0; b < width; ++b) {
    bits[b] = static_cast<std::uint8_t>((value >> (width - 1 - b)) & 1u);
  }
  return bits;
}

int bits_to_index(std::span<const std::uint8_t> bits) {
  if (bits.size() > 24) {
    throw std::invalid_argument("bits_to_index: width out of range");
  }
  unsigned value = 0;
  for (std::uint8_t b : bits) {
    if (b > 1) throw std::invalid_argument("bits_to_index: non-binary element");
    value = (value << 1) | b;
  }
  return static_cast<int>(value) + 1;
}

std::vector<Complex> select_zeros(std::span<const std::uint8_t> explicit_bits,
                                  const Codebook& book) {
  if (explicit_bits.size() != book.pairs.size()) {
    throw std::invalid_argument("select_zeros: expected exactly K bits");
  }
  std::vector<Complex> zeros(book.pairs.size());
  for (std::size_t k = 0; k < book.pairs.size(); ++k) {
    zeros[k] = explicit_bits[k] ? book.pairs[k].outer : book.pairs[k].inner;
  }
  return zeros;
}

ComplexVector zeros_to_coefficients(std::span<const Complex> zeros) {
  ComplexVector roots(static_cast<Eigen::Index>(zeros.size()));
  for (std::size_t k = 0; k < zeros.size(); ++k) roots(static_cast<Eigen::Index>(k)) = zeros[k];
  return polynomial_from_roots(roots);
}

ComplexVector normalize_energy(const ComplexVector& x, const SystemParams& params) {
  const double energy = x.squaredNorm();
  if (energy == 0.0) {
    throw std::invalid_argument("normalize_energy: all-zero coefficient vector");
  }
  const double scale = std::sqrt(params.transmit_energy() / energy);
  if (scale == 1.0) return x;
  return scale * x;
}

ComplexVector encode(const Message& message, const CodebookSet& set) {
  const SystemParams& p = set.params;
  if (static_cast<int>(message.size()) != p.message_bits) {
    throw std::invalid_argument("encode: message must hold exactly N bits");
  }
  const int width = p.implicit_bits();
  const std::span<const std::uint8_t> all(message);
  const int index = bits_to_index(all.first(width));
  const Codebook& book = set.books[index - 1];
  const std::vector<Complex> zeros = select_zeros(all.subspan(width), book);
  return normalize_energy(zeros_to_coefficients(zeros), p);
}

std::vector<std::uint8_t> demap_zeros_to_bits(std::span<const PairMember> row,
                                              const Codebook& book) {
  if (row.size() != book.pairs.size()) {
    throw std::invalid_argument("demap_zeros_to_bits: expected K entries");
  }
  std::vector<std::uint8_t> bits(row.size());
  for (std::size_t k = 0; k < row.size(); ++k) {
    bits[k] = row[k] == PairMember::kOuter ? 1 : 0;
  }
  return bits;
}

}  // namespace immocz
