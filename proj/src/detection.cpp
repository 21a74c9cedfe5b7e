#include "immocz/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <stdexcept>

namespace immocz {

namespace {

double angular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * std::numbers::pi);
  return std::min(d, 2.0 * std::numbers::pi - d);
}

double outer_radius_of(const Codebook& book) {
  return std::abs(book.pairs.front().outer);
}

SectorDecision pick_rfmd(const std::vector<Complex>& candidates, const ZeroPair& pair) {
  SectorDecision decision;
  double best = std::numeric_limits<double>::infinity();
  for (const Complex& root : candidates) {
    const double d_outer = std::abs(root - pair.outer);
    const double d_inner = std::abs(root - pair.inner);
    if (d_outer < best) {
      best = d_outer;
      decision.member = PairMember::kOuter;
      decision.zero = pair.outer;
    }
    if (d_inner < best) {
      best = d_inner;
      decision.member = PairMember::kInner;
      decision.zero = pair.inner;
    }
  }
  decision.penalty = best;
  return decision;
}

SectorDecision pick_dizet(const DizetPenalties& p, const ZeroPair& pair,
                          RngStream& rng) {
  SectorDecision decision;
  if (p.outer < p.inner) {
    decision.member = PairMember::kOuter;
  } else if (p.inner < p.outer) {
    decision.member = PairMember::kInner;
  } else {
    decision.member = rng.next_bit() ? PairMember::kOuter : PairMember::kInner;
    decision.coin_flip = true;
  }
  decision.zero = decision.member == PairMember::kOuter ? pair.outer : pair.inner;
  decision.penalty = std::min(p.outer, p.inner);
  return decision;
}

}  // namespace

RootSet find_roots(const ComplexVector& y) {
  RootSet set;
  set.roots = find_polynomial_roots(y);
  set.leading_magnitude = std::abs(y(y.size() - 1));
  return set;
}

int sector_of(Complex z, const Codebook& book) {
  if (z == Complex(0.0, 0.0)) {
    throw std::domain_error("sector_of: zero has undefined angle");
  }
  const double angle = std::arg(z);
  int best_sector = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < book.pairs.size(); ++k) {
    const double d = angular_distance(angle, std::arg(book.pairs[k].outer));
    if (d < best) {
      best = d;
      best_sector = static_cast<int>(k);
    }
  }
  return best_sector;
}

std::vector<SectorDecision> rfmd_detect(const RootSet& roots, const Codebook& book) {
  const int sectors = static_cast<int>(book.pairs.size());
  std::vector<std::vector<Complex>> by_sector(sectors);
  for (Eigen::Index m = 0; m < roots.roots.size(); ++m) {
    by_sector[sector_of(roots.roots(m), book)].push_back(roots.roots(m));
  }
  std::vector<Complex> all_roots(roots.roots.begin(), roots.roots.end());

  std::vector<SectorDecision> row(sectors);
  for (int k = 0; k < sectors; ++k) {
    if (by_sector[k].empty()) {
      row[k] = pick_rfmd(all_roots, book.pairs[k]);
      row[k].used_fallback = true;
    } else {
      row[k] = pick_rfmd(by_sector[k], book.pairs[k]);
    }
  }
  return row;
}

std::vector<SectorDecision> rfmd_detect(const ComplexVector& y, const Codebook& book) {
  return rfmd_detect(find_roots(y), book);
}

DizetPenalties dizet_penalties(const RootSet& roots, const ZeroPair& pair,
                               double outer_radius) {
  double outer_product = 1.0;
  double inner_product = 1.0;
  for (Eigen::Index m = 0; m < roots.roots.size(); ++m) {
    outer_product *= std::abs(pair.outer - roots.roots(m));
    inner_product *= std::abs(pair.inner - roots.roots(m));
  }
  DizetPenalties p;
  p.outer = outer_product;
  p.inner = std::pow(outer_radius, static_cast<int>(roots.roots.size())) * inner_product;
  return p;
}

DizetPenalties dizet_penalties_eval(const ComplexVector& y, const ZeroPair& pair,
                                    double outer_radius) {
  const int degree = static_cast<int>(y.size()) - 1;
  const double lead = std::abs(y(y.size() - 1));
  if (lead == 0.0) {
    throw DegeneratePolynomialError("dizet_penalties_eval: zero leading coefficient");
  }
  DizetPenalties p;
  p.outer = std::abs(polyval(y, pair.outer)) / lead;
  p.inner = std::pow(outer_radius, degree) * std::abs(polyval(y, pair.inner)) / lead;
  return p;
}

std::vector<SectorDecision> dizet_detect(const RootSet& roots, const Codebook& book,
                                         RngStream& rng) {
  const double radius = outer_radius_of(book);
  std::vector<SectorDecision> row(book.pairs.size());
  for (std::size_t k = 0; k < book.pairs.size(); ++k) {
    row[k] = pick_dizet(dizet_penalties(roots, book.pairs[k], radius),
                        book.pairs[k], rng);
  }
  return row;
}

std::vector<SectorDecision> dizet_detect(const ComplexVector& y, const Codebook& book,
                                         RngStream& rng) {
  return dizet_detect(find_roots(y), book, rng);
}

std::vector<PairMember> DetectionMatrices::member_row(int book_index_1based) const {
  std::vector<PairMember> row(members.cols());
  for (Eigen::Index k = 0; k < members.cols(); ++k) {
    row[k] = members(book_index_1based - 1, k) ? PairMember::kOuter
                                               : PairMember::kInner;
  }
  return row;
}

namespace {

template <typename Block>
DetectionMatrices run_detector_blocks(const CodebookSet& set, Block&& block) {
  const int books = static_cast<int>(set.books.size());
  const int sectors = set.params.explicit_bits;
  DetectionMatrices out;
  out.penalties.resize(books, sectors);
  out.members.resize(books, sectors);
  out.detected_zeros.resize(books, sectors);
  for (int i = 0; i < books; ++i) {
    const std::vector<SectorDecision> row = block(set.books[i]);
    ++out.detector_invocations;
    for (int k = 0; k < sectors; ++k) {
      out.penalties(i, k) = row[k].penalty;
      out.members(i, k) = row[k].member == PairMember::kOuter ? 1 : 0;
      out.detected_zeros(i, k) = row[k].zero;
      out.empty_sector_events += row[k].used_fallback ? 1 : 0;
      out.coin_flip_events += row[k].coin_flip ? 1 : 0;
    }
  }
  return out;
}

}  // namespace

DetectionMatrices build_matrices(const RootSet& roots, const CodebookSet& set,
                                 Detector detector, RngStream& rng) {
  if (detector == Detector::kRfmd) {
    return run_detector_blocks(
        set, [&](const Codebook& book) { return rfmd_detect(roots, book); });
  }
  return run_detector_blocks(
      set, [&](const Codebook& book) { return dizet_detect(roots, book, rng); });
}

DetectionMatrices build_matrices(const ComplexVector& y, const CodebookSet& set,
                                 Detector detector, RngStream& rng, DizetRoute route) {
  if (detector == Detector::kDizet && route == DizetRoute::kEvaluate) {
    return run_detector_blocks(set, [&](const Codebook& book) {
      const double radius = outer_radius_of(book);
      std::vector<SectorDecision> row(book.pairs.size());
      for (std::size_t k = 0; k < book.pairs.size(); ++k) {
        row[k] = pick_dizet(dizet_penalties_eval(y, book.pairs[k], radius),
                            book.pairs[k], rng);
      }
      return row;
    });
  }
  return build_matrices(find_roots(y), set, detector, rng);
}

VoteResult majority_vote(const Eigen::MatrixXd& penalties, RngStream& rng) {
  const int books = static_cast<int>(penalties.rows());
  const int sectors = static_cast<int>(penalties.cols());
  VoteResult result;
  result.votes.assign(books, 0);
  result.sector_winners.resize(sectors);
  for (int k = 0; k < sectors; ++k) {
    // Column argmin; ties deterministically to the lowest codebook index.
    int winner = 0;
    for (int i = 1; i < books; ++i) {
      if (penalties(i, k) < penalties(winner, k)) winner = i;
    }
    result.sector_winners[k] = winner + 1;
    ++result.votes[winner];
  }

  const int max_votes = *std::max_element(result.votes.begin(), result.votes.end());
  std::vector<int> tied;
  for (int i = 0; i < books; ++i) {
    if (result.votes[i] == max_votes) tied.push_back(i + 1);
  }
  if (tied.size() == 1) {
    result.chosen_index = tied.front();
  } else {
    result.tie_occurred = true;
    result.chosen_index = tied[rng.next_index(tied.size())];
  }
  return result;
}

namespace {

DetectionResult assemble_result(const DetectionMatrices& matrices,
                                const CodebookSet& set, RngStream& rng) {
  const VoteResult vote = majority_vote(matrices.penalties, rng);

  DetectionResult result;
  result.chosen_index = vote.chosen_index;
  result.votes = vote.votes;
  result.sector_winners = vote.sector_winners;
  result.tie_occurred = vote.tie_occurred;
  result.detector_invocations = matrices.detector_invocations;
  result.empty_sector_events = matrices.empty_sector_events;
  result.coin_flip_events = matrices.coin_flip_events;

  result.message = index_to_bits(vote.chosen_index, set.params.implicit_bits());
  const std::vector<PairMember> row = matrices.member_row(vote.chosen_index);
  const std::vector<std::uint8_t> explicit_bits =
      demap_zeros_to_bits(row, set.books[vote.chosen_index - 1]);
  result.message.insert(result.message.end(), explicit_bits.begin(),
                        explicit_bits.end());
  return result;
}

}  // namespace

DetectionResult decode(const ComplexVector& y, const CodebookSet& set,
                       Detector detector, RngStream& rng, DizetRoute route) {
  return assemble_result(build_matrices(y, set, detector, rng, route), set, rng);
}

DetectionResult decode_from_roots(const RootSet& roots, const CodebookSet& set,
                                  Detector detector, RngStream& rng) {
  return assemble_result(build_matrices(roots, set, detector, rng), set, rng);
}

}  // namespace immocz
