#pragma once

#include <vector>

#include "immocz/codebook.hpp"
#include "immocz/rng.hpp"

namespace immocz {

enum class Detector { kRfmd, kDizet };

/// DiZeT penalties are defined as magnitude products over the received
/// roots; the evaluation route computes the same quantity as |Y(z)| divided
/// by the leading coefficient magnitude and exists for cross-checking.
enum class DizetRoute { kRootProduct, kEvaluate };

/// Roots of the received polynomial plus the leading-coefficient magnitude
/// needed to relate root products to direct evaluation.
struct RootSet {
  ComplexVector roots;            // M = K + L_ch - 1, canonical order
  double leading_magnitude = 0.0;
};

/// Factors the received polynomial via the balanced companion matrix.
/// Throws DegeneratePolynomialError when the leading coefficient underflows.
RootSet find_roots(const ComplexVector& y);

/// 0-based index of the codebook sector whose outer-zero angle is nearest to
/// arg(z); angular-distance ties go to the lowest sector index.
/// Throws std::domain_error for z == 0 (undefined angle).
int sector_of(Complex z, const Codebook& book);

/// Outcome of one detector block for one (codebook, sector) cell.
struct SectorDecision {
  PairMember member = PairMember::kInner;
  Complex zero;           // the selected pair member's value
  double penalty = 0.0;
  bool used_fallback = false;  // RFMD sector was empty; min taken over all roots
  bool coin_flip = false;      // DiZeT exact tie resolved by RNG
};

/// RFMD block for one codebook: per sector, the smallest Euclidean distance
/// between a received root in that sector and either pair member.
std::vector<SectorDecision> rfmd_detect(const RootSet& roots, const Codebook& book);
std::vector<SectorDecision> rfmd_detect(const ComplexVector& y, const Codebook& book);

struct DizetPenalties {
  double outer = 0.0;  // |prod_m (a - r_m)|
  double inner = 0.0;  // R^M |prod_m (a^{-1} - r_m)|
};

/// Product-over-roots penalties for one pair; the R^M factor compensates the
/// inner point sitting closer to every root on average.
DizetPenalties dizet_penalties(const RootSet& roots, const ZeroPair& pair,
                               double outer_radius);

/// Evaluation route: identical quantities computed by Horner evaluation of y.
DizetPenalties dizet_penalties_eval(const ComplexVector& y, const ZeroPair& pair,
                                    double outer_radius);

/// DiZeT block for one codebook: per sector, min of inner/outer penalties;
/// exact ties pick the (penalty, zero) pair with one coin flip from rng.
std::vector<SectorDecision> dizet_detect(const RootSet& roots, const Codebook& book,
                                         RngStream& rng);
std::vector<SectorDecision> dizet_detect(const ComplexVector& y, const Codebook& book,
                                         RngStream& rng);

/// Penalty matrix P and detected-zero matrix A-hat over all candidate
/// codebooks, with receiver diagnostics.
struct DetectionMatrices {
  Eigen::MatrixXd penalties;  // 2^(N-K) x K
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> members;  // 1 = outer
  Eigen::MatrixXcd detected_zeros;
  int detector_invocations = 0;  // one per candidate codebook
  int empty_sector_events = 0;
  int coin_flip_events = 0;

  std::vector<PairMember> member_row(int book_index_1based) const;
};

/// Runs the selected detector once per candidate codebook, sharing a single
/// root-finding pass (the evaluation DiZeT route needs none at all).
DetectionMatrices build_matrices(const RootSet& roots, const CodebookSet& set,
                                 Detector detector, RngStream& rng);
DetectionMatrices build_matrices(const ComplexVector& y, const CodebookSet& set,
                                 Detector detector, RngStream& rng,
                                 DizetRoute route = DizetRoute::kRootProduct);

struct VoteResult {
  int chosen_index = 0;             // 1-based winning codebook
  std::vector<int> votes;           // per codebook, sums to K
  std::vector<int> sector_winners;  // per sector, 1-based argmin codebook
  bool tie_occurred = false;        // final vote needed the random tie-break
};

/// Each sector votes for its minimum-penalty codebook (column argmin, ties to
/// the lowest index); the codebook with most votes wins, final ties resolved
/// uniformly at random.
VoteResult majority_vote(const Eigen::MatrixXd& penalties, RngStream& rng);

struct DetectionResult {
  int chosen_index = 0;
  std::vector<int> votes;
  bool tie_occurred = false;
  Message message;                  // N recovered bits, b_1 first
  std::vector<int> sector_winners;
  int detector_invocations = 0;
  int empty_sector_events = 0;
  int coin_flip_events = 0;
};

/// Full receiver: matrices -> majority vote -> implicit bits from the index,
/// explicit bits demapped from the winning row of A-hat.
DetectionResult decode(const ComplexVector& y, const CodebookSet& set,
                       Detector detector, RngStream& rng,
                       DizetRoute route = DizetRoute::kRootProduct);
DetectionResult decode_from_roots(const RootSet& roots, const CodebookSet& set,
                                  Detector detector, RngStream& rng);

}  // namespace immocz
