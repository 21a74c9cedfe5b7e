#include "immocz/reference_vectors.hpp"

#include <cmath>
#include <sstream>

namespace immocz {

namespace {

ReferenceScenario make_scenario() {
  ReferenceScenario s;
  s.params = SystemParams{5, 3, 3, 1.1974};

  s.received_roots.resize(5);
  s.received_roots << Complex(0.9336, 0.1417), Complex(0.5958, 1.3146),
      Complex(-0.2978, 0.3378), Complex(-0.7922, 0.0098),
      Complex(0.3106, -0.6452);

  s.rfmd_penalties.resize(4, 3);
  s.rfmd_penalties << 0.1726, 0.4036, 0.7323,
                      0.3469, 0.4135, 0.3640,
                      0.2777, 0.0441, 0.1324,
                      0.5797, 0.4330, 0.4713;

  s.dizet_penalties.resize(4, 3);
  s.dizet_penalties << 0.9080, 2.1420, 5.7866,
                       1.4178, 1.7503, 3.7863,
                       0.8905, 0.3120, 1.2152,
                       2.0768, 3.7242, 2.4081;

  // 1 marks an outer-zero decision.
  s.rfmd_members.resize(4, 3);
  s.rfmd_members << 0, 0, 0,
                    0, 0, 0,
                    1, 0, 0,
                    0, 0, 0;

  s.dizet_members.resize(4, 3);
  s.dizet_members << 0, 0, 0,
                     0, 0, 0,
                     1, 0, 0,
                     1, 0, 0;

  s.rfmd_cell_2_1 = 0.3469;
  s.dizet_outer_1_1 = 1.448;
  s.dizet_inner_1_1 = 0.9080;

  s.expected_votes = {1, 0, 2, 0};
  s.expected_index = 3;
  s.expected_message = {1, 0, 1, 0, 0};
  return s;
}

RootSet scenario_roots(const ReferenceScenario& s) {
  RootSet roots;
  roots.roots = s.received_roots;
  sort_roots_canonical(&roots.roots);
  roots.leading_magnitude = 1.0;  // scenario roots define a monic polynomial
  return roots;
}

// The stored expectations are printed to 4 decimals, and the roots they were
// derived from are themselves rounded to 4 decimals. Distances inherit that
// rounding directly; M-factor products amplify it in proportion to the
// entry's magnitude, hence the max(1, |expected|) scaling.
double matrix_tolerance(double expected) {
  return 5e-4 * std::max(1.0, std::abs(expected));
}

void check_matrix(VectorReport* report, const std::string& name,
                  const Eigen::MatrixXd& computed, const Eigen::MatrixXd& expected) {
  CheckLine line;
  line.name = name;
  line.pass = true;
  std::ostringstream bad;
  for (Eigen::Index i = 0; i < expected.rows(); ++i) {
    for (Eigen::Index k = 0; k < expected.cols(); ++k) {
      const double delta = std::abs(computed(i, k) - expected(i, k));
      line.max_delta = std::max(line.max_delta, delta);
      line.tolerance = std::max(line.tolerance, matrix_tolerance(expected(i, k)));
      if (delta > matrix_tolerance(expected(i, k))) {
        line.pass = false;
        bad << " (" << i + 1 << "," << k + 1 << ") computed=" << computed(i, k)
            << " expected=" << expected(i, k);
      }
    }
  }
  line.detail = bad.str();
  report->pass &= line.pass;
  report->lines.push_back(std::move(line));
}

void check_members(
    VectorReport* report, const std::string& name,
    const Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>& computed,
    const Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>& expected) {
  CheckLine line;
  line.name = name;
  line.pass = true;
  std::ostringstream bad;
  for (Eigen::Index i = 0; i < expected.rows(); ++i) {
    for (Eigen::Index k = 0; k < expected.cols(); ++k) {
      if (computed(i, k) != expected(i, k)) {
        line.pass = false;
        line.max_delta = 1.0;
        bad << " (" << i + 1 << "," << k + 1 << ")";
      }
    }
  }
  line.detail = bad.str();
  report->pass &= line.pass;
  report->lines.push_back(std::move(line));
}

void check_scalar(VectorReport* report, const std::string& name, double computed,
                  double expected, double tolerance) {
  CheckLine line;
  line.name = name;
  line.max_delta = std::abs(computed - expected);
  line.tolerance = tolerance;
  line.pass = line.max_delta <= tolerance;
  if (!line.pass) {
    std::ostringstream bad;
    bad << " computed=" << computed << " expected=" << expected;
    line.detail = bad.str();
  }
  report->pass &= line.pass;
  report->lines.push_back(std::move(line));
}

void check_flag(VectorReport* report, const std::string& name, bool ok,
                const std::string& detail_on_fail) {
  CheckLine line;
  line.name = name;
  line.pass = ok;
  line.max_delta = ok ? 0.0 : 1.0;
  if (!ok) line.detail = " " + detail_on_fail;
  report->pass &= ok;
  report->lines.push_back(std::move(line));
}

}  // namespace

const ReferenceScenario& reference_scenario() {
  static const ReferenceScenario scenario = make_scenario();
  return scenario;
}

ComplexVector reference_received_signal() {
  return polynomial_from_roots(reference_scenario().received_roots);
}

ReferenceRecomputation recompute_reference_matrices() {
  const ReferenceScenario& s = reference_scenario();
  const CodebookSet set = build_codebook_set(s.params);
  const RootSet roots = scenario_roots(s);
  RngStream rng(1u);
  ReferenceRecomputation out;
  out.rfmd_penalties = build_matrices(roots, set, Detector::kRfmd, rng).penalties;
  out.dizet_penalties = build_matrices(roots, set, Detector::kDizet, rng).penalties;
  return out;
}

VectorReport run_reference_checks() { return run_reference_checks(reference_scenario()); }

VectorReport run_reference_checks(const ReferenceScenario& s) {
  const CodebookSet set = build_codebook_set(s.params);
  const RootSet roots = scenario_roots(s);

  VectorReport report;

  RngStream rng(1u);
  const DetectionMatrices rfmd = build_matrices(roots, set, Detector::kRfmd, rng);
  const DetectionMatrices dizet = build_matrices(roots, set, Detector::kDizet, rng);

  check_matrix(&report, "P_RFMD", rfmd.penalties, s.rfmd_penalties);
  check_members(&report, "A_RFMD pattern", rfmd.members, s.rfmd_members);
  check_matrix(&report, "P_DiZeT", dizet.penalties, s.dizet_penalties);
  check_members(&report, "A_DiZeT pattern", dizet.members, s.dizet_members);

  check_scalar(&report, "RFMD cell (2,1)", rfmd.penalties(1, 0), s.rfmd_cell_2_1,
               5e-4);
  const DizetPenalties pair11 =
      dizet_penalties(roots, set.books[0].pairs[0], s.params.outer_radius);
  check_scalar(&report, "DiZeT outer (1,1)", pair11.outer, s.dizet_outer_1_1, 1e-3);
  check_scalar(&report, "DiZeT inner (1,1)", pair11.inner, s.dizet_inner_1_1, 5e-4);

  // Majority vote on the stored penalty matrix reproduces the tally and the
  // winning codebook; the decode from the computed matrices recovers the
  // reference message.
  RngStream vote_rng(2u);
  const VoteResult vote = majority_vote(s.rfmd_penalties, vote_rng);
  check_flag(&report, "vote tally",
             vote.votes == s.expected_votes && !vote.tie_occurred,
             "unexpected tally");
  check_flag(&report, "vote winner", vote.chosen_index == s.expected_index,
             "wrong codebook index");

  RngStream decode_rng(3u);
  const DetectionResult rfmd_result =
      decode_from_roots(roots, set, Detector::kRfmd, decode_rng);
  check_flag(&report, "RFMD decode", rfmd_result.message == s.expected_message,
             "wrong message");
  const DetectionResult dizet_result =
      decode_from_roots(roots, set, Detector::kDizet, decode_rng);
  check_flag(&report, "DiZeT decode",
             dizet_result.message == s.expected_message &&
                 dizet_result.chosen_index == s.expected_index,
             "wrong message or index");

  return report;
}

}  // namespace immocz
