#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "thetarec/certified_real.hpp"
#include "thetarec/cf.hpp"
#include "thetarec/quad.hpp"

namespace thetarec {

// Verdict of one audited claim.  `indeterminate` means the enclosures were
// too wide to decide; it is never folded into `pass`.  `skipped` marks a
// claim whose hypotheses could not be certified, which is not a failure.
enum class ClaimStatus { pass, fail, indeterminate, skipped };

const char* to_string(ClaimStatus s);

struct ClaimRecord {
  std::string id;
  std::vector<std::size_t> levels;          // levels actually certified
  std::vector<std::size_t> skipped_levels;  // hypothesis gate unmet/undecided
  ClaimStatus status = ClaimStatus::skipped;
  // Certified distance to the failing side over all comparisons performed:
  // for a pass this is a positive lower bound, for a fail a negative upper
  // bound.  Meaningless (and false) when nothing was compared.
  bool has_margin = false;
  double worst_margin = 0.0;
  std::string detail;
};

struct AuditReport {
  std::string title;
  std::vector<ClaimRecord> claims;

  // fail dominates, then indeterminate, then pass; skipped only when every
  // claim was skipped.
  ClaimStatus verdict() const;
  // True when no claim failed and none was left undecided.
  bool passed() const;
  std::string json(int indent = 2) const;
};

// Products of consecutive scaling ratios stay certifiably below 1: the pair
// (delta_n^{a_{n+1}-1}, delta_n^{a_{n+1}}) when a_{n+1} > 1, the pair
// (delta_{n+1}^{a_{n+2}}, delta_n^1) when a_{n+1} = 1, and the per-level
// Poincare-length system 1/(1-x^2) <= ((1+y)/(1-y))^2 whose correction
// term vanishes for maps of non-positive Schwarzian derivative.
// Requires data certified to n_max >= 4.
AuditReport audit_apriori(const ScalingData& sd);

// Finite trend surrogates for the asymptotic laws: the ratios
// delta_n^i / alpha_n^{2^i} (0 < i < a_{n+1}) approach 1, the recursion
// ratio [alpha_{n+1}^{2^{a_{n+2}}} alpha_n] / [2^{-a_{n+1}}
// alpha_n^{2^{a_{n+1}}} alpha_{n-1}] brackets 1 and narrows, alpha_n is
// strictly decreasing from n = 3 on, and log alpha_n fits a negative slope.
// Requires data certified to n_max >= 6.
AuditReport audit_asymptotics(const ScalingData& sd);

// Inequalities built from K_n := 1 + C alpha_n, checked at every level
// whose hypotheses (alpha_n < 1/2, K_{n-1} < sqrt(2), K_n < 2) are
// certified: square-root bounds, the two-sided (K_{n-1}^2 K_n)^(2^k - 1)
// band around alpha_n^{2^k}, the one-step bound on alpha_n^2 lambda_n, the
// decrease bound on alpha_n^{2^{a_{n+1}}} alpha_{n-1} (which additionally
// needs alpha_{n+1} < 1/2 and K_{n+1} < sqrt(2)), and the two-sided
// derivative estimate.  Levels with unmet hypotheses are reported skipped.
// When a certified violation occurs, the smallest C > 4 that repairs the
// level (if any on a 1/8 grid up to 64) is reported.
// Requires c_choice > 4 and data certified to n_max >= 5.
AuditReport audit_k_bounds(const ScalingData& sd,
                           const mpq_class& c_choice = mpq_class(5));

// One row of the epsilon-measure table: the sums S_n(eps) = sum over the
// level-n intervals of |interval|^eps, one entry per grid epsilon.  When
// some interval length could not be certified positive the row is marked
// undecided and its sums are not meaningful.
struct MeasureRow {
  std::size_t n = 0;
  bool decided = true;
  std::vector<CertifiedReal> S;
};

// Trend verdict for one epsilon: whether S_n(eps) strictly decreases over
// the deepest `span` certified levels.
struct EpsTrend {
  mpq_class eps;
  std::size_t from_level = 0, to_level = 0;
  ClaimStatus status = ClaimStatus::skipped;
  bool has_margin = false;
  double worst_margin = 0.0;
};

struct MeasureTable {
  std::size_t n_max = 0;
  std::vector<mpq_class> eps;
  std::vector<MeasureRow> rows;    // levels 1..n_max
  std::vector<EpsTrend> trends;    // one per eps, deepest `span` levels
  std::size_t span = 0;            // trend window length
  // Least grid epsilon whose decreasing trend is certified.
  std::optional<mpq_class> dim_upper;
  // Least-squares slope of log S_n(1) over all levels; geometric decay
  // holds when the slope is certifiably negative.
  ClaimStatus s1_geometric = ClaimStatus::skipped;
  double s1_fit_ratio = 0.0;  // midpoint of e^{slope}
  std::string json(int indent = 2) const;
  // True when the geometric-decay fit for S_n(1) is certified and some grid
  // epsilon certifies a decreasing trend (failing trends at smaller epsilon
  // are expected data, not audit failures).
  bool passed() const;
};

std::vector<mpq_class> default_eps_grid();

// Attaches coordinates from a certified orbit (x_0, x_1, ...) to the
// symbolic interval families of every level n <= n_max and tabulates the
// epsilon-measures.  The orbit must be long enough to cover the deepest
// level's endpoints (throws std::invalid_argument with the needed length
// otherwise); an interval whose length enclosure overlaps zero makes the
// affected rows and trends indeterminate.
MeasureTable hausdorff_measure(const std::vector<CertifiedReal>& orbit,
                               const ContinuedFraction& cf, std::size_t n_max,
                               const std::vector<mpq_class>& eps_grid =
                                   default_eps_grid());

}  // namespace thetarec
