#pragma once

// Exhaustive and sampled checks of the balls-and-bins inequalities against
// the exact oracles.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pathfree/balls_bins.hpp"

namespace pathfree::bins {

/// Bounds every check's own (q, n) range is clipped to.
struct Grid {
  std::uint64_t q_min = 1;
  std::uint64_t q_max = 24;
  std::uint64_t n_min = 1;
  std::uint64_t n_max = 24;

  bool contains(std::uint64_t q, std::uint64_t n) const {
    return q >= q_min && q <= q_max && n >= n_min && n <= n_max;
  }
};

using ExpectationOracle = std::function<Rational(const BinsQuery&)>;

struct CheckOptions {
  Grid grid;
  std::size_t schur_samples = 500;
  std::uint64_t seed = 0;
  /// E M_{q,n}; replaceable so tests can feed a broken oracle.
  ExpectationOracle oracle;
};

struct CheckResult {
  std::string name;
  std::string statement;
  std::size_t cells = 0;
  std::size_t violations = 0;
  /// Smallest rhs - lhs over all cells (>= 0 when everything holds).
  std::optional<double> min_margin;
  std::optional<std::string> first_violation;
};

struct CheckSummary {
  std::vector<CheckResult> checks;

  std::size_t violations() const;
  std::size_t cells() const;
};

CheckResult check_monotone_n(const CheckOptions& options);
CheckResult check_monotone_q(const CheckOptions& options);
CheckResult check_w_floor(const CheckOptions& options);
CheckResult check_unified(const CheckOptions& options);
CheckResult check_usable(const CheckOptions& options);
CheckResult check_schur(const CheckOptions& options);
CheckResult check_two_bin(const CheckOptions& options);
CheckResult check_covar(const CheckOptions& options);
CheckResult check_bin_com(const CheckOptions& options);
CheckResult check_stirling(const CheckOptions& options);
CheckResult check_gautschi(const CheckOptions& options);

CheckSummary check_all(const CheckOptions& options);

}  // namespace pathfree::bins
