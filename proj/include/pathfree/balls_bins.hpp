#pragma once

// Maximum load of n balls thrown uniformly into q bins.
//
// M_{q,n} is the load of the fullest bin and W(q,n) = E M_{q,n} / n. The
// exact routines work in arbitrary-precision rationals; logarithms are
// natural throughout.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pathfree/rational.hpp"
#include "pathfree/rng.hpp"

namespace pathfree::bins {

/// A request exceeded a configured enumeration or DP cap. Callers are
/// expected to fall back to Monte Carlo rather than approximate silently.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct BinsQuery {
  std::uint64_t q = 1;  // bins
  std::uint64_t n = 1;  // balls
};

inline constexpr std::uint64_t kDefaultExactCap = 4096;            // q * n
inline constexpr std::uint64_t kDefaultMultinomialCap = 10'000'000;  // support^n

/// P(M_{q,n} <= t) for every t in [0, n], exactly.
std::vector<Rational> max_load_cdf(const BinsQuery& query, std::uint64_t cap = kDefaultExactCap);

/// E M_{q,n}, exactly: n - sum_{t<n} P(M <= t), where each P(M <= t) is a
/// coefficient of a power of a truncated exponential series.
Rational exact_max_load_expectation(const BinsQuery& query, std::uint64_t cap = kDefaultExactCap);

/// W(q,n) = E M_{q,n} / n.
Rational w(const BinsQuery& query, std::uint64_t cap = kDefaultExactCap);

/// The x >= 1 with x ln x = c, to relative tolerance 1e-12.
double solve_x_log_x(double c);

/// Which argument gives E M_{q,n} >= x n / (10 q).
enum class UnifiedBranch {
  pigeonhole,     // q <= 24 or q ln q <= 2n: the n/q floor already suffices
  second_moment,  // q >= 25 and q ln q > 2n: Paley-Zygmund on bins with >= floor(xn/q) balls
};

std::string to_string(UnifiedBranch b);

struct UnifiedBound {
  double x = 1.0;
  double value = 0.0;  // x n / (10 q)
  UnifiedBranch branch = UnifiedBranch::pigeonhole;
};

/// x n / (10 q) with x = solve_x_log_x(q ln q / (2n)).
UnifiedBound lower_bound_unified(const BinsQuery& query);

/// ln q0 / (120 n0 ln(q0 ln q0 / (2 n0) + 1)), a lower bound on W(q, n) for
/// all q <= q0 and n <= n0. q0 must exceed 1.
double lower_bound_usable(double q0, double n0);

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Sample mean and standard error of M_{q,n}. Trial i draws from
/// rng.derive(i), so the result does not depend on evaluation order.
Estimate monte_carlo_max_load(const BinsQuery& query, std::uint64_t trials, const Rng& rng);

struct BinsStats {
  BinsQuery query;
  Rational expected_max;
  Rational w;
  double x_solution = 1.0;
  double lower_bound_unified = 0.0;
  UnifiedBranch branch = UnifiedBranch::pigeonhole;
  std::optional<double> lower_bound_usable;  // absent for q = 1
};

BinsStats stats(const BinsQuery& query, std::uint64_t cap = kDefaultExactCap);

/// Probability vector with exactly rational entries summing to 1.
struct MultinomialSpec {
  std::vector<Rational> probabilities;
  std::uint64_t n = 1;
};

/// E max_i X_i for X ~ Mult(n; p), by enumerating compositions of n over the
/// support of p. Refuses when support^n exceeds `cap`.
Rational multinomial_max_expectation(const MultinomialSpec& spec, std::uint64_t cap = kDefaultMultinomialCap);

/// Replaces p_i, p_j by lambda p_i + (1 - lambda) p_j and
/// lambda p_j + (1 - lambda) p_i.
std::vector<Rational> t_transform(const std::vector<Rational>& p, std::size_t i, std::size_t j,
                                  const Rational& lambda);

/// True iff p is majorised by p2 (sorted prefix sums of p never exceed
/// those of p2, equal totals).
bool majorised_by(std::vector<Rational> p, std::vector<Rational> p2);

/// P(Bin(n, p) >= t), exactly. t > n gives 0.
Rational binomial_tail(std::uint64_t n, const Rational& p, std::uint64_t t);

/// E max(X, n - X) for X ~ Bin(n, p), exactly.
Rational two_bin_max_expectation(std::uint64_t n, const Rational& p);

struct Top2Tail {
  Rational single;  // P(bin 1 >= t)
  Rational joint;   // P(bin 1 >= t and bin 2 >= t)
};

/// Tail indicators of two fixed bins, by conditioning on the load of bin 1.
Top2Tail joint_top2_tail(const BinsQuery& query, std::uint64_t t);

struct GammaBracket {
  double lower = 0.0;
  double upper = 0.0;
};

/// sqrt(2 pi) x^(x+1/2) e^(-x + 1/(12x+1)) and the same with 1/(12x); the
/// upper bound is +inf at x = 0.
GammaBracket stirling_gamma_bounds(double x);

/// x^(x-y) and (x+1)^(x-y), bracketing Gamma(x+1)/Gamma(y+1) for
/// x - 1 < y < x.
GammaBracket gautschi_bounds(double x, double y);

}  // namespace pathfree::bins
