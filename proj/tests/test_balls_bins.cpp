#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pathfree/balls_bins.hpp"

using namespace pathfree;
using namespace pathfree::bins;

namespace {

Rational q_(long a, unsigned long b) { return make_rational(a, b); }

}  // namespace

TEST_CASE("exact expectation examples") {
  CHECK(exact_max_load_expectation({1, 5}) == 5);
  CHECK(exact_max_load_expectation({2, 2}) == q_(3, 2));
  CHECK(exact_max_load_expectation({2, 3}) == q_(9, 4));
  CHECK(exact_max_load_expectation({4, 2}) == q_(5, 4));
  CHECK(w({2, 2}) == q_(3, 4));
  for (std::uint64_t q = 1; q <= 30; ++q) CHECK(w({q, 1}) == 1);
  for (std::uint64_t n = 1; n <= 30; ++n) CHECK(w({1, n}) == 1);
}

TEST_CASE("exact expectation matches enumeration") {
  for (std::uint64_t q = 1; q <= 6; ++q) {
    for (std::uint64_t n = 1; n <= 7; ++n) {
      if (std::pow(double(q), double(n)) > 3e5) continue;
      CAPTURE(q);
      CAPTURE(n);
      REQUIRE(exact_max_load_expectation({q, n}) == oracle::max_load_expectation(q, n));
    }
  }
}

TEST_CASE("cdf is a distribution function") {
  const auto cdf = max_load_cdf({5, 9});
  REQUIRE(cdf.size() == 10);
  CHECK(cdf[0] == 0);
  CHECK(cdf[1] == 0);  // nine balls cannot spread over five bins with load one
  CHECK(cdf[9] == 1);
  for (std::size_t t = 1; t < cdf.size(); ++t) CHECK(cdf[t - 1] <= cdf[t]);
}

TEST_CASE("caps refuse rather than approximate") {
  CHECK_THROWS_AS(exact_max_load_expectation({100, 100}), CapExceeded);
  CHECK_NOTHROW(exact_max_load_expectation({100, 100}, 10'000));
  CHECK_THROWS_AS(exact_max_load_expectation({0, 3}), DomainError);
}

TEST_CASE("solve_x_log_x") {
  CHECK(solve_x_log_x(0.0) == 1.0);
  CHECK(solve_x_log_x(std::exp(1.0)) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  CHECK(solve_x_log_x(2 * std::log(2.0)) == doctest::Approx(2.0).epsilon(1e-12));
  double prev = 1.0;
  for (double c = 0.01; c < 1e6; c *= 1.7) {
    const double x = solve_x_log_x(c);
    CHECK(std::fabs(x * std::log(x) - c) <= 1e-11 * c);
    CHECK(x >= prev);
    prev = x;
  }
  CHECK_THROWS_AS(solve_x_log_x(-1.0), DomainError);
}

TEST_CASE("usable lower bound") {
  // 1 / (120 ln(e/2 + 1))
  CHECK(lower_bound_usable(std::exp(1.0), 1.0) == doctest::Approx(0.0097093).epsilon(1e-4));
  CHECK(Rational(lower_bound_usable(3, 1)) <= w({3, 1}));
  const double b = lower_bound_usable(8, 4);
  CHECK(b > 0.0);
  CHECK(Rational(b) <= w({8, 4}));
  CHECK_THROWS_AS(lower_bound_usable(1.0, 2.0), DomainError);
}

TEST_CASE("unified bound and branch") {
  const UnifiedBound small = lower_bound_unified({4, 4});
  CHECK(small.branch == UnifiedBranch::pigeonhole);
  const UnifiedBound wide = lower_bound_unified({100, 10});
  CHECK(wide.branch == UnifiedBranch::second_moment);
  CHECK(wide.x * std::log(wide.x) == doctest::Approx(100 * std::log(100.0) / 20));
  CHECK(wide.value == doctest::Approx(wide.x * 10 / 1000));
}

TEST_CASE("stats record invariants") {
  for (std::uint64_t q = 1; q <= 10; ++q) {
    for (std::uint64_t n = 1; n <= 10; ++n) {
      const BinsStats s = stats({q, n});
      CHECK(s.expected_max >= std::max(q_(long(n), q), Rational(1)));
      CHECK(s.expected_max <= Rational(n));
      CHECK(s.w > 0);
      CHECK(s.w <= 1);
      CHECK(s.expected_max >= Rational(s.lower_bound_unified));
      CHECK(s.lower_bound_usable.has_value() == (q > 1));
    }
  }
}

TEST_CASE("Monte Carlo estimator") {
  const Rng rng(42);
  const Estimate one = monte_carlo_max_load({1, 5}, 100, rng);
  CHECK(one.mean == 5.0);
  CHECK(one.stderr_ == 0.0);

  const Estimate two = monte_carlo_max_load({2, 2}, 100'000, rng);
  CHECK(std::fabs(two.mean - 1.5) <= 4 * two.stderr_);

  const Estimate ten = monte_carlo_max_load({10, 100}, 10'000, rng);
  const double exact_value = to_double(exact_max_load_expectation({10, 100}));
  CHECK(std::fabs(ten.mean - exact_value) <= 4 * ten.stderr_);

  const Estimate again = monte_carlo_max_load({10, 100}, 10'000, rng);
  CHECK(again.mean == ten.mean);
  CHECK(again.stderr_ == ten.stderr_);
}

TEST_CASE("multinomial maximum") {
  CHECK(multinomial_max_expectation({{1, 0}, 3}) == 3);
  CHECK(multinomial_max_expectation({{q_(1, 2), q_(1, 2)}, 2}) == q_(3, 2));
  CHECK(multinomial_max_expectation({{q_(3, 4), q_(1, 4)}, 2}) == q_(13, 8));
  const std::vector<Rational> p{q_(1, 6), q_(1, 3), q_(1, 2)};
  CHECK(multinomial_max_expectation({p, 5}) == oracle::multinomial_max(p, 5));
  CHECK_THROWS_AS(multinomial_max_expectation({{q_(1, 2), q_(1, 3)}, 2}), DomainError);
  CHECK_THROWS_AS(multinomial_max_expectation({{q_(1, 2), q_(1, 2)}, 30}, 1000), CapExceeded);
}

TEST_CASE("T-transform and majorisation") {
  const std::vector<Rational> p{1, 0};
  CHECK(t_transform(p, 0, 1, 1) == p);
  CHECK(t_transform(p, 0, 1, q_(1, 2)) == std::vector<Rational>{q_(1, 2), q_(1, 2)});
  const std::vector<Rational> p3{q_(1, 2), q_(1, 4), q_(1, 4)};
  CHECK(t_transform(p3, 0, 1, q_(3, 4)) == std::vector<Rational>{q_(7, 16), q_(5, 16), q_(1, 4)});
  CHECK_THROWS_AS(t_transform(p3, 0, 1, q_(5, 4)), DomainError);
  CHECK_THROWS_AS(t_transform(p3, 1, 1, q_(1, 2)), DomainError);

  CHECK(majorised_by({q_(1, 2), q_(1, 2)}, {1, 0}));
  CHECK_FALSE(majorised_by({1, 0}, {q_(1, 2), q_(1, 2)}));
  CHECK(majorised_by(t_transform(p3, 0, 2, q_(1, 3)), p3));
}

TEST_CASE("binomial tails") {
  CHECK(binomial_tail(7, q_(1, 3), 0) == 1);
  CHECK(binomial_tail(4, q_(1, 4), 1) == q_(175, 256));
  CHECK(binomial_tail(2, q_(1, 2), 2) == q_(1, 4));
  CHECK(binomial_tail(2, q_(1, 2), 3) == 0);
  CHECK(two_bin_max_expectation(2, q_(1, 2)) == q_(3, 2));
  CHECK(two_bin_max_expectation(5, 0) == 5);
}

TEST_CASE("two-bin tail indicators") {
  Top2Tail t = joint_top2_tail({4, 4}, 1);
  CHECK(t.single == q_(175, 256));
  CHECK(t.joint == q_(110, 256));
  t = joint_top2_tail({2, 2}, 2);
  CHECK(t.single == q_(1, 4));
  CHECK(t.joint == 0);
  t = joint_top2_tail({2, 1}, 1);
  CHECK(t.single == q_(1, 2));
  CHECK(t.joint == 0);
  CHECK_THROWS_AS(joint_top2_tail({2, 2}, 0), DomainError);
}

TEST_CASE("gamma brackets") {
  GammaBracket b = stirling_gamma_bounds(1.0);
  CHECK(b.lower < 1.0);
  CHECK(b.upper > 1.0);
  CHECK(b.lower == doctest::Approx(0.9958701614628).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(1.0022744491822).epsilon(1e-12));
  b = stirling_gamma_bounds(5.0);
  CHECK(b.lower < 120.0);
  CHECK(b.upper > 120.0);
  b = stirling_gamma_bounds(0.0);
  CHECK(std::isinf(b.upper));
  const GammaBracket g = gautschi_bounds(2.5, 2.0);
  const double ratio = std::tgamma(3.5) / std::tgamma(3.0);
  CHECK(g.lower <= ratio);
  CHECK(ratio <= g.upper);
}
