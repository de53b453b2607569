#include "pathfree/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pathfree/rng.hpp"

namespace pathfree::bins {

namespace {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

class Recorder {
 public:
  Recorder(std::string name, std::string statement) {
    result_.name = std::move(name);
    result_.statement = std::move(statement);
  }

  /// Records one cell where lhs <= rhs is expected.
  template <class Describe>
  void expect_le(const Rational& lhs, const Rational& rhs, Describe describe) {
    record(lhs <= rhs, to_double(rhs - lhs), describe);
  }

  template <class Describe>
  void record(bool holds, double margin, Describe describe) {
    ++result_.cells;
    if (!result_.min_margin || margin < *result_.min_margin) result_.min_margin = margin;
    if (!holds) {
      ++result_.violations;
      if (!result_.first_violation) result_.first_violation = describe();
    }
  }

  CheckResult take() { return std::move(result_); }

 private:
  CheckResult result_;
};

class CachedOracle {
 public:
  explicit CachedOracle(const CheckOptions& options) : oracle_(options.oracle) {}

  const Rational& expectation(std::uint64_t q, std::uint64_t n) {
    auto [it, fresh] = cache_.try_emplace({q, n});
    if (fresh) {
      const BinsQuery query{q, n};
      it->second = oracle_ ? oracle_(query) : exact_max_load_expectation(query);
    }
    return it->second;
  }

  Rational w(std::uint64_t q, std::uint64_t n) { return expectation(q, n) / Rational(n); }

 private:
  ExpectationOracle oracle_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Rational> cache_;
};

std::string cell(std::uint64_t q, std::uint64_t n) {
  return "q=" + std::to_string(q) + " n=" + std::to_string(n);
}

std::string show(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

HighPrecision gamma_hp(double x) { return boost::math::tgamma(HighPrecision(x)); }

}  // namespace

std::size_t CheckSummary::violations() const {
  std::size_t total = 0;
  for (const auto& c : checks) total += c.violations;
  return total;
}

std::size_t CheckSummary::cells() const {
  std::size_t total = 0;
  for (const auto& c : checks) total += c.cells;
  return total;
}

CheckResult check_monotone_n(const CheckOptions& options) {
  Recorder rec("mono_n", "W(q,n) <= W(q,n-1) for 1 <= q <= 11, 2 <= n <= 12");
  CachedOracle oracle(options);
  for (std::uint64_t q = 1; q <= 11; ++q) {
    for (std::uint64_t n = 2; n <= 12; ++n) {
      if (!options.grid.contains(q, n)) continue;
      rec.expect_le(oracle.w(q, n), oracle.w(q, n - 1), [&] { return cell(q, n); });
    }
  }
  return rec.take();
}

CheckResult check_monotone_q(const CheckOptions& options) {
  Recorder rec("mono_q", "E M_{q+1,n} <= E M_{q,n} for 1 <= q <= 11, 1 <= n <= 12");
  CachedOracle oracle(options);
  for (std::uint64_t q = 1; q <= 11; ++q) {
    for (std::uint64_t n = 1; n <= 12; ++n) {
      if (!options.grid.contains(q, n)) continue;
      rec.expect_le(oracle.expectation(q + 1, n), oracle.expectation(q, n), [&] { return cell(q, n); });
    }
  }
  return rec.take();
}

CheckResult check_w_floor(const CheckOptions& options) {
  Recorder rec("w_floor", "W(q,n) >= max(1/q, 1/n) for 1 <= q, n <= 24");
  CachedOracle oracle(options);
  for (std::uint64_t q = 1; q <= 24; ++q) {
    for (std::uint64_t n = 1; n <= 24; ++n) {
      if (!options.grid.contains(q, n)) continue;
      const Rational floor_value = Rational(1, std::min(q, n));
      rec.expect_le(floor_value, oracle.w(q, n), [&] { return cell(q, n); });
    }
  }
  return rec.take();
}

CheckResult check_unified(const CheckOptions& options) {
  Recorder rec("ballsunified", "E M_{q,n} >= x n / (10 q), x ln x = q ln q / (2n), for 2 <= q, n <= 24");
  CachedOracle oracle(options);
  for (std::uint64_t q = 2; q <= 24; ++q) {
    for (std::uint64_t n = 1; n <= 24; ++n) {
      if (!options.grid.contains(q, n)) continue;
      const UnifiedBound bound = lower_bound_unified({q, n});
      rec.expect_le(exact(round_up(bound.value)), oracle.expectation(q, n),
                    [&] { return cell(q, n) + " branch=" + to_string(bound.branch); });
    }
  }
  return rec.take();
}

CheckResult check_usable(const CheckOptions& options) {
  Recorder rec("balls_bins_properties",
               "W(q,n) >= ln q0 / (120 n0 ln(q0 ln q0 / (2 n0) + 1)) for 2 <= q <= q0 <= 16, 1 <= n <= n0 <= 16, "
               "q0 and n0 in steps of 1/2");
  CachedOracle oracle(options);
  for (std::uint64_t q = 2; q <= 16; ++q) {
    for (std::uint64_t n = 1; n <= 16; ++n) {
      if (!options.grid.contains(q, n)) continue;
      const Rational w_exact = oracle.w(q, n);
      for (double q0 = static_cast<double>(q); q0 <= 16.0; q0 += 0.5) {
        for (double n0 = static_cast<double>(n); n0 <= 16.0; n0 += 0.5) {
          const double bound = lower_bound_usable(q0, n0);
          rec.expect_le(exact(round_up(bound)), w_exact,
                        [&] { return cell(q, n) + " q0=" + show(q0) + " n0=" + show(n0); });
        }
      }
    }
  }
  return rec.take();
}

CheckResult check_schur(const CheckOptions& options) {
  Recorder rec("schur", "M(T p) <= M(p) for random p on <= 4 bins, n <= 6, and T-transforms T");
  const std::uint64_t bins_lo = std::max<std::uint64_t>(2, options.grid.q_min);
  const std::uint64_t bins_hi = std::min<std::uint64_t>(4, options.grid.q_max);
  const std::uint64_t n_lo = std::max<std::uint64_t>(1, options.grid.n_min);
  const std::uint64_t n_hi = std::min<std::uint64_t>(6, options.grid.n_max);
  if (bins_lo > bins_hi || n_lo > n_hi) return rec.take();
  const Rng root(options.seed ^ 0x5C5C5C5CULL);
  for (std::size_t sample = 0; sample < options.schur_samples; ++sample) {
    Rng rng = root.derive(sample);
    const std::size_t bins = bins_lo + rng.uniform_below(bins_hi - bins_lo + 1);
    const std::uint64_t n = n_lo + rng.uniform_below(n_hi - n_lo + 1);
    std::vector<unsigned long> weights(bins);
    unsigned long total = 0;
    while (total == 0) {
      total = 0;
      for (auto& x : weights) total += (x = rng.uniform_below(13));
    }
    std::vector<Rational> p;
    for (auto x : weights) p.push_back(Rational(x, total));
    for (auto& x : p) x.canonicalize();
    const std::size_t i = rng.uniform_below(bins);
    std::size_t j = rng.uniform_below(bins - 1);
    if (j >= i) ++j;
    const Rational lambda(static_cast<unsigned long>(rng.uniform_below(9)), 8UL);
    const std::vector<Rational> moved = t_transform(p, i, j, Rational(lambda));
    const Rational before = multinomial_max_expectation({p, n});
    const Rational after = multinomial_max_expectation({moved, n});
    const bool majorised = majorised_by(moved, p);
    rec.record(majorised && after <= before, to_double(before - after), [&] {
      std::string s = "n=" + std::to_string(n) + " p=(";
      for (std::size_t b = 0; b < bins; ++b) s += std::string(b ? "," : "") + pathfree::to_string(p[b]);
      return s + ") i=" + std::to_string(i) + " j=" + std::to_string(j) + " lambda=" + pathfree::to_string(lambda);
    });
  }
  return rec.take();
}

CheckResult check_two_bin(const CheckOptions& options) {
  Recorder rec("two_bin", "E max(X_p, n-X_p) >= E max(X_p', n-X_p') for 0 <= p < p' <= 1/2 (step 1/20), n <= 10");
  for (std::uint64_t n = std::max<std::uint64_t>(1, options.grid.n_min); n <= std::min<std::uint64_t>(10, options.grid.n_max);
       ++n) {
    std::vector<Rational> values;
    for (unsigned long a = 0; a <= 10; ++a) values.push_back(two_bin_max_expectation(n, Rational(a, 20UL)));
    for (unsigned long a = 0; a <= 10; ++a) {
      for (unsigned long b = a + 1; b <= 10; ++b) {
        rec.expect_le(values[b], values[a], [&] {
          return "n=" + std::to_string(n) + " p=" + std::to_string(a) + "/20 p'=" + std::to_string(b) + "/20";
        });
      }
    }
  }
  return rec.take();
}

CheckResult check_covar(const CheckOptions& options) {
  Recorder rec("covar", "P(bins 1,2 >= t) <= exp(n/q^2 + 1/q) P(bin 1 >= t)^2 for 4 <= q <= 8, q <= n <= 16");
  for (std::uint64_t q = 4; q <= 8; ++q) {
    for (std::uint64_t n = q; n <= 16; ++n) {
      if (!options.grid.contains(q, n)) continue;
      const double qd = static_cast<double>(q);
      const Rational factor = exact(round_up(std::exp(static_cast<double>(n) / (qd * qd) + 1.0 / qd)));
      for (std::uint64_t t = (n + q - 1) / q; t <= n; ++t) {
        const Top2Tail tail = joint_top2_tail({q, n}, t);
        rec.expect_le(tail.joint, factor * tail.single * tail.single,
                      [&] { return cell(q, n) + " t=" + std::to_string(t); });
      }
    }
  }
  return rec.take();
}

CheckResult check_bin_com(const CheckOptions& options) {
  Recorder rec("bin_com",
               "P(Bin(floor(n(1-p)), p/(1-p)) >= t) <= exp(p^2 n + p) P(Bin(n,p) >= t) for p <= 1/4 (step 1/20), "
               "n <= 16");
  for (std::uint64_t n = std::max<std::uint64_t>(1, options.grid.n_min); n <= std::min<std::uint64_t>(16, options.grid.n_max);
       ++n) {
    for (unsigned long a = 0; a <= 5; ++a) {
      const Rational p(a, 20UL);
      const Rational shrunk_p = p / (1 - p);
      const std::uint64_t shrunk_n = floor(Rational(n) * (1 - p)).get_ui();
      const double pd = to_double(p);
      const Rational factor = exact(round_up(std::exp(pd * pd * static_cast<double>(n) + pd)));
      for (std::uint64_t t = 1; t <= n; ++t) {
        rec.expect_le(binomial_tail(shrunk_n, shrunk_p, t), factor * binomial_tail(n, p, t), [&] {
          return "n=" + std::to_string(n) + " p=" + std::to_string(a) + "/20 t=" + std::to_string(t);
        });
      }
    }
  }
  return rec.take();
}

CheckResult check_stirling(const CheckOptions&) {
  Recorder rec("stirling", "Stirling bracket of Gamma(x+1) for x = 0.1, 0.2, ..., 10");
  for (int i = 1; i <= 100; ++i) {
    const double x = i / 10.0;
    const GammaBracket b = stirling_gamma_bounds(x);
    const HighPrecision g = gamma_hp(x + 1.0);
    const HighPrecision lo(round_down(b.lower));
    const HighPrecision hi(round_up(b.upper));
    const bool holds = lo <= g && g <= hi;
    const double margin = std::min(static_cast<double>(g - lo), static_cast<double>(hi - g));
    rec.record(holds, margin, [&] { return "x=" + show(x); });
  }
  return rec.take();
}

CheckResult check_gautschi(const CheckOptions&) {
  Recorder rec("gautschi", "x^(x-y) <= Gamma(x+1)/Gamma(y+1) <= (x+1)^(x-y) for x = 0.1..10, y = x - 0.1..x - 0.9");
  for (int i = 1; i <= 100; ++i) {
    const double x = i / 10.0;
    for (int j = 1; j <= 9; ++j) {
      const double y = x - j / 10.0;
      const GammaBracket b = gautschi_bounds(x, y);
      const HighPrecision ratio = gamma_hp(x + 1.0) / gamma_hp(y + 1.0);
      const HighPrecision lo(round_down(b.lower));
      const HighPrecision hi(round_up(b.upper));
      const bool holds = lo <= ratio && ratio <= hi;
      const double margin = std::min(static_cast<double>(ratio - lo), static_cast<double>(hi - ratio));
      rec.record(holds, margin, [&] { return "x=" + show(x) + " y=" + show(y); });
    }
  }
  return rec.take();
}

CheckSummary check_all(const CheckOptions& options) {
  CheckSummary s;
  s.checks.push_back(check_monotone_n(options));
  s.checks.push_back(check_monotone_q(options));
  s.checks.push_back(check_w_floor(options));
  s.checks.push_back(check_unified(options));
  s.checks.push_back(check_usable(options));
  s.checks.push_back(check_schur(options));
  s.checks.push_back(check_two_bin(options));
  s.checks.push_back(check_covar(options));
  s.checks.push_back(check_bin_com(options));
  s.checks.push_back(check_stirling(options));
  s.checks.push_back(check_gautschi(options));
  return s;
}

}  // namespace pathfree::bins
