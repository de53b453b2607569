#include "pathfree/balls_bins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pathfree::bins {

namespace {

void check_query(const BinsQuery& query) {
  if (query.q < 1 || query.n < 1) throw DomainError("balls-and-bins query needs q >= 1 and n >= 1");
}

void check_probability(const Rational& p) {
  if (p < 0 || p > 1) throw DomainError("probability " + p.get_str() + " outside [0, 1]");
}

Integer factorial(std::uint64_t n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Integer binomial(std::uint64_t n, std::uint64_t k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

// Sequences a_0..a_n of labelled-ball counts, stored scaled by n!/m! so that
// the binomial convolution becomes a plain convolution followed by an exact
// division by n!.
using Scaled = std::vector<Integer>;

Scaled scaled_multiply(const Scaled& a, const Scaled& b, const Integer& n_factorial) {
  const std::size_t len = a.size();
  Scaled out(len);
  Integer acc;
  for (std::size_t m = 0; m < len; ++m) {
    acc = 0;
    for (std::size_t j = 0; j <= m; ++j) {
      if (a[j] == 0 || b[m - j] == 0) continue;
      mpz_addmul(acc.get_mpz_t(), a[j].get_mpz_t(), b[m - j].get_mpz_t());
    }
    mpz_divexact(out[m].get_mpz_t(), acc.get_mpz_t(), n_factorial.get_mpz_t());
  }
  return out;
}

// Number of maps [n] -> [q] with every fibre of size <= t.
Integer bounded_assignments(std::uint64_t q, std::uint64_t n, std::uint64_t t, const Integer& n_factorial) {
  Scaled base(n + 1, 0);
  for (std::uint64_t j = 0; j <= std::min(t, n); ++j) {
    mpz_divexact(base[j].get_mpz_t(), n_factorial.get_mpz_t(), factorial(j).get_mpz_t());
  }
  Scaled result(n + 1, 0);
  result[0] = n_factorial;
  std::uint64_t e = q;
  while (e > 0) {
    if (e & 1U) result = scaled_multiply(result, base, n_factorial);
    e >>= 1U;
    if (e > 0) base = scaled_multiply(base, base, n_factorial);
  }
  return result[n];
}

}  // namespace

std::vector<Rational> max_load_cdf(const BinsQuery& query, std::uint64_t cap) {
  check_query(query);
  const std::uint64_t q = query.q;
  const std::uint64_t n = query.n;
  if (q > cap / n || q * n > cap) {
    throw CapExceeded("exact max-load DP refused: q*n = " + std::to_string(q) + "*" + std::to_string(n) +
                      " exceeds cap " + std::to_string(cap) + "; use monte_carlo_max_load");
  }
  const Integer n_factorial = factorial(n);
  Integer total;
  mpz_ui_pow_ui(total.get_mpz_t(), q, n);

  std::vector<Rational> cdf(n + 1, Rational(0));
  const std::uint64_t min_max = (n + q - 1) / q;  // pigeonhole
  for (std::uint64_t t = min_max; t < n; ++t) {
    cdf[t] = Rational(bounded_assignments(q, n, t, n_factorial), total);
    cdf[t].canonicalize();
  }
  cdf[n] = 1;
  return cdf;
}

Rational exact_max_load_expectation(const BinsQuery& query, std::uint64_t cap) {
  const auto cdf = max_load_cdf(query, cap);
  Rational expected(static_cast<unsigned long>(query.n));
  for (std::uint64_t t = 0; t < query.n; ++t) expected -= cdf[t];
  return expected;
}

Rational w(const BinsQuery& query, std::uint64_t cap) {
  Rational out = exact_max_load_expectation(query, cap) / Rational(static_cast<unsigned long>(query.n));
  out.canonicalize();
  return out;
}

double solve_x_log_x(double c) {
  if (!(c >= 0.0)) throw DomainError("solve_x_log_x needs c >= 0");
  if (c == 0.0) return 1.0;
  auto f = [c](double x) { return x * std::log(x) - c; };
  double lo = 1.0;
  double hi = std::max(2.0, c + 2.0);
  for (int i = 0; i < 200 && (hi - lo) > 1e-3 * lo; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 50; ++i) {
    const double step = f(x) / (std::log(x) + 1.0);
    double next = x - step;
    if (next < lo || next > hi) next = 0.5 * (lo + hi);
    (f(next) < 0.0 ? lo : hi) = next;
    if (std::abs(next - x) <= 1e-15 * x) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

std::string to_string(UnifiedBranch b) {
  return b == UnifiedBranch::pigeonhole ? "pigeonhole" : "second_moment";
}

UnifiedBound lower_bound_unified(const BinsQuery& query) {
  check_query(query);
  const double q = static_cast<double>(query.q);
  const double n = static_cast<double>(query.n);
  UnifiedBound out;
  out.x = solve_x_log_x(q * std::log(q) / (2.0 * n));
  out.value = out.x * n / (10.0 * q);
  out.branch = (query.q <= 24 || q * std::log(q) <= 2.0 * n) ? UnifiedBranch::pigeonhole
                                                               : UnifiedBranch::second_moment;
  return out;
}

double lower_bound_usable(double q0, double n0) {
  if (!(q0 > 1.0)) throw DomainError("lower_bound_usable needs q0 > 1");
  if (!(n0 > 0.0)) throw DomainError("lower_bound_usable needs n0 > 0");
  const double lq = std::log(q0);
  return lq / (120.0 * n0 * std::log(q0 * lq / (2.0 * n0) + 1.0));
}

Estimate monte_carlo_max_load(const BinsQuery& query, std::uint64_t trials, const Rng& rng) {
  check_query(query);
  if (trials < 1) throw DomainError("monte_carlo_max_load needs at least one trial");
  std::vector<std::uint64_t> load(query.q);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng trial = rng.derive(i);
    std::fill(load.begin(), load.end(), 0);
    std::uint64_t best = 0;
    for (std::uint64_t ball = 0; ball < query.n; ++ball) {
      best = std::max(best, ++load[trial.uniform_below(query.q)]);
    }
    const auto m = static_cast<double>(best);
    sum += m;
    sum_sq += m * m;
  }
  const auto t = static_cast<double>(trials);
  Estimate out;
  out.mean = sum / t;
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - sum * sum / t) / (t - 1.0));
    out.stderr_ = std::sqrt(var / t);
  }
  return out;
}

BinsStats stats(const BinsQuery& query, std::uint64_t cap) {
  BinsStats out;
  out.query = query;
  out.expected_max = exact_max_load_expectation(query, cap);
  out.w = out.expected_max / Rational(static_cast<unsigned long>(query.n));
  out.w.canonicalize();
  const auto unified = lower_bound_unified(query);
  out.x_solution = unified.x;
  out.lower_bound_unified = unified.value;
  out.branch = unified.branch;
  if (query.q > 1) {
    out.lower_bound_usable = lower_bound_usable(static_cast<double>(query.q), static_cast<double>(query.n));
  }
  return out;
}

Rational multinomial_max_expectation(const MultinomialSpec& spec, std::uint64_t cap) {
  if (spec.n < 1) throw DomainError("multinomial needs n >= 1");
  Rational total = 0;
  std::vector<Rational> support;
  for (const auto& p : spec.probabilities) {
    check_probability(p);
    total += p;
    if (p > 0) support.push_back(p);
  }
  if (total != 1) throw DomainError("probabilities sum to " + total.get_str() + ", not 1");

  // support^n <= cap, without overflow.
  std::uint64_t terms = 1;
  for (std::uint64_t i = 0; i < spec.n; ++i) {
    if (terms > cap / support.size()) {
      throw CapExceeded("multinomial enumeration refused: " + std::to_string(support.size()) + "^" +
                        std::to_string(spec.n) + " exceeds cap " + std::to_string(cap));
    }
    terms *= support.size();
  }

  const std::size_t s = support.size();
  const std::uint64_t n = spec.n;
  std::vector<std::vector<Rational>> powers(s, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < s; ++i) {
    powers[i][0] = 1;
    for (std::uint64_t c = 1; c <= n; ++c) powers[i][c] = powers[i][c - 1] * support[i];
  }

  Rational expected = 0;
  // Walk compositions (c_0, ..., c_{s-1}) of n, weighting by
  // binomial(remaining, c_i) p_i^{c_i}.
  auto walk = [&](auto&& self, std::size_t index, std::uint64_t remaining, const Rational& weight,
                  std::uint64_t current_max) -> void {
    if (index + 1 == s) {
      const Rational term = weight * powers[index][remaining];
      expected += term * Rational(static_cast<unsigned long>(std::max(current_max, remaining)));
      return;
    }
    for (std::uint64_t c = 0; c <= remaining; ++c) {
      Rational next = weight * powers[index][c];
      next *= Rational(binomial(remaining, c));
      self(self, index + 1, remaining - c, next, std::max(current_max, c));
    }
  };
  walk(walk, 0, n, Rational(1), 0);
  expected.canonicalize();
  return expected;
}

std::vector<Rational> t_transform(const std::vector<Rational>& p, std::size_t i, std::size_t j,
                                  const Rational& lambda) {
  if (i >= p.size() || j >= p.size()) throw DomainError("t_transform index out of range");
  if (i == j) throw DomainError("t_transform needs two distinct coordinates");
  if (lambda < 0 || lambda > 1) throw DomainError("t_transform needs lambda in [0, 1]");
  std::vector<Rational> out = p;
  const Rational rest = 1 - lambda;
  out[i] = lambda * p[i] + rest * p[j];
  out[j] = lambda * p[j] + rest * p[i];
  out[i].canonicalize();
  out[j].canonicalize();
  return out;
}

bool majorised_by(std::vector<Rational> p, std::vector<Rational> p2) {
  if (p.size() < p2.size()) p.resize(p2.size(), Rational(0));
  if (p2.size() < p.size()) p2.resize(p.size(), Rational(0));
  std::sort(p.begin(), p.end(), std::greater<>());
  std::sort(p2.begin(), p2.end(), std::greater<>());
  Rational a = 0;
  Rational b = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    a += p[i];
    b += p2[i];
    if (a > b) return false;
  }
  return a == b;
}

Rational binomial_tail(std::uint64_t n, const Rational& p, std::uint64_t t) {
  check_probability(p);
  if (t == 0) return 1;
  if (t > n) return 0;
  const Rational q = 1 - p;
  Rational tail = 0;
  Rational pj = pow(p, static_cast<unsigned>(t));
  for (std::uint64_t j = t; j <= n; ++j) {
    tail += Rational(binomial(n, j)) * pj * pow(q, static_cast<unsigned>(n - j));
    pj *= p;
  }
  tail.canonicalize();
  return tail;
}

Rational two_bin_max_expectation(std::uint64_t n, const Rational& p) {
  check_probability(p);
  const Rational q = 1 - p;
  Rational out = 0;
  for (std::uint64_t j = 0; j <= n; ++j) {
    const Rational mass = Rational(binomial(n, j)) * pow(p, static_cast<unsigned>(j)) *
                          pow(q, static_cast<unsigned>(n - j));
    out += mass * Rational(static_cast<unsigned long>(std::max(j, n - j)));
  }
  out.canonicalize();
  return out;
}

Top2Tail joint_top2_tail(const BinsQuery& query, std::uint64_t t) {
  check_query(query);
  if (t < 1 || t > query.n) throw DomainError("joint_top2_tail needs 1 <= t <= n");
  const Rational p(1UL, static_cast<unsigned long>(query.q));
  Top2Tail out;
  out.single = binomial_tail(query.n, p, t);
  out.joint = 0;
  if (query.q == 1) return out;
  const Rational q = 1 - p;
  Rational conditional = p / q;
  conditional.canonicalize();
  for (std::uint64_t k = t; k + t <= query.n; ++k) {
    const Rational mass = Rational(binomial(query.n, k)) * pow(p, static_cast<unsigned>(k)) *
                          pow(q, static_cast<unsigned>(query.n - k));
    out.joint += mass * binomial_tail(query.n - k, conditional, t);
  }
  out.joint.canonicalize();
  return out;
}

GammaBracket stirling_gamma_bounds(double x) {
  if (!(x >= 0.0)) throw DomainError("stirling_gamma_bounds needs x >= 0");
  const double root = std::sqrt(2.0 * std::numbers::pi);
  if (x == 0.0) return {0.0, std::numeric_limits<double>::infinity()};
  const double base = (x + 0.5) * std::log(x) - x;
  return {root * std::exp(base + 1.0 / (12.0 * x + 1.0)), root * std::exp(base + 1.0 / (12.0 * x))};
}

GammaBracket gautschi_bounds(double x, double y) {
  if (!(x >= 0.0) || !(y < x) || !(y > x - 1.0)) throw DomainError("gautschi_bounds needs x >= 0, x-1 < y < x");
  return {std::pow(x, x - y), std::pow(x + 1.0, x - y)};
}

}  // namespace pathfree::bins
