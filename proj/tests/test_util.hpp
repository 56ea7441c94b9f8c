#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "grw/graph.hpp"

namespace testutil {

// Regularized upper incomplete gamma Q(a, x) by series / continued fraction.
inline double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) return 1.0;
  if (x == 0.0) return 1.0;
  auto gln = std::lgamma(a);
  if (x < a + 1.0) {
    // Series for P(a, x); Q = 1 - P.
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; n++) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-14) break;
    }
    double p = sum * std::exp(-x + a * std::log(x) - gln);
    return 1.0 - p;
  }
  // Continued fraction for Q(a, x).
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; i++) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-14) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

// p-value of a chi-square statistic with `dof` degrees of freedom.
inline double chi2_pvalue(double stat, double dof) {
  return gamma_q(dof / 2.0, stat / 2.0);
}

// Pearson chi-square of observed counts against expected probabilities.
inline double chi2_stat(const std::vector<uint64_t>& observed,
                        const std::vector<double>& probs, uint64_t total) {
  double stat = 0.0;
  for (size_t i = 0; i < observed.size(); i++) {
    double e = probs[i] * static_cast<double>(total);
    if (e <= 0.0) continue;
    double d = static_cast<double>(observed[i]) - e;
    stat += d * d / e;
  }
  return stat;
}

// Asymptotic Kolmogorov p-value for statistic D at sample size n.
inline double ks_pvalue(double d, uint64_t n) {
  double lambda = (std::sqrt(static_cast<double>(n)) + 0.12 +
                   0.11 / std::sqrt(static_cast<double>(n))) * d;
  double sum = 0.0;
  for (int k = 1; k <= 100; k++) {
    sum += 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
  }
  return std::max(0.0, std::min(1.0, sum));
}

// Exact rational with small numerators, for alias-table exactness checks.
struct Fraction {
  long long num = 0;
  long long den = 1;

  static long long gcd(long long a, long long b) {
    while (b) {
      long long t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }
  void reduce() {
    long long g = gcd(num, den);
    if (g) {
      num /= g;
      den /= g;
    }
    if (den < 0) {
      num = -num;
      den = -den;
    }
  }
  Fraction operator+(const Fraction& o) const {
    Fraction r{num * o.den + o.num * den, den * o.den};
    r.reduce();
    return r;
  }
  Fraction operator-(const Fraction& o) const {
    Fraction r{num * o.den - o.num * den, den * o.den};
    r.reduce();
    return r;
  }
  Fraction operator*(const Fraction& o) const {
    Fraction r{num * o.num, den * o.den};
    r.reduce();
    return r;
  }
  Fraction operator/(const Fraction& o) const {
    Fraction r{num * o.den, den * o.num};
    r.reduce();
    return r;
  }
  bool operator==(const Fraction& o) const { return num * o.den == o.num * den; }
  bool operator<(const Fraction& o) const { return num * o.den < o.num * den; }
};

// Exact alias-table construction mirroring grw::build_alias_table.
struct RationalAlias {
  std::vector<Fraction> prob;
  std::vector<uint32_t> alias;
};

inline RationalAlias build_rational_alias(const std::vector<long long>& weights) {
  size_t n = weights.size();
  long long total = 0;
  for (long long w : weights) total += w;
  RationalAlias t;
  t.prob.resize(n);
  t.alias.assign(n, 0);
  std::vector<uint32_t> small, large;
  for (size_t i = 0; i < n; i++) {
    t.prob[i] = Fraction{weights[i] * static_cast<long long>(n), total};
    t.prob[i].reduce();
    t.alias[i] = static_cast<uint32_t>(i);
    Fraction one{1, 1};
    if (t.prob[i] < one) {
      small.push_back(static_cast<uint32_t>(i));
    } else {
      large.push_back(static_cast<uint32_t>(i));
    }
  }
  Fraction one{1, 1};
  while (!small.empty() && !large.empty()) {
    uint32_t s = small.back();
    uint32_t l = large.back();
    small.pop_back();
    t.alias[s] = l;
    t.prob[l] = t.prob[l] - (one - t.prob[s]);
    if (t.prob[l] < one) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (uint32_t s : small) t.prob[s] = one;
  for (uint32_t l : large) t.prob[l] = one;
  return t;
}

inline grw::CsrGraph make_graph(uint64_t n,
                                std::vector<std::pair<uint32_t, uint32_t>> edges,
                                std::vector<double> weights = {}) {
  grw::EdgeList el;
  el.edges = std::move(edges);
  el.weights = std::move(weights);
  return grw::build_csr(el, n);
}

}  // namespace testutil
