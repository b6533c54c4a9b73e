#include "hgt/bounds.hpp"

#include <cmath>

namespace hgt {

namespace {

constexpr double kE = 2.718281828459045;

double log2d(double x) { return std::log2(x); }

// ln C(n, k) via lgamma; exact enough for bound reporting.
double ln_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

int info_lower_bound(long long m) {
  if (m < 1) throw PreconditionError("need m >= 1");
  int k = 0;
  while ((1LL << k) < m) ++k;
  return k;
}

BoundReport separable_lower_bound(double n, double m, int d, int v, double c) {
  BoundReport r;
  r.name = "separable_lower_bound";
  r.params = {{"n", n}, {"m", m}, {"d", static_cast<double>(d)},
              {"v", static_cast<double>(v)}, {"c", c}};
  if (n < 1 || m < 1) {
    r.reason = "need n >= 1 and m >= 1";
    return r;
  }
  if (v < 1) {
    r.reason = "need v >= 1";
    return r;
  }
  if (c < 1.0 || c >= 1.5) {
    r.reason = "need c in [1, 3/2)";
    return r;
  }
  if (v >= d) {
    r.reason = "need v < d";
    return r;
  }
  if (static_cast<double>(d) > 3.0 * v / (2.0 * c) + 1e-12) {
    r.reason = "need d <= 3v/(2c)";
    return r;
  }
  r.applicable = true;
  const double z = v / c;
  const double denom = c * (d - z);  // > 0 since z <= v < d
  const double coeff = v / (denom * log2d(kE * v / denom));
  const double logterm = log2d(m) - z * log2d(n);
  double value = coeff * logterm;
  if (value < 0.0) {
    value = 0.0;
    r.clamped = true;
    r.note = "|E| <= n^{v/c}: log term non-positive, clamped to 0";
  }
  r.value = value;
  return r;
}

IntersectionBounds intersection_lower_bound(double n, double m, int d,
                                            int lambda_bar, double c) {
  IntersectionBounds out;
  out.corollary1 = separable_lower_bound(n, m, d, lambda_bar, c);
  out.corollary1.name = "intersection_lower_bound_cor1";
  out.corollary1.params["lambda_bar"] = lambda_bar;

  BoundReport& r2 = out.corollary2;
  r2.name = "intersection_lower_bound_cor2";
  r2.params = {{"n", n}, {"m", m}, {"d", static_cast<double>(d)},
               {"lambda_bar", static_cast<double>(lambda_bar)}, {"c", c}};
  if (!out.corollary1.applicable) {
    r2.reason = out.corollary1.reason;
    return out;
  }
  // Size condition |E| >= n^{lambda_bar * c~} for some c~ in (1/c, 1):
  // satisfiable exactly when c > 1 and m > n^{lambda_bar / c}.
  const bool size_ok =
      c > 1.0 && m > std::pow(n, static_cast<double>(lambda_bar) / c);
  r2.params["size_condition"] = size_ok ? 1.0 : 0.0;
  if (!size_ok) {
    r2.reason = "needs |E| >= n^{lambda_bar * c~} for some c~ in (1/c, 1)";
    return out;
  }
  r2.applicable = true;
  const double gap = static_cast<double>(d - lambda_bar);
  const double coeff = lambda_bar / (gap * log2d(kE * lambda_bar / gap));
  r2.value = std::max(coeff * log2d(m), log2d(m));
  return out;
}

boost::multiprecision::cpp_int edge_count_cap(int n, int d, int lambda_bar) {
  if (lambda_bar < 0) throw PreconditionError("lambda_bar must be >= 0");
  if (lambda_bar >= d) throw PreconditionError("need lambda_bar < d");
  if (d > n) throw PreconditionError("need d <= n");
  using boost::multiprecision::cpp_int;
  const int k = lambda_bar + 1;
  auto binom = [](int nn, int kk) {
    cpp_int r = 1;
    for (int i = 1; i <= kk; ++i) {
      r *= nn - kk + i;
      r /= i;
    }
    return r;
  };
  return binom(n, k) / binom(d, k);
}

double s_stage_cost_estimate(int d, double m, int s, double c1, double c2) {
  if (s < 1) throw PreconditionError("need s >= 1");
  return c1 * s * std::pow(static_cast<double>(d), 1.0 / s) * log2d(m) +
         c2 * s * d;
}

BoundReport trivial_two_stage_bound(double n, double m, int d, long long q,
                                    int chi) {
  BoundReport r;
  r.name = "trivial_two_stage_bound";
  r.params = {{"n", n}, {"m", m}, {"d", static_cast<double>(d)},
              {"q", static_cast<double>(q)}, {"chi", static_cast<double>(chi)}};
  if (q < 1 || static_cast<double>(q) > m - 1.0) {
    r.reason = "need 1 <= q <= |E|-1";
    return r;
  }
  if (chi < 1) {
    r.reason = "need chi >= 1";
    return r;
  }
  if (d < 1 || n < 1) {
    r.reason = "need d >= 1 and n >= 1";
    return r;
  }
  r.applicable = true;
  const double qd = static_cast<double>(q);
  // Work in log space: beta can overflow a double for large parameters.
  const double ln_beta_1 = qd + std::log(m) + qd * std::log((m - 1.0) / qd);
  const double ln_beta_2 =
      (d + chi - 1.0) + (d + chi) * std::log((n + d - 1.0) / (d + chi - 1.0));
  const double ln_beta = std::min(ln_beta_1, ln_beta_2);
  const double ln_binom = ln_binomial(d + chi - 1.0, chi - 1.0);
  r.value = (2.0 * kE * (d + chi) / chi) * (1.0 + ln_binom + ln_beta) +
            static_cast<double>(d) * qd;
  // Comparison flag from the s-stage discussion: the trivial bound can win
  // only when chi >= sqrt(d).
  r.params["chi_geq_sqrt_d"] =
      static_cast<double>(chi) >= std::sqrt(static_cast<double>(d)) ? 1.0 : 0.0;
  return r;
}

}  // namespace hgt
