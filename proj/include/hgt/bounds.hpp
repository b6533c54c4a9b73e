#pragma once

#include <map>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "hgt/errors.hpp"

namespace hgt {

struct BoundReport {
  std::string name;
  bool applicable = false;
  std::optional<double> value;     // present iff applicable
  std::string reason;              // violated precondition when inapplicable
  std::map<std::string, double> params;
  bool clamped = false;            // value forced up to 0
  std::string note;
};

// ceil(log2 m): the information theoretic floor for distinguishing m
// candidates.
int info_lower_bound(long long m);

// Minimum length of an E-separable code for a d-uniform hypergraph:
//   v / (c(d-v/c) log2(e v / (c(d-v/c)))) * log2(|E| / n^{v/c})
// Preconditions: v < d <= 3v/(2c), 1 <= c < 3/2.  Negative logs clamp to 0.
BoundReport separable_lower_bound(double n, double m, int d, int v, double c);

struct IntersectionBounds {
  BoundReport corollary1;  // exact formula with v = lambda_bar
  BoundReport corollary2;  // max{coeff * log2 m, log2 m} asymptotic form
};

// Lower bounds under a pairwise-intersection cap lambda_bar.
IntersectionBounds intersection_lower_bound(double n, double m, int d,
                                            int lambda_bar, double c);

// floor(C(n, lambda_bar+1) / C(d, lambda_bar+1)); exact big-integer result.
boost::multiprecision::cpp_int edge_count_cap(int n, int d, int lambda_bar);

// C1 * s * d^{1/s} * log2 m + C2 * s * d.
double s_stage_cost_estimate(int d, double m, int s, double c1, double c2);

// The quoted prior-work two-stage bound, natural logs as printed:
//   (2e(d+chi)/chi)(1 + ln(C(d+chi-1, chi-1) * beta)) + d*q
// with beta = min{e^q |E| ((|E|-1)/q)^q,
//                 e^{d+chi-1} ((n+d-1)/(d+chi-1))^{d+chi}}.
BoundReport trivial_two_stage_bound(double n, double m, int d, long long q,
                                    int chi);

}  // namespace hgt
