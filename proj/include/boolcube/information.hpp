#pragma once

#include <span>

#include "boolcube/correlated_source.hpp"

namespace boolcube {

// Default tolerance for entropic comparisons. Everything below is computed in
// bits through std::log2; chained entropy differences of well-conditioned
// joints carry rounding of order 1e-15, and the smallest nonzero information
// gap over all pairs in dimensions up to 3 is larger than 1e-4, so 1e-9
// separates rounding from genuine violations with margin on both sides.
inline constexpr double kGapTolerance = 1e-9;

// Slack allowed when a probability argument sits just outside [0, 1].
inline constexpr double kProbabilitySlack = 1e-12;

// h(p) = -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0.
double binary_entropy(double p);

// Shannon entropy in bits of a nonnegative vector summing to 1 within
// kProbabilitySlack * length; InvalidDistribution otherwise.
double entropy(std::span<const double> pmf);

// Joint entropy deficit h(a) + h(b) - H(joint cells of theta): the mutual
// information of the 2x2 law with marginals (a, b) and covariance term theta.
// Throws ThetaOutOfRange if theta leaves any cell outside [0, 1] beyond
// kNegativeSlack.
double xi(double theta, double a, double b);

double mutual_information(const Joint2x2& joint);

// I(x; y) of the single-letter source: 1 - h((1 + |rho|) / 2).
double source_mi(double rho);

// source_mi(rho) - I(f(X); g(Y)); nonnegative for every pair when
// rho is in (-1, 1).
double gap(const FourierExpansion& f, const FourierExpansion& g, double rho);
double gap(const BooleanFunction& f, const BooleanFunction& g, double rho);

}  // namespace boolcube
