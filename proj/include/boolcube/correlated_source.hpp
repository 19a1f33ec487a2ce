#pragma once

#include <cstdint>
#include <vector>

#include "boolcube/fourier.hpp"

#include <json.hpp>

namespace boolcube {

// Probability entries in [-kNegativeSlack, 0) are treated as rounding dirt and
// clamped to zero; anything more negative raises NumericalInconsistency.
inline constexpr double kNegativeSlack = 1e-12;

// Doubly symmetric binary source: each coordinate pair (x_i, y_i) is uniform
// on {-1,+1} with E[x_i y_i] = rho, independent across coordinates.
struct SourceModel {
    double rho;

    explicit SourceModel(double rho);

    double p_agree() const { return (1.0 + rho) / 2.0; }
    double p_disagree() const { return (1.0 - rho) / 2.0; }
};

// Joint law of the pair (f(X), g(Y)) over the four sign cells.
struct Joint2x2 {
    double pp = 0;  // f = +1, g = +1
    double pm = 0;  // f = +1, g = -1
    double mp = 0;  // f = -1, g = +1
    double mm = 0;  // f = -1, g = -1
    bool clamped = false;

    double a() const { return pp + pm; }  // P(f = +1)
    double b() const { return pp + mp; }  // P(g = +1)
    double correlation() const { return pp - pm - mp + mm; }  // E[f g]
    Joint2x2 transposed() const { return {pp, mp, pm, mm, clamped}; }
};

void to_json(nlohmann::ordered_json& j, const Joint2x2& joint);
void from_json(const nlohmann::json& j, Joint2x2& joint);

// Single-letter law of (x_i, y_i) itself.
Joint2x2 single_letter_joint(const SourceModel& source);

// Per-degree spectral correlations: result[k] = sum over |S| = k of
// scaled_f[S] * scaled_g[S]; exact integers with denominator 4^n.
std::vector<std::int64_t> spectral_products_by_degree(const FourierExpansion& f,
                                                      const FourierExpansion& g);

// theta_rho = (1/4) sum_{|S| >= 1} fhat(S) ghat(S) rho^|S|.
double theta_rho(const FourierExpansion& f, const FourierExpansion& g,
                 double rho);

// Assembles the four cells (ab + theta, a(1-b) - theta, (1-a)b - theta,
// (1-a)(1-b) + theta) with the negative-slack clamp policy.
Joint2x2 joint_from_theta(double theta, double a, double b);

// Joint law of (f(X), g(Y)) through the spectral route.
Joint2x2 joint_distribution(const FourierExpansion& f, const FourierExpansion& g,
                            double rho);

// Exact-enumeration reference: sums P(X = x, Y = y) over all 4^n point pairs,
// grouped by Hamming distance so the cost is 2^{2n} bit operations and the
// float work is a single n-term polynomial. Intended as the oracle for the
// spectral route; n <= 13.
Joint2x2 brute_force_joint(const BooleanFunction& f, const BooleanFunction& g,
                           double rho);

struct MonteCarloJoint {
    Joint2x2 joint;
    double se_pp = 0, se_pm = 0, se_mp = 0, se_mm = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

// Samples (X, Y) pairs in fixed-size blocks with per-block child seeds, so the
// result depends only on (f, g, rho, samples, seed), never on `workers`.
MonteCarloJoint monte_carlo_joint(const BooleanFunction& f,
                                  const BooleanFunction& g, double rho,
                                  std::uint64_t samples, std::uint64_t seed,
                                  unsigned workers = 1);

}  // namespace boolcube
