#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include <json.hpp>

#include "boolcube/information.hpp"

namespace boolcube {

/*
 * Machinery for bounding the information of a pair (f(X), g(Y)) through its
 * covariance term theta alone.
 *
 * theta_rho is linear in the per-subset spectral products, so splitting the
 * degree >= 1 mass by sign gives theta_1 = tau_plus + tau_minus with
 * rho * tau_minus <= theta_rho <= rho * tau_plus for rho in [0, 1]. The
 * Cauchy-Schwarz cap tau_plus - tau_minus <= sqrt(a abar b bbar) / 2 tightens
 * this to an interval whose endpoints involve
 *
 *   C(a, b) = (a (1-b) + sqrt(a (1-a) b (1-b))) / 2,
 *
 * and the worst admissible theta at correlation rho is rho * C. The deficit
 *
 *   phi(rho, alpha, beta) = source_mi(rho) - xi(rho * C(alpha, beta), alpha, beta)
 *
 * is what the positivity certificate below establishes on the closed domain
 * 0 < alpha <= beta < 1, 0 <= rho <= rho_plus = alpha (1-beta) / C. phi
 * vanishes to second order at rho = 0; its curvature has the sign of a
 * polynomial p(rho) whose quartic and quintic coefficients cancel, leaving a
 * cubic that is positive at 0 and negative at rho_plus with a single sign
 * change between them. Convexity up to that crossing and concavity beyond
 * reduce positivity on the whole interval to positivity at the crossing and
 * at rho_plus, and the endpoint value phi(rho_plus, alpha, beta) = psi(c, x)
 * under the substitution alpha = beta x^{2c}, beta = (1 - x^{2-2c})/(1 - x^2)
 * is handled by the one-variable function gamma below.
 */

// Sign-split of the degree >= 1 spectral mass, exact: tau_plus =
// plus_scaled / 4^{n+1}, and likewise for the (nonpositive) minus part.
struct TauSplit {
    int n = 0;
    std::int64_t plus_scaled = 0;
    std::int64_t minus_scaled = 0;
    std::int32_t f_empty = 0;  // scaled fhat(empty set)
    std::int32_t g_empty = 0;

    double tau_plus() const;
    double tau_minus() const;
    double theta_one() const;  // theta at rho = 1
};

TauSplit tau_split(const FourierExpansion& f, const FourierExpansion& g);

// tau_plus - tau_minus <= sqrt((1 - fhat0^2)(1 - ghat0^2)) / 4, compared in
// exact integer arithmetic.
bool schwarz_bound_holds(const TauSplit& split);

double big_c(double a, double b);

// alpha (1 - beta) / C(alpha, beta); always in (0, 1] for 0 < alpha <= beta < 1.
double rho_plus_end(double alpha, double beta);

// Everything the interval bound needs, for normalized biases
// 1/2 <= a <= b < 1 and rho in [0, 1].
struct BoundSet {
    double a = 0, b = 0, rho = 0;
    double c_ab = 0;       // C(a, b)
    double c_abar_b = 0;   // C(1-a, b)
    double cap_hi = 0;     // rho * C(a, b)
    double cap_lo = 0;     // -rho * C(1-a, b)
    double theta_lo = 0;   // max(-(1-a)(1-b), cap_lo)
    double theta_hi = 0;   // min(a(1-b), cap_hi)
    // Curvature landmarks of the cubic certificate, in increasing order of
    // relevance to the sign pattern: rho_minus = max(ab, (1-a)(1-b)) / C,
    // rho_circ = min(ab, (1-a)(1-b)) / C, rho_plus = a(1-b) / C.
    double rho_minus = 0, rho_circ = 0, rho_plus = 0;
};

BoundSet bound_set(double a, double b, double rho);
std::pair<double, double> theta_interval(double rho, double a, double b);

// The deficit function described above; domain 0 < alpha <= beta < 1 and
// 0 <= rho <= rho_plus_end(alpha, beta).
double phi(double rho, double alpha, double beta);

// Closed forms of d phi / d rho and d^2 phi / d rho^2; domain requires
// rho < rho_plus_end(alpha, beta) strictly.
std::pair<double, double> phi_derivs(double rho, double alpha, double beta);

// The cubic carrying the sign of phi's curvature, with its defining biases.
// eval uses Horner; coefficients are ordered c[k] * rho^k.
struct CubicPoly {
    std::array<double, 4> c{0, 0, 0, 0};
    double alpha = 0, beta = 0;

    double eval(double rho) const {
        return ((c[3] * rho + c[2]) * rho + c[1]) * rho + c[0];
    }
};

// Expands the curvature numerator and checks that the degree-4 and degree-5
// coefficients cancel to within 1e-10 of the largest surviving coefficient;
// DegreeCollapseViolation otherwise.
CubicPoly p_cubic(double alpha, double beta);

// Bisects the single sign change of p in (0, rho_plus) to width 1e-13 after
// certifying the pattern: p(0) > 0, p(rho_plus) < 0, exactly one sign change
// on a 10^4-point scan, and p nonpositive at the negative probe (-rho_circ
// if rho_circ <= 1, else -rho_minus). SignPatternViolation on any failure.
double isolate_root(const CubicPoly& p, double rho_plus);

// Bias-pair coordinates (alpha, beta) <-> curve coordinates (c, x) with
// alpha = beta x^{2c} and beta = (1 - x^{2-2c}) / (1 - x^2); both maps are
// defined on the open unit square with alpha < beta.
std::pair<double, double> transform_to_cx(double alpha, double beta);
std::pair<double, double> transform_to_ab(double c, double x);

// psi(c, x) = phi(rho_plus_end, alpha(c, x), beta(c, x)), evaluated in the
// (c, x) coordinates where the endpoint analysis is one-dimensional.
double psi(double c, double x);
double psi_prime(double c, double x);        // d psi / d c
double psi_second_deriv(double c, double x); // d^2 psi / d c^2, positive

// gamma(x) = psi(1/2, x), the symmetric slice; gamma(0) = 0 by continuity.
double gamma_fn(double x);
double gamma_prime(double x);

// Derivatives of phi(rho, a, a) in rho for the equal-bias slice; first and
// second order. Used to show equality forces bias 1/2.
std::pair<double, double> uniqueness_derivs(double rho, double a);

struct Lemma1GridSpec {
    int alpha_cells = 50;
    int beta_cells = 50;
    int rho_cells = 20;
    double tolerance = kGapTolerance;
    unsigned workers = 1;
};

struct Lemma1Report {
    Lemma1GridSpec spec;
    long long cells = 0;            // (alpha, beta) pairs visited
    long long evaluations = 0;      // phi evaluations
    double min_phi = 0;
    std::array<double, 3> argmin{0, 0, 0};  // rho, alpha, beta
    long long violations = 0;           // phi <= 0 at rho > 0
    long long certificates_failed = 0;  // cells whose cubic certificate failed

    bool passed() const;
    nlohmann::ordered_json to_json() const;
};

// Sweeps alpha_i = i / (alpha_cells + 1), beta_j = j / (beta_cells + 1) over
// alpha_i < beta_j, and rho_k = k * rho_plus / rho_cells for k = 1..rho_cells;
// checks phi > 0 pointwise and runs the cubic certificate per cell.
Lemma1Report verify_lemma1(const Lemma1GridSpec& spec);

}  // namespace boolcube
