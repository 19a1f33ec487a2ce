#include "boolcube/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "boolcube/parallel.hpp"

namespace boolcube {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// z / (1 - z) + ln(1 - z); positive on (0, 1), of order z^2 / 2 near 0.
double curvature_core(double z) { return z / (1.0 - z) + std::log1p(-z); }

void check_bias_pair(double alpha, double beta, bool strict) {
    if (!(alpha > 0.0 && beta < 1.0) || !(strict ? alpha < beta : alpha <= beta))
        throw DomainError("bias pair (" + std::to_string(alpha) + ", " +
                          std::to_string(beta) + ") outside the domain");
}

std::vector<double> poly_mul(const std::vector<double>& lhs,
                             const std::vector<double>& rhs) {
    std::vector<double> out(lhs.size() + rhs.size() - 1, 0.0);
    for (std::size_t i = 0; i < lhs.size(); ++i)
        for (std::size_t j = 0; j < rhs.size(); ++j)
            out[i + j] += lhs[i] * rhs[j];
    return out;
}

std::vector<double> poly_add(std::vector<double> lhs,
                             const std::vector<double>& rhs) {
    if (rhs.size() > lhs.size()) lhs.resize(rhs.size(), 0.0);
    for (std::size_t i = 0; i < rhs.size(); ++i) lhs[i] += rhs[i];
    return lhs;
}

}  // namespace

double TauSplit::tau_plus() const {
    return std::ldexp(static_cast<double>(plus_scaled), -(2 * n + 2));
}

double TauSplit::tau_minus() const {
    return std::ldexp(static_cast<double>(minus_scaled), -(2 * n + 2));
}

double TauSplit::theta_one() const {
    return std::ldexp(static_cast<double>(plus_scaled + minus_scaled),
                      -(2 * n + 2));
}

TauSplit tau_split(const FourierExpansion& f, const FourierExpansion& g) {
    if (f.n != g.n)
        throw DimensionMismatch("function dimensions differ in tau_split");
    TauSplit out;
    out.n = f.n;
    out.f_empty = f.scaled_coeffs[0];
    out.g_empty = g.scaled_coeffs[0];
    for (std::size_t s = 1; s < f.scaled_coeffs.size(); ++s) {
        const std::int64_t prod =
            std::int64_t{f.scaled_coeffs[s]} * g.scaled_coeffs[s];
        if (prod > 0)
            out.plus_scaled += prod;
        else
            out.minus_scaled += prod;
    }
    return out;
}

bool schwarz_bound_holds(const TauSplit& split) {
    const std::int64_t spread = split.plus_scaled - split.minus_scaled;
    const std::int64_t full = std::int64_t{1} << (2 * split.n);
    const std::int64_t f_rest = full - std::int64_t{split.f_empty} * split.f_empty;
    const std::int64_t g_rest = full - std::int64_t{split.g_empty} * split.g_empty;
    const __int128 lhs = static_cast<__int128>(spread) * spread;
    const __int128 rhs = static_cast<__int128>(f_rest) * g_rest;
    return lhs <= rhs;
}

double big_c(double a, double b) {
    if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
        throw DomainError("biases must lie in [0, 1]");
    return (a * (1.0 - b) + std::sqrt(a * (1.0 - a) * b * (1.0 - b))) / 2.0;
}

double rho_plus_end(double alpha, double beta) {
    check_bias_pair(alpha, beta, /*strict=*/false);
    return alpha * (1.0 - beta) / big_c(alpha, beta);
}

BoundSet bound_set(double a, double b, double rho) {
    if (!(a >= 0.5 && a <= b && b < 1.0))
        throw DomainError("normalized biases require 1/2 <= a <= b < 1");
    if (!(rho >= 0.0 && rho <= 1.0))
        throw DomainError("correlation must lie in [0, 1]");
    BoundSet out;
    out.a = a;
    out.b = b;
    out.rho = rho;
    out.c_ab = big_c(a, b);
    out.c_abar_b = big_c(1.0 - a, b);
    out.cap_hi = rho * out.c_ab;
    out.cap_lo = -rho * out.c_abar_b;
    out.theta_hi = std::min(a * (1.0 - b), out.cap_hi);
    out.theta_lo = std::max(-(1.0 - a) * (1.0 - b), out.cap_lo);
    const double prod_hi = a * b;
    const double prod_lo = (1.0 - a) * (1.0 - b);
    out.rho_minus = std::max(prod_hi, prod_lo) / out.c_ab;
    out.rho_circ = std::min(prod_hi, prod_lo) / out.c_ab;
    out.rho_plus = a * (1.0 - b) / out.c_ab;
    return out;
}

std::pair<double, double> theta_interval(double rho, double a, double b) {
    const BoundSet bs = bound_set(a, b, rho);
    return {bs.theta_lo, bs.theta_hi};
}

double phi(double rho, double alpha, double beta) {
    check_bias_pair(alpha, beta, /*strict=*/false);
    const double end = rho_plus_end(alpha, beta);
    if (!(rho >= 0.0 && rho <= end * (1.0 + 1e-12)))
        throw DomainError("correlation " + std::to_string(rho) +
                          " outside [0, rho_plus]");
    const double c = big_c(alpha, beta);
    const double theta = std::min(rho * c, alpha * (1.0 - beta));
    return source_mi(rho) - xi(theta, alpha, beta);
}

std::pair<double, double> phi_derivs(double rho, double alpha, double beta) {
    check_bias_pair(alpha, beta, /*strict=*/false);
    const double end = rho_plus_end(alpha, beta);
    if (!(rho >= 0.0 && rho < end))
        throw DomainError("derivatives require rho in [0, rho_plus)");
    const double c = big_c(alpha, beta);
    const double cell_a = (1.0 - alpha) * beta - c * rho;
    const double cell_b = alpha * (1.0 - beta) - c * rho;
    const double cell_d = (1.0 - alpha) * (1.0 - beta) + c * rho;
    const double cell_e = alpha * beta + c * rho;
    const double d1 = 0.5 * std::log2((1.0 + rho) / (1.0 - rho)) +
                      c * std::log2(cell_a * cell_b / (cell_d * cell_e));
    const double d2 =
        c * c / kLn2 *
        (1.0 / (c * c * (1.0 - rho * rho)) - 1.0 / cell_a - 1.0 / cell_b -
         1.0 / cell_d - 1.0 / cell_e);
    return {d1, d2};
}

CubicPoly p_cubic(double alpha, double beta) {
    check_bias_pair(alpha, beta, /*strict=*/false);
    const double c = big_c(alpha, beta);
    const std::vector<double> fa = {(1.0 - alpha) * beta, -c};
    const std::vector<double> fb = {alpha * (1.0 - beta), -c};
    const std::vector<double> fd = {(1.0 - alpha) * (1.0 - beta), c};
    const std::vector<double> fe = {alpha * beta, c};

    const auto ab = poly_mul(fa, fb);
    const auto quartic = poly_mul(ab, poly_mul(fd, fe));
    auto triples = poly_mul(ab, poly_add(fd, fe));
    triples = poly_add(triples, poly_mul(poly_mul(fd, fe), poly_add(fa, fb)));

    // p = quartic - c^2 (1 - rho^2) * triples
    std::vector<double> p = quartic;
    p.resize(6, 0.0);
    for (std::size_t i = 0; i < triples.size(); ++i) {
        p[i] -= c * c * triples[i];
        p[i + 2] += c * c * triples[i];
    }

    double scale = 0.0;
    for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(p[i]));
    if (std::abs(p[4]) > 1e-10 * scale || std::abs(p[5]) > 1e-10 * scale)
        throw DegreeCollapseViolation(
            "quartic or quintic coefficient survived: " + std::to_string(p[4]) +
            ", " + std::to_string(p[5]));

    CubicPoly out;
    out.alpha = alpha;
    out.beta = beta;
    for (int i = 0; i < 4; ++i) out.c[i] = p[i];
    return out;
}

double isolate_root(const CubicPoly& p, double rho_plus) {
    if (!(rho_plus > 0.0 && rho_plus <= 1.0))
        throw DomainError("rho_plus must lie in (0, 1]");
    double scale = 0.0;
    for (const double v : p.c) scale = std::max(scale, std::abs(v));

    if (!(p.eval(0.0) > 0.0))
        throw SignPatternViolation("cubic is not positive at zero");
    if (!(p.eval(rho_plus) < 0.0))
        throw SignPatternViolation("cubic is not negative at rho_plus");

    // The remaining real root must sit at or below a negative landmark.
    const double c = big_c(p.alpha, p.beta);
    const double prod_hi = p.alpha * p.beta;
    const double prod_lo = (1.0 - p.alpha) * (1.0 - p.beta);
    const double rho_circ = std::min(prod_hi, prod_lo) / c;
    const double rho_minus = std::max(prod_hi, prod_lo) / c;
    const double probe = rho_circ <= 1.0 ? -rho_circ : -rho_minus;
    if (p.eval(probe) > 1e-12 * scale)
        throw SignPatternViolation("cubic is positive at the negative probe");

    int sign_changes = 0;
    double prev = p.eval(0.0);
    for (int k = 1; k <= 10000; ++k) {
        const double v = p.eval(rho_plus * k / 10000.0);
        if (v == 0.0) continue;
        if ((prev > 0.0) != (v > 0.0)) ++sign_changes;
        prev = v;
    }
    if (sign_changes != 1)
        throw SignPatternViolation("expected exactly one sign change, saw " +
                                   std::to_string(sign_changes));

    double lo = 0.0, hi = rho_plus;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (p.eval(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::pair<double, double> transform_to_cx(double alpha, double beta) {
    check_bias_pair(alpha, beta, /*strict=*/true);
    const double la = std::log(alpha);
    const double lb = std::log(beta);
    const double lab = std::log1p(-alpha);
    const double lbb = std::log1p(-beta);
    const double lr = la + lbb - lab - lb;  // log of alpha(1-beta)/((1-alpha)beta)
    return {(la - lb) / lr, std::exp(lr / 2.0)};
}

namespace {

void check_unit_open(double v, const char* what) {
    if (!(v > 0.0 && v < 1.0))
        throw DomainError(std::string(what) + " must lie in (0, 1)");
}

struct CurvePoint {
    double lx, t, s, alpha, beta;
};

CurvePoint curve_point(double c, double x) {
    check_unit_open(c, "c");
    check_unit_open(x, "x");
    CurvePoint p;
    p.lx = std::log(x);
    p.t = std::exp(2.0 * c * p.lx);          // x^{2c}
    p.s = std::exp(2.0 * (1.0 - c) * p.lx);  // x^{2-2c}
    p.beta = std::expm1(2.0 * (1.0 - c) * p.lx) / std::expm1(2.0 * p.lx);
    p.alpha = p.beta * p.t;
    return p;
}

}  // namespace

std::pair<double, double> transform_to_ab(double c, double x) {
    const CurvePoint p = curve_point(c, x);
    return {p.alpha, p.beta};
}

double psi(double c, double x) {
    const CurvePoint p = curve_point(c, x);
    return 1.0 - binary_entropy((1.0 + 3.0 * x) / (2.0 + 2.0 * x)) -
           binary_entropy(p.alpha) + p.beta * binary_entropy(p.t);
}

double psi_prime(double c, double x) {
    const CurvePoint p = curve_point(c, x);
    const double log_one_minus_t = std::log(-std::expm1(2.0 * c * p.lx));
    const double log_t_minus_x2 =
        2.0 * c * p.lx + std::log(-std::expm1(2.0 * (1.0 - c) * p.lx));
    const double bracket = 2.0 * p.t * c * p.lx + p.s * log_one_minus_t -
                           p.t * log_t_minus_x2;
    return 2.0 * p.lx / ((x * x - 1.0) * kLn2) * bracket;
}

double psi_second_deriv(double c, double x) {
    const CurvePoint p = curve_point(c, x);
    const double tail = p.t < 1e-100
                            ? 0.5 * x * x
                            : (x * x / (p.t * p.t)) * curvature_core(p.t);
    const double prefactor =
        4.0 * p.lx * p.lx * p.t / ((1.0 - x * x) * kLn2);
    return prefactor * (curvature_core(p.s) + tail);
}

double gamma_fn(double x) {
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("x must lie in [0, 1)");
    if (x == 0.0) return 0.0;
    return psi(0.5, x);
}

double gamma_prime(double x) {
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("x must lie in [0, 1)");
    const double argument = (1.0 + 3.0 * x) * (1.0 - x);
    return std::log2(argument) / ((1.0 + x) * (1.0 + x));
}

std::pair<double, double> uniqueness_derivs(double rho, double a) {
    if (!(a >= 0.5 && a < 1.0))
        throw DomainError("bias must lie in [1/2, 1)");
    if (!(rho > 0.0 && rho < 1.0))
        throw DomainError("correlation must lie in (0, 1)");
    const double aa = a * (1.0 - a);
    const double rbar = 1.0 - rho;
    const double d1 = 0.5 * std::log2((1.0 + rho) / (1.0 - rho)) -
                      aa * std::log2(1.0 + rho / (aa * rbar * rbar));
    const double d2 = rho * (1.0 - 2.0 * a) * (1.0 - 2.0 * a) /
                      (kLn2 * (a + rho * (1.0 - a)) * (1.0 - a * rbar) *
                       (1.0 - rho * rho));
    return {d1, d2};
}

bool Lemma1Report::passed() const {
    return violations == 0 && certificates_failed == 0 && min_phi > 0.0;
}

nlohmann::ordered_json Lemma1Report::to_json() const {
    return nlohmann::ordered_json{
        {"schema", 1},
        {"grid", {spec.alpha_cells, spec.beta_cells, spec.rho_cells}},
        {"tolerance", spec.tolerance},
        {"cells", cells},
        {"evaluations", evaluations},
        {"min_phi", min_phi},
        {"argmin", {argmin[0], argmin[1], argmin[2]}},
        {"violations", violations},
        {"certificates_failed", certificates_failed}};
}

Lemma1Report verify_lemma1(const Lemma1GridSpec& spec) {
    if (spec.alpha_cells < 1 || spec.beta_cells < 1 || spec.rho_cells < 1)
        throw DomainError("grid must have at least one cell per axis");
    if (!(spec.tolerance > 0.0)) throw DomainError("tolerance must be positive");

    struct Fragment {
        double min_phi = std::numeric_limits<double>::infinity();
        std::array<double, 3> argmin{0, 0, 0};
        long long cells = 0, evaluations = 0, violations = 0, failed = 0;
    };
    std::vector<Fragment> fragments(spec.alpha_cells);

    parallel_for_chunks(spec.alpha_cells, spec.workers, [&](std::size_t row) {
        Fragment& frag = fragments[row];
        const double alpha =
            static_cast<double>(row + 1) / (spec.alpha_cells + 1);
        for (int j = 1; j <= spec.beta_cells; ++j) {
            const double beta = static_cast<double>(j) / (spec.beta_cells + 1);
            if (!(alpha < beta)) continue;
            frag.cells += 1;
            const double end = rho_plus_end(alpha, beta);

            try {
                const CubicPoly p = p_cubic(alpha, beta);
                isolate_root(p, end);
                if (!(phi(end, alpha, beta) > spec.tolerance))
                    throw SignPatternViolation("endpoint value not positive");
            } catch (const Error&) {
                frag.failed += 1;
            }

            for (int k = 1; k <= spec.rho_cells; ++k) {
                const double rho = end * k / spec.rho_cells;
                const double value = phi(rho, alpha, beta);
                frag.evaluations += 1;
                if (value <= 0.0) frag.violations += 1;
                if (value < frag.min_phi) {
                    frag.min_phi = value;
                    frag.argmin = {rho, alpha, beta};
                }
            }
        }
    });

    Lemma1Report report;
    report.spec = spec;
    report.min_phi = std::numeric_limits<double>::infinity();
    for (const Fragment& frag : fragments) {
        report.cells += frag.cells;
        report.evaluations += frag.evaluations;
        report.violations += frag.violations;
        report.certificates_failed += frag.failed;
        if (frag.cells > 0 && frag.min_phi < report.min_phi) {
            report.min_phi = frag.min_phi;
            report.argmin = frag.argmin;
        }
    }
    return report;
}

}  // namespace boolcube
