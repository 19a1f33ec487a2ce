#include "boolcube/correlated_source.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "boolcube/parallel.hpp"
#include "boolcube/rng.hpp"

namespace boolcube {

namespace {

constexpr std::uint64_t kMcBlock = std::uint64_t{1} << 16;

void check_rho(double rho) {
    if (!(rho >= -1.0 && rho <= 1.0))
        throw DomainError("correlation must lie in [-1, 1]");
}

void check_same_dimension(int nf, int ng) {
    if (nf != ng)
        throw DimensionMismatch("function dimensions differ: " +
                                std::to_string(nf) + " vs " + std::to_string(ng));
}

double clamp_probability(double p, bool& clamped) {
    if (p < 0.0) {
        if (p < -kNegativeSlack)
            throw NumericalInconsistency("probability " + std::to_string(p) +
                                         " below negative slack");
        clamped = true;
        return 0.0;
    }
    if (p > 1.0) {
        if (p > 1.0 + kNegativeSlack)
            throw NumericalInconsistency("probability " + std::to_string(p) +
                                         " above one");
        clamped = true;
        return 1.0;
    }
    return p;
}

}  // namespace

SourceModel::SourceModel(double rho_) : rho(rho_) { check_rho(rho); }

Joint2x2 single_letter_joint(const SourceModel& source) {
    const double same = (1.0 + source.rho) / 4.0;
    const double diff = (1.0 - source.rho) / 4.0;
    return {same, diff, diff, same, false};
}

void to_json(nlohmann::ordered_json& j, const Joint2x2& joint) {
    j = nlohmann::ordered_json{{"pp", joint.pp},
                               {"pm", joint.pm},
                               {"mp", joint.mp},
                               {"mm", joint.mm},
                               {"clamped", joint.clamped}};
}

void from_json(const nlohmann::json& j, Joint2x2& joint) {
    j.at("pp").get_to(joint.pp);
    j.at("pm").get_to(joint.pm);
    j.at("mp").get_to(joint.mp);
    j.at("mm").get_to(joint.mm);
    joint.clamped = j.value("clamped", false);
}

std::vector<std::int64_t> spectral_products_by_degree(const FourierExpansion& f,
                                                      const FourierExpansion& g) {
    check_same_dimension(f.n, g.n);
    std::vector<std::int64_t> by_degree(f.n + 1, 0);
    for (std::size_t s = 0; s < f.scaled_coeffs.size(); ++s)
        by_degree[std::popcount(s)] +=
            std::int64_t{f.scaled_coeffs[s]} * g.scaled_coeffs[s];
    return by_degree;
}

double theta_rho(const FourierExpansion& f, const FourierExpansion& g,
                 double rho) {
    check_rho(rho);
    const auto by_degree = spectral_products_by_degree(f, g);
    const double denom = std::ldexp(4.0, 2 * f.n);  // 4 * 4^n
    double theta = 0.0;
    double power = 1.0;
    for (int k = 1; k <= f.n; ++k) {
        power *= rho;
        theta += static_cast<double>(by_degree[k]) * power;
    }
    return theta / denom;
}

Joint2x2 joint_from_theta(double theta, double a, double b) {
    if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
        throw DomainError("marginals must lie in [0, 1]");
    Joint2x2 joint;
    joint.pp = clamp_probability(a * b + theta, joint.clamped);
    joint.pm = clamp_probability(a * (1.0 - b) - theta, joint.clamped);
    joint.mp = clamp_probability((1.0 - a) * b - theta, joint.clamped);
    joint.mm = clamp_probability((1.0 - a) * (1.0 - b) + theta, joint.clamped);
    return joint;
}

Joint2x2 joint_distribution(const FourierExpansion& f, const FourierExpansion& g,
                            double rho) {
    return joint_from_theta(theta_rho(f, g, rho), f.bias(), g.bias());
}

Joint2x2 brute_force_joint(const BooleanFunction& f, const BooleanFunction& g,
                           double rho) {
    check_same_dimension(f.n(), g.n());
    check_rho(rho);
    const int n = f.n();
    if (n > 13)
        throw DimensionTooLarge("exact enumeration is limited to dimension 13");

    // counts[fb][gb][d]: point pairs at Hamming distance d landing in the cell.
    std::vector<std::int64_t> counts(4 * (n + 1), 0);
    const std::uint64_t size = f.size();
    for (std::uint64_t m = 0; m < size; ++m) {
        const unsigned fb = f.bit(m);
        for (std::uint64_t mp = 0; mp < size; ++mp) {
            const unsigned cell = 2 * fb + g.bit(mp);
            counts[cell * (n + 1) + std::popcount(m ^ mp)] += 1;
        }
    }

    std::vector<double> weight(n + 1);
    const double same = (1.0 + rho) / 4.0;
    const double diff = (1.0 - rho) / 4.0;
    for (int d = 0; d <= n; ++d)
        weight[d] = std::pow(same, n - d) * std::pow(diff, d);

    double cell[4] = {0, 0, 0, 0};
    for (int c = 0; c < 4; ++c)
        for (int d = 0; d <= n; ++d)
            cell[c] += static_cast<double>(counts[c * (n + 1) + d]) * weight[d];
    return {cell[0], cell[1], cell[2], cell[3], false};
}

MonteCarloJoint monte_carlo_joint(const BooleanFunction& f,
                                  const BooleanFunction& g, double rho,
                                  std::uint64_t samples, std::uint64_t seed,
                                  unsigned workers) {
    check_same_dimension(f.n(), g.n());
    check_rho(rho);
    if (samples == 0) throw DomainError("sample count must be positive");

    const int n = f.n();
    const double flip_probability = (1.0 - rho) / 2.0;
    const std::uint64_t mask = (n == 64) ? ~std::uint64_t{0}
                                         : ((std::uint64_t{1} << n) - 1);
    const std::size_t num_blocks =
        static_cast<std::size_t>((samples + kMcBlock - 1) / kMcBlock);
    std::vector<std::array<std::uint64_t, 4>> block_counts(
        num_blocks, std::array<std::uint64_t, 4>{0, 0, 0, 0});

    parallel_for_chunks(num_blocks, workers, [&](std::size_t b) {
        Xoshiro256pp rng(derive_seed(seed, b));
        const std::uint64_t begin = b * kMcBlock;
        const std::uint64_t end = std::min(samples, begin + kMcBlock);
        auto& counts = block_counts[b];
        for (std::uint64_t i = begin; i < end; ++i) {
            const std::uint64_t x = rng.next() & mask;
            std::uint64_t flips = 0;
            for (int j = 0; j < n; ++j)
                flips |= std::uint64_t{rng.bernoulli(flip_probability)} << j;
            const std::uint64_t y = x ^ flips;
            counts[2 * f.bit(x) + g.bit(y)] += 1;
        }
    });

    std::array<std::uint64_t, 4> total{0, 0, 0, 0};
    for (const auto& counts : block_counts)
        for (int c = 0; c < 4; ++c) total[c] += counts[c];

    MonteCarloJoint out;
    out.samples = samples;
    out.seed = seed;
    const double denom = static_cast<double>(samples);
    out.joint.pp = static_cast<double>(total[0]) / denom;
    out.joint.pm = static_cast<double>(total[1]) / denom;
    out.joint.mp = static_cast<double>(total[2]) / denom;
    out.joint.mm = static_cast<double>(total[3]) / denom;
    auto se = [denom](double p) { return std::sqrt(p * (1.0 - p) / denom); };
    out.se_pp = se(out.joint.pp);
    out.se_pm = se(out.joint.pm);
    out.se_mp = se(out.joint.mp);
    out.se_mm = se(out.joint.mm);
    return out;
}

}  // namespace boolcube
