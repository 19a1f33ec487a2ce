#include "boolcube/information.hpp"

#include <cmath>
#include <string>

namespace boolcube {

namespace {

double checked_probability(double p, const char* what) {
    if (p < 0.0 || p > 1.0) {
        if (p < -kProbabilitySlack || p > 1.0 + kProbabilitySlack)
            throw DomainError(std::string(what) + " " + std::to_string(p) +
                              " outside [0, 1]");
        p = p < 0.0 ? 0.0 : 1.0;
    }
    return p;
}

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double binary_entropy(double p) {
    p = checked_probability(p, "probability");
    return plogp(p) + plogp(1.0 - p);
}

double entropy(std::span<const double> pmf) {
    double sum = 0.0;
    double h = 0.0;
    for (const double p : pmf) {
        if (p < -kNegativeSlack)
            throw InvalidDistribution("negative mass " + std::to_string(p));
        if (p > 0.0) h += plogp(p);
        sum += p;
    }
    if (std::abs(sum - 1.0) >
        kProbabilitySlack * static_cast<double>(pmf.size() ? pmf.size() : 1))
        throw InvalidDistribution("mass sums to " + std::to_string(sum));
    return h;
}

double xi(double theta, double a, double b) {
    a = checked_probability(a, "marginal");
    b = checked_probability(b, "marginal");
    Joint2x2 joint;
    try {
        joint = joint_from_theta(theta, a, b);
    } catch (const NumericalInconsistency&) {
        throw ThetaOutOfRange("theta " + std::to_string(theta) +
                              " infeasible for marginals (" + std::to_string(a) +
                              ", " + std::to_string(b) + ")");
    }
    return mutual_information(joint);
}

double mutual_information(const Joint2x2& joint) {
    const double cells[4] = {joint.pp, joint.pm, joint.mp, joint.mm};
    const double joint_entropy = entropy(cells);
    return binary_entropy(joint.a()) + binary_entropy(joint.b()) - joint_entropy;
}

double source_mi(double rho) {
    if (!(rho >= -1.0 && rho <= 1.0))
        throw DomainError("correlation must lie in [-1, 1]");
    return 1.0 - binary_entropy((1.0 + std::abs(rho)) / 2.0);
}

double gap(const FourierExpansion& f, const FourierExpansion& g, double rho) {
    return source_mi(rho) - mutual_information(joint_distribution(f, g, rho));
}

double gap(const BooleanFunction& f, const BooleanFunction& g, double rho) {
    return gap(wht(f), wht(g), rho);
}

}  // namespace boolcube
