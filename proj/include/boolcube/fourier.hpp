#pragma once

#include <cstdint>
#include <vector>

#include "boolcube/boolean_function.hpp"

namespace boolcube {

// Fourier spectrum held exactly: scaled_coeffs[S] = 2^n * fhat(S), an integer
// in [-2^n, 2^n]. Sum of squares of scaled_coeffs equals 4^n (Parseval).
struct FourierExpansion {
    int n = 0;
    std::vector<std::int32_t> scaled_coeffs;

    std::int64_t scale() const { return std::int64_t{1} << n; }

    double coeff(std::uint32_t subset) const {
        return static_cast<double>(scaled_coeffs[subset]) /
               static_cast<double>(scale());
    }

    // Bias a = P(f = +1) = (1 + fhat(empty)) / 2; exact dyadic.
    double bias() const {
        return static_cast<double>(scale() + scaled_coeffs[0]) /
               static_cast<double>(std::int64_t{2} << n);
    }
};

// In-place length-preserving Walsh butterfly; out[S] = sum_m in[m] *
// (-1)^popcount(S & m). Self-inverse up to the factor 2^n.
void walsh_transform(std::vector<std::int64_t>& data);
void walsh_transform(std::vector<double>& data);

FourierExpansion wht(const BooleanFunction& f);

// Throws NotBoolean unless every reconstructed value is exactly +-1.
BooleanFunction inverse_wht(const FourierExpansion& expansion);

// Coefficients of T_rho f: fhat(S) * rho^|S|, indexed by subset.
std::vector<double> noise_operator(const FourierExpansion& expansion, double rho);

// Pointwise values (T_rho f)(y) for every point index; each lies in [-1, 1]
// up to rounding.
std::vector<double> noise_operator_values(const FourierExpansion& expansion,
                                          double rho);

}  // namespace boolcube
