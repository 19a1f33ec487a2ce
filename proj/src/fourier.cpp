#include "boolcube/fourier.hpp"

#include <bit>
#include <cmath>

namespace boolcube {

namespace {

template <typename T>
void butterfly(std::vector<T>& data) {
    const std::size_t size = data.size();
    for (std::size_t half = 1; half < size; half <<= 1) {
        for (std::size_t block = 0; block < size; block += 2 * half) {
            for (std::size_t k = block; k < block + half; ++k) {
                const T lo = data[k];
                const T hi = data[k + half];
                data[k] = lo + hi;
                data[k + half] = lo - hi;
            }
        }
    }
}

void check_rho(double rho) {
    if (!(rho >= -1.0 && rho <= 1.0))
        throw DomainError("correlation must lie in [-1, 1]");
}

}  // namespace

void walsh_transform(std::vector<std::int64_t>& data) { butterfly(data); }
void walsh_transform(std::vector<double>& data) { butterfly(data); }

FourierExpansion wht(const BooleanFunction& f) {
    std::vector<std::int64_t> buf(f.size());
    for (std::uint64_t m = 0; m < f.size(); ++m) buf[m] = f.value(m);
    walsh_transform(buf);
    FourierExpansion out;
    out.n = f.n();
    out.scaled_coeffs.assign(buf.begin(), buf.end());
    return out;
}

BooleanFunction inverse_wht(const FourierExpansion& expansion) {
    const std::uint64_t size = std::uint64_t{1} << expansion.n;
    if (expansion.scaled_coeffs.size() != size)
        throw DimensionMismatch("coefficient vector length is not 2^n");
    std::vector<std::int64_t> buf(expansion.scaled_coeffs.begin(),
                                  expansion.scaled_coeffs.end());
    walsh_transform(buf);
    const std::int64_t full = std::int64_t{1} << expansion.n;
    BooleanFunction f(expansion.n);
    for (std::uint64_t m = 0; m < size; ++m) {
        if (buf[m] == -full)
            f.set_bit(m, true);
        else if (buf[m] != full)
            throw NotBoolean("reconstructed value at point " + std::to_string(m) +
                             " is not +-1");
    }
    return f;
}

std::vector<double> noise_operator(const FourierExpansion& expansion, double rho) {
    check_rho(rho);
    const double scale = static_cast<double>(expansion.scale());
    std::vector<double> out(expansion.scaled_coeffs.size());
    std::vector<double> powers(expansion.n + 1);
    powers[0] = 1.0;
    for (int k = 1; k <= expansion.n; ++k) powers[k] = powers[k - 1] * rho;
    for (std::size_t s = 0; s < out.size(); ++s)
        out[s] = static_cast<double>(expansion.scaled_coeffs[s]) / scale *
                 powers[std::popcount(s)];
    return out;
}

std::vector<double> noise_operator_values(const FourierExpansion& expansion,
                                          double rho) {
    std::vector<double> buf = noise_operator(expansion, rho);
    walsh_transform(buf);
    return buf;
}

}  // namespace boolcube
