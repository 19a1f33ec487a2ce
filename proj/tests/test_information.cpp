#include <doctest.h>

#include <cmath>
#include <vector>

#include "boolcube/information.hpp"
#include "boolcube/rng.hpp"

using namespace boolcube;

namespace {

BooleanFunction random_function(int n, Xoshiro256pp& rng) {
    BooleanFunction f(n);
    for (std::uint64_t m = 0; m < f.size(); ++m)
        if (rng.next() & 1u) f.set_bit(m, true);
    return f;
}

}  // namespace

TEST_CASE("binary entropy landmarks") {
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    // h(3/4) = 2 - (3/4) log2 3, an independent closed form.
    CHECK(binary_entropy(0.75) ==
          doctest::Approx(2.0 - 0.75 * std::log2(3.0)).epsilon(1e-15));
    CHECK(binary_entropy(0.25) == binary_entropy(0.75));
    CHECK(binary_entropy(1.0 + 5e-13) == 0.0);
    CHECK_THROWS_AS(binary_entropy(1.1), DomainError);
    CHECK_THROWS_AS(binary_entropy(-0.1), DomainError);
}

TEST_CASE("entropy landmarks") {
    const std::vector<double> uniform4 = {0.25, 0.25, 0.25, 0.25};
    CHECK(entropy(uniform4) == 2.0);
    const std::vector<double> point = {1.0, 0.0, 0.0};
    CHECK(entropy(point) == 0.0);
    const std::vector<double> dict = {0.375, 0.125, 0.125, 0.375};
    CHECK(entropy(dict) == doctest::Approx(1.0 + binary_entropy(0.75)).epsilon(1e-15));
    const std::vector<double> bad_sum = {0.5, 0.4};
    CHECK_THROWS_AS(entropy(bad_sum), InvalidDistribution);
    const std::vector<double> negative = {1.1, -0.1};
    CHECK_THROWS_AS(entropy(negative), InvalidDistribution);
}

TEST_CASE("xi landmarks") {
    CHECK(xi(0.0, 0.3, 0.8) == 0.0);

    // Dictator pair: theta = rho/4 at a = b = 1/2 gives 1 - h((1+rho)/2).
    for (double rho : {0.1, 0.5, 0.9}) {
        CHECK(xi(rho / 4, 0.5, 0.5) ==
              doctest::Approx(1.0 - binary_entropy((1 + rho) / 2)).epsilon(1e-14));
    }

    // Two-variable parity pair at rho = 1/2: theta = 1/16.
    CHECK(xi(0.0625, 0.5, 0.5) ==
          doctest::Approx(1.0 - binary_entropy(0.625)).epsilon(1e-14));

    CHECK_THROWS_AS(xi(0.3, 0.5, 0.5), ThetaOutOfRange);
    CHECK_THROWS_AS(xi(-0.3, 0.5, 0.5), ThetaOutOfRange);
}

TEST_CASE("xi is nonnegative and strictly convex in theta") {
    // Slices at fixed marginals; convexity checked by second differences.
    Xoshiro256pp rng(57);
    for (int rep = 0; rep < 20; ++rep) {
        const double a = 0.2 + 0.6 * rng.uniform01();
        const double b = 0.2 + 0.6 * rng.uniform01();
        const double lo = -std::min((1 - a) * (1 - b), a * b) * 0.999;
        const double hi = std::min(a * (1 - b), (1 - a) * b) * 0.999;
        const double step = (hi - lo) / 32;
        double prev = xi(lo, a, b);
        double curr = xi(lo + step, a, b);
        for (int k = 2; k <= 32; ++k) {
            const double next = xi(lo + k * step, a, b);
            CHECK(curr >= -1e-14);
            CHECK(next + prev - 2 * curr >= -1e-10);
            prev = curr;
            curr = next;
        }
    }
}

TEST_CASE("mutual information landmarks") {
    CHECK(mutual_information({0.25, 0.25, 0.25, 0.25, false}) == 0.0);
    CHECK(mutual_information({0.5, 0.0, 0.0, 0.5, false}) == 1.0);
    // Product law has zero information.
    CHECK(mutual_information({0.28, 0.42, 0.12, 0.18, false}) ==
          doctest::Approx(0.0).epsilon(1e-14));
    // Symmetric under swapping the two sides.
    const Joint2x2 j{0.4, 0.15, 0.05, 0.4, false};
    CHECK(mutual_information(j) == mutual_information(j.transposed()));
    // Bounded by each marginal entropy.
    CHECK(mutual_information(j) <= binary_entropy(j.a()));
    CHECK(mutual_information(j) <= binary_entropy(j.b()));
}

TEST_CASE("source information landmarks") {
    CHECK(source_mi(0.0) == 0.0);
    CHECK(source_mi(1.0) == 1.0);
    CHECK(source_mi(-1.0) == 1.0);
    CHECK(source_mi(0.5) ==
          doctest::Approx(1.0 - binary_entropy(0.75)).epsilon(1e-15));
    CHECK(source_mi(0.5) == doctest::Approx(0.188721875540867).epsilon(1e-12));
    CHECK(source_mi(-0.5) == source_mi(0.5));
    CHECK_THROWS_AS(source_mi(1.01), DomainError);

    // Same number through the generic 2x2 route.
    for (double rho = -0.9; rho <= 0.95; rho += 0.1)
        CHECK(mutual_information(single_letter_joint(SourceModel(rho))) ==
              doctest::Approx(source_mi(rho)).epsilon(1e-13));
}

TEST_CASE("gap landmarks") {
    // Matched dictators achieve the source information exactly.
    for (int n = 1; n <= 5; ++n) {
        for (int i = 1; i <= n; ++i) {
            const BooleanFunction d = BooleanFunction::dictator(n, i);
            for (double rho = 0.1; rho <= 0.91; rho += 0.1)
                CHECK(std::abs(gap(d, d, rho)) <= 1e-12);
        }
    }

    // Two-variable parity pair at rho = 1/2: the information falls short by
    // h(5/8) - h(3/4).
    const BooleanFunction x = BooleanFunction::parity(2, 0b11);
    const double expected = binary_entropy(0.625) - binary_entropy(0.75);
    CHECK(gap(x, x, 0.5) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(gap(x, x, 0.5) == doctest::Approx(0.143155878466).epsilon(1e-9));
}

TEST_CASE("gap is zero at independence and nonnegative exhaustively at n=2") {
    for (std::uint64_t ft = 0; ft < 16; ++ft) {
        for (std::uint64_t gt = 0; gt < 16; ++gt) {
            const FourierExpansion fe =
                wht(BooleanFunction::from_table_bits(2, ft));
            const FourierExpansion ge =
                wht(BooleanFunction::from_table_bits(2, gt));
            CHECK(std::abs(gap(fe, ge, 0.0)) <= 1e-14);
            for (double rho : {0.15, 0.5, 0.85})
                CHECK(gap(fe, ge, rho) >= -kGapTolerance);
        }
    }
}

TEST_CASE("gap holds for negative correlation by symmetry") {
    Xoshiro256pp rng(58);
    for (int rep = 0; rep < 20; ++rep) {
        const FourierExpansion fe = wht(random_function(3, rng));
        const FourierExpansion ge = wht(random_function(3, rng));
        CHECK(gap(fe, ge, -0.6) >= -kGapTolerance);
    }
}
