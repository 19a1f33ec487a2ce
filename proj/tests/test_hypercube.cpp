#include <doctest.h>

#include <bit>
#include <cstdint>
#include <vector>

#include "boolcube/boolean_function.hpp"
#include "boolcube/fourier.hpp"
#include "boolcube/rng.hpp"

using namespace boolcube;

namespace {

// Independent quadratic-time spectrum: scaled[S] = sum_m f(m) * chi_S(m).
std::vector<std::int64_t> naive_spectrum(const BooleanFunction& f) {
    std::vector<std::int64_t> out(f.size(), 0);
    for (std::uint64_t s = 0; s < f.size(); ++s)
        for (std::uint64_t m = 0; m < f.size(); ++m)
            out[s] += (std::popcount(s & m) & 1) ? -f.value(m) : f.value(m);
    return out;
}

BooleanFunction random_function(int n, Xoshiro256pp& rng) {
    BooleanFunction f(n);
    for (std::uint64_t m = 0; m < f.size(); ++m)
        if (rng.next() & 1u) f.set_bit(m, true);
    return f;
}

InputSymmetry random_symmetry(int n, Xoshiro256pp& rng) {
    InputSymmetry s = InputSymmetry::identity(n);
    for (int j = n - 1; j > 0; --j)
        std::swap(s.perm[j], s.perm[rng.below(j + 1)]);
    s.flips = static_cast<std::uint32_t>(rng.next()) & ((1u << n) - 1);
    s.negate_output = rng.next() & 1u;
    return s;
}

}  // namespace

TEST_CASE("table encoding and constructors") {
    const BooleanFunction one(3);
    for (std::uint64_t m = 0; m < 8; ++m) CHECK(one.value(m) == 1);
    CHECK(one == BooleanFunction::constant(3, +1));
    CHECK(BooleanFunction::constant(3, -1).count_minus_ones() == 8);

    // dictator(n, i) reads coordinate i, which is -1 exactly when bit i-1 of
    // the point index is set.
    const BooleanFunction d2 = BooleanFunction::dictator(4, 2);
    for (std::uint64_t m = 0; m < 16; ++m)
        CHECK(d2.value(m) == (((m >> 1) & 1) ? -1 : +1));

    const BooleanFunction x12 = BooleanFunction::parity(2, 0b11);
    CHECK(x12.value(0) == 1);
    CHECK(x12.value(1) == -1);
    CHECK(x12.value(2) == -1);
    CHECK(x12.value(3) == 1);

    CHECK_THROWS_AS(BooleanFunction::dictator(3, 0), CoordinateOutOfRange);
    CHECK_THROWS_AS(BooleanFunction::dictator(3, 4), CoordinateOutOfRange);
    CHECK_THROWS_AS(BooleanFunction::parity(2, 0b100), CoordinateOutOfRange);
    CHECK_THROWS_AS(BooleanFunction(0), DimensionMismatch);
    CHECK_THROWS_AS(BooleanFunction(21), DimensionTooLarge);
    CHECK_THROWS_AS(BooleanFunction::constant(2, 0), DomainError);
}

TEST_CASE("text form round trip") {
    CHECK(BooleanFunction::dictator(2, 1).to_string() == "n=2:a");
    CHECK(BooleanFunction::parity(2, 0b11).to_string() == "n=2:6");
    CHECK(BooleanFunction(2).to_string() == "n=2:0");
    CHECK(BooleanFunction(1).to_string() == "n=1:0");
    CHECK(BooleanFunction::constant(3, -1).to_string() == "n=3:ff");

    CHECK(BooleanFunction::parse("n=2:a") == BooleanFunction::dictator(2, 1));
    CHECK(BooleanFunction::parse("n=2:6") == BooleanFunction::parity(2, 0b11));
    CHECK(BooleanFunction::parse("n=1:2") == BooleanFunction::dictator(1, 1));

    Xoshiro256pp rng(41);
    for (int n = 1; n <= 8; ++n) {
        for (int rep = 0; rep < 16; ++rep) {
            const BooleanFunction f = random_function(n, rng);
            CHECK(BooleanFunction::parse(f.to_string()) == f);
        }
    }
}

TEST_CASE("text form rejects malformed input") {
    CHECK_THROWS_AS(BooleanFunction::parse(""), ParseError);
    CHECK_THROWS_AS(BooleanFunction::parse("2:a"), ParseError);
    CHECK_THROWS_AS(BooleanFunction::parse("n=:a"), ParseError);
    CHECK_THROWS_AS(BooleanFunction::parse("n=0:a"), ParseError);
    CHECK_THROWS_AS(BooleanFunction::parse("n=21:0"), ParseError);
    CHECK_THROWS_AS(BooleanFunction::parse("n=2"), ParseError);
    CHECK_THROWS_AS(BooleanFunction::parse("n=2:"), ParseError);
    CHECK_THROWS_AS(BooleanFunction::parse("n=2:ab"), ParseError);   // too long
    CHECK_THROWS_AS(BooleanFunction::parse("n=3:a"), ParseError);    // too short
    CHECK_THROWS_AS(BooleanFunction::parse("n=2:A"), ParseError);    // upper case
    CHECK_THROWS_AS(BooleanFunction::parse("n=2:g"), ParseError);
    CHECK_THROWS_AS(BooleanFunction::parse("n=1:4"), ParseError);    // padding bit
    CHECK_THROWS_AS(BooleanFunction::parse("n=2:a "), ParseError);

    try {
        BooleanFunction::parse("n=2:g");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("wht matches the quadratic-time oracle") {
    Xoshiro256pp rng(42);
    for (int n = 1; n <= 8; ++n) {
        for (int rep = 0; rep < 8; ++rep) {
            const BooleanFunction f = random_function(n, rng);
            const FourierExpansion fe = wht(f);
            const auto oracle = naive_spectrum(f);
            REQUIRE(fe.scaled_coeffs.size() == f.size());
            for (std::uint64_t s = 0; s < f.size(); ++s)
                CHECK(fe.scaled_coeffs[s] == oracle[s]);
        }
    }
}

TEST_CASE("known spectra") {
    const FourierExpansion d = wht(BooleanFunction::dictator(1, 1));
    CHECK(d.scaled_coeffs == std::vector<std::int32_t>{0, 2});

    const FourierExpansion c = wht(BooleanFunction(2));
    CHECK(c.scaled_coeffs == std::vector<std::int32_t>{4, 0, 0, 0});

    const FourierExpansion x = wht(BooleanFunction::parity(2, 0b11));
    CHECK(x.scaled_coeffs == std::vector<std::int32_t>{0, 0, 0, 4});

    // Every parity has a single nonzero coefficient, at its own subset.
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
        const FourierExpansion p = wht(BooleanFunction::parity(4, mask));
        for (std::uint32_t s = 0; s < 16; ++s)
            CHECK(p.scaled_coeffs[s] == (s == mask ? 16 : 0));
    }

    CHECK(wht(BooleanFunction::dictator(5, 3)).bias() == 0.5);
    CHECK(wht(BooleanFunction(4)).bias() == 1.0);
    CHECK(wht(BooleanFunction::constant(4, -1)).bias() == 0.0);
}

TEST_CASE("Parseval holds exactly") {
    Xoshiro256pp rng(43);
    for (int n = 1; n <= 10; ++n) {
        for (int rep = 0; rep < 8; ++rep) {
            const FourierExpansion fe = wht(random_function(n, rng));
            std::int64_t sum = 0;
            for (const auto v : fe.scaled_coeffs)
                sum += std::int64_t{v} * v;
            CHECK(sum == (std::int64_t{1} << (2 * n)));
        }
    }
}

TEST_CASE("wht round trips bit-exactly") {
    Xoshiro256pp rng(44);
    for (int n = 1; n <= 10; ++n) {
        for (int rep = 0; rep < 8; ++rep) {
            const BooleanFunction f = random_function(n, rng);
            CHECK(inverse_wht(wht(f)) == f);
        }
    }
}

TEST_CASE("inverse_wht rejects non-Boolean spectra") {
    FourierExpansion bad;
    bad.n = 2;
    bad.scaled_coeffs = {2, 0, 0, 0};  // constant 1/2
    CHECK_THROWS_AS(inverse_wht(bad), NotBoolean);

    bad.scaled_coeffs = {0, 0, 0};
    CHECK_THROWS_AS(inverse_wht(bad), DimensionMismatch);

    // Valid spectrum of a real Boolean function passes.
    bad.scaled_coeffs = {4, 0, 0, 0};
    CHECK(inverse_wht(bad) == BooleanFunction(2));
}

TEST_CASE("noise operator damps by degree") {
    const FourierExpansion x = wht(BooleanFunction::parity(2, 0b11));
    const auto half = noise_operator(x, 0.5);
    CHECK(half[0] == 0.0);
    CHECK(half[1] == 0.0);
    CHECK(half[2] == 0.0);
    CHECK(half[3] == doctest::Approx(0.25).epsilon(1e-15));

    Xoshiro256pp rng(45);
    const BooleanFunction f = random_function(4, rng);
    const FourierExpansion fe = wht(f);
    const auto same = noise_operator(fe, 1.0);
    const auto dead = noise_operator(fe, 0.0);
    for (std::uint32_t s = 0; s < 16; ++s) {
        CHECK(same[s] == fe.coeff(s));
        CHECK(dead[s] == (s == 0 ? fe.coeff(0) : 0.0));
    }
    CHECK_THROWS_AS(noise_operator(fe, 1.5), DomainError);
}

TEST_CASE("noise operator values average the function") {
    // (T_rho f)(y) at rho = 1 is f itself; at rho = 0 the mean of f.
    Xoshiro256pp rng(46);
    const BooleanFunction f = random_function(5, rng);
    const FourierExpansion fe = wht(f);
    const auto at_one = noise_operator_values(fe, 1.0);
    const auto at_zero = noise_operator_values(fe, 0.0);
    for (std::uint64_t m = 0; m < f.size(); ++m) {
        CHECK(at_one[m] == doctest::Approx(f.value(m)).epsilon(1e-12));
        CHECK(at_zero[m] == doctest::Approx(fe.coeff(0)).epsilon(1e-12));
        CHECK(std::abs(noise_operator_values(fe, 0.37)[m]) <= 1.0 + 1e-12);
    }
}

TEST_CASE("symmetry action on points") {
    InputSymmetry swap12 = InputSymmetry::identity(2);
    std::swap(swap12.perm[0], swap12.perm[1]);
    CHECK(apply_symmetry(BooleanFunction::dictator(2, 1), swap12) ==
          BooleanFunction::dictator(2, 2));

    InputSymmetry flip1 = InputSymmetry::identity(2);
    flip1.flips = 0b01;
    CHECK(apply_symmetry(BooleanFunction::dictator(2, 1), flip1) ==
          BooleanFunction::dictator(2, 1).negated());

    InputSymmetry neg = InputSymmetry::identity(2);
    neg.negate_output = true;
    CHECK(apply_symmetry(BooleanFunction::parity(2, 0b11), neg) ==
          BooleanFunction::parity(2, 0b11).negated());
}

TEST_CASE("symmetry group laws") {
    Xoshiro256pp rng(47);
    for (int n = 1; n <= 5; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            const BooleanFunction f = random_function(n, rng);
            const InputSymmetry s = random_symmetry(n, rng);
            const InputSymmetry t = random_symmetry(n, rng);

            CHECK(apply_symmetry(f, InputSymmetry::identity(n)) == f);
            CHECK(apply_symmetry(apply_symmetry(f, s), s.inverse()) == f);
            CHECK(apply_symmetry(apply_symmetry(f, s), t) ==
                  apply_symmetry(f, compose(s, t)));
        }
    }
}

TEST_CASE("symmetries permute the spectrum up to sign") {
    // |fhat| values form the same multiset before and after, and Parseval is
    // untouched.
    Xoshiro256pp rng(48);
    for (int rep = 0; rep < 20; ++rep) {
        const BooleanFunction f = random_function(4, rng);
        const InputSymmetry s = random_symmetry(4, rng);
        auto abs_sorted = [](const FourierExpansion& fe) {
            std::vector<std::int32_t> v;
            for (auto c : fe.scaled_coeffs) v.push_back(c < 0 ? -c : c);
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(abs_sorted(wht(f)) == abs_sorted(wht(apply_symmetry(f, s))));
    }
}

TEST_CASE("symmetry input validation") {
    InputSymmetry bad = InputSymmetry::identity(3);
    bad.perm[0] = 1;  // duplicate
    CHECK_THROWS_AS(apply_symmetry(BooleanFunction(3), bad), DomainError);

    InputSymmetry wrong_dim = InputSymmetry::identity(2);
    CHECK_THROWS_AS(apply_symmetry(BooleanFunction(3), wrong_dim),
                    DimensionMismatch);

    InputSymmetry high_flip = InputSymmetry::identity(2);
    high_flip.flips = 0b100;
    CHECK_THROWS_AS(apply_symmetry(BooleanFunction(2), high_flip),
                    CoordinateOutOfRange);
}

TEST_CASE("table_bits round trip") {
    Xoshiro256pp rng(49);
    for (int n = 1; n <= 6; ++n) {
        const BooleanFunction f = random_function(n, rng);
        CHECK(BooleanFunction::from_table_bits(n, f.table_bits()) == f);
    }
    CHECK_THROWS_AS(BooleanFunction::from_table_bits(2, 0b10000), DomainError);
    CHECK_THROWS_AS(BooleanFunction(7).table_bits(), DimensionTooLarge);
}
