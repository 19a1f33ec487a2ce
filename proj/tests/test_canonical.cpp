#include <doctest.h>

#include <set>

#include "boolcube/canonical.hpp"
#include "boolcube/rng.hpp"

using namespace boolcube;

namespace {

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

TEST_CASE("symmetry group has the right size") {
    CHECK(all_symmetries(1).size() == 4);
    CHECK(all_symmetries(2).size() == 16);
    CHECK(all_symmetries(3).size() == 96);
    CHECK(all_symmetries(4).size() == 768);
}

TEST_CASE("class counts are the known values") {
    CHECK(canonical_representatives(1).size() == 2);
    CHECK(canonical_representatives(2).size() == 4);
    CHECK(canonical_representatives(3).size() == 14);
    CHECK(canonical_representatives(4).size() == 222);
}

TEST_CASE("canonical key is invariant and idempotent") {
    Xoshiro256pp rng(80);
    for (int n = 1; n <= 5; ++n) {
        for (int rep = 0; rep < 12; ++rep) {
            const BooleanFunction f = random_function(n, rng);
            const CanonicalKey key = canonicalize(f);
            const InputSymmetry s = random_symmetry(n, rng);
            CHECK(canonicalize(apply_symmetry(f, s)) == key);
            // The representative is its own representative.
            CHECK(canonicalize(key.function()) == key);
            CHECK(key.table <= f.table_bits());
        }
    }
}

TEST_CASE("representatives are exactly the fixed points of canonicalize") {
    for (int n = 1; n <= 3; ++n) {
        const auto& reps = canonical_representatives(n);
        std::set<std::uint64_t> rep_set(reps.begin(), reps.end());
        const std::uint64_t tables = std::uint64_t{1} << (std::uint64_t{1} << n);
        for (std::uint64_t t = 0; t < tables; ++t) {
            const CanonicalKey key =
                canonicalize(BooleanFunction::from_table_bits(n, t));
            CHECK(rep_set.count(key.table) == 1);
            if (rep_set.count(t)) CHECK(key.table == t);
        }
    }
}

TEST_CASE("orbit structure of named functions") {
    // All dictators and their negations share one orbit; so do the constants.
    const CanonicalKey d = canonicalize(BooleanFunction::dictator(3, 1));
    for (int i = 1; i <= 3; ++i) {
        CHECK(canonicalize(BooleanFunction::dictator(3, i)) == d);
        CHECK(canonicalize(BooleanFunction::dictator(3, i).negated()) == d);
    }
    const CanonicalKey c = canonicalize(BooleanFunction(3));
    CHECK(canonicalize(BooleanFunction::constant(3, -1)) == c);
    CHECK(c != d);

    // Parities of equal degree are equivalent, distinct degrees are not.
    CHECK(canonicalize(BooleanFunction::parity(3, 0b011)) ==
          canonicalize(BooleanFunction::parity(3, 0b110)));
    CHECK(canonicalize(BooleanFunction::parity(3, 0b011)) !=
          canonicalize(BooleanFunction::parity(3, 0b111)));

    // Constant is the all-zero table, so its key is zero; the dictator orbit
    // contains "n=2:a" = table 0b1010, whose minimum is 0b0011... the exact
    // value only needs to be stable, checked via the n = 2 class list.
    const auto& reps2 = canonical_representatives(2);
    CHECK(reps2[0] == 0);  // constants
    CHECK(std::is_sorted(reps2.begin(), reps2.end()));
}

TEST_CASE("dimension limits") {
    CHECK_THROWS_AS(canonicalize(BooleanFunction(7)), DimensionTooLarge);
    CHECK_THROWS_AS(canonical_representatives(5), DimensionTooLarge);
    CHECK_THROWS_AS(all_symmetries(7), DimensionTooLarge);
}
