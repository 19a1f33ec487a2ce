#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "boolcube/boolean_function.hpp"

namespace boolcube {

// Orbit enumeration keeps whole truth tables in one word.
inline constexpr int kMaxCanonicalDimension = 6;

// Identifies the orbit of a function under coordinate permutations, coordinate
// sign flips, and output negation: the orbit member whose packed table is
// numerically smallest. Two functions share a key exactly when some symmetry
// maps one to the other.
struct CanonicalKey {
    int n = 0;
    std::uint64_t table = 0;

    auto operator<=>(const CanonicalKey&) const = default;

    BooleanFunction function() const {
        return BooleanFunction::from_table_bits(n, table);
    }
};

// All n! * 2^n * 2 symmetries, in a fixed order: permutations
// lexicographically, then flip masks ascending, then output negation last.
const std::vector<InputSymmetry>& all_symmetries(int n);

CanonicalKey canonicalize(const BooleanFunction& f);

// Packed tables of one representative per orbit, ascending; each is the
// smallest member of its orbit. Enumerates all 2^{2^n} tables, so n <= 4.
const std::vector<std::uint64_t>& canonical_representatives(int n);

}  // namespace boolcube
