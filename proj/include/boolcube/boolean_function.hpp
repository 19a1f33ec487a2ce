#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "boolcube/errors.hpp"

namespace boolcube {

/*
 * Conventions used throughout the library.
 *
 * Points of the n-dimensional sign cube {-1,+1}^n are indexed by
 * m in [0, 2^n): bit i of m is set iff coordinate x_{i+1} = -1, so m = 0 is
 * the all-(+1) point. Function values are stored one bit per point:
 * bit m = 0 encodes f = +1, bit m = 1 encodes f = -1. The all-zero table is
 * the constant +1 function.
 *
 * Subsets S of {1..n} use the same bit encoding (bit i <=> element i+1), and
 * the parity chi_S(x) = prod_{i in S} x_i evaluates at point m to
 * (-1)^popcount(S & m).
 *
 * The text form is "n=<K>:<hex>" with ceil(2^K / 4) lowercase hex digits,
 * least significant digit first, and table bit m sitting at bit (m mod 4) of
 * digit floor(m / 4). Examples: "n=2:a" is the first dictator x_1,
 * "n=2:6" is x_1 x_2, "n=2:0" is constant +1.
 */

inline constexpr int kMaxDimension = 20;

class BooleanFunction {
public:
    // Constant +1 in dimension n.
    explicit BooleanFunction(int n);

    // value must be +1 or -1.
    static BooleanFunction constant(int n, int value);

    // The dictator chi_i, 1 <= i <= n.
    static BooleanFunction dictator(int n, int i);

    // The parity chi_S for a subset mask; mask 0 is constant +1.
    static BooleanFunction parity(int n, std::uint32_t mask);

    // Parses the "n=<K>:<hex>" form; rejects malformed input with ParseError
    // carrying the offending byte offset.
    static BooleanFunction parse(const std::string& text);

    // Rebuilds a function from its table packed into a word (n <= 6).
    static BooleanFunction from_table_bits(int n, std::uint64_t bits);

    int n() const { return n_; }
    std::uint64_t size() const { return std::uint64_t{1} << n_; }

    bool bit(std::uint64_t m) const {
        return (words_[m >> 6] >> (m & 63)) & 1u;
    }
    void set_bit(std::uint64_t m, bool v);
    int value(std::uint64_t m) const { return bit(m) ? -1 : +1; }

    // Number of points where f = -1.
    std::uint64_t count_minus_ones() const;

    // Table packed into a single word (n <= 6 only).
    std::uint64_t table_bits() const;

    std::string to_string() const;

    BooleanFunction negated() const;

    const std::vector<std::uint64_t>& words() const { return words_; }

    bool operator==(const BooleanFunction&) const = default;

private:
    int n_;
    std::vector<std::uint64_t> words_;
};

// A signed permutation of the coordinates plus optional output negation:
// (s.f)(x) = nu * f(u) with u_j = eps_j * x_{perm[j]} (0-based j; eps_j = -1
// iff bit j of flips is set, nu = -1 iff negate_output).
struct InputSymmetry {
    std::vector<int> perm;
    std::uint32_t flips = 0;
    bool negate_output = false;

    static InputSymmetry identity(int n);
    InputSymmetry inverse() const;
};

// first-then-second composition: apply_symmetry(f, compose(s, t)) equals
// apply_symmetry(apply_symmetry(f, s), t).
InputSymmetry compose(const InputSymmetry& s, const InputSymmetry& t);

BooleanFunction apply_symmetry(const BooleanFunction& f, const InputSymmetry& s);

}  // namespace boolcube
