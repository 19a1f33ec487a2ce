#include "boolcube/boolean_function.hpp"

#include <bit>
#include <cctype>

namespace boolcube {

namespace {

void check_dimension(int n) {
    if (n < 1) throw DimensionMismatch("dimension must be at least 1");
    if (n > kMaxDimension)
        throw DimensionTooLarge("dimension " + std::to_string(n) + " exceeds " +
                                std::to_string(kMaxDimension));
}

std::size_t word_count(int n) {
    return std::size_t{1} << (n > 6 ? n - 6 : 0);
}

}  // namespace

BooleanFunction::BooleanFunction(int n) : n_(n) {
    check_dimension(n);
    words_.assign(word_count(n), 0);
}

BooleanFunction BooleanFunction::constant(int n, int value) {
    if (value != 1 && value != -1)
        throw DomainError("constant value must be +1 or -1");
    BooleanFunction f(n);
    if (value == -1) {
        const std::uint64_t all = ~std::uint64_t{0};
        for (auto& w : f.words_) w = all;
        if (n < 6) f.words_[0] = all >> (64 - f.size());
    }
    return f;
}

BooleanFunction BooleanFunction::dictator(int n, int i) {
    check_dimension(n);
    if (i < 1 || i > n)
        throw CoordinateOutOfRange("dictator index " + std::to_string(i) +
                                   " not in 1.." + std::to_string(n));
    return parity(n, std::uint32_t{1} << (i - 1));
}

BooleanFunction BooleanFunction::parity(int n, std::uint32_t mask) {
    check_dimension(n);
    if (mask >> n)
        throw CoordinateOutOfRange("subset mask has bits above dimension " +
                                   std::to_string(n));
    BooleanFunction f(n);
    for (std::uint64_t m = 0; m < f.size(); ++m)
        if (std::popcount(m & mask) & 1) f.set_bit(m, true);
    return f;
}

void BooleanFunction::set_bit(std::uint64_t m, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (m & 63);
    if (v)
        words_[m >> 6] |= bit;
    else
        words_[m >> 6] &= ~bit;
}

std::uint64_t BooleanFunction::count_minus_ones() const {
    std::uint64_t total = 0;
    for (auto w : words_) total += std::popcount(w);
    return total;
}

std::uint64_t BooleanFunction::table_bits() const {
    if (n_ > 6)
        throw DimensionTooLarge("table does not fit one word above dimension 6");
    return words_[0];
}

BooleanFunction BooleanFunction::from_table_bits(int n, std::uint64_t bits) {
    check_dimension(n);
    if (n > 6)
        throw DimensionTooLarge("table does not fit one word above dimension 6");
    BooleanFunction f(n);
    if (n < 6 && (bits >> f.size()))
        throw DomainError("table bits set beyond 2^n");
    f.words_[0] = bits;
    return f;
}

BooleanFunction BooleanFunction::negated() const {
    BooleanFunction g(*this);
    for (auto& w : g.words_) w = ~w;
    if (n_ < 6) g.words_[0] &= (~std::uint64_t{0}) >> (64 - size());
    return g;
}

std::string BooleanFunction::to_string() const {
    static const char* digits = "0123456789abcdef";
    const std::uint64_t ndigits = (size() + 3) / 4;
    std::string out = "n=" + std::to_string(n_) + ":";
    for (std::uint64_t d = 0; d < ndigits; ++d) {
        unsigned v = 0;
        for (unsigned j = 0; j < 4; ++j) {
            const std::uint64_t m = 4 * d + j;
            if (m < size() && bit(m)) v |= 1u << j;
        }
        out += digits[v];
    }
    return out;
}

BooleanFunction BooleanFunction::parse(const std::string& text) {
    std::size_t pos = 0;
    auto expect = [&](char c) {
        if (pos >= text.size() || text[pos] != c)
            throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    };
    expect('n');
    expect('=');
    const std::size_t dim_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos == dim_start) throw ParseError("expected dimension digits", pos);
    if (pos - dim_start > 2) throw ParseError("dimension out of range", dim_start);
    const int n = std::stoi(text.substr(dim_start, pos - dim_start));
    if (n < 1 || n > kMaxDimension)
        throw ParseError("dimension out of range", dim_start);
    expect(':');

    BooleanFunction f(n);
    const std::uint64_t ndigits = (f.size() + 3) / 4;
    for (std::uint64_t d = 0; d < ndigits; ++d, ++pos) {
        if (pos >= text.size()) throw ParseError("truth table too short", pos);
        const char c = text[pos];
        unsigned v;
        if (c >= '0' && c <= '9')
            v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
            v = static_cast<unsigned>(c - 'a') + 10;
        else
            throw ParseError("invalid hex digit", pos);
        for (unsigned j = 0; j < 4; ++j) {
            const std::uint64_t m = 4 * d + j;
            if (m >= f.size()) {
                if ((v >> j) & 1u)
                    throw ParseError("padding bits must be zero", pos);
            } else if ((v >> j) & 1u) {
                f.set_bit(m, true);
            }
        }
    }
    if (pos != text.size()) throw ParseError("trailing characters", pos);
    return f;
}

InputSymmetry InputSymmetry::identity(int n) {
    check_dimension(n);
    InputSymmetry s;
    s.perm.resize(n);
    for (int j = 0; j < n; ++j) s.perm[j] = j;
    return s;
}

InputSymmetry InputSymmetry::inverse() const {
    const int n = static_cast<int>(perm.size());
    InputSymmetry inv;
    inv.perm.assign(n, 0);
    for (int j = 0; j < n; ++j) inv.perm[perm[j]] = j;
    for (int k = 0; k < n; ++k)
        if ((flips >> inv.perm[k]) & 1u) inv.flips |= std::uint32_t{1} << k;
    inv.negate_output = negate_output;
    return inv;
}

InputSymmetry compose(const InputSymmetry& s, const InputSymmetry& t) {
    if (s.perm.size() != t.perm.size())
        throw DimensionMismatch("composing symmetries of different dimensions");
    const int n = static_cast<int>(s.perm.size());
    InputSymmetry out;
    out.perm.resize(n);
    for (int j = 0; j < n; ++j) out.perm[j] = t.perm[s.perm[j]];
    for (int j = 0; j < n; ++j) {
        const bool eps = ((s.flips >> j) & 1u) ^ ((t.flips >> s.perm[j]) & 1u);
        if (eps) out.flips |= std::uint32_t{1} << j;
    }
    out.negate_output = s.negate_output != t.negate_output;
    return out;
}

BooleanFunction apply_symmetry(const BooleanFunction& f, const InputSymmetry& s) {
    const int n = f.n();
    if (static_cast<int>(s.perm.size()) != n)
        throw DimensionMismatch("symmetry dimension does not match function");
    std::vector<bool> seen(n, false);
    for (int j = 0; j < n; ++j) {
        if (s.perm[j] < 0 || s.perm[j] >= n || seen[s.perm[j]])
            throw DomainError("not a permutation");
        seen[s.perm[j]] = true;
    }
    if (n < 32 && (s.flips >> n))
        throw CoordinateOutOfRange("flip bits above dimension");

    BooleanFunction g(n);
    for (std::uint64_t m = 0; m < f.size(); ++m) {
        std::uint64_t mp = 0;
        for (int j = 0; j < n; ++j) {
            const std::uint64_t src = (m >> s.perm[j]) & 1u;
            mp |= (src ^ ((s.flips >> j) & 1u)) << j;
        }
        g.set_bit(m, f.bit(mp) != s.negate_output);
    }
    return g;
}

}  // namespace boolcube
