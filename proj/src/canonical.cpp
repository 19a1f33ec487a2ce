#include "boolcube/canonical.hpp"

#include <algorithm>
#include <array>
#include <mutex>

namespace boolcube {

namespace {

void check_canonical_dimension(int n) {
    if (n < 1) throw DimensionMismatch("dimension must be at least 1");
    if (n > kMaxCanonicalDimension)
        throw DimensionTooLarge("orbit enumeration is limited to dimension " +
                                std::to_string(kMaxCanonicalDimension));
}

// Point permutation induced by a symmetry: maps a table to the transformed
// table, one point lookup per entry.
std::uint64_t transform_table(std::uint64_t table, int n,
                              const InputSymmetry& s) {
    const std::uint64_t size = std::uint64_t{1} << n;
    std::uint64_t out = 0;
    for (std::uint64_t m = 0; m < size; ++m) {
        std::uint64_t mp = 0;
        for (int j = 0; j < n; ++j) {
            const std::uint64_t src = (m >> s.perm[j]) & 1u;
            mp |= (src ^ ((s.flips >> j) & 1u)) << j;
        }
        const std::uint64_t bit = ((table >> mp) & 1u) ^ s.negate_output;
        out |= bit << m;
    }
    return out;
}

std::vector<InputSymmetry> build_symmetries(int n) {
    std::vector<int> perm(n);
    for (int j = 0; j < n; ++j) perm[j] = j;
    std::vector<InputSymmetry> out;
    do {
        for (std::uint32_t flips = 0; flips < (1u << n); ++flips) {
            for (int negate = 0; negate < 2; ++negate) {
                InputSymmetry s;
                s.perm = perm;
                s.flips = flips;
                s.negate_output = negate != 0;
                out.push_back(std::move(s));
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

const std::vector<InputSymmetry>& all_symmetries(int n) {
    check_canonical_dimension(n);
    static std::array<std::vector<InputSymmetry>, kMaxCanonicalDimension + 1>
        cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    if (cache[n].empty()) cache[n] = build_symmetries(n);
    return cache[n];
}

CanonicalKey canonicalize(const BooleanFunction& f) {
    check_canonical_dimension(f.n());
    const std::uint64_t table = f.table_bits();
    std::uint64_t best = table;
    for (const InputSymmetry& s : all_symmetries(f.n()))
        best = std::min(best, transform_table(table, f.n(), s));
    return {f.n(), best};
}

const std::vector<std::uint64_t>& canonical_representatives(int n) {
    check_canonical_dimension(n);
    if (n > 4)
        throw DimensionTooLarge(
            "representative enumeration is limited to dimension 4");

    static std::array<std::vector<std::uint64_t>, 5> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto& reps = cache[n];
    if (!reps.empty()) return reps;

    const std::uint64_t tables = std::uint64_t{1} << (std::uint64_t{1} << n);
    const auto& symmetries = all_symmetries(n);
    std::vector<bool> seen(tables, false);
    for (std::uint64_t t = 0; t < tables; ++t) {
        if (seen[t]) continue;
        // t is the smallest member of a fresh orbit: anything smaller would
        // have marked it already.
        reps.push_back(t);
        for (const InputSymmetry& s : symmetries)
            seen[transform_table(t, n, s)] = true;
    }
    return reps;
}

}  // namespace boolcube
