#include "boolcube/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

#include "boolcube/parallel.hpp"
#include "boolcube/rng.hpp"

namespace boolcube {

namespace {

constexpr std::uint64_t kTableBlock = 64;   // f tables per work block
constexpr std::uint64_t kRepBlock = 8;      // representatives per work block
constexpr std::uint64_t kPairBlock = 4096;  // sampled pairs per work block
constexpr std::uint64_t kSampledBudgetCap = 100'000'000;

struct Fragment {
    std::uint64_t pairs = 0;
    double max_mi = -1.0;
    double worst = 0.0;
    std::vector<MaximizerEntry> maximizers;
};

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw DomainError("correlation grid is empty");
    for (const double rho : grid)
        if (!(rho >= -1.0 && rho <= 1.0))
            throw DomainError("correlation must lie in [-1, 1]");
}

std::vector<double> grid_source_mi(const std::vector<double>& grid) {
    std::vector<double> out(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) out[k] = source_mi(grid[k]);
    return out;
}

// Evaluates one pair across the grid and folds the outcome into a fragment.
// Key strings are only materialized for maximizer entries.
template <typename FKey, typename GKey>
void scan_pair(const FourierExpansion& fe, const FourierExpansion& ge,
               const std::vector<double>& grid, const std::vector<double>& smi,
               double tolerance, Fragment& frag, const FKey& f_key,
               const GKey& g_key) {
    const auto by_degree = spectral_products_by_degree(fe, ge);
    const double denom = std::ldexp(4.0, 2 * fe.n);
    const double a = fe.bias();
    const double b = ge.bias();
    frag.pairs += 1;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double rho = grid[k];
        double power = 1.0;
        double theta = 0.0;
        for (int d = 1; d <= fe.n; ++d) {
            power *= rho;
            theta += static_cast<double>(by_degree[d]) * power;
        }
        theta /= denom;
        const double mi = xi(theta, a, b);
        const double gap_value = smi[k] - mi;
        if (mi > frag.max_mi) frag.max_mi = mi;
        if (-gap_value > frag.worst) frag.worst = -gap_value;
        if (std::abs(gap_value) <= tolerance)
            frag.maximizers.push_back({f_key(), g_key(), rho, mi});
    }
}

std::string table_key(int n, std::uint64_t bits) {
    return BooleanFunction::from_table_bits(n, bits).to_string();
}

std::vector<FourierExpansion> all_spectra(int n) {
    const std::uint64_t tables = std::uint64_t{1} << (std::uint64_t{1} << n);
    std::vector<FourierExpansion> out;
    out.reserve(tables);
    for (std::uint64_t t = 0; t < tables; ++t)
        out.push_back(wht(BooleanFunction::from_table_bits(n, t)));
    return out;
}

VerificationReport merge_fragments(const std::vector<Fragment>& fragments) {
    VerificationReport report;
    for (const Fragment& frag : fragments) {
        report.pairs_scanned += frag.pairs;
        report.max_mi = std::max(report.max_mi, frag.max_mi);
        report.max_gap_violation = std::max(report.max_gap_violation, frag.worst);
        report.maximizers.insert(report.maximizers.end(),
                                 frag.maximizers.begin(), frag.maximizers.end());
    }
    return report;
}

BooleanFunction random_table(int n, Xoshiro256pp& rng) {
    BooleanFunction f(n);
    const std::uint64_t size = f.size();
    if (size >= 64) {
        for (std::uint64_t m = 0; m < size; m += 64) {
            const std::uint64_t word = rng.next();
            for (int j = 0; j < 64; ++j)
                if ((word >> j) & 1u) f.set_bit(m + j, true);
        }
    } else {
        const std::uint64_t word = rng.next() & ((std::uint64_t{1} << size) - 1);
        for (std::uint64_t m = 0; m < size; ++m)
            if ((word >> m) & 1u) f.set_bit(m, true);
    }
    return f;
}

}  // namespace

const char* to_string(SearchMode mode) {
    switch (mode) {
        case SearchMode::exhaustive: return "exhaustive";
        case SearchMode::canonical: return "canonical";
        case SearchMode::sampled: return "sampled";
        case SearchMode::conjecture: return "conjecture";
    }
    return "unknown";
}

SearchMode search_mode_from_string(const std::string& text) {
    if (text == "exhaustive") return SearchMode::exhaustive;
    if (text == "canonical") return SearchMode::canonical;
    if (text == "sampled") return SearchMode::sampled;
    if (text == "conjecture") return SearchMode::conjecture;
    throw DomainError("unknown search mode: " + text);
}

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const MaximizerEntry& entry : maximizers)
        entries.push_back({{"f", entry.f},
                           {"g", entry.g},
                           {"rho", entry.rho},
                           {"mi", entry.mi}});
    return nlohmann::ordered_json{{"schema", 1},
                                  {"n", n},
                                  {"mode", boolcube::to_string(mode)},
                                  {"rho_grid", rho_grid},
                                  {"pairs_scanned", pairs_scanned},
                                  {"max_mi", max_mi},
                                  {"max_gap_violation", max_gap_violation},
                                  {"maximizers", entries},
                                  {"tolerance", tolerance},
                                  {"elapsed_ms", 0.0},
                                  {"workers", 0}};
}

VerificationReport verify_theorem(const VerifyOptions& options) {
    check_grid(options.rho_grid);
    if (!(options.tolerance > 0.0))
        throw DomainError("tolerance must be positive");
    if (options.n < 1) throw DimensionMismatch("dimension must be at least 1");

    const auto start = std::chrono::steady_clock::now();
    const std::vector<double> smi = grid_source_mi(options.rho_grid);
    std::vector<Fragment> fragments;

    switch (options.mode) {
        case SearchMode::exhaustive: {
            if (options.n > 3)
                throw DimensionTooLarge(
                    "exhaustive pair scan is limited to dimension 3");
            const auto spectra = all_spectra(options.n);
            const std::uint64_t tables = spectra.size();
            const std::size_t blocks =
                static_cast<std::size_t>((tables + kTableBlock - 1) / kTableBlock);
            fragments.resize(blocks);
            parallel_for_chunks(blocks, options.workers, [&](std::size_t block) {
                Fragment& frag = fragments[block];
                const std::uint64_t begin = block * kTableBlock;
                const std::uint64_t end = std::min(tables, begin + kTableBlock);
                for (std::uint64_t ft = begin; ft < end; ++ft)
                    for (std::uint64_t gt = 0; gt < tables; ++gt)
                        scan_pair(
                            spectra[ft], spectra[gt], options.rho_grid, smi,
                            options.tolerance, frag,
                            [&] { return table_key(options.n, ft); },
                            [&] { return table_key(options.n, gt); });
            });
            break;
        }
        case SearchMode::canonical: {
            if (options.n > 4)
                throw DimensionTooLarge(
                    "canonical pair scan is limited to dimension 4");
            const auto& reps = canonical_representatives(options.n);
            const auto spectra = all_spectra(options.n);
            const std::uint64_t tables = spectra.size();
            const std::size_t blocks = static_cast<std::size_t>(
                (reps.size() + kRepBlock - 1) / kRepBlock);
            fragments.resize(blocks);
            parallel_for_chunks(blocks, options.workers, [&](std::size_t block) {
                Fragment& frag = fragments[block];
                const std::size_t begin = block * kRepBlock;
                const std::size_t end =
                    std::min(reps.size(), begin + kRepBlock);
                for (std::size_t r = begin; r < end; ++r)
                    for (std::uint64_t gt = 0; gt < tables; ++gt)
                        scan_pair(
                            spectra[reps[r]], spectra[gt], options.rho_grid,
                            smi, options.tolerance, frag,
                            [&] { return table_key(options.n, reps[r]); },
                            [&] { return table_key(options.n, gt); });
            });
            break;
        }
        case SearchMode::sampled: {
            if (options.n > 8)
                throw DimensionTooLarge(
                    "sampled pair scan is limited to dimension 8");
            if (options.budget < 1)
                throw DomainError("sampled mode requires a positive budget");
            if (options.budget > kSampledBudgetCap)
                throw BudgetExceeded("budget " + std::to_string(options.budget) +
                                     " exceeds the sampled-mode cap " +
                                     std::to_string(kSampledBudgetCap));
            const std::size_t blocks = static_cast<std::size_t>(
                (options.budget + kPairBlock - 1) / kPairBlock);
            fragments.resize(blocks);
            parallel_for_chunks(blocks, options.workers, [&](std::size_t block) {
                Fragment& frag = fragments[block];
                Xoshiro256pp rng(derive_seed(options.seed, block));
                const std::uint64_t begin = block * kPairBlock;
                const std::uint64_t end =
                    std::min<std::uint64_t>(options.budget, begin + kPairBlock);
                for (std::uint64_t i = begin; i < end; ++i) {
                    const BooleanFunction f = random_table(options.n, rng);
                    const BooleanFunction g = random_table(options.n, rng);
                    scan_pair(
                        wht(f), wht(g), options.rho_grid, smi,
                        options.tolerance, frag, [&] { return f.to_string(); },
                        [&] { return g.to_string(); });
                }
            });
            break;
        }
        case SearchMode::conjecture:
            throw DomainError(
                "conjecture mode runs through verify_conjecture_one_sided");
    }

    VerificationReport report = merge_fragments(fragments);
    report.n = options.n;
    report.mode = options.mode;
    report.rho_grid = options.rho_grid;
    report.tolerance = options.tolerance;
    report.workers = resolve_workers(options.workers);
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

bool is_signed_dictator_pair(const FourierExpansion& f,
                             const FourierExpansion& g) {
    if (f.n != g.n) return false;
    const std::int64_t full = f.scale();
    auto singleton_support = [full](const FourierExpansion& fe) -> int {
        int support = -1;
        for (std::size_t s = 0; s < fe.scaled_coeffs.size(); ++s) {
            if (fe.scaled_coeffs[s] == 0) continue;
            if (support != -1) return -1;  // second nonzero coefficient
            if (std::popcount(s) != 1) return -1;
            if (std::abs(std::int64_t{fe.scaled_coeffs[s]}) != full) return -1;
            support = static_cast<int>(s);
        }
        return support;
    };
    const int sf = singleton_support(f);
    return sf != -1 && sf == singleton_support(g);
}

std::vector<MaximizerEntry> find_maximizers(int n, double rho, double tolerance,
                                            unsigned workers) {
    if (!(rho > 0.0 && rho < 1.0))
        throw DomainError("maximizer search requires correlation in (0, 1)");

    VerifyOptions options;
    options.n = n;
    options.rho_grid = {rho};
    options.tolerance = tolerance;
    options.mode = n <= 3 ? SearchMode::exhaustive : SearchMode::canonical;
    options.workers = workers;
    const VerificationReport report = verify_theorem(options);

    for (const MaximizerEntry& entry : report.maximizers) {
        const FourierExpansion fe = wht(BooleanFunction::parse(entry.f));
        const FourierExpansion ge = wht(BooleanFunction::parse(entry.g));
        if (!is_signed_dictator_pair(fe, ge))
            throw NonDictatorMaximizer("pair (" + entry.f + ", " + entry.g +
                                       ") achieves the source information at "
                                       "rho " +
                                       std::to_string(rho));
    }
    return report.maximizers;
}

double conditional_mi(const FourierExpansion& f, double rho) {
    const std::vector<double> values = noise_operator_values(f, rho);
    double conditional = 0.0;
    for (const double v : values)
        conditional += binary_entropy((1.0 + v) / 2.0);
    conditional /= static_cast<double>(values.size());
    return binary_entropy(f.bias()) - conditional;
}

VerificationReport verify_conjecture_one_sided(
    int n, const std::vector<double>& rho_grid, double tolerance,
    unsigned workers) {
    check_grid(rho_grid);
    if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
    if (n < 1) throw DimensionMismatch("dimension must be at least 1");
    if (n > 4)
        throw DimensionTooLarge(
            "one-sided scan over representatives is limited to dimension 4");

    const auto start = std::chrono::steady_clock::now();
    const std::vector<double> smi = grid_source_mi(rho_grid);
    const auto& reps = canonical_representatives(n);
    const std::size_t blocks = (reps.size() + kRepBlock - 1) / kRepBlock;
    std::vector<Fragment> fragments(blocks);

    parallel_for_chunks(blocks, workers, [&](std::size_t block) {
        Fragment& frag = fragments[block];
        const std::size_t begin = block * kRepBlock;
        const std::size_t end = std::min(reps.size(), begin + kRepBlock);
        for (std::size_t r = begin; r < end; ++r) {
            const FourierExpansion fe =
                wht(BooleanFunction::from_table_bits(n, reps[r]));
            frag.pairs += 1;
            for (std::size_t k = 0; k < rho_grid.size(); ++k) {
                const double mi = conditional_mi(fe, rho_grid[k]);
                const double slack = smi[k] - mi;
                if (mi > frag.max_mi) frag.max_mi = mi;
                if (-slack > frag.worst) frag.worst = -slack;
                if (std::abs(slack) <= tolerance) {
                    const std::string key = table_key(n, reps[r]);
                    frag.maximizers.push_back({key, key, rho_grid[k], mi});
                }
            }
        }
    });

    VerificationReport report = merge_fragments(fragments);
    report.n = n;
    report.mode = SearchMode::conjecture;
    report.rho_grid = rho_grid;
    report.tolerance = tolerance;
    report.workers = resolve_workers(workers);
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

}  // namespace boolcube
