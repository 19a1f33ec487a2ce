#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "boolcube/canonical.hpp"
#include "boolcube/information.hpp"

namespace boolcube {

// exhaustive: every ordered pair of tables (n <= 3).
// canonical: orbit representatives against every table (n <= 4); the scanned
//   extremes are exhaustive because the gap is invariant under applying one
//   symmetry to both sides and under symmetries of either side separately,
//   which the tests establish before this mode is trusted.
// sampled: uniformly random pairs under an explicit budget (n <= 8).
// conjecture: single functions f scanned for I(f(X); Y) <= I(x; y), orbit
//   representatives only (n <= 4).
enum class SearchMode { exhaustive, canonical, sampled, conjecture };

const char* to_string(SearchMode mode);
SearchMode search_mode_from_string(const std::string& text);

struct MaximizerEntry {
    std::string f;  // "n=K:hex" key
    std::string g;
    double rho = 0;
    double mi = 0;
};

// Outcome of one scan. elapsed_ms and workers describe the run that produced
// it but are serialized as zero: identical scans must serialize identically
// regardless of machine speed or thread count, and these two are the only
// fields that would differ.
struct VerificationReport {
    int n = 0;
    SearchMode mode = SearchMode::exhaustive;
    std::vector<double> rho_grid;
    std::uint64_t pairs_scanned = 0;
    double max_mi = 0;
    // Magnitude of the worst undershoot of the source information: largest
    // value of -(gap) seen, clamped below at zero.
    double max_gap_violation = 0;
    // Entries with |source_mi - mi| <= tolerance, ordered by (f, g, grid
    // position).
    std::vector<MaximizerEntry> maximizers;
    double tolerance = kGapTolerance;
    double elapsed_ms = 0;
    unsigned workers = 1;

    bool passed() const { return max_gap_violation <= tolerance; }
    nlohmann::ordered_json to_json() const;
};

struct VerifyOptions {
    int n = 2;
    std::vector<double> rho_grid;
    double tolerance = kGapTolerance;
    SearchMode mode = SearchMode::exhaustive;
    std::uint64_t budget = 0;  // sampled mode only: number of pairs
    std::uint64_t seed = 0;    // sampled mode only
    unsigned workers = 1;
};

// Scans pairs per the mode and reports the extremes. Work is split into
// fixed-size blocks whose decomposition ignores the worker count, and block
// results merge in block order, so equal options give equal reports.
VerificationReport verify_theorem(const VerifyOptions& options);

// True when f and g are the same signed dictator up to output signs: both
// spectra concentrate on one shared singleton subset.
bool is_signed_dictator_pair(const FourierExpansion& f,
                             const FourierExpansion& g);

// All pairs achieving the source information at this correlation
// (0 < rho < 1 strictly), via the widest scan the dimension admits. Raises
// NonDictatorMaximizer if an achieving pair is not a signed dictator pair.
std::vector<MaximizerEntry> find_maximizers(int n, double rho,
                                            double tolerance = kGapTolerance,
                                            unsigned workers = 1);

// I(f(X); Y): information the output of f carries about the entire correlated
// word; h(bias) minus the mean conditional entropy over receiver words.
double conditional_mi(const FourierExpansion& f, double rho);

// One-sided scan of I(f(X); Y) <= source_mi over orbit representatives.
VerificationReport verify_conjecture_one_sided(
    int n, const std::vector<double>& rho_grid,
    double tolerance = kGapTolerance, unsigned workers = 1);

}  // namespace boolcube
