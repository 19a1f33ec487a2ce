#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "boolcube/bounds.hpp"
#include "boolcube/correlated_source.hpp"
#include "boolcube/information.hpp"
#include "boolcube/search.hpp"
#include "cli_support.hpp"

namespace {

using boolcube::cli::fraction;
using boolcube::cli::number;
using boolcube::cli::parse_grid;
using boolcube::cli::subset;

constexpr int kOk = 0;
constexpr int kViolation = 2;
constexpr int kUsage = 64;
constexpr int kInternal = 70;

// Report body goes to --out when given, else to stdout; the one-line summary
// goes to whichever of stdout/stderr the body does not occupy, so stdout
// stays machine-readable in both arrangements.
void emit(const std::string& out_path, const std::string& body,
          const std::string& summary) {
    if (out_path.empty()) {
        std::cout << body;
        if (!summary.empty()) std::cerr << summary << '\n';
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file)
        throw boolcube::DomainError("cannot open output file: " + out_path);
    file << body;
    file.flush();
    if (!file)
        throw boolcube::DomainError("failed writing output file: " + out_path);
    if (!summary.empty()) std::cout << summary << '\n';
}

unsigned resolve_workers(const std::vector<CLI::Option*>& worker_options,
                         unsigned flag_value) {
    for (const CLI::Option* option : worker_options)
        if (option != nullptr && option->count() > 0) return flag_value;
    const char* env = std::getenv("BOOLCUBE_WORKERS");
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || parsed > 1'000'000)
        throw boolcube::DomainError(
            "BOOLCUBE_WORKERS must be a nonnegative integer");
    return static_cast<unsigned>(parsed);
}

// Proposition check shared by verify and conjecture: inside 0 < |rho| < 1 an
// achieving entry must be a signed dictator pair. At rho = 0 (and |rho| = 1)
// equality is not exclusive, so those grid points are exempt.
void ensure_dictator_maximizers(const boolcube::VerificationReport& report) {
    for (const boolcube::MaximizerEntry& entry : report.maximizers) {
        const double r = std::abs(entry.rho);
        if (!(r > 0.0 && r < 1.0)) continue;
        const auto fe = boolcube::wht(boolcube::BooleanFunction::parse(entry.f));
        const auto ge = boolcube::wht(boolcube::BooleanFunction::parse(entry.g));
        if (!boolcube::is_signed_dictator_pair(fe, ge))
            throw boolcube::NonDictatorMaximizer(
                "pair (" + entry.f + ", " + entry.g +
                ") achieves the source information at rho " +
                number(entry.rho));
    }
}

std::string scan_summary(const boolcube::VerificationReport& report,
                         const char* unit) {
    std::ostringstream out;
    out << (report.passed() ? "PASS" : "FAIL") << ' ' << unit << '='
        << report.pairs_scanned
        << " maxviol=" << number(report.max_gap_violation)
        << " maximizers=" << report.maximizers.size()
        << " elapsed_ms=" << number(report.elapsed_ms)
        << " workers=" << report.workers;
    return out.str();
}

int run_fourier(const std::string& table) {
    const auto fe = boolcube::wht(boolcube::BooleanFunction::parse(table));
    std::ostringstream out;
    out << "n = " << fe.n << '\n';
    out << "a = " << fraction(fe.scale() + fe.scaled_coeffs[0], 2 * fe.scale())
        << '\n';
    for (std::size_t s = 0; s < fe.scaled_coeffs.size(); ++s) {
        if (fe.scaled_coeffs[s] == 0) continue;
        out << subset(s) << ": " << fraction(fe.scaled_coeffs[s], fe.scale())
            << '\n';
    }
    std::cout << out.str();
    return kOk;
}

int run_mi(const std::string& f_text, const std::string& g_text, double rho,
           double tolerance) {
    if (!(tolerance > 0.0))
        throw boolcube::DomainError("tolerance must be positive");
    const auto f = boolcube::BooleanFunction::parse(f_text);
    const auto g = boolcube::BooleanFunction::parse(g_text);
    const auto fe = boolcube::wht(f);
    const auto ge = boolcube::wht(g);
    const auto joint = boolcube::joint_distribution(fe, ge, rho);
    const double mi = boolcube::mutual_information(joint);
    const double smi = boolcube::source_mi(rho);
    const double gap_value = smi - mi;

    std::ostringstream out;
    out << "n = " << fe.n << '\n';
    out << "a = " << number(joint.a()) << '\n';
    out << "b = " << number(joint.b()) << '\n';
    out << "theta = " << number(boolcube::theta_rho(fe, ge, rho)) << '\n';
    out << "P(f=+1,g=+1) = " << number(joint.pp) << '\n';
    out << "P(f=+1,g=-1) = " << number(joint.pm) << '\n';
    out << "P(f=-1,g=+1) = " << number(joint.mp) << '\n';
    out << "P(f=-1,g=-1) = " << number(joint.mm) << '\n';
    out << "clamped = " << (joint.clamped ? "yes" : "no") << '\n';
    out << "I(f;g) = " << number(mi) << '\n';
    out << "I(x;y) = " << number(smi) << '\n';
    out << "gap = " << number(gap_value) << '\n';
    const bool ok = gap_value >= -tolerance;
    out << (ok ? "PASS" : "FAIL") << '\n';
    std::cout << out.str();
    return ok ? kOk : kViolation;
}

int run_verify(int n, const std::string& grid_text, const std::string& mode_text,
               double tolerance, std::uint64_t budget, std::uint64_t seed,
               unsigned workers, const std::string& out_path) {
    boolcube::VerifyOptions options;
    options.n = n;
    options.rho_grid = parse_grid(grid_text);
    options.tolerance = tolerance;
    options.mode = boolcube::search_mode_from_string(mode_text);
    options.budget = budget;
    options.seed = seed;
    options.workers = workers;
    const auto report = boolcube::verify_theorem(options);
    ensure_dictator_maximizers(report);
    emit(out_path, report.to_json().dump(2) + "\n",
         scan_summary(report, "pairs"));
    return report.passed() ? kOk : kViolation;
}

int run_conjecture(int n, const std::string& grid_text, double tolerance,
                   unsigned workers, const std::string& out_path) {
    const auto report = boolcube::verify_conjecture_one_sided(
        n, parse_grid(grid_text), tolerance, workers);
    ensure_dictator_maximizers(report);
    emit(out_path, report.to_json().dump(2) + "\n",
         scan_summary(report, "functions"));
    return report.passed() ? kOk : kViolation;
}

int run_lemma1(int alpha_cells, int beta_cells, int rho_cells, double tolerance,
               unsigned workers, const std::string& out_path) {
    boolcube::Lemma1GridSpec spec;
    spec.alpha_cells = alpha_cells;
    spec.beta_cells = beta_cells;
    spec.rho_cells = rho_cells;
    spec.tolerance = tolerance;
    spec.workers = workers;
    const auto start = std::chrono::steady_clock::now();
    const auto report = boolcube::verify_lemma1(spec);
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
            .count();

    std::ostringstream summary;
    summary << (report.passed() ? "PASS" : "FAIL")
            << " cells=" << report.cells
            << " evaluations=" << report.evaluations
            << " min_phi=" << number(report.min_phi)
            << " violations=" << report.violations
            << " certificates_failed=" << report.certificates_failed
            << " elapsed_ms=" << number(elapsed_ms) << " workers=" << workers;
    emit(out_path, report.to_json().dump(2) + "\n", summary.str());
    return report.passed() ? kOk : kViolation;
}

void require_scan_flags(const CLI::App& sub, const std::string& what,
                        std::initializer_list<const char*> needed,
                        std::initializer_list<const char*> irrelevant) {
    for (const char* name : needed)
        if (sub.get_option(name)->count() == 0)
            throw boolcube::DomainError("scan --what " + what + " requires " +
                                        name);
    for (const char* name : irrelevant)
        if (sub.get_option(name)->count() > 0)
            throw boolcube::DomainError("scan --what " + what +
                                        " does not take " + name);
}

int run_scan(const CLI::App& sub, const std::string& what, double alpha,
             double beta, const std::string& rho_text, const std::string& c_text,
             const std::string& x_text, const std::string& range_text,
             const std::string& out_path) {
    std::ostringstream csv;
    csv << "# schema 1\n";
    std::size_t rows = 0;

    if (what == "phi") {
        require_scan_flags(sub, what, {"--alpha", "--beta", "--rho"},
                           {"--c", "--x", "--range"});
        const double rmax = boolcube::rho_plus_end(alpha, beta);
        csv << "rho,phi,phi_prime,phi_second\n";
        for (const double rho : parse_grid(rho_text, rmax)) {
            const double value = boolcube::phi(rho, alpha, beta);
            // The derivatives are undefined at the right endpoint itself;
            // the value column still applies there.
            std::string d1 = "nan", d2 = "nan";
            try {
                const auto derivs = boolcube::phi_derivs(rho, alpha, beta);
                d1 = number(derivs.first);
                d2 = number(derivs.second);
            } catch (const boolcube::DomainError&) {
            }
            csv << number(rho) << ',' << number(value) << ',' << d1 << ','
                << d2 << '\n';
            ++rows;
        }
    } else if (what == "psi") {
        require_scan_flags(sub, what, {"--c", "--x"},
                           {"--alpha", "--beta", "--rho", "--range"});
        csv << "c,x,psi,psi_prime,psi_second\n";
        for (const double c : parse_grid(c_text))
            for (const double x : parse_grid(x_text)) {
                csv << number(c) << ',' << number(x) << ','
                    << number(boolcube::psi(c, x)) << ','
                    << number(boolcube::psi_prime(c, x)) << ','
                    << number(boolcube::psi_second_deriv(c, x)) << '\n';
                ++rows;
            }
    } else if (what == "gamma") {
        require_scan_flags(sub, what, {"--range"},
                           {"--alpha", "--beta", "--rho", "--c", "--x"});
        csv << "x,gamma,gamma_prime\n";
        for (const double x : parse_grid(range_text)) {
            csv << number(x) << ',' << number(boolcube::gamma_fn(x)) << ','
                << number(boolcube::gamma_prime(x)) << '\n';
            ++rows;
        }
    } else {
        throw boolcube::DomainError("unknown scan target: " + what);
    }

    emit(out_path, csv.str(), "rows=" + std::to_string(rows));
    return kOk;
}

int run_sample(const std::string& f_text, const std::string& g_text, double rho,
               std::uint64_t samples, std::uint64_t seed, unsigned workers,
               const std::string& out_path) {
    const auto f = boolcube::BooleanFunction::parse(f_text);
    const auto g = boolcube::BooleanFunction::parse(g_text);
    const auto exact =
        boolcube::joint_distribution(boolcube::wht(f), boolcube::wht(g), rho);
    const auto mc = boolcube::monte_carlo_joint(f, g, rho, samples, seed,
                                                workers);

    const auto se_ratio = [](double empirical, double wanted, double se) {
        const double deviation = std::abs(empirical - wanted);
        if (se == 0.0)
            return deviation == 0.0 ? 0.0
                                    : std::numeric_limits<double>::infinity();
        return deviation / se;
    };
    double worst = se_ratio(mc.joint.pp, exact.pp, mc.se_pp);
    worst = std::max(worst, se_ratio(mc.joint.pm, exact.pm, mc.se_pm));
    worst = std::max(worst, se_ratio(mc.joint.mp, exact.mp, mc.se_mp));
    worst = std::max(worst, se_ratio(mc.joint.mm, exact.mm, mc.se_mm));

    nlohmann::ordered_json j{
        {"schema", 1},
        {"n", f.n()},
        {"f", f.to_string()},
        {"g", g.to_string()},
        {"rho", rho},
        {"samples", samples},
        {"seed", seed},
        {"exact", exact},
        {"empirical", mc.joint},
        {"se",
         {{"pp", mc.se_pp}, {"pm", mc.se_pm}, {"mp", mc.se_mp},
          {"mm", mc.se_mm}}},
        {"max_se_ratio", worst}};

    const bool ok = worst <= 4.0;
    emit(out_path, j.dump(2) + "\n",
         std::string(ok ? "PASS" : "FAIL") + " max_se_ratio=" + number(worst));
    return ok ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Boolean functions on the hypercube: spectra, correlated-pair "
        "information, and extremal verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "boolcube 1.0.0");

    std::string table, f_text, g_text, out_path, mode_text = "exhaustive";
    std::string grid_text = "0.05:0.95:0.05", what, rho_text, c_text, x_text,
                range_text, lemma_grid_text;
    double rho = 0.5, tolerance = boolcube::kGapTolerance, alpha = 0, beta = 0;
    int n = 2, alpha_cells = 50, beta_cells = 50, rho_cells = 20;
    std::uint64_t budget = 0, seed = 0, samples = 1'000'000;
    unsigned workers_flag = 1;
    std::vector<CLI::Option*> worker_options;
    const auto add_workers = [&](CLI::App* sub) {
        worker_options.push_back(sub->add_option(
            "--workers", workers_flag,
            "worker threads; 0 means all cores (default: BOOLCUBE_WORKERS "
            "or 1)"));
    };

    CLI::App* fourier =
        app.add_subcommand("fourier", "Print the Fourier expansion of a table");
    fourier->add_option("table", table, "function table, e.g. n=2:a")
        ->required();

    CLI::App* mi = app.add_subcommand(
        "mi", "Joint law and mutual information of a pair at one correlation");
    mi->add_option("f", f_text, "sender table")->required();
    mi->add_option("g", g_text, "receiver table")->required();
    mi->add_option("--rho", rho, "correlation in [-1, 1]")->required();
    mi->add_option("--tol,--tolerance", tolerance,
                   "largest tolerated negative gap");

    CLI::App* verify = app.add_subcommand(
        "verify", "Scan pairs for information above the single-letter value");
    verify->add_option("--n", n, "dimension")->required();
    verify->add_option("--rho-grid", grid_text,
                       "correlation grid, value or start:stop:step");
    verify->add_option("--mode", mode_text,
                       "exhaustive | canonical | sampled");
    verify->add_option("--tol,--tolerance", tolerance, "violation threshold");
    verify->add_option("--budget", budget, "sampled mode: number of pairs");
    verify->add_option("--seed", seed, "sampled mode: RNG seed");
    verify->add_option("--out", out_path, "report file (default: stdout)");
    add_workers(verify);

    CLI::App* conjecture = app.add_subcommand(
        "conjecture",
        "Scan single functions for output information above the single-letter "
        "value");
    conjecture->add_option("--n", n, "dimension")->required();
    conjecture->add_option("--rho-grid", grid_text,
                           "correlation grid, value or start:stop:step");
    conjecture->add_option("--tol,--tolerance", tolerance,
                           "violation threshold");
    conjecture->add_option("--out", out_path, "report file (default: stdout)");
    add_workers(conjecture);

    CLI::App* lemma1 = app.add_subcommand(
        "lemma1", "Grid certificate for positivity of the deficit function");
    lemma1->add_option("--grid", lemma_grid_text,
                       "cells as AxBxR, e.g. 50x50x20");
    lemma1->add_option("--alpha-cells", alpha_cells, "alpha grid cells");
    lemma1->add_option("--beta-cells", beta_cells, "beta grid cells");
    lemma1->add_option("--rho-cells", rho_cells, "rho grid cells");
    lemma1->add_option("--tol,--tolerance", tolerance,
                       "required positivity margin");
    lemma1->add_option("--out", out_path, "report file (default: stdout)");
    add_workers(lemma1);

    CLI::App* scan = app.add_subcommand(
        "scan", "CSV slices of the deficit functions for external plotting");
    scan->add_option("--what", what, "phi | psi | gamma")->required();
    scan->add_option("--alpha", alpha, "phi: first bias");
    scan->add_option("--beta", beta, "phi: second bias");
    scan->add_option("--rho", rho_text,
                     "phi: correlation range; 'rmax' names the right endpoint");
    scan->add_option("--c", c_text, "psi: curve exponent value or range");
    scan->add_option("--x", x_text, "psi: curve base value or range");
    scan->add_option("--range", range_text, "gamma: x range");
    scan->add_option("--out", out_path, "CSV file (default: stdout)");

    CLI::App* sample = app.add_subcommand(
        "sample", "Monte Carlo check of a pair's joint law");
    sample->add_option("f", f_text, "sender table")->required();
    sample->add_option("g", g_text, "receiver table")->required();
    sample->add_option("--rho", rho, "correlation in [-1, 1]")->required();
    sample->add_option("--samples", samples, "sample count");
    sample->add_option("--seed", seed, "RNG seed");
    sample->add_option("--out", out_path, "report file (default: stdout)");
    add_workers(sample);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        const unsigned workers = resolve_workers(worker_options, workers_flag);
        if (fourier->parsed()) return run_fourier(table);
        if (mi->parsed()) return run_mi(f_text, g_text, rho, tolerance);
        if (verify->parsed())
            return run_verify(n, grid_text, mode_text, tolerance, budget, seed,
                              workers, out_path);
        if (conjecture->parsed())
            return run_conjecture(n, grid_text, tolerance, workers, out_path);
        if (lemma1->parsed()) {
            if (lemma1->get_option("--grid")->count() > 0) {
                int parsed[3] = {0, 0, 0};
                std::size_t pos = 0;
                for (int k = 0; k < 3; ++k) {
                    std::size_t used = 0;
                    try {
                        parsed[k] = std::stoi(lemma_grid_text.substr(pos), &used);
                    } catch (const std::exception&) {
                        throw boolcube::DomainError(
                            "--grid expects AxBxR, got '" + lemma_grid_text +
                            "'");
                    }
                    pos += used;
                    const bool last = k == 2;
                    if ((last && pos != lemma_grid_text.size()) ||
                        (!last && (pos >= lemma_grid_text.size() ||
                                   lemma_grid_text[pos] != 'x')))
                        throw boolcube::DomainError(
                            "--grid expects AxBxR, got '" + lemma_grid_text +
                            "'");
                    pos += 1;
                }
                alpha_cells = parsed[0];
                beta_cells = parsed[1];
                rho_cells = parsed[2];
            }
            return run_lemma1(alpha_cells, beta_cells, rho_cells, tolerance,
                              workers, out_path);
        }
        if (scan->parsed())
            return run_scan(*scan, what, alpha, beta, rho_text, c_text, x_text,
                            range_text, out_path);
        if (sample->parsed())
            return run_sample(f_text, g_text, rho, samples, seed, workers,
                              out_path);
        std::cerr << "error: no command given\n";
        return kUsage;
    } catch (const boolcube::NonDictatorMaximizer& e) {
        std::cerr << "internal error (NonDictatorMaximizer): " << e.what()
                  << '\n';
        return kInternal;
    } catch (const boolcube::NumericalInconsistency& e) {
        std::cerr << "internal error (NumericalInconsistency): " << e.what()
                  << '\n';
        return kInternal;
    } catch (const boolcube::ThetaOutOfRange& e) {
        std::cerr << "internal error (ThetaOutOfRange): " << e.what() << '\n';
        return kInternal;
    } catch (const boolcube::DegreeCollapseViolation& e) {
        std::cerr << "internal error (DegreeCollapseViolation): " << e.what()
                  << '\n';
        return kInternal;
    } catch (const boolcube::SignPatternViolation& e) {
        std::cerr << "internal error (SignPatternViolation): " << e.what()
                  << '\n';
        return kInternal;
    } catch (const boolcube::NotBoolean& e) {
        std::cerr << "internal error (NotBoolean): " << e.what() << '\n';
        return kInternal;
    } catch (const boolcube::InvalidDistribution& e) {
        std::cerr << "internal error (InvalidDistribution): " << e.what()
                  << '\n';
        return kInternal;
    } catch (const boolcube::Error& e) {
        // Parse, domain, dimension, and budget failures are caller mistakes.
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}
