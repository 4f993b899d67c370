// tautrel: tables, verification suites, relation extraction and the kappa elimination procedure.
//
// Exit codes: 0 success, 1 a mathematical check failed, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <tautrel/tautrel.hpp>

namespace fs = std::filesystem;
using namespace tautrel;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_math = 1;
constexpr int exit_usage = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_range(const char *name, long v, long lo, long hi)
{
    if (v < lo || v > hi) {
        throw usage_error(std::string(name) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi)
                          + "], got " + std::to_string(v));
    }
}

// ---- table cache ----------------------------------------------------------

constexpr int cache_version = 1;

fs::path cache_file(const fs::path &dir, TableKind kind)
{
    return dir / (std::string(to_string(kind)) + ".csv");
}

/// Cached rows covering k_max, filtered to the request; nullopt on a miss or an unreadable file.
std::optional<std::vector<TableRow>> cache_load(const fs::path &dir, TableKind kind, unsigned k_max)
{
    std::ifstream in(cache_file(dir, kind));
    if (!in) {
        return std::nullopt;
    }
    std::string meta;
    std::getline(in, meta);
    std::istringstream ms(meta);
    std::string hash, tag, kind_kv, kmax_kv, version_kv;
    ms >> hash >> tag >> kind_kv >> kmax_kv >> version_kv;
    if (hash != "#" || tag != "tautrel-cache" || kind_kv != std::string("kind=") + to_string(kind)
        || version_kv != "version=" + std::to_string(cache_version) || kmax_kv.rfind("k_max=", 0) != 0) {
        return std::nullopt;
    }
    const unsigned long cached = std::stoul(kmax_kv.substr(6));
    if (cached < k_max) {
        return std::nullopt;
    }
    std::string line;
    std::getline(in, line); // column header
    std::vector<TableRow> rows;
    while (std::getline(in, line)) {
        const auto p1 = line.find(',');
        const auto p2 = line.find(',', p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos) {
            return std::nullopt;
        }
        TableRow r{std::stol(line.substr(0, p1)), std::stol(line.substr(p1 + 1, p2 - p1 - 1)),
                   Rational::parse(line.substr(p2 + 1))};
        const bool square = kind == TableKind::alpha;
        if (r.k <= static_cast<long>(k_max) && (!square || r.j <= static_cast<long>(k_max))) {
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

void cache_store(const fs::path &dir, TableKind kind, unsigned k_max, const std::vector<TableRow> &rows)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path target = cache_file(dir, kind);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            throw usage_error("cannot write cache file " + tmp.string());
        }
        out << "# tautrel-cache kind=" << to_string(kind) << " k_max=" << k_max << " version=" << cache_version << '\n'
            << rows_csv(rows);
        if (!out) {
            throw usage_error("cannot write cache file " + tmp.string());
        }
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        throw usage_error("cannot write cache file " + target.string() + ": " + ec.message());
    }
}

// ---- subcommands ----------------------------------------------------------

int cmd_coeffs(const std::string &table, long k_max, const std::string &format, std::string cache_dir)
{
    const TableKind kind = [&] {
        try {
            return parse_table_kind(table);
        } catch (const std::invalid_argument &e) {
            throw usage_error(e.what());
        }
    }();
    require_range("--max-k", k_max, 0, kind == TableKind::alpha ? 200 : 1000);
    if (cache_dir.empty()) {
        if (const char *env = std::getenv("TAUTREL_CACHE_DIR")) {
            cache_dir = env;
        }
    }
    const unsigned n = static_cast<unsigned>(k_max);
    std::optional<std::vector<TableRow>> rows;
    if (!cache_dir.empty()) {
        rows = cache_load(cache_dir, kind, n);
    }
    if (!rows) {
        rows = table_rows(kind, n);
        if (!cache_dir.empty()) {
            cache_store(cache_dir, kind, n, *rows);
        }
    }
    if (format == "csv") {
        std::cout << rows_csv(*rows);
    } else {
        std::cout << rows_json(kind, n, *rows).dump() << '\n';
    }
    return exit_ok;
}

bool print_report(const std::string &suite, const IdentityReport &rep)
{
    for (const auto &c : rep.checks) {
        std::cout << suite << ": " << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.cases << " cases)";
        if (!c.passed) {
            std::cout << ": " << c.counterexample;
        }
        std::cout << '\n';
    }
    return rep.all_passed();
}

bool run_identities(unsigned order)
{
    const QTable q(order + 1u);
    const CTable c(q);
    return print_report("identities", verify_coeff_identities(q, c, order, std::min(order, 20u)));
}

bool run_ode(unsigned order)
{
    const unsigned n = std::max(order, 2u);
    const auto rep = verify_ode(n);
    const bool ok = print_report("ode", rep);
    if (ok) {
        std::cout << "alpha vs closed-form: match through (" << n << "," << n << ")\n";
    }
    return ok;
}

bool run_genfunc(unsigned order)
{
    const auto rep = verify_genfunc(order);
    const bool ok = print_report("genfunc", rep);
    if (ok) {
        const auto p = p_series(order);
        for (unsigned k = 1; k <= order; ++k) {
            std::cout << "p_" << k << " = " << p.coeff(k) << " matched\n";
        }
    }
    return ok;
}

bool run_crosscheck(unsigned order)
{
    const long g_max = std::max(2L, static_cast<long>(order));
    const bool ok = print_report("crosscheck", verify_crosscheck(g_max));
    const QTable q(static_cast<unsigned>(g_max + 2));
    const CTable c(q);
    KappaExpCache cache(c);
    for (const auto &r : b0_ratios(g_max, q, cache)) {
        std::cout << "b=0 general/simplified ratio at (g,d)=(" << r.g << "," << r.d << "): "
                  << (r.ratio ? r.ratio->str() : (r.both_zero ? std::string("both zero") : std::string("not proportional")))
                  << '\n';
    }
    return ok;
}

int cmd_verify(const std::string &suite, long order)
{
    require_range("--order", order, 1, 200);
    const unsigned n = static_cast<unsigned>(order);
    bool ok = true;
    if (suite == "identities" || suite == "all") {
        ok = run_identities(n) && ok;
    }
    if (suite == "ode" || suite == "all") {
        ok = run_ode(n) && ok;
    }
    if (suite == "genfunc" || suite == "all") {
        ok = run_genfunc(n) && ok;
    }
    if (suite == "crosscheck" || suite == "all") {
        ok = run_crosscheck(n) && ok;
    }
    return ok ? exit_ok : exit_math;
}

int cmd_relation(long g, long d, long b, bool psi)
{
    require_range("--g", g, 2, 200);
    require_range("--d", d, 2, 200);
    require_range("--b", b, 0, 200);
    const long x_exp = (b == 0 && !psi) ? g + 1 - 2 * d : g + 2 - 2 * d;
    if (x_exp < 0) {
        throw usage_error(relation_range_error(g, d, b).what());
    }
    const QTable q(static_cast<unsigned>(std::max(1L, x_exp)));
    const CTable c(q);
    if (psi) {
        std::cout << psi_relation_json(g, d, extract_psi_relation(g, d, q, c)).dump() << '\n';
    } else {
        std::cout << relation_json(extract_relation(g, d, b, q, c)).dump() << '\n';
    }
    return exit_ok;
}

int cmd_faber(long g, bool rewrite)
{
    require_range("--g", g, 2, 60);
    const QTable q(static_cast<unsigned>(std::max(1L, g)));
    const CTable c(q);
    std::cout << faber_json(g, faber_solve(g, q, c), rewrite).dump() << '\n';
    return exit_ok;
}

int cmd_scan(long a_max, long extraction_a)
{
    require_range("--max-a", a_max, 1, 500);
    require_range("--extraction-a", extraction_a, 0, 40);
    const QTable q(static_cast<unsigned>(a_max));
    const CTable c(q);
    KappaExpCache cache(c);
    const auto rep = scan_nonvanishing(a_max, q, cache, extraction_a);
    std::cout << scan_json(rep).dump() << '\n';
    return rep.passed() ? exit_ok : exit_math;
}

int cmd_independence(long g, long a)
{
    require_range("--g", g, 2, 60);
    require_range("--a", a, 0, 3 * 60);
    const QTable q(static_cast<unsigned>(g + 2));
    const CTable c(q);
    const auto rep = independence_report(g, a, q, c);
    std::cout << independence_json(rep).dump() << '\n';
    return rep.independent() ? exit_ok : exit_math;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact kappa-class relations: coefficient tables, identity checks, relation extraction"};
    app.require_subcommand(1);

    auto *coeffs = app.add_subcommand("coeffs", "Print a coefficient table");
    std::string table;
    long k_max = 0;
    std::string format = "json";
    std::string cache_dir;
    coeffs->add_option("--table", table, "q, c, alpha, p or bernoulli")->required();
    coeffs->add_option("--max-k", k_max, "largest index k")->required();
    coeffs->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    coeffs->add_option("--cache-dir", cache_dir, "table cache directory (default $TAUTREL_CACHE_DIR)");

    auto *verify = app.add_subcommand("verify", "Run exact identity checks");
    std::string suite = "all";
    long order = 10;
    verify->add_option("--suite", suite, "identities, ode, genfunc, crosscheck or all")
        ->check(CLI::IsMember({"identities", "ode", "genfunc", "crosscheck", "all"}));
    verify->add_option("--order", order, "truncation order (genus bound for crosscheck)");

    auto *relation = app.add_subcommand("relation", "Extract the relation for (g, d, b)");
    long g = 0, d = 0, b = 0;
    bool psi = false;
    relation->add_option("--g", g, "genus")->required();
    relation->add_option("--d", d, "d >= 2")->required();
    relation->add_option("--b", b, "b >= 0");
    relation->add_flag("--psi", psi, "relation on the universal curve, with psi as generator 0");

    auto *faber = app.add_subcommand("faber", "Express kappa_a, a > [g/3], through lower kappa classes "
                                              "(g = 2, 3 give an empty list)");
    long fg = 0;
    bool rewrite = false;
    faber->add_option("--g", fg, "genus")->required();
    faber->add_flag("--rewrite", rewrite, "rewrite every expression in kappa_1..kappa_[g/3]");

    auto *scan = app.add_subcommand("scan", "Check the b = 0, 1 leading coefficients for a <= max-a");
    long a_max = 0;
    long extraction_a = scan_default_extraction_a;
    scan->add_option("--max-a", a_max, "largest a")->required();
    scan->add_option("--extraction-a", extraction_a, "also read the coefficients off extracted relations for a <= this");

    auto *indep = app.add_subcommand("independence", "Rank of the degree-a relations in genus g");
    long ig = 0, ia = 0;
    indep->add_option("--g", ig, "genus")->required();
    indep->add_option("--a", ia, "degree")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*coeffs) {
            return cmd_coeffs(table, k_max, format, cache_dir);
        }
        if (*verify) {
            return cmd_verify(suite, order);
        }
        if (*relation) {
            return cmd_relation(g, d, b, psi);
        }
        if (*faber) {
            return cmd_faber(fg, rewrite);
        }
        if (*scan) {
            return cmd_scan(a_max, extraction_a);
        }
        if (*indep) {
            return cmd_independence(ig, ia);
        }
    } catch (const usage_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const relation_range_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const inadmissible_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const faber_failure &e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return exit_math;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_math;
    }
    return exit_usage;
}
