#ifndef TAUTREL_IO_HPP
#define TAUTREL_IO_HPP

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <tautrel/coeffs.hpp>
#include <tautrel/exact.hpp>
#include <tautrel/kappa.hpp>
#include <tautrel/relations.hpp>
#include <tautrel/tautring.hpp>

namespace tautrel
{

using Json = nlohmann::ordered_json;

/// A flattened numeric table: rows (k, j, value), 1-D tables use j = 0.
struct TableRow {
    long k = 0;
    long j = 0;
    Rational value;
};

enum class TableKind { q, c, alpha, p, bernoulli };

inline const char *to_string(TableKind t)
{
    switch (t) {
    case TableKind::q:
        return "q";
    case TableKind::c:
        return "c";
    case TableKind::alpha:
        return "alpha";
    case TableKind::p:
        return "p";
    case TableKind::bernoulli:
        return "bernoulli";
    }
    return "?";
}

inline TableKind parse_table_kind(const std::string &s)
{
    for (const auto t : {TableKind::q, TableKind::c, TableKind::alpha, TableKind::p, TableKind::bernoulli}) {
        if (s == to_string(t)) {
            return t;
        }
    }
    throw std::invalid_argument("unknown table '" + s + "'");
}

/// Rows of the requested table up to k_max, in (k, j) order.
/// q and c are triangular (c starts at k = 1), alpha is the square 0..k_max in both indices,
/// p and bernoulli are indexed by k alone.
inline std::vector<TableRow> table_rows(TableKind kind, unsigned k_max)
{
    std::vector<TableRow> rows;
    switch (kind) {
    case TableKind::q: {
        const QTable q(k_max);
        for (long k = 0; k <= static_cast<long>(k_max); ++k) {
            for (long j = 0; j <= k; ++j) {
                rows.push_back({k, j, Rational(q.at(k, j))});
            }
        }
        break;
    }
    case TableKind::c: {
        if (k_max < 1) {
            break;
        }
        const CTable c{QTable(k_max)};
        for (long k = 1; k <= static_cast<long>(k_max); ++k) {
            for (long j = 0; j <= k; ++j) {
                rows.push_back({k, j, c.at(k, j)});
            }
        }
        break;
    }
    case TableKind::alpha: {
        const unsigned n = std::max(1u, k_max);
        const AlphaTable al = solve_G_ode(n, n);
        for (long k = 0; k <= static_cast<long>(k_max); ++k) {
            for (long j = 0; j <= static_cast<long>(k_max); ++j) {
                rows.push_back({k, j, al.at(static_cast<unsigned>(k), static_cast<unsigned>(j))});
            }
        }
        break;
    }
    case TableKind::p: {
        const auto p = p_series(k_max);
        for (long k = 0; k <= static_cast<long>(k_max); ++k) {
            rows.push_back({k, 0, p.coeff(static_cast<unsigned>(k))});
        }
        break;
    }
    case TableKind::bernoulli: {
        const auto b = bernoulli_table(k_max);
        for (long k = 0; k <= static_cast<long>(k_max); ++k) {
            rows.push_back({k, 0, b[static_cast<std::size_t>(k)]});
        }
        break;
    }
    }
    return rows;
}

inline std::string rows_csv(const std::vector<TableRow> &rows)
{
    std::ostringstream os;
    os << "k,j,value\n";
    for (const auto &r : rows) {
        os << r.k << ',' << r.j << ',' << r.value.str() << '\n';
    }
    return os.str();
}

inline Json rows_json(TableKind kind, unsigned k_max, const std::vector<TableRow> &rows)
{
    Json entries = Json::array();
    for (const auto &r : rows) {
        entries.push_back(Json{{"k", r.k}, {"j", r.j}, {"value", r.value.str()}});
    }
    return Json{{"table", to_string(kind)}, {"k_max", k_max}, {"entries", std::move(entries)}};
}

/// Terms in canonical monomial order. psi, when present, is written as generator "0".
inline Json terms_json(const KappaPoly &p)
{
    Json terms = Json::array();
    for (const auto &[m, c] : p.terms()) {
        Json mono = Json::object();
        if (m.psi_exponent() != 0) {
            mono["0"] = m.psi_exponent();
        }
        const auto &ex = m.kappa_exponents();
        for (std::size_t a = 0; a < ex.size(); ++a) {
            if (ex[a] != 0) {
                mono[std::to_string(a)] = ex[a];
            }
        }
        terms.push_back(Json{{"monomial", std::move(mono)}, {"coeff", c.str()}});
    }
    return terms;
}

inline Json relation_json(const TautRelation &r)
{
    return Json{{"g", r.g}, {"d", r.d}, {"b", r.b}, {"degree", r.degree}, {"terms", terms_json(r.poly)}};
}

inline Json psi_relation_json(long g, long d, const KappaPoly &p)
{
    return Json{{"g", g}, {"d", d}, {"degree", g + 2 - 2 * d}, {"psi", true}, {"terms", terms_json(p)}};
}

inline Json faber_json(long g, const std::vector<GeneratorExpression> &exprs, bool rewrite)
{
    Json entries = Json::array();
    for (const auto &e : exprs) {
        entries.push_back(Json{{"a", e.a},
                               {"d", e.choice.d},
                               {"b", e.choice.b},
                               {"case", to_string(e.choice.case_tag)},
                               {"rhs", terms_json(rewrite ? e.reduced : e.rhs)}});
    }
    return Json{{"g", g}, {"rewrite", rewrite}, {"entries", std::move(entries)}};
}

inline Json scan_entry_json(const ScanEntry &e)
{
    return Json{{"a", e.a},
                {"d", e.d},
                {"g", e.g},
                {"b", e.b},
                {"check", e.check},
                {"coefficient", e.coefficient.str()},
                {"remark_coefficient", e.remark_coefficient.str()}};
}

inline Json scan_json(const ScanReport &r)
{
    Json failures = Json::array();
    for (const auto &e : r.failures) {
        failures.push_back(scan_entry_json(e));
    }
    Json mismatches = Json::array();
    for (const auto &e : r.remark_formula_mismatches) {
        mismatches.push_back(scan_entry_json(e));
    }
    return Json{{"checked", r.checked},
                {"extraction_checked", r.extraction_checked},
                {"failures", std::move(failures)},
                {"remark_formula_mismatches", std::move(mismatches)}};
}

inline Json independence_json(const IndependenceReport &r)
{
    Json pairs = Json::array();
    for (const auto &p : r.pairs) {
        pairs.push_back(Json{{"d", p.d}, {"b", p.b}, {"zero", p.zero}});
    }
    return Json{{"g", r.g}, {"a", r.a}, {"pairs", std::move(pairs)}, {"nonzero", r.nonzero}, {"rank", r.rank}};
}

} // namespace tautrel

#endif
