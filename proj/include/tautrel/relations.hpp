#ifndef TAUTREL_RELATIONS_HPP
#define TAUTREL_RELATIONS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <tautrel/coeffs.hpp>
#include <tautrel/exact.hpp>
#include <tautrel/kappa.hpp>
#include <tautrel/tautring.hpp>

namespace tautrel
{

/// Raised when the generation procedure meets a vanishing leading coefficient or a solved
/// expression fails to satisfy its source relation.
class faber_failure : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class FaberCase { b_large, b0, b1 };

inline const char *to_string(FaberCase c)
{
    switch (c) {
    case FaberCase::b_large:
        return "b_large";
    case FaberCase::b0:
        return "b0";
    case FaberCase::b1:
        return "b1";
    }
    return "?";
}

struct FaberChoice {
    long g = 0;
    long a = 0;
    long d = 0;
    long b = 0;
    FaberCase case_tag = FaberCase::b_large;
};

/// Picks the relation (d, b) used to eliminate kappa_a in genus g.
///
/// For 3a >= g+5 the smallest d with (g+3-a)/2 <= d <= (g+2)/3 gives b = a+2d-g-1 >= 2.
/// Otherwise b in {0, 1} is fixed by parity and d = (g+1+b-a)/2; for 3a <= g+4 this is
/// a = d (3a = g+1+b) or a = d+1 (3a = g+3+b). The same choice covers the 3a >= g+5
/// cells whose d-interval holds no integer (g = 6, a = 4 is the first).
inline FaberChoice faber_choose(long g, long a)
{
    if (g < 2 || a < g / 3 + 1 || a > g - 2) {
        throw std::invalid_argument("faber_choose: a = " + std::to_string(a) + " outside [" + std::to_string(g / 3 + 1)
                                    + ", " + std::to_string(g - 2) + "] for g = " + std::to_string(g));
    }
    if (3 * a >= g + 5) {
        const long d_lo = std::max(2L, (g + 3 - a + 1) / 2);
        const long d_hi = (g + 2) / 3;
        for (long d = d_lo; d <= d_hi; ++d) {
            const long b = a + 2 * d - g - 1;
            if (b >= 2) {
                return {g, a, d, b, FaberCase::b_large};
            }
        }
    }
    const long b = (g + 1 - a) % 2 == 0 ? 0 : 1;
    const long d = (g + 1 + b - a) / 2;
    if (d >= 2 && d <= a) {
        return {g, a, d, b, b == 0 ? FaberCase::b0 : FaberCase::b1};
    }
    throw std::invalid_argument("faber_choose: no admissible d for (g,a) = (" + std::to_string(g) + ","
                                + std::to_string(a) + ")");
}

/// kappa_a expressed through lower generators.
struct GeneratorExpression {
    long g = 0;
    long a = 0;
    FaberChoice choice;
    Rational leading;       // coefficient of kappa_a in the source relation
    KappaPoly rhs;          // kappa_a = rhs, in kappa_1..kappa_{a-1}
    KappaPoly reduced;      // kappa_a = reduced, in kappa_1..kappa_{[g/3]}
    TautRelation relation;  // source relation
};

/// True when some monomial of p uses only kappa_1..kappa_{b-2}.
inline bool has_low_only_monomial(const KappaPoly &p, long b)
{
    if (b < 3) {
        return false;
    }
    for (const auto &[m, c] : p.terms()) {
        if (m.psi_exponent() != 0 || m.is_unit()) {
            continue;
        }
        if (*m.min_kappa_index() >= 1 && *m.max_kappa_index() <= static_cast<unsigned>(b - 2)) {
            return true;
        }
    }
    return false;
}

/// Eliminates kappa_a for [g/3] < a <= g-2, each one solved from its chosen relation
/// and then rewritten in kappa_1..kappa_{[g/3]} using the already reduced lower entries.
inline std::vector<GeneratorExpression> faber_solve(long g, const QTable &q, KappaExpCache &cache)
{
    if (g < 2) {
        throw std::invalid_argument("faber_solve: g must be >= 2");
    }
    const long base = g / 3;
    std::vector<GeneratorExpression> out;
    for (long a = base + 1; a <= g - 2; ++a) {
        GeneratorExpression ge;
        ge.g = g;
        ge.a = a;
        ge.choice = faber_choose(g, a);
        ge.relation = extract_relation(g, ge.choice.d, ge.choice.b, q, cache);
        const KappaMonomial ka = KappaMonomial::kappa(static_cast<unsigned>(a));
        ge.leading = ge.relation.poly.coeff(ka);
        if (ge.leading.is_zero()) {
            throw faber_failure("zero kappa_" + std::to_string(a) + " coefficient in relation (g,d,b) = ("
                                + std::to_string(g) + "," + std::to_string(ge.choice.d) + ","
                                + std::to_string(ge.choice.b) + ")");
        }
        KappaPoly rest = ge.relation.poly - KappaPoly(ka, ge.leading);
        ge.rhs = rest * (Rational(-1) / ge.leading);

        // earlier entries are already in kappa_1..kappa_base; substitute from the top down
        KappaPoly red = ge.rhs;
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            red = red.substitute(static_cast<unsigned>(it->a), it->reduced);
        }
        ge.reduced = std::move(red);
        if (const auto top = ge.reduced.max_kappa_index(); top && static_cast<long>(*top) > base) {
            throw faber_failure("rewriting kappa_" + std::to_string(a) + " left kappa_" + std::to_string(*top));
        }

        // substitute every reduced expression back into the source relation
        KappaPoly check = ge.relation.poly.substitute(static_cast<unsigned>(a), ge.reduced);
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            check = check.substitute(static_cast<unsigned>(it->a), it->reduced);
        }
        if (!check.is_zero()) {
            throw faber_failure("solved kappa_" + std::to_string(a) + " does not satisfy its source relation: residual "
                                + check.str());
        }
        out.push_back(std::move(ge));
    }
    return out;
}

inline std::vector<GeneratorExpression> faber_solve(long g, const QTable &q, const CTable &c)
{
    KappaExpCache cache(c);
    return faber_solve(g, q, cache);
}

struct ScanEntry {
    long a = 0;
    long d = 0;
    long g = 0;
    long b = 0;
    std::string check;
    Rational coefficient;        // value from the proof's formula (or c_{a,d} for b = 0)
    Rational remark_coefficient; // (2a-4d-6) c_{a,d} + 2 q_{a-1,d-1} for b = 1
};

struct ScanReport {
    std::size_t checked = 0;
    std::size_t extraction_checked = 0;
    std::vector<ScanEntry> failures;
    std::vector<ScanEntry> remark_formula_mismatches;

    bool passed() const
    {
        return failures.empty();
    }
};

/// Sub-grid (a <= this) on which the leading coefficients are also read off extracted relations.
inline constexpr long scan_default_extraction_a = 8;

/// Checks for 1 <= d <= a <= a_max that the b = 0 and b = 1 leading coefficients
/// c_{a,d} and (2g-2) c_{a,d} + 2 q_{a-1,d-1} (g = a+2d-2) are nonzero.
inline ScanReport scan_nonvanishing(long a_max, const QTable &q, KappaExpCache &cache,
                                    long extraction_a = scan_default_extraction_a)
{
    if (a_max < 1) {
        throw std::invalid_argument("scan_nonvanishing: a_max must be >= 1");
    }
    const CTable &c = cache.c_table();
    detail::require_cover("c-table", c.k_max(), a_max);
    detail::require_cover("q-table", q.k_max(), a_max - 1);
    ScanReport rep;
    for (long a = 1; a <= a_max; ++a) {
        for (long d = 1; d <= a; ++d) {
            ++rep.checked;
            const Rational cad = c.at(a, d);
            const Rational qq(q.at(a - 1, d - 1));
            const long g0 = a + 2 * d - 1;
            const long g1 = a + 2 * d - 2;
            const Rational lead1 = Rational(2 * g1 - 2) * cad + Rational(2) * qq;
            const Rational remark = Rational(2 * a - 4 * d - 6) * cad + Rational(2) * qq;
            if (cad.is_zero()) {
                rep.failures.push_back({a, d, g0, 0, "c_nonzero", cad, cad});
            }
            if (lead1.is_zero()) {
                rep.failures.push_back({a, d, g1, 1, "b1_nonzero", lead1, remark});
            }
            if (remark != lead1) {
                rep.remark_formula_mismatches.push_back({a, d, g1, 1, "remark_formula", lead1, remark});
            }
            if (a > extraction_a || d < 2) {
                continue;
            }
            const KappaMonomial ka = KappaMonomial::kappa(static_cast<unsigned>(a));
            ++rep.extraction_checked;
            const Rational got0 = extract_relation(g0, d, 0, q, cache).poly.coeff(ka);
            if (got0 != -cad) {
                rep.failures.push_back({a, d, g0, 0, "b0_extraction", -cad, got0});
            }
            if (g1 >= 2) {
                const Rational got1 = extract_relation(g1, d, 1, q, cache).poly.coeff(ka);
                if (got1 != -lead1) {
                    rep.failures.push_back({a, d, g1, 1, "b1_extraction", -lead1, got1});
                }
            }
        }
    }
    return rep;
}

/// Rank of a rational matrix by fraction-free (Bareiss) elimination.
inline std::size_t rational_rank(const std::vector<std::vector<Rational>> &rows)
{
    if (rows.empty()) {
        return 0;
    }
    const std::size_t n_cols = rows.front().size();
    // clear denominators row by row
    std::vector<std::vector<Integer>> m;
    m.reserve(rows.size());
    for (const auto &row : rows) {
        if (row.size() != n_cols) {
            throw std::invalid_argument("rational_rank: ragged matrix");
        }
        Integer l = 1;
        for (const auto &x : row) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
        }
        std::vector<Integer> r;
        r.reserve(n_cols);
        for (const auto &x : row) {
            r.push_back(x.numerator() * (l / x.denominator()));
        }
        m.push_back(std::move(r));
    }
    std::size_t rank = 0;
    Integer prev = 1;
    for (std::size_t col = 0; col < n_cols && rank < m.size(); ++col) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][col] == 0) {
            ++piv;
        }
        if (piv == m.size()) {
            continue;
        }
        std::swap(m[piv], m[rank]);
        for (std::size_t i = rank + 1; i < m.size(); ++i) {
            for (std::size_t j = col + 1; j < n_cols; ++j) {
                m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / prev;
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

struct IndependenceEntry {
    long d = 0;
    long b = 0;
    bool zero = false;
    TautRelation relation;
};

struct IndependenceReport {
    long g = 0;
    long a = 0;
    std::vector<IndependenceEntry> pairs;
    std::size_t nonzero = 0;
    std::size_t rank = 0;

    bool independent() const
    {
        return rank == nonzero;
    }
};

/// All relations of degree a in genus g over the admissible (d, b), with the rank of the nonzero ones.
inline IndependenceReport independence_report(long g, long a, const QTable &q, KappaExpCache &cache)
{
    if (g < 2 || a < 0) {
        throw std::invalid_argument("independence_report: need g >= 2 and a >= 0");
    }
    IndependenceReport rep{g, a, {}, 0, 0};
    for (long d = 2;; ++d) {
        const long b = a - g - 1 + 2 * d;
        const long x_exp = b == 0 ? g + 1 - 2 * d : g + 2 - 2 * d;
        if (x_exp < 0) {
            break;
        }
        if (b < 0) {
            continue;
        }
        IndependenceEntry e;
        e.d = d;
        e.b = b;
        e.relation = extract_relation(g, d, b, q, cache);
        e.zero = e.relation.poly.is_zero();
        rep.pairs.push_back(std::move(e));
    }
    std::vector<KappaMonomial> basis;
    std::map<KappaMonomial, std::size_t, MonomialOrder> index;
    for (const auto &e : rep.pairs) {
        for (const auto &[m, c] : e.relation.poly.terms()) {
            if (index.emplace(m, basis.size()).second) {
                basis.push_back(m);
            }
        }
    }
    std::vector<std::vector<Rational>> rows;
    for (const auto &e : rep.pairs) {
        if (e.zero) {
            continue;
        }
        std::vector<Rational> row(basis.size());
        for (const auto &[m, c] : e.relation.poly.terms()) {
            row[index.at(m)] = c;
        }
        rows.push_back(std::move(row));
    }
    rep.nonzero = rows.size();
    rep.rank = rational_rank(rows);
    return rep;
}

inline IndependenceReport independence_report(long g, long a, const QTable &q, const CTable &c)
{
    KappaExpCache cache(c);
    return independence_report(g, a, q, cache);
}

} // namespace tautrel

#endif
