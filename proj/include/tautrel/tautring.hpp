#ifndef TAUTREL_TAUTRING_HPP
#define TAUTREL_TAUTRING_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <tautrel/coeffs.hpp>
#include <tautrel/exact.hpp>
#include <tautrel/kappa.hpp>
#include <tautrel/series.hpp>

namespace tautrel
{

using KappaSeries = BiSeries<KappaPoly>;

class relation_range_error : public std::invalid_argument
{
public:
    relation_range_error(long g, long d, long b)
        : std::invalid_argument("relation out of range for (g,d,b) = (" + std::to_string(g) + "," + std::to_string(d)
                                + "," + std::to_string(b) + ")")
    {
    }
};

class inadmissible_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// One extracted relation, living in degree g+1+b-2d.
struct TautRelation {
    long g = 0;
    long d = 0;
    long b = 0;
    long degree = 0;
    KappaPoly poly;
};

struct RelationOptions {
    /// Keep kappa_0 as a generator instead of substituting 2g-2.
    bool symbolic_kappa0 = false;
};

namespace detail
{

/// kappa_a with the scalar conventions kappa_{-1} = 0 and kappa_0 = 2g-2.
inline KappaPoly kappa_or_scalar(long a, long g, const RelationOptions &opt = {})
{
    if (a < 0) {
        return KappaPoly();
    }
    if (a == 0 && !opt.symbolic_kappa0) {
        return KappaPoly(Rational(2 * g - 2));
    }
    return KappaPoly::kappa(static_cast<unsigned>(a));
}

inline const VarNames &xu_vars()
{
    static const VarNames v{"x", "u"};
    return v;
}

inline void check_g_d(long g, long d, long b)
{
    if (g < 2 || d < 2 || b < 0) {
        throw relation_range_error(g, d, b);
    }
}

} // namespace detail

/// exp(-sum_a x^a kappa_a sum_j c_{a,j} u^j) truncated at (n_x, n_u).
inline KappaSeries kappa_exponential(const CTable &c, unsigned n_x, unsigned n_u)
{
    if (n_x > 0) {
        detail::require_cover("c-table", c.k_max(), n_x);
    }
    KappaSeries s(detail::xu_vars(), Orders{n_x, n_u});
    for (unsigned a = 1; a <= n_x; ++a) {
        const KappaMonomial m = KappaMonomial::kappa(a);
        for (unsigned j = 0; j <= std::min(a, n_u); ++j) {
            const Rational cj = c.at(a, j);
            if (!cj.is_zero()) {
                s.add_to(a, j, KappaPoly(m, -cj));
            }
        }
    }
    return series_exp(s);
}

/// Thread-safe memo of kappa exponentials keyed by truncation; larger entries serve
/// smaller requests by truncation.
class KappaExpCache
{
public:
    explicit KappaExpCache(const CTable &c) : m_c(&c) {}

    KappaSeries get(unsigned n_x, unsigned n_u)
    {
        std::lock_guard<std::mutex> lock(m_mutex);
        for (const auto &[o, s] : m_entries) {
            if (o.first >= n_x && o.second >= n_u) {
                if (o.first == n_x && o.second == n_u) {
                    return *s;
                }
                return s->truncate(Orders{n_x, n_u});
            }
        }
        auto s = std::make_shared<KappaSeries>(kappa_exponential(*m_c, n_x, n_u));
        m_entries.emplace(std::make_pair(n_x, n_u), s);
        return *s;
    }

    const CTable &c_table() const
    {
        return *m_c;
    }

private:
    const CTable *m_c;
    std::mutex m_mutex;
    std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const KappaSeries>> m_entries;
};

namespace detail
{

/// The coefficient of x^X u^d in E * (K0 - 2 sum_a gen(a) x^{a+1} sum_j q_{a,j} u^{j+1}),
/// where gen(a) is the generator paired with q-row a.
template <typename Gen>
KappaPoly second_factor_extract(const KappaSeries &e, const QTable &q, const KappaPoly &k0, long X, long d, Gen gen)
{
    KappaPoly r = k0 * e.coeff(static_cast<unsigned>(X), static_cast<unsigned>(d));
    for (long a = 0; a <= X - 1; ++a) {
        KappaPoly inner;
        for (long j = 0; j <= std::min(a, d - 1); ++j) {
            const Integer qa = q.at(a, j);
            if (qa == 0) {
                continue;
            }
            const KappaPoly &ec = e.coeff(static_cast<unsigned>(X - a - 1), static_cast<unsigned>(d - j - 1));
            if (ec.is_zero()) {
                continue;
            }
            inner += ec * Rational(qa);
        }
        if (!inner.is_zero()) {
            r -= gen(a) * inner * Rational(2);
        }
    }
    return r;
}

inline void require_q_cover(const QTable &q, long X)
{
    if (X >= 1) {
        require_cover("q-table", q.k_max(), X - 1);
    }
}

} // namespace detail

/// Relation in degree g+1+b-2d from the (x,u) generating function; b = 0 uses the
/// simplified form at x-exponent g+1-2d, b >= 1 the general form at g+2-2d.
inline TautRelation extract_relation(long g, long d, long b, const QTable &q, KappaExpCache &cache,
                                     const RelationOptions &opt = {})
{
    detail::check_g_d(g, d, b);
    TautRelation rel{g, d, b, g + 1 + b - 2 * d, {}};
    if (b == 0) {
        const long X = g + 1 - 2 * d;
        if (X < 0) {
            throw relation_range_error(g, d, b);
        }
        const auto e = cache.get(static_cast<unsigned>(X), static_cast<unsigned>(d));
        rel.poly = e.coeff(static_cast<unsigned>(X), static_cast<unsigned>(d));
        return rel;
    }
    const long X = g + 2 - 2 * d;
    if (X < 0) {
        throw relation_range_error(g, d, b);
    }
    detail::require_q_cover(q, X);
    const auto e = cache.get(static_cast<unsigned>(X), static_cast<unsigned>(d));
    rel.poly = detail::second_factor_extract(e, q, detail::kappa_or_scalar(b - 1, g, opt), X, d,
                                             [&](long a) { return detail::kappa_or_scalar(a + b, g, opt); });
    return rel;
}

inline TautRelation extract_relation(long g, long d, long b, const QTable &q, const CTable &c,
                                     const RelationOptions &opt = {})
{
    KappaExpCache cache(c);
    return extract_relation(g, d, b, q, cache, opt);
}

/// The general (b >= 1) form evaluated at b = 0: exponents (g+2-2d, d), kappa_{-1} = 0.
/// Proportional to the simplified b = 0 relation.
inline TautRelation extract_relation_general_b0(long g, long d, const QTable &q, KappaExpCache &cache)
{
    detail::check_g_d(g, d, 0);
    const long X = g + 2 - 2 * d;
    if (X < 0) {
        throw relation_range_error(g, d, 0);
    }
    detail::require_q_cover(q, X);
    const auto e = cache.get(static_cast<unsigned>(X), static_cast<unsigned>(d));
    TautRelation rel{g, d, 0, g + 1 - 2 * d, {}};
    rel.poly = detail::second_factor_extract(e, q, KappaPoly(), X, d, [&](long a) { return detail::kappa_or_scalar(a, g); });
    return rel;
}

inline TautRelation extract_relation_general_b0(long g, long d, const QTable &q, const CTable &c)
{
    KappaExpCache cache(c);
    return extract_relation_general_b0(g, d, q, cache);
}

/// Relation on the universal curve: psi takes the place of kappa_{a+b} in the second factor,
/// with leading term 1. Homogeneous of degree g+2-2d.
inline KappaPoly extract_psi_relation(long g, long d, const QTable &q, KappaExpCache &cache)
{
    detail::check_g_d(g, d, 0);
    const long X = g + 2 - 2 * d;
    if (X < 0) {
        throw relation_range_error(g, d, 0);
    }
    detail::require_q_cover(q, X);
    const auto e = cache.get(static_cast<unsigned>(X), static_cast<unsigned>(d));
    return detail::second_factor_extract(e, q, KappaPoly(Rational(1)), X, d,
                                         [](long a) { return KappaPoly::psi(static_cast<unsigned>(a + 1)); });
}

inline KappaPoly extract_psi_relation(long g, long d, const QTable &q, const CTable &c)
{
    KappaExpCache cache(c);
    return extract_psi_relation(g, d, q, cache);
}

/// The same relation computed from G(x,w) in the (t,w) variables:
/// L = sum t^{a-1} kappa_{a-1} alpha_{a,j} w^j and
/// M = kappa_{b-1} + 2 sum t^a kappa_{a+b-1} j alpha_{a,j} w^j.
/// b = 0 extracts [exp L]_{t^{g+1-2d} w^d}; b >= 1 extracts [exp(L) M]_{t^{g+2-2d} w^d}.
/// Agrees with extract_relation up to the factor (-1)^d.
inline TautRelation extract_relation_tw(long g, long d, long b, const AlphaTable &alpha)
{
    detail::check_g_d(g, d, b);
    const long X = b == 0 ? g + 1 - 2 * d : g + 2 - 2 * d;
    if (X < 0) {
        throw relation_range_error(g, d, b);
    }
    const Orders have = alpha.orders();
    if (have.first < static_cast<unsigned>(X) + 1u || have.second < static_cast<unsigned>(d)) {
        throw table_size_error("alpha-table orders " + have.str() + " do not cover (" + std::to_string(X + 1) + ","
                               + std::to_string(d) + ")");
    }
    const VarNames tw{"t", "w"};
    const Orders box{static_cast<unsigned>(X), static_cast<unsigned>(d)};

    KappaSeries l(tw, box);
    for (long a = 1; a <= X + 1; ++a) {
        const KappaPoly k = detail::kappa_or_scalar(a - 1, g);
        for (long j = 0; j <= d; ++j) {
            const Rational al = alpha.at(static_cast<unsigned>(a), static_cast<unsigned>(j));
            if (!al.is_zero()) {
                l.add_to(static_cast<unsigned>(a - 1), static_cast<unsigned>(j), k * al);
            }
        }
    }
    // L has a constant term only through alpha_{1,0}, which vanishes
    const KappaSeries e = series_exp(l);

    TautRelation rel{g, d, b, g + 1 + b - 2 * d, {}};
    if (b == 0) {
        rel.poly = e.coeff(box.first, box.second);
        return rel;
    }
    KappaSeries m(tw, box);
    m.add_to(0, 0, detail::kappa_or_scalar(b - 1, g));
    for (long a = 0; a <= X; ++a) {
        const KappaPoly k = detail::kappa_or_scalar(a + b - 1, g);
        for (long j = 1; j <= d; ++j) {
            const Rational al = alpha.at(static_cast<unsigned>(a), static_cast<unsigned>(j));
            if (!al.is_zero()) {
                m.add_to(static_cast<unsigned>(a), static_cast<unsigned>(j), k * (al * Rational(2 * j)));
            }
        }
    }
    KappaPoly r;
    for (const auto &[ex, ec] : e.terms()) {
        const auto &mc = m.coeff(box.first - ex.first, box.second - ex.second);
        if (!mc.is_zero()) {
            r += ec * mc;
        }
    }
    rel.poly = std::move(r);
    return rel;
}

/// Whether (g, b, a) is one of the admissible index triples for the diagonal relations.
inline bool propF_admissible(long g, long b, long a)
{
    if (g < 2 || b < 0) {
        return false;
    }
    if (b == 0) {
        return (g % 3 == 0 && a == g / 3 + 1) || ((g + 1) % 3 == 0 && a == (g + 1) / 3);
    }
    return ((g - 1) % 3 == 0 && a == (g - 1) / 3 + b) || ((g + 1) % 3 == 0 && a == (g + 1) / 3 + b);
}

/// Relations built from the diagonal c_{j,j} only:
/// b = 0: [exp(-sum c_{j,j} kappa_j t^j)]_{t^a};
/// b >= 1: the same exponential times
/// (kappa_{b-1} t^{b-1} - 2 kappa_b t^b - 12 sum j c_{j,j} kappa_{j+b} t^{j+b}), at t^a.
inline KappaPoly build_propF_relation(long g, long b, long a, const CTable &c)
{
    if (!propF_admissible(g, b, a)) {
        if (b == 0) {
            throw inadmissible_error("inadmissible (g,b,a) = (" + std::to_string(g) + ",0," + std::to_string(a)
                                     + "): b = 0 requires a = g/3+1 or a = (g+1)/3 with integral value");
        }
        throw inadmissible_error("inadmissible (g,b,a) = (" + std::to_string(g) + "," + std::to_string(b) + ","
                                 + std::to_string(a) + "): b >= 1 requires a = (g-1)/3+b or a = (g+1)/3+b with integral value");
    }
    const unsigned n = static_cast<unsigned>(a);
    detail::require_cover("c-table", c.k_max(), a);
    UniSeries<KappaPoly> f("t", n);
    for (unsigned j = 1; j <= n; ++j) {
        f.set(j, KappaPoly(KappaMonomial::kappa(j), -c.at(j, j)));
    }
    const auto e = series_exp(f);
    if (b == 0) {
        return e.coeff(n);
    }
    UniSeries<KappaPoly> h("t", n);
    auto add = [&](long power, const KappaPoly &p) {
        if (power >= 0 && power <= a) {
            h.set(static_cast<unsigned>(power), h.coeff(static_cast<unsigned>(power)) + p);
        }
    };
    add(b - 1, detail::kappa_or_scalar(b - 1, g));
    add(b, KappaPoly::kappa(static_cast<unsigned>(b)) * Rational(-2));
    for (long j = 1; j + b <= a; ++j) {
        add(j + b, KappaPoly::kappa(static_cast<unsigned>(j + b)) * (c.at(j, j) * Rational(-12 * j)));
    }
    return (e * h).coeff(n);
}

} // namespace tautrel

#endif
