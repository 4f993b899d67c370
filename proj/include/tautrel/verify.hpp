#ifndef TAUTREL_VERIFY_HPP
#define TAUTREL_VERIFY_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <tautrel/coeffs.hpp>
#include <tautrel/exact.hpp>
#include <tautrel/kappa.hpp>
#include <tautrel/relations.hpp>
#include <tautrel/series.hpp>
#include <tautrel/tautring.hpp>

namespace tautrel
{

namespace detail
{

inline std::string triple(long g, long d, long b)
{
    return "(g,d,b)=(" + std::to_string(g) + "," + std::to_string(d) + "," + std::to_string(b) + ")";
}

inline void record_series_equal(IdentityCheck &check, const BiSeries<Rational> &a, const BiSeries<Rational> &b)
{
    record_zero_series(check, a - b);
}

/// Valid (d, b) for genus g: d >= 2, b <= b_max, extraction exponent >= 0.
template <typename F>
void for_each_valid(long g, long b_max, F f)
{
    for (long d = 2; 2 * d <= g + 2; ++d) {
        for (long b = 0; b <= b_max; ++b) {
            const long x_exp = b == 0 ? g + 1 - 2 * d : g + 2 - 2 * d;
            if (x_exp >= 0) {
                f(d, b);
            }
        }
    }
}

} // namespace detail

/// The alpha-table from the ODE against both closed forms, plus the ODE residual.
inline IdentityReport verify_ode(unsigned n)
{
    if (n < 2) {
        throw std::invalid_argument("verify_ode: order must be >= 2");
    }
    const QTable q(n);
    const CTable c(q);
    const auto alpha = solve_G_ode(n, n);
    IdentityReport rep;
    rep.checks.reserve(3);
    detail::record_series_equal(rep.checks.emplace_back(IdentityCheck{"G_closed_form"}), alpha.series(),
                                expand_G_closed(c, n, n));
    detail::record_series_equal(rep.checks.emplace_back(IdentityCheck{"Gw_closed_form"}),
                                alpha.series().derivative(Var::second), expand_Gw_closed(q, n, n - 1));
    detail::record_zero_series(rep.checks.emplace_back(IdentityCheck{"G_ode_residual"}), g_ode_residual(alpha.series()));
    return rep;
}

/// exp(sum c_{k,k} z^k) = P(z) and the diagonal equation for Q_0, through order n.
inline IdentityReport verify_genfunc(unsigned n)
{
    if (n < 1) {
        throw std::invalid_argument("verify_genfunc: order must be >= 1");
    }
    const QTable q(n + 1u);
    const CTable c(q);
    const auto full = verify_coeff_identities(q, c, n, 1u);
    IdentityReport rep;
    for (const auto &chk : full.checks) {
        if (chk.name == "exp_c_diag" || chk.name == "q0_equation") {
            rep.checks.push_back(chk);
        }
    }
    return rep;
}

/// Leading kappa_a coefficient of extract_relation on g <= g_max, b <= b_max:
/// -2 q_{a-b,d-1} (b >= 2), -((2g-2) c_{a,d} + 2 q_{a-1,d-1}) (b = 1), -c_{a,d} (b = 0).
inline IdentityCheck check_leading_laws(long g_max, long b_max, const QTable &q, KappaExpCache &cache)
{
    const CTable &c = cache.c_table();
    IdentityCheck chk{"leading_coefficient"};
    for (long g = 2; g <= g_max; ++g) {
        detail::for_each_valid(g, b_max, [&](long d, long b) {
            const long a = g + 1 + b - 2 * d;
            if (a == 0) {
                return;
            }
            const auto rel = extract_relation(g, d, b, q, cache);
            const Rational got = rel.poly.coeff(KappaMonomial::kappa(static_cast<unsigned>(a)));
            Rational want;
            if (b >= 2) {
                want = Rational(-2) * Rational(q.at(a - b, d - 1));
            } else if (b == 1) {
                want = -(Rational(2 * g - 2) * c.at(a, d) + Rational(2) * Rational(q.at(a - 1, d - 1)));
            } else {
                want = -c.at(a, d);
            }
            detail::record(chk, got == want, detail::triple(g, d, b), want.str(), got.str());
        });
    }
    return chk;
}

/// The (t,w) pipeline against the (x,u) pipeline: exact multiples with ratio (-1)^d.
inline IdentityCheck check_pipeline_ratio(long g_max, long b_max, const QTable &q, KappaExpCache &cache)
{
    IdentityCheck chk{"tw_vs_xu"};
    const unsigned n = static_cast<unsigned>(g_max + 2);
    const auto alpha = solve_G_ode(n, n);
    for (long g = 2; g <= g_max; ++g) {
        detail::for_each_valid(g, b_max, [&](long d, long b) {
            const auto xu = extract_relation(g, d, b, q, cache).poly;
            const auto tw = extract_relation_tw(g, d, b, alpha).poly;
            const Rational sign(d % 2 == 0 ? 1 : -1);
            const bool ok = tw == xu * sign;
            detail::record(chk, ok, detail::triple(g, d, b), (xu * sign).str(), tw.str());
        });
    }
    return chk;
}

/// Ratio of the general form at b = 0 to the simplified b = 0 relation, per (g,d).
struct B0Ratio {
    long g = 0;
    long d = 0;
    std::optional<Rational> ratio; // empty when either side vanishes or they are not proportional
    bool both_zero = false;
};

inline std::vector<B0Ratio> b0_ratios(long g_max, const QTable &q, KappaExpCache &cache)
{
    std::vector<B0Ratio> out;
    for (long g = 2; g <= g_max; ++g) {
        for (long d = 2; g + 1 - 2 * d >= 0; ++d) {
            const auto simple = extract_relation(g, d, 0, q, cache).poly;
            const auto general = extract_relation_general_b0(g, d, q, cache).poly;
            out.push_back({g, d, general.ratio_to(simple), simple.is_zero() && general.is_zero()});
        }
    }
    return out;
}

/// Diagonal relations against the main ones when 3d = g+1.
inline IdentityCheck check_propF(long g_max, const QTable &q, KappaExpCache &cache)
{
    IdentityCheck chk{"propF_vs_main"};
    for (long g = 2; g <= g_max; ++g) {
        if ((g + 1) % 3 != 0) {
            continue;
        }
        const long d = (g + 1) / 3;
        if (d < 2) {
            continue;
        }
        const auto f = build_propF_relation(g, 0, d, cache.c_table());
        const auto m = extract_relation(g, d, 0, q, cache).poly;
        const auto r = f.ratio_to(m);
        detail::record(chk, r.has_value(), detail::triple(g, d, 0), "nonzero multiple of " + m.str(), f.str());
    }
    return chk;
}

/// Diagonal relations at admissible (g,b,a) are homogeneous of degree a.
inline IdentityCheck check_propF_homogeneous(long g_max, long b_max, const CTable &c)
{
    IdentityCheck chk{"propF_homogeneous"};
    for (long g = 2; g <= g_max; ++g) {
        for (long b = 0; b <= b_max; ++b) {
            for (long a = 1; a <= g + b; ++a) {
                if (!propF_admissible(g, b, a)) {
                    continue;
                }
                const auto p = build_propF_relation(g, b, a, c);
                const auto deg = p.homogeneous_degree();
                const bool ok = p.is_zero() || (deg && static_cast<long>(*deg) == a);
                detail::record(chk, ok,
                               "(g,b,a)=(" + std::to_string(g) + "," + std::to_string(b) + "," + std::to_string(a) + ")",
                               "degree " + std::to_string(a), deg ? "degree " + std::to_string(*deg) : "inhomogeneous");
            }
        }
    }
    return chk;
}

/// [P]_{x^a w^d} through the (y,u) coordinates equals the direct coefficient, on monomials.
inline IdentityCheck check_change_of_variables(unsigned n)
{
    IdentityCheck chk{"change_of_variables"};
    for (unsigned i = 0; i <= n; ++i) {
        for (unsigned j = 0; j <= n; ++j) {
            const auto p = BiSeries<Rational>::monomial(xw_vars(), {n, n}, i, j, Rational(1));
            for (unsigned a = 0; a <= n; ++a) {
                for (unsigned d = 0; d <= n; ++d) {
                    const Rational got = change_vars_xw_to_yu(p, a, d);
                    const Rational want = p.coeff(a, d);
                    detail::record(chk, got == want,
                                   "x^" + std::to_string(i) + " w^" + std::to_string(j) + " at (" + std::to_string(a) + ","
                                       + std::to_string(d) + ")",
                                   want.str(), got.str());
                }
            }
        }
    }
    return chk;
}

/// Every relation-level consistency check on the grid g <= g_max.
inline IdentityReport verify_crosscheck(long g_max)
{
    if (g_max < 2) {
        throw std::invalid_argument("verify_crosscheck: order must be >= 2");
    }
    const QTable q(static_cast<unsigned>(g_max + 2));
    const CTable c(q);
    KappaExpCache cache(c);
    IdentityReport rep;
    rep.checks.push_back(check_pipeline_ratio(g_max, 4, q, cache));
    rep.checks.push_back(check_leading_laws(g_max, 5, q, cache));
    rep.checks.push_back(check_propF(g_max, q, cache));
    rep.checks.push_back(check_propF_homogeneous(g_max, 4, c));
    rep.checks.push_back(check_change_of_variables(static_cast<unsigned>(std::min<long>(g_max, 4))));
    return rep;
}

} // namespace tautrel

#endif
