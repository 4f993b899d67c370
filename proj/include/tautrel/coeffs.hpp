#ifndef TAUTREL_COEFFS_HPP
#define TAUTREL_COEFFS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <tautrel/exact.hpp>
#include <tautrel/series.hpp>

namespace tautrel
{

class table_size_error : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

namespace detail
{

inline void require_cover(const char *what, long have, long need)
{
    if (have < need) {
        throw table_size_error(std::string(what) + " sized to " + std::to_string(have) + " but " + std::to_string(need)
                               + " is required");
    }
}

} // namespace detail

/// Triangular table of the positive integers q_{k,j}, 0 <= j <= k <= k_max.
///
/// Built from q_{0,0} = 1 and
///   q_{k,j} = (2k+4j-2) q_{k-1,j-1} + (j+1) q_{k-1,j} + sum_{m<k} sum_{l<j} q_{m,l} q_{k-1-m,j-1-l},
/// with q vanishing outside the triangle.
class QTable
{
public:
    explicit QTable(unsigned k_max) : m_rows(k_max + 1u)
    {
        for (unsigned k = 0; k <= k_max; ++k) {
            m_rows[k].resize(k + 1u);
        }
        m_rows[0][0] = 1;
        for (long k = 1; k <= static_cast<long>(k_max); ++k) {
            for (long j = 0; j <= k; ++j) {
                Integer v = (2 * k + 4 * j - 2) * at(k - 1, j - 1) + (j + 1) * at(k - 1, j);
                for (long m = 0; m <= k - 1; ++m) {
                    // q_{m,l} needs l <= m; its partner needs j-1-l <= k-1-m
                    const long l_lo = std::max(0L, (j - 1) - (k - 1 - m));
                    const long l_hi = std::min(j - 1, m);
                    for (long l = l_lo; l <= l_hi; ++l) {
                        v += m_rows[m][l] * m_rows[k - 1 - m][j - 1 - l];
                    }
                }
                m_rows[k][j] = std::move(v);
            }
        }
    }

    unsigned k_max() const
    {
        return static_cast<unsigned>(m_rows.size() - 1u);
    }

    /// q_{k,j}; zero for j < 0 or j > k, an error for k beyond the table.
    Integer at(long k, long j) const
    {
        if (k < 0 || j < 0 || j > k) {
            return 0;
        }
        if (k > static_cast<long>(k_max())) {
            throw table_size_error("q_{" + std::to_string(k) + "," + std::to_string(j) + "} beyond table k_max "
                                   + std::to_string(k_max()));
        }
        return m_rows[k][j];
    }

private:
    std::vector<std::vector<Integer>> m_rows;
};

inline QTable build_q_table(unsigned k_max)
{
    return QTable(k_max);
}

/// Triangular table of the rationals c_{k,j}, 1 <= k <= k_max, 0 <= j <= k.
///
/// Each row is solved downward from j = k in q_{k,j} = (2k+4j) c_{k,j} + (j+1) c_{k,j+1}
/// with c_{k,k+1} = 0.
class CTable
{
public:
    explicit CTable(const QTable &q) : m_rows(q.k_max() + 1u)
    {
        if (q.k_max() < 1) {
            throw table_size_error("c table needs a q table with k_max >= 1");
        }
        for (long k = 1; k <= static_cast<long>(q.k_max()); ++k) {
            auto &row = m_rows[k];
            row.resize(k + 1);
            row[k] = Rational(q.at(k, k)) / Rational(6 * k);
            for (long j = k - 1; j >= 0; --j) {
                row[j] = (Rational(q.at(k, j)) - Rational(j + 1) * row[j + 1]) / Rational(2 * k + 4 * j);
            }
        }
    }

    unsigned k_max() const
    {
        return static_cast<unsigned>(m_rows.size() - 1u);
    }

    /// c_{k,j}; zero for j < 0 or j > k, an error for k outside 1..k_max.
    Rational at(long k, long j) const
    {
        if (k < 1 || k > static_cast<long>(k_max())) {
            throw table_size_error("c_{" + std::to_string(k) + "," + std::to_string(j) + "} outside table rows 1.."
                                   + std::to_string(k_max()));
        }
        if (j < 0 || j > k) {
            return Rational();
        }
        return m_rows[k][j];
    }

private:
    std::vector<std::vector<Rational>> m_rows;
};

inline CTable build_c_table(const QTable &q)
{
    return CTable(q);
}

/// Coefficients alpha_{k,j} of G(x,w) = sum alpha_{k,j} x^k w^j at truncation (N_x, N_w).
class AlphaTable
{
public:
    explicit AlphaTable(BiSeries<Rational> series) : m_series(std::move(series)) {}

    Orders orders() const
    {
        return m_series.orders();
    }
    Rational at(unsigned k, unsigned j) const
    {
        if (!m_series.in_range(k, j)) {
            throw table_size_error("alpha_{" + std::to_string(k) + "," + std::to_string(j) + "} outside truncation "
                                   + m_series.orders().str());
        }
        return m_series.coeff(k, j);
    }
    const BiSeries<Rational> &series() const
    {
        return m_series;
    }

private:
    BiSeries<Rational> m_series;
};

inline const VarNames &xw_vars()
{
    static const VarNames v{"x", "w"};
    return v;
}

/// Solves x w G_ww = w (G_w)^2 + (1-x) G_w - 1 with G(x,0) = -sum_{a>=2} B_a/(a(a-1)) x^a.
///
/// Writing G = sum_d G_d(x) w^d/d!, the coefficient of w^{d-1} gives
///   delta_{d,1} = (1 - d x) G_d + sum_{l=1}^{d-1} C(d-1,l) l G_l G_{d-l},
/// so each G_d is a power series in x determined by the lower ones.
inline AlphaTable solve_G_ode(unsigned n_x, unsigned n_w)
{
    if (n_x < 1 || n_w < 1) {
        throw std::invalid_argument("solve_G_ode: orders must be >= 1");
    }
    const auto bern = bernoulli_table(n_x);
    BiSeries<Rational> g(xw_vars(), {n_x, n_w});
    for (unsigned a = 2; a <= n_x; ++a) {
        g.add_to(a, 0, -bern[a] / Rational(static_cast<long>(a) * (a - 1)));
    }

    using XSeries = UniSeries<Rational>;
    std::vector<XSeries> gd(n_w + 1u, XSeries("x", n_x));
    Rational d_factorial(1);
    for (unsigned d = 1; d <= n_w; ++d) {
        d_factorial *= Rational(static_cast<long>(d));
        XSeries rhs("x", n_x);
        if (d == 1) {
            rhs.set(0, Rational(1));
        }
        for (unsigned l = 1; l < d; ++l) {
            const Rational w = Rational(binomial(d - 1, l)) * Rational(static_cast<long>(l));
            rhs -= (gd[l] * gd[d - l]) * w;
        }
        // divide by (1 - d x)
        XSeries sol("x", n_x);
        Rational carry;
        for (unsigned k = 0; k <= n_x; ++k) {
            carry = rhs.coeff(k) + carry * Rational(static_cast<long>(d));
            sol.set(k, carry);
        }
        gd[d] = sol;
        for (unsigned k = 0; k <= n_x; ++k) {
            g.add_to(k, d, sol.coeff(k) / d_factorial);
        }
    }
    return AlphaTable(std::move(g));
}

namespace detail
{

// (-1 + sqrt(1+4w)) / (2w) through w^n
inline BiSeries<Rational> catalan_slice(Orders orders)
{
    BiSeries<Rational> s(xw_vars(), orders);
    Rational four_pow(4);
    for (unsigned j = 0; j <= orders.second; ++j) {
        s.add_to(0, j, generalized_binomial(Rational(1, 2), j + 1) * four_pow / Rational(2));
        four_pow *= Rational(4);
    }
    return s;
}

} // namespace detail

/// G_w in closed form:
///   (-1+sqrt(1+4w))/(2w) + x/(1+4w) + sum_{k>=1} sum_j x^{k+1} q_{k,j} (-w)^j (1+4w)^{-j-k/2-1}.
inline BiSeries<Rational> expand_Gw_closed(const QTable &q, unsigned n_x, unsigned n_w)
{
    detail::require_cover("q table", q.k_max(), static_cast<long>(n_x) - 1);
    const Orders o{n_x, n_w};
    auto s = detail::catalan_slice(o);
    if (n_x >= 1) {
        s += binomial_unit_pow(Rational(4), Rational(-1), xw_vars(), o, Var::second).shift(Var::first, 1);
    }
    for (long k = 1; k + 1 <= static_cast<long>(n_x); ++k) {
        for (long j = 0; j <= k && j <= static_cast<long>(n_w); ++j) {
            const Rational e = Rational(-j - 1) - Rational(k, 2);
            const Rational coef = Rational(q.at(k, j)) * Rational(j % 2 == 0 ? 1 : -1);
            s += binomial_unit_pow(Rational(4), e, xw_vars(), o, Var::second)
                     .shift(Var::second, static_cast<unsigned>(j))
                     .shift(Var::first, static_cast<unsigned>(k + 1))
                 * coef;
        }
    }
    return s;
}

/// G in closed form:
///   G(0,w) + (x/4) ln(1+4w) - sum_{k>=1} sum_{j<=k} x^{k+1} c_{k,j} (-w)^j (1+4w)^{-j-k/2},
/// where G(0,w) is the w-antiderivative of (-1+sqrt(1+4w))/(2w) vanishing at w = 0.
inline BiSeries<Rational> expand_G_closed(const CTable &c, unsigned n_x, unsigned n_w)
{
    if (n_w < 1) {
        throw std::invalid_argument("expand_G_closed: w order must be >= 1");
    }
    if (n_x >= 2) {
        detail::require_cover("c table", c.k_max(), static_cast<long>(n_x) - 1);
    }
    const Orders o{n_x, n_w};
    auto s = detail::catalan_slice({n_x, n_w - 1}).integral(Var::second);
    if (n_x >= 1) {
        // (x/4) ln(1+4w) = x sum_{n>=1} (-1)^{n-1} 4^{n-1} w^n / n
        Rational four_pow(1);
        for (unsigned n = 1; n <= n_w; ++n) {
            s.add_to(1, n, four_pow * Rational(n % 2 == 1 ? 1 : -1, static_cast<long>(n)));
            four_pow *= Rational(4);
        }
    }
    for (long k = 1; k + 1 <= static_cast<long>(n_x); ++k) {
        for (long j = 0; j <= k && j <= static_cast<long>(n_w); ++j) {
            const Rational ckj = c.at(k, j);
            if (ckj.is_zero()) {
                continue;
            }
            const Rational e = Rational(-j) - Rational(k, 2);
            const Rational coef = -ckj * Rational(j % 2 == 0 ? 1 : -1);
            s += binomial_unit_pow(Rational(4), e, xw_vars(), o, Var::second)
                     .shift(Var::second, static_cast<unsigned>(j))
                     .shift(Var::first, static_cast<unsigned>(k + 1))
                 * coef;
        }
    }
    return s;
}

/// P(z) = sum_k (6k)! / ((3k)! (2k)!) 72^{-k} z^k.
inline UniSeries<Rational> p_series(unsigned k_max)
{
    UniSeries<Rational> p("z", k_max);
    Integer seventy_two_pow = 1;
    for (unsigned k = 0; k <= k_max; ++k) {
        p.set(k, Rational(factorial(6ul * k), factorial(3ul * k) * factorial(2ul * k) * seventy_two_pow));
        seventy_two_pow *= 72;
    }
    return p;
}

/// Residual x w G_ww - w (G_w)^2 - (1-x) G_w + 1 at orders (N_x, N_w - 1).
inline BiSeries<Rational> g_ode_residual(const BiSeries<Rational> &g)
{
    if (g.orders().second < 2) {
        throw std::invalid_argument("g_ode_residual: w order must be >= 2");
    }
    const auto gw = g.derivative(Var::second);
    const auto gww = gw.derivative(Var::second);
    const Orders o = gw.orders();
    auto r = gww.shift_extend(Var::second).shift(Var::first);
    r -= (gw * gw).shift(Var::second);
    r -= gw;
    r += gw.shift(Var::first);
    r += BiSeries<Rational>::one(g.variables(), o);
    return r;
}

/// Q(x,u) = sum_k sum_j x^k (1+4u)^{k/2} q_{k,j} u^j at the given orders.
inline BiSeries<Rational> assemble_Q(const QTable &q, Orders o)
{
    detail::require_cover("q table", q.k_max(), o.first);
    const VarNames xu{"x", "u"};
    BiSeries<Rational> s(xu, o);
    for (long k = 0; k <= static_cast<long>(o.first); ++k) {
        BiSeries<Rational> poly(xu, o);
        for (long j = 0; j <= k; ++j) {
            poly.add_to(static_cast<unsigned>(k), static_cast<unsigned>(j), Rational(q.at(k, j)));
        }
        s += binomial_unit_pow(Rational(4), Rational(k, 2), xu, o, Var::second) * poly;
    }
    return s;
}

/// Residual Q - 1 - x (1+4u)^{1/2} ((1+4u)(uQ)_u + u Q^2) at orders (n, n), from Q built at (n, n+1).
inline BiSeries<Rational> q_equation_residual(const QTable &q, unsigned n)
{
    const auto big = assemble_Q(q, {n, n + 1});
    const Orders o{n, n};
    const VarNames &xu = big.variables();
    const auto qn = big.truncate(o);
    const auto d_uq = big.shift(Var::second).derivative(Var::second);
    const auto one_plus_4u = binomial_unit_pow(Rational(4), Rational(1), xu, o, Var::second);
    const auto root = binomial_unit_pow(Rational(4), Rational(1, 2), xu, o, Var::second);
    const auto inner = one_plus_4u * d_uq + (qn * qn).shift(Var::second);
    return qn - BiSeries<Rational>::one(xu, o) - (root * inner).shift(Var::first);
}

/// Q_0(z) = sum_{k>=1} q_{k,k} z^{k+1} at order n (needs q through k = n-1).
inline UniSeries<Rational> q_diagonal_series(const QTable &q, unsigned n)
{
    detail::require_cover("q table", q.k_max(), static_cast<long>(n) - 1);
    UniSeries<Rational> s("z", n);
    for (unsigned k = 1; k + 1 <= n; ++k) {
        s.set(k + 1, Rational(q.at(k, k)));
    }
    return s;
}

/// Outcome of one exact identity check.
struct IdentityCheck {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    std::string counterexample; // first failure, empty on pass
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;

    bool all_passed() const
    {
        for (const auto &c : checks) {
            if (!c.passed) {
                return false;
            }
        }
        return true;
    }
    const IdentityCheck *find(const std::string &name) const
    {
        for (const auto &c : checks) {
            if (c.name == name) {
                return &c;
            }
        }
        return nullptr;
    }
};

namespace detail
{

inline void record(IdentityCheck &check, bool ok, const std::string &where, const std::string &expected,
                   const std::string &actual)
{
    ++check.cases;
    if (!ok && check.passed) {
        check.passed = false;
        check.counterexample = where + ": expected " + expected + ", got " + actual;
    }
}

inline void record_zero_series(IdentityCheck &check, const BiSeries<Rational> &residual)
{
    ++check.cases;
    if (!residual.is_zero() && check.passed) {
        const auto &[e, v] = *residual.terms().begin();
        check.passed = false;
        check.counterexample = "residual term at (" + std::to_string(e.first) + "," + std::to_string(e.second)
                               + "): expected 0, got " + v.str();
    }
}

} // namespace detail

/// Default order for the Q(x,u) residual inside verify_coeff_identities.
inline constexpr unsigned q_residual_default_order = 12;

/// Exact checks of the coefficient identities for 1 <= k <= k_max:
///  q_diag_c        q_{k,k} = 6k c_{k,k}
///  q_diag_c_sub    q_{k,k} = 60 c_{k,k-1}
///  q_subdiag       10 q_{k,k-1} = (k+1) q_{k,k}
///  c_subdiag       10 c_{k,k-1} = k c_{k,k}
///  c_bernoulli     c_{k,0} = B_{k+1} / (k(k+1))
///  q_positive      every q_{k,j} with j <= k is a positive integer
///  exp_c_diag      exp(sum c_{k,k} z^k) = sum p_k z^k through z^{k_max}
///  q0_equation     Q_0 = 5z^2 + 6z^2 Q_0' + Q_0^2 through z^{k_max+1}
///  q_equation      Q = 1 + x(1+4u)^{1/2}((1+4u)(uQ)_u + uQ^2) through (n, n), n = min(k_max, q_order)
///  bernoulli_q_sum sum B_{k+1}/(k(k+1)) t^k = 1/4 sum_k t^k sum_l (-4)^{-l} q_{k,l} l! / prod_{i=0}^{l} (k/2+i)
inline IdentityReport verify_coeff_identities(const QTable &q, const CTable &c, unsigned k_max,
                                              std::optional<unsigned> q_order = std::nullopt)
{
    if (k_max < 1) {
        throw std::invalid_argument("verify_coeff_identities: k_max must be >= 1");
    }
    detail::require_cover("q table", q.k_max(), k_max);
    detail::require_cover("c table", c.k_max(), k_max);
    const auto bern = bernoulli_table(k_max + 1u);
    IdentityReport rep;
    rep.checks.reserve(10);
    auto &diag = rep.checks.emplace_back(IdentityCheck{"q_diag_c"});
    auto &diag_sub = rep.checks.emplace_back(IdentityCheck{"q_diag_c_sub"});
    auto &subdiag = rep.checks.emplace_back(IdentityCheck{"q_subdiag"});
    auto &c_sub = rep.checks.emplace_back(IdentityCheck{"c_subdiag"});
    auto &c_bern = rep.checks.emplace_back(IdentityCheck{"c_bernoulli"});
    auto &positive = rep.checks.emplace_back(IdentityCheck{"q_positive"});
    for (long k = 1; k <= static_cast<long>(k_max); ++k) {
        const std::string at_k = "k=" + std::to_string(k);
        const Rational qkk(q.at(k, k));
        const Rational lhs1 = Rational(6 * k) * c.at(k, k);
        detail::record(diag, qkk == lhs1, at_k, qkk.str(), lhs1.str());
        const Rational lhs2 = Rational(60) * c.at(k, k - 1);
        detail::record(diag_sub, qkk == lhs2, at_k, qkk.str(), lhs2.str());
        const Integer a3 = 10 * q.at(k, k - 1);
        const Integer b3 = (k + 1) * q.at(k, k);
        detail::record(subdiag, a3 == b3, at_k, b3.get_str(), a3.get_str());
        const Rational a4 = Rational(10) * c.at(k, k - 1);
        const Rational b4 = Rational(k) * c.at(k, k);
        detail::record(c_sub, a4 == b4, at_k, b4.str(), a4.str());
        const Rational b5 = bern[k + 1] / Rational(k * (k + 1));
        detail::record(c_bern, c.at(k, 0) == b5, at_k, b5.str(), c.at(k, 0).str());
    }
    for (long k = 0; k <= static_cast<long>(k_max); ++k) {
        for (long j = 0; j <= k; ++j) {
            detail::record(positive, q.at(k, j) > 0, "k=" + std::to_string(k) + ", j=" + std::to_string(j), "> 0",
                           q.at(k, j).get_str());
        }
    }

    {
        auto &chk = rep.checks.emplace_back(IdentityCheck{"exp_c_diag"});
        UniSeries<Rational> log_p("z", k_max);
        for (unsigned k = 1; k <= k_max; ++k) {
            log_p.set(k, c.at(k, k));
        }
        const auto lhs = series_exp(log_p);
        const auto rhs = p_series(k_max);
        for (unsigned k = 0; k <= k_max; ++k) {
            detail::record(chk, lhs.coeff(k) == rhs.coeff(k), "z^" + std::to_string(k), rhs.coeff(k).str(),
                           lhs.coeff(k).str());
        }
    }

    {
        auto &chk = rep.checks.emplace_back(IdentityCheck{"q0_equation"});
        const unsigned n = k_max + 1u;
        const auto q0 = q_diagonal_series(q, n);
        auto rhs = q0.derivative().shift_extend(2).truncate(n) * Rational(6) + q0 * q0;
        rhs.set(2, rhs.coeff(2) + Rational(5));
        for (unsigned m = 0; m <= n; ++m) {
            detail::record(chk, q0.coeff(m) == rhs.coeff(m), "z^" + std::to_string(m), rhs.coeff(m).str(),
                           q0.coeff(m).str());
        }
    }

    {
        auto &chk = rep.checks.emplace_back(IdentityCheck{"q_equation"});
        const unsigned n = std::min(k_max, q_order.value_or(q_residual_default_order));
        detail::record_zero_series(chk, q_equation_residual(q, n));
    }

    {
        auto &chk = rep.checks.emplace_back(IdentityCheck{"bernoulli_q_sum"});
        for (long k = 1; k <= static_cast<long>(k_max); ++k) {
            Rational sum;
            Rational neg_quarter_pow(1);
            Rational l_fact(1);
            Rational rising = Rational(k, 2);
            for (long l = 0; l <= k; ++l) {
                if (l > 0) {
                    neg_quarter_pow *= Rational(-1, 4);
                    l_fact *= Rational(l);
                    rising *= Rational(k, 2) + Rational(l);
                }
                sum += neg_quarter_pow * Rational(q.at(k, l)) * l_fact / rising;
            }
            sum *= Rational(1, 4);
            const Rational lhs = bern[k + 1] / Rational(k * (k + 1));
            detail::record(chk, lhs == sum, "t^" + std::to_string(k), lhs.str(), sum.str());
        }
    }
    return rep;
}

} // namespace tautrel

#endif
