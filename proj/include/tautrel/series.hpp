#ifndef TAUTREL_SERIES_HPP
#define TAUTREL_SERIES_HPP

#include <array>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <tautrel/exact.hpp>

namespace tautrel
{

// Coefficient rings used by the series types must provide: default construction
// as zero, construction from Rational, +, -, unary -, *, multiplication by a
// Rational on the right, and an ADL-visible is_zero().

class series_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

namespace detail
{

// free-function lookup that member is_zero() cannot hide
template <typename R>
bool coeff_is_zero(const R &c)
{
    return is_zero(c);
}

} // namespace detail

/// Truncated power series in one variable: coefficients of exponents 0..order.
template <typename R>
class UniSeries
{
public:
    UniSeries(std::string var, unsigned order) : m_var(std::move(var)), m_coeffs(order + 1u) {}

    static UniSeries one(std::string var, unsigned order)
    {
        UniSeries s(std::move(var), order);
        s.m_coeffs[0] = R(Rational(1));
        return s;
    }

    const std::string &variable() const
    {
        return m_var;
    }
    unsigned order() const
    {
        return static_cast<unsigned>(m_coeffs.size() - 1u);
    }
    const std::vector<R> &coeffs() const
    {
        return m_coeffs;
    }

    const R &coeff(unsigned n) const
    {
        if (n > order()) {
            throw series_error("coefficient " + m_var + "^" + std::to_string(n) + " beyond truncation order "
                               + std::to_string(order()));
        }
        return m_coeffs[n];
    }
    void set(unsigned n, R value)
    {
        if (n > order()) {
            throw series_error("cannot set " + m_var + "^" + std::to_string(n) + " beyond truncation order "
                               + std::to_string(order()));
        }
        m_coeffs[n] = std::move(value);
    }

    bool is_zero() const
    {
        for (const auto &c : m_coeffs) {
            if (!detail::coeff_is_zero(c)) {
                return false;
            }
        }
        return true;
    }

    UniSeries &operator+=(const UniSeries &o)
    {
        check_compatible(o);
        for (std::size_t n = 0; n < m_coeffs.size(); ++n) {
            m_coeffs[n] = m_coeffs[n] + o.m_coeffs[n];
        }
        return *this;
    }
    UniSeries &operator-=(const UniSeries &o)
    {
        check_compatible(o);
        for (std::size_t n = 0; n < m_coeffs.size(); ++n) {
            m_coeffs[n] = m_coeffs[n] - o.m_coeffs[n];
        }
        return *this;
    }
    friend UniSeries operator+(UniSeries a, const UniSeries &b)
    {
        return a += b;
    }
    friend UniSeries operator-(UniSeries a, const UniSeries &b)
    {
        return a -= b;
    }
    friend UniSeries operator-(UniSeries a)
    {
        for (auto &c : a.m_coeffs) {
            c = -c;
        }
        return a;
    }
    friend UniSeries operator*(UniSeries a, const Rational &s)
    {
        for (auto &c : a.m_coeffs) {
            c = c * s;
        }
        return a;
    }
    friend UniSeries operator*(const UniSeries &a, const UniSeries &b)
    {
        a.check_compatible(b);
        UniSeries r(a.m_var, a.order());
        for (unsigned i = 0; i <= a.order(); ++i) {
            if (detail::coeff_is_zero(a.m_coeffs[i])) {
                continue;
            }
            for (unsigned j = 0; i + j <= a.order(); ++j) {
                if (detail::coeff_is_zero(b.m_coeffs[j])) {
                    continue;
                }
                r.m_coeffs[i + j] = r.m_coeffs[i + j] + a.m_coeffs[i] * b.m_coeffs[j];
            }
        }
        return r;
    }
    friend bool operator==(const UniSeries &a, const UniSeries &b)
    {
        return a.m_var == b.m_var && a.m_coeffs == b.m_coeffs;
    }

    /// d/dv; the result has order one less.
    UniSeries derivative() const
    {
        if (order() == 0) {
            throw series_error("derivative of an order-0 series carries no information");
        }
        UniSeries r(m_var, order() - 1u);
        for (unsigned n = 1; n <= order(); ++n) {
            r.m_coeffs[n - 1] = m_coeffs[n] * Rational(static_cast<long>(n));
        }
        return r;
    }

    /// Multiplies by v^k, dropping terms past the truncation order.
    UniSeries shift(unsigned k) const
    {
        UniSeries r(m_var, order());
        for (unsigned n = 0; n + k <= order(); ++n) {
            r.m_coeffs[n + k] = m_coeffs[n];
        }
        return r;
    }

    /// Multiplies by v^k and raises the order by k.
    UniSeries shift_extend(unsigned k) const
    {
        UniSeries r(m_var, order() + k);
        for (unsigned n = 0; n <= order(); ++n) {
            r.m_coeffs[n + k] = m_coeffs[n];
        }
        return r;
    }

    UniSeries truncate(unsigned new_order) const
    {
        if (new_order > order()) {
            throw series_error("cannot raise truncation order from " + std::to_string(order()) + " to "
                               + std::to_string(new_order));
        }
        UniSeries r(m_var, new_order);
        std::copy(m_coeffs.begin(), m_coeffs.begin() + new_order + 1, r.m_coeffs.begin());
        return r;
    }

    void check_compatible(const UniSeries &o) const
    {
        if (m_var != o.m_var || order() != o.order()) {
            throw series_error("series mismatch: " + m_var + "@" + std::to_string(order()) + " vs " + o.m_var + "@"
                               + std::to_string(o.order()));
        }
    }

private:
    std::string m_var;
    std::vector<R> m_coeffs;
};

/// exp of a univariate series with zero constant term, via n E_n = sum_k k A_k E_{n-k}.
template <typename R>
UniSeries<R> series_exp(const UniSeries<R> &a)
{
    if (!is_zero(a.coeff(0))) {
        throw series_error("series_exp: constant term must be zero");
    }
    const unsigned n_max = a.order();
    auto e = UniSeries<R>::one(a.variable(), n_max);
    for (unsigned n = 1; n <= n_max; ++n) {
        R acc{};
        for (unsigned k = 1; k <= n; ++k) {
            const R &ak = a.coeff(k);
            const R &prev = e.coeff(n - k);
            if (is_zero(ak) || is_zero(prev)) {
                continue;
            }
            acc = acc + (ak * prev) * Rational(static_cast<long>(k));
        }
        e.set(n, acc * Rational(1, static_cast<long>(n)));
    }
    return e;
}

/// Which of the two variables of a BiSeries an operation acts on.
enum class Var { first = 0, second = 1 };

struct Orders {
    unsigned first = 0;
    unsigned second = 0;

    unsigned operator[](Var v) const
    {
        return v == Var::first ? first : second;
    }
    friend bool operator==(const Orders &, const Orders &) = default;
    std::string str() const
    {
        return "(" + std::to_string(first) + "," + std::to_string(second) + ")";
    }
};

using VarNames = std::array<std::string, 2>;

/// Truncated power series in two variables with sparse storage.
///
/// Terms with exponent (i, j) are kept for i <= orders.first and j <= orders.second;
/// zero coefficients are never stored. Binary operations require identical variable
/// names and truncation orders.
template <typename R>
class BiSeries
{
public:
    using Exponent = std::pair<unsigned, unsigned>;
    using TermMap = std::map<Exponent, R>;

    BiSeries(VarNames vars, Orders orders) : m_vars(std::move(vars)), m_orders(orders) {}

    static BiSeries one(VarNames vars, Orders orders)
    {
        BiSeries s(std::move(vars), orders);
        s.m_terms.emplace(Exponent{0, 0}, R(Rational(1)));
        return s;
    }
    static BiSeries monomial(VarNames vars, Orders orders, unsigned i, unsigned j, R coeff)
    {
        BiSeries s(std::move(vars), orders);
        s.add_to(i, j, coeff);
        return s;
    }

    const VarNames &variables() const
    {
        return m_vars;
    }
    const Orders &orders() const
    {
        return m_orders;
    }
    const TermMap &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }

    bool in_range(unsigned i, unsigned j) const
    {
        return i <= m_orders.first && j <= m_orders.second;
    }

    R coeff(unsigned i, unsigned j) const
    {
        if (!in_range(i, j)) {
            throw series_error("coefficient " + m_vars[0] + "^" + std::to_string(i) + " " + m_vars[1] + "^"
                               + std::to_string(j) + " outside truncation " + m_orders.str());
        }
        const auto it = m_terms.find({i, j});
        return it == m_terms.end() ? R{} : it->second;
    }

    /// Adds coeff to the (i, j) coefficient; silently dropped if outside the truncation box.
    void add_to(unsigned i, unsigned j, const R &c)
    {
        if (!in_range(i, j) || detail::coeff_is_zero(c)) {
            return;
        }
        auto it = m_terms.find({i, j});
        if (it == m_terms.end()) {
            m_terms.emplace(Exponent{i, j}, c);
            return;
        }
        it->second = it->second + c;
        if (detail::coeff_is_zero(it->second)) {
            m_terms.erase(it);
        }
    }

    BiSeries &operator+=(const BiSeries &o)
    {
        check_compatible(o);
        for (const auto &[e, c] : o.m_terms) {
            add_to(e.first, e.second, c);
        }
        return *this;
    }
    BiSeries &operator-=(const BiSeries &o)
    {
        check_compatible(o);
        for (const auto &[e, c] : o.m_terms) {
            add_to(e.first, e.second, -c);
        }
        return *this;
    }
    friend BiSeries operator+(BiSeries a, const BiSeries &b)
    {
        return a += b;
    }
    friend BiSeries operator-(BiSeries a, const BiSeries &b)
    {
        return a -= b;
    }
    friend BiSeries operator-(BiSeries a)
    {
        for (auto &[e, c] : a.m_terms) {
            c = -c;
        }
        return a;
    }
    friend BiSeries operator*(const BiSeries &a, const Rational &s)
    {
        BiSeries r(a.m_vars, a.m_orders);
        if (s.is_zero()) {
            return r;
        }
        for (const auto &[e, c] : a.m_terms) {
            r.m_terms.emplace(e, c * s);
        }
        return r;
    }
    /// Truncated Cauchy product.
    friend BiSeries operator*(const BiSeries &a, const BiSeries &b)
    {
        a.check_compatible(b);
        BiSeries r(a.m_vars, a.m_orders);
        for (const auto &[ea, ca] : a.m_terms) {
            for (const auto &[eb, cb] : b.m_terms) {
                const unsigned i = ea.first + eb.first;
                if (i > a.m_orders.first) {
                    break;
                }
                r.add_to(i, ea.second + eb.second, ca * cb);
            }
        }
        return r;
    }
    friend bool operator==(const BiSeries &a, const BiSeries &b)
    {
        return a.m_vars == b.m_vars && a.m_orders == b.m_orders && a.m_terms == b.m_terms;
    }

    /// Partial derivative; the differentiated variable loses one order.
    BiSeries derivative(Var v) const
    {
        if (m_orders[v] == 0) {
            throw series_error("derivative in " + m_vars[static_cast<int>(v)] + " of an order-0 series");
        }
        Orders o = m_orders;
        (v == Var::first ? o.first : o.second) -= 1;
        BiSeries r(m_vars, o);
        for (const auto &[e, c] : m_terms) {
            const unsigned k = v == Var::first ? e.first : e.second;
            if (k == 0) {
                continue;
            }
            if (v == Var::first) {
                r.add_to(e.first - 1, e.second, c * Rational(static_cast<long>(k)));
            } else {
                r.add_to(e.first, e.second - 1, c * Rational(static_cast<long>(k)));
            }
        }
        return r;
    }

    /// Antiderivative with zero constant of integration; the variable gains one order.
    BiSeries integral(Var v) const
    {
        Orders o = m_orders;
        (v == Var::first ? o.first : o.second) += 1;
        BiSeries r(m_vars, o);
        for (const auto &[e, c] : m_terms) {
            if (v == Var::first) {
                r.add_to(e.first + 1, e.second, c * Rational(1, static_cast<long>(e.first + 1)));
            } else {
                r.add_to(e.first, e.second + 1, c * Rational(1, static_cast<long>(e.second + 1)));
            }
        }
        return r;
    }

    /// Multiplies by v^k at unchanged orders.
    BiSeries shift(Var v, unsigned k = 1) const
    {
        BiSeries r(m_vars, m_orders);
        for (const auto &[e, c] : m_terms) {
            if (v == Var::first) {
                r.add_to(e.first + k, e.second, c);
            } else {
                r.add_to(e.first, e.second + k, c);
            }
        }
        return r;
    }

    /// Multiplies by v^k and raises that order by k (the product is known that much further).
    BiSeries shift_extend(Var v, unsigned k = 1) const
    {
        Orders o = m_orders;
        (v == Var::first ? o.first : o.second) += k;
        BiSeries r(m_vars, o);
        for (const auto &[e, c] : m_terms) {
            if (v == Var::first) {
                r.m_terms.emplace(Exponent{e.first + k, e.second}, c);
            } else {
                r.m_terms.emplace(Exponent{e.first, e.second + k}, c);
            }
        }
        return r;
    }

    /// Restriction to a smaller truncation box. Raising an order is an error.
    BiSeries truncate(Orders o) const
    {
        if (o.first > m_orders.first || o.second > m_orders.second) {
            throw series_error("cannot raise truncation " + m_orders.str() + " to " + o.str());
        }
        BiSeries r(m_vars, o);
        for (const auto &[e, c] : m_terms) {
            r.add_to(e.first, e.second, c);
        }
        return r;
    }

    /// The same coefficients under new variable names.
    BiSeries rename(VarNames vars) const
    {
        BiSeries r(std::move(vars), m_orders);
        r.m_terms = m_terms;
        return r;
    }

    void check_compatible(const BiSeries &o) const
    {
        if (m_vars != o.m_vars) {
            throw series_error("variable mismatch: (" + m_vars[0] + "," + m_vars[1] + ") vs (" + o.m_vars[0] + ","
                               + o.m_vars[1] + ")");
        }
        if (!(m_orders == o.m_orders)) {
            throw series_error("truncation mismatch: " + m_orders.str() + " vs " + o.m_orders.str());
        }
    }

private:
    VarNames m_vars;
    Orders m_orders;
    TermMap m_terms;
};

template <typename R>
BiSeries<R> series_mul(const BiSeries<R> &a, const BiSeries<R> &b)
{
    return a * b;
}

/// exp of a bivariate series with zero constant term.
///
/// Uses the Euler operator D = x d/dx + u d/du, for which D exp(A) = exp(A) D A, so
/// (i + j) E[i,j] = sum (k + l) A[k,l] E[i-k, j-l]. The truncation box is closed
/// under taking smaller exponents, so the recursion is exact inside it.
template <typename R>
BiSeries<R> series_exp(const BiSeries<R> &a)
{
    if (!is_zero(a.coeff(0, 0))) {
        throw series_error("series_exp: constant term must be zero");
    }
    const Orders o = a.orders();
    const std::size_t stride = o.second + 1u;
    std::vector<R> e((o.first + 1u) * stride);
    e[0] = R(Rational(1));

    // (k + l) A[k, l], precomputed once
    std::vector<std::pair<typename BiSeries<R>::Exponent, R>> weighted;
    for (const auto &[ex, c] : a.terms()) {
        weighted.emplace_back(ex, c * Rational(static_cast<long>(ex.first + ex.second)));
    }

    BiSeries<R> r = BiSeries<R>::one(a.variables(), o);
    for (unsigned i = 0; i <= o.first; ++i) {
        for (unsigned j = 0; j <= o.second; ++j) {
            if (i == 0 && j == 0) {
                continue;
            }
            R acc{};
            for (const auto &[ex, wc] : weighted) {
                if (ex.first > i) {
                    break;
                }
                if (ex.second > j) {
                    continue;
                }
                const R &prev = e[(i - ex.first) * stride + (j - ex.second)];
                if (is_zero(prev)) {
                    continue;
                }
                acc += wc * prev;
            }
            if (is_zero(acc)) {
                continue;
            }
            e[i * stride + j] = acc * Rational(1, static_cast<long>(i + j));
            r.add_to(i, j, e[i * stride + j]);
        }
    }
    return r;
}

/// (1 + c v)^e expanded in the designated variable, for any rational exponent.
inline BiSeries<Rational> binomial_unit_pow(const Rational &c, const Rational &e, const VarNames &vars, Orders orders,
                                            Var v)
{
    BiSeries<Rational> s(vars, orders);
    Rational binom(1);
    Rational c_pow(1);
    for (unsigned k = 0; k <= orders[v]; ++k) {
        if (k > 0) {
            binom *= (e - Rational(static_cast<long>(k - 1))) / Rational(static_cast<long>(k));
            c_pow *= c;
        }
        if (v == Var::first) {
            s.add_to(k, 0, binom * c_pow);
        } else {
            s.add_to(0, k, binom * c_pow);
        }
    }
    return s;
}

/// [P]_{x^i w^j}, with the bracket required to lie inside the truncation box.
template <typename R>
R extract_coeff(const BiSeries<R> &p, unsigned i, unsigned j)
{
    return p.coeff(i, j);
}

/// Evaluates [P(x,w)]_{x^a w^d} through the (y,u) coordinates
/// w = -u/(1+4u), x = y (1+4u)^{-1/2}: returns
/// (-1)^d [(1+4u)^{(a+2d-2)/2} P^(y,u)]_{y^a u^d}.
/// Every half-integer power of (1+4u) is expanded at truncation (a, d).
inline Rational change_vars_xw_to_yu(const BiSeries<Rational> &p, unsigned a, unsigned d)
{
    if (!p.in_range(a, d)) {
        throw series_error("change_vars_xw_to_yu: truncation " + p.orders().str() + " does not cover (" + std::to_string(a)
                           + "," + std::to_string(d) + ")");
    }
    const VarNames yu{"y", "u"};
    const Orders box{a, d};
    BiSeries<Rational> hat(yu, box);
    for (const auto &[e, c] : p.terms()) {
        const auto [i, j] = e;
        if (i > a || j > d) {
            continue;
        }
        // x^i w^j -> y^i (-u)^j (1+4u)^{-i/2 - j}
        const Rational expo = Rational(-static_cast<long>(i), 2) - Rational(static_cast<long>(j));
        auto factor = binomial_unit_pow(Rational(4), expo, yu, box, Var::second).shift(Var::second, j).shift(Var::first, i);
        hat += factor * ((j % 2 == 0) ? c : -c);
    }
    const Rational prefactor_exp(static_cast<long>(a) + 2 * static_cast<long>(d) - 2, 2);
    const auto full = binomial_unit_pow(Rational(4), prefactor_exp, yu, box, Var::second) * hat;
    const Rational v = full.coeff(a, d);
    return d % 2 == 0 ? v : -v;
}

/// One term per line, "i j value", ordered by (i, j).
inline std::string dump(const BiSeries<Rational> &s)
{
    std::ostringstream os;
    for (const auto &[e, c] : s.terms()) {
        os << e.first << ' ' << e.second << ' ' << c.str() << '\n';
    }
    return os.str();
}

} // namespace tautrel

#endif
