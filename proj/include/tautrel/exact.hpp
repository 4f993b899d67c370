#ifndef TAUTREL_EXACT_HPP
#define TAUTREL_EXACT_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace tautrel
{

/// Arbitrary-precision signed integer.
using Integer = mpz_class;

class division_by_zero : public std::domain_error
{
public:
    division_by_zero() : std::domain_error("rational division by zero") {}
};

/// Exact rational number, always held in lowest terms with a positive denominator.
///
/// A thin value wrapper over GMP's mpq_t. Every constructor and every operation
/// canonicalizes, so structural equality is numeric equality.
class Rational
{
public:
    Rational() = default;
    Rational(int n) : m_value(n) {}
    Rational(long n) : m_value(n) {}
    Rational(long long n) : m_value(Integer(std::to_string(n))) {}
    Rational(unsigned n) : m_value(n) {}
    Rational(unsigned long n) : m_value(n) {}
    Rational(const Integer &n) : m_value(n) {}
    Rational(const Integer &num, const Integer &den)
    {
        if (den == 0) {
            throw division_by_zero();
        }
        m_value = mpq_class(num, den);
        m_value.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

    /// Parses "n" or "n/d" (d nonzero; sign may sit on either part).
    static Rational parse(std::string_view text)
    {
        const auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos) {
                return Rational(Integer(std::string(text)));
            }
            return Rational(Integer(std::string(text.substr(0, slash))), Integer(std::string(text.substr(slash + 1))));
        } catch (const std::invalid_argument &) {
            throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
        }
    }

    Integer numerator() const
    {
        return m_value.get_num();
    }
    Integer denominator() const
    {
        return m_value.get_den();
    }
    bool is_zero() const
    {
        return sgn(m_value) == 0;
    }
    bool is_integer() const
    {
        return m_value.get_den() == 1;
    }
    int sign() const
    {
        return sgn(m_value);
    }

    /// Canonical text form: "n" for integers, otherwise "num/den".
    std::string str() const
    {
        if (is_integer()) {
            return m_value.get_num().get_str();
        }
        return m_value.get_num().get_str() + "/" + m_value.get_den().get_str();
    }

    Rational &operator+=(const Rational &o)
    {
        m_value += o.m_value;
        return *this;
    }
    Rational &operator-=(const Rational &o)
    {
        m_value -= o.m_value;
        return *this;
    }
    Rational &operator*=(const Rational &o)
    {
        m_value *= o.m_value;
        return *this;
    }
    Rational &operator/=(const Rational &o)
    {
        if (o.is_zero()) {
            throw division_by_zero();
        }
        m_value /= o.m_value;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b)
    {
        return a += b;
    }
    friend Rational operator-(Rational a, const Rational &b)
    {
        return a -= b;
    }
    friend Rational operator*(Rational a, const Rational &b)
    {
        return a *= b;
    }
    friend Rational operator/(Rational a, const Rational &b)
    {
        return a /= b;
    }
    friend Rational operator-(const Rational &a)
    {
        Rational r;
        r.m_value = -a.m_value;
        return r;
    }

    friend bool operator==(const Rational &a, const Rational &b)
    {
        return a.m_value == b.m_value;
    }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        const int c = cmp(a.m_value, b.m_value);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r)
    {
        return os << r.str();
    }

private:
    mpq_class m_value;
};

inline bool is_zero(const Rational &r)
{
    return r.is_zero();
}

/// Division that reports a zero divisor as an empty result instead of throwing.
inline std::optional<Rational> checked_div(const Rational &a, const Rational &b)
{
    if (b.is_zero()) {
        return std::nullopt;
    }
    return a / b;
}

inline Rational pow(const Rational &base, unsigned exp)
{
    Rational result(1);
    Rational b = base;
    while (exp != 0) {
        if (exp & 1u) {
            result *= b;
        }
        exp >>= 1;
        if (exp != 0) {
            b *= b;
        }
    }
    return result;
}

/// C(n, k) for n >= 0; zero outside 0 <= k <= n.
inline Integer binomial(long n, long k)
{
    if (n < 0) {
        throw std::invalid_argument("binomial: n must be nonnegative");
    }
    if (k < 0 || k > n) {
        return 0;
    }
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// Generalized binomial coefficient e(e-1)...(e-k+1)/k! for rational e.
inline Rational generalized_binomial(const Rational &e, unsigned k)
{
    Rational r(1);
    for (unsigned i = 0; i < k; ++i) {
        r *= (e - Rational(static_cast<long>(i))) / Rational(static_cast<long>(i + 1));
    }
    return r;
}

/// Bernoulli numbers B_0..B_max with the convention B_1 = -1/2.
class BernoulliTable
{
public:
    explicit BernoulliTable(std::size_t max_index)
    {
        m_values.reserve(max_index + 1);
        m_values.emplace_back(1);
        // sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1
        for (std::size_t n = 1; n <= max_index; ++n) {
            Rational acc;
            for (std::size_t j = 0; j < n; ++j) {
                if (m_values[j].is_zero()) {
                    continue;
                }
                acc += Rational(binomial(static_cast<long>(n + 1), static_cast<long>(j))) * m_values[j];
            }
            m_values.push_back(-acc / Rational(static_cast<long>(n + 1)));
        }
    }

    std::size_t max_index() const
    {
        return m_values.size() - 1;
    }
    const Rational &operator[](std::size_t n) const
    {
        if (n >= m_values.size()) {
            throw std::out_of_range("Bernoulli index " + std::to_string(n) + " beyond table size "
                                    + std::to_string(max_index()));
        }
        return m_values[n];
    }
    const std::vector<Rational> &values() const
    {
        return m_values;
    }

private:
    std::vector<Rational> m_values;
};

inline BernoulliTable bernoulli_table(std::size_t n_max)
{
    return BernoulliTable(n_max);
}

} // namespace tautrel

#endif
