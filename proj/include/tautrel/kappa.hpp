#ifndef TAUTREL_KAPPA_HPP
#define TAUTREL_KAPPA_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <tautrel/exact.hpp>

namespace tautrel
{

/// Monomial psi^e * prod_a kappa_a^{e_a}.
///
/// kappa_0 is only present when a caller keeps it symbolic; normally it is replaced by
/// the scalar 2g-2 before it reaches a polynomial. Weighted degree counts psi as 1 and
/// kappa_a as a.
class KappaMonomial
{
public:
    KappaMonomial() = default;

    static KappaMonomial kappa(unsigned a, unsigned exponent = 1)
    {
        KappaMonomial m;
        if (exponent != 0) {
            m.m_kappa.assign(a + 1u, 0u);
            m.m_kappa[a] = exponent;
        }
        return m;
    }
    static KappaMonomial psi(unsigned exponent = 1)
    {
        KappaMonomial m;
        m.m_psi = exponent;
        return m;
    }

    unsigned psi_exponent() const
    {
        return m_psi;
    }
    unsigned exponent(unsigned a) const
    {
        return a < m_kappa.size() ? m_kappa[a] : 0u;
    }
    /// Exponents of kappa_0, kappa_1, ... with trailing zeros trimmed.
    const std::vector<unsigned> &kappa_exponents() const
    {
        return m_kappa;
    }
    bool is_unit() const
    {
        return m_psi == 0 && m_kappa.empty();
    }

    unsigned degree() const
    {
        unsigned d = m_psi;
        for (std::size_t a = 0; a < m_kappa.size(); ++a) {
            d += static_cast<unsigned>(a) * m_kappa[a];
        }
        return d;
    }

    /// Largest kappa index with a nonzero exponent; nullopt when no kappa appears.
    std::optional<unsigned> max_kappa_index() const
    {
        if (m_kappa.empty()) {
            return std::nullopt;
        }
        return static_cast<unsigned>(m_kappa.size() - 1u);
    }

    /// Smallest kappa index with a nonzero exponent.
    std::optional<unsigned> min_kappa_index() const
    {
        for (std::size_t a = 0; a < m_kappa.size(); ++a) {
            if (m_kappa[a] != 0) {
                return static_cast<unsigned>(a);
            }
        }
        return std::nullopt;
    }

    KappaMonomial without_kappa(unsigned a) const
    {
        KappaMonomial m = *this;
        if (a < m.m_kappa.size()) {
            m.m_kappa[a] = 0;
            m.trim();
        }
        return m;
    }

    friend KappaMonomial operator*(const KappaMonomial &x, const KappaMonomial &y)
    {
        KappaMonomial m;
        m.m_psi = x.m_psi + y.m_psi;
        m.m_kappa.assign(std::max(x.m_kappa.size(), y.m_kappa.size()), 0u);
        for (std::size_t a = 0; a < m.m_kappa.size(); ++a) {
            m.m_kappa[a] = x.exponent(static_cast<unsigned>(a)) + y.exponent(static_cast<unsigned>(a));
        }
        return m;
    }
    friend bool operator==(const KappaMonomial &, const KappaMonomial &) = default;

    /// Human-readable form, e.g. "psi^2*k1*k3^2"; "1" for the unit.
    std::string str() const
    {
        if (is_unit()) {
            return "1";
        }
        std::string s;
        auto append = [&s](const std::string &name, unsigned e) {
            if (e == 0) {
                return;
            }
            if (!s.empty()) {
                s += '*';
            }
            s += name;
            if (e > 1) {
                s += '^' + std::to_string(e);
            }
        };
        append("psi", m_psi);
        for (std::size_t a = 0; a < m_kappa.size(); ++a) {
            append("k" + std::to_string(a), m_kappa[a]);
        }
        return s;
    }

private:
    void trim()
    {
        while (!m_kappa.empty() && m_kappa.back() == 0) {
            m_kappa.pop_back();
        }
    }

    unsigned m_psi = 0;
    std::vector<unsigned> m_kappa;
};

/// Canonical graded-lexicographic order: lower weighted degree first; within a degree,
/// larger psi exponent first, then larger exponent of kappa_0, kappa_1, ... first.
/// So k1^2 precedes k2, and k1^3 precedes k1*k2 precedes k3.
struct MonomialOrder {
    bool operator()(const KappaMonomial &a, const KappaMonomial &b) const
    {
        const unsigned da = a.degree();
        const unsigned db = b.degree();
        if (da != db) {
            return da < db;
        }
        if (a.psi_exponent() != b.psi_exponent()) {
            return a.psi_exponent() > b.psi_exponent();
        }
        const auto &ea = a.kappa_exponents();
        const auto &eb = b.kappa_exponents();
        const std::size_t n = std::max(ea.size(), eb.size());
        for (std::size_t i = 0; i < n; ++i) {
            const unsigned x = a.exponent(static_cast<unsigned>(i));
            const unsigned y = b.exponent(static_cast<unsigned>(i));
            if (x != y) {
                return x > y;
            }
        }
        return false;
    }
};

/// Sparse polynomial with rational coefficients in kappa_a (and optionally psi).
class KappaPoly
{
public:
    using TermMap = std::map<KappaMonomial, Rational, MonomialOrder>;

    KappaPoly() = default;
    KappaPoly(const Rational &scalar)
    {
        if (!scalar.is_zero()) {
            m_terms.emplace(KappaMonomial{}, scalar);
        }
    }
    KappaPoly(const KappaMonomial &m, const Rational &coeff)
    {
        if (!coeff.is_zero()) {
            m_terms.emplace(m, coeff);
        }
    }

    static KappaPoly kappa(unsigned a)
    {
        return KappaPoly(KappaMonomial::kappa(a), Rational(1));
    }
    static KappaPoly psi(unsigned exponent = 1)
    {
        return KappaPoly(KappaMonomial::psi(exponent), Rational(1));
    }

    const TermMap &terms() const
    {
        return m_terms;
    }
    std::size_t size() const
    {
        return m_terms.size();
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }

    Rational coeff(const KappaMonomial &m) const
    {
        const auto it = m_terms.find(m);
        return it == m_terms.end() ? Rational() : it->second;
    }

    void add_term(const KappaMonomial &m, const Rational &c)
    {
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                m_terms.erase(it);
            }
        }
    }

    /// Common weighted degree of all terms; nullopt for the zero polynomial or a mixed-degree one.
    std::optional<unsigned> homogeneous_degree() const
    {
        if (m_terms.empty()) {
            return std::nullopt;
        }
        const unsigned d = m_terms.begin()->first.degree();
        // terms are sorted by degree, so comparing the ends suffices
        if (std::prev(m_terms.end())->first.degree() != d) {
            return std::nullopt;
        }
        return d;
    }
    bool is_homogeneous() const
    {
        return m_terms.empty() || homogeneous_degree().has_value();
    }

    std::optional<unsigned> max_kappa_index() const
    {
        std::optional<unsigned> best;
        for (const auto &[m, c] : m_terms) {
            const auto i = m.max_kappa_index();
            if (i && (!best || *i > *best)) {
                best = i;
            }
        }
        return best;
    }

    KappaPoly &operator+=(const KappaPoly &o)
    {
        for (const auto &[m, c] : o.m_terms) {
            add_term(m, c);
        }
        return *this;
    }
    KappaPoly &operator-=(const KappaPoly &o)
    {
        for (const auto &[m, c] : o.m_terms) {
            add_term(m, -c);
        }
        return *this;
    }
    friend KappaPoly operator+(KappaPoly a, const KappaPoly &b)
    {
        return a += b;
    }
    friend KappaPoly operator-(KappaPoly a, const KappaPoly &b)
    {
        return a -= b;
    }
    friend KappaPoly operator-(KappaPoly a)
    {
        for (auto &[m, c] : a.m_terms) {
            c = -c;
        }
        return a;
    }
    friend KappaPoly operator*(KappaPoly a, const Rational &s)
    {
        if (s.is_zero()) {
            return KappaPoly();
        }
        for (auto &[m, c] : a.m_terms) {
            c *= s;
        }
        return a;
    }
    friend KappaPoly operator*(const Rational &s, KappaPoly a)
    {
        return std::move(a) * s;
    }
    friend KappaPoly operator*(const KappaPoly &a, const KappaPoly &b)
    {
        KappaPoly r;
        for (const auto &[ma, ca] : a.m_terms) {
            for (const auto &[mb, cb] : b.m_terms) {
                r.add_term(ma * mb, ca * cb);
            }
        }
        return r;
    }
    friend bool operator==(const KappaPoly &, const KappaPoly &) = default;

    /// Replaces kappa_a by the polynomial p everywhere.
    KappaPoly substitute(unsigned a, const KappaPoly &p) const
    {
        KappaPoly r;
        std::vector<KappaPoly> powers{KappaPoly(Rational(1))};
        for (const auto &[m, c] : m_terms) {
            const unsigned e = m.exponent(a);
            if (e == 0) {
                r.add_term(m, c);
                continue;
            }
            while (powers.size() <= e) {
                powers.push_back(powers.back() * p);
            }
            r += KappaPoly(m.without_kappa(a), c) * powers[e];
        }
        return r;
    }

    /// Replaces kappa_a by a scalar.
    KappaPoly substitute(unsigned a, const Rational &value) const
    {
        return substitute(a, KappaPoly(value));
    }

    /// If q = s * p for a nonzero rational s, returns s.
    std::optional<Rational> ratio_to(const KappaPoly &p) const
    {
        if (is_zero() || p.is_zero() || m_terms.size() != p.m_terms.size()) {
            return std::nullopt;
        }
        const Rational s = m_terms.begin()->second / p.m_terms.begin()->second;
        for (auto it = m_terms.begin(), jt = p.m_terms.begin(); it != m_terms.end(); ++it, ++jt) {
            if (!(it->first == jt->first) || it->second != s * jt->second) {
                return std::nullopt;
            }
        }
        return s;
    }

    std::string str() const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (const auto &[m, c] : m_terms) {
            Rational mag = c.sign() < 0 ? -c : c;
            if (first) {
                os << (c.sign() < 0 ? "-" : "");
            } else {
                os << (c.sign() < 0 ? " - " : " + ");
            }
            first = false;
            if (m.is_unit()) {
                os << mag.str();
            } else if (mag == Rational(1)) {
                os << m.str();
            } else {
                os << mag.str() << '*' << m.str();
            }
        }
        return os.str();
    }

private:
    TermMap m_terms;
};

inline bool is_zero(const KappaPoly &p)
{
    return p.is_zero();
}

} // namespace tautrel

#endif
