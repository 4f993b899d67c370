#include <gtest/gtest.h>

#include <tautrel/kappa.hpp>

using namespace tautrel;

namespace
{

KappaPoly k(unsigned a)
{
    return KappaPoly::kappa(a);
}

} // namespace

TEST(KappaMonomial, DegreeAndUnit)
{
    EXPECT_TRUE(KappaMonomial().is_unit());
    EXPECT_EQ(KappaMonomial().degree(), 0u);
    const auto m = KappaMonomial::kappa(1, 2) * KappaMonomial::kappa(3);
    EXPECT_EQ(m.degree(), 5u);
    EXPECT_EQ(m.exponent(1), 2u);
    EXPECT_EQ(m.exponent(2), 0u);
    EXPECT_EQ(*m.max_kappa_index(), 3u);
    EXPECT_EQ(*m.min_kappa_index(), 1u);
    EXPECT_EQ((KappaMonomial::psi(2) * m).degree(), 7u);
    EXPECT_EQ(m.str(), "k1^2*k3");
    EXPECT_EQ(m.without_kappa(3), KappaMonomial::kappa(1, 2));
}

TEST(KappaMonomial, CanonicalOrder)
{
    const MonomialOrder less;
    const auto k1sq = KappaMonomial::kappa(1, 2);
    const auto k2 = KappaMonomial::kappa(2);
    const auto k1cube = KappaMonomial::kappa(1, 3);
    const auto k1k2 = KappaMonomial::kappa(1) * KappaMonomial::kappa(2);
    const auto k3 = KappaMonomial::kappa(3);
    EXPECT_TRUE(less(KappaMonomial(), KappaMonomial::kappa(1)));
    EXPECT_TRUE(less(k1sq, k2));
    EXPECT_TRUE(less(k2, k1cube));
    EXPECT_TRUE(less(k1cube, k1k2));
    EXPECT_TRUE(less(k1k2, k3));
    EXPECT_FALSE(less(k3, k3));
    EXPECT_TRUE(less(KappaMonomial::psi(2), k1sq));
}

TEST(KappaPoly, Arithmetic)
{
    const auto p = k(1) * k(1) * Rational(25, 72) - k(2) * Rational(5);
    EXPECT_EQ(p.size(), 2u);
    EXPECT_EQ(p.str(), "25/72*k1^2 - 5*k2");
    EXPECT_EQ(p.coeff(KappaMonomial::kappa(2)), Rational(-5));
    EXPECT_EQ(p.coeff(KappaMonomial::kappa(3)), Rational(0));
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_TRUE((p * Rational(0)).is_zero());
    EXPECT_EQ(-(-p), p);
    EXPECT_EQ(KappaPoly(Rational(0)).size(), 0u);
    EXPECT_EQ(KappaPoly(Rational(3)).str(), "3");
    EXPECT_EQ(KappaPoly().str(), "0");
}

TEST(KappaPoly, Homogeneity)
{
    const auto p = k(1) * k(2) + k(3) * Rational(2);
    EXPECT_EQ(p.homogeneous_degree(), 3u);
    EXPECT_TRUE(p.is_homogeneous());
    const auto q = p + k(1);
    EXPECT_FALSE(q.homogeneous_degree().has_value());
    EXPECT_FALSE(q.is_homogeneous());
    EXPECT_FALSE(KappaPoly().homogeneous_degree().has_value());
    EXPECT_TRUE(KappaPoly().is_homogeneous());
}

TEST(KappaPoly, Substitute)
{
    // kappa_2 -> 5/72 kappa_1^2 in kappa_2^2 + kappa_1 kappa_3
    const auto p = k(2) * k(2) + k(1) * k(3);
    const auto r = p.substitute(2, k(1) * k(1) * Rational(5, 72));
    EXPECT_EQ(r, k(1) * k(1) * k(1) * k(1) * Rational(25, 5184) + k(1) * k(3));
    EXPECT_EQ(k(0).substitute(0, Rational(6)), KappaPoly(Rational(6)));
    EXPECT_EQ(*r.max_kappa_index(), 3u);
}

TEST(KappaPoly, RatioTo)
{
    const auto p = k(1) * k(1) + k(2) * Rational(-3);
    EXPECT_EQ(*(p * Rational(-4)).ratio_to(p), Rational(-4));
    EXPECT_FALSE((p + k(1) * k(1)).ratio_to(p).has_value());
    EXPECT_FALSE(KappaPoly().ratio_to(p).has_value());
}

TEST(KappaPoly, PsiTerms)
{
    const auto p = KappaPoly::psi(2) * Rational(-10) + KappaPoly::psi() * k(1);
    EXPECT_EQ(p.homogeneous_degree(), 2u);
    EXPECT_EQ(p.str(), "-10*psi^2 + psi*k1");
}
