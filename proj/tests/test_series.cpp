#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include <tautrel/series.hpp>

using namespace tautrel;

namespace
{

const VarNames xu{"x", "u"};
const VarNames xw{"x", "w"};

BiSeries<Rational> mono(const VarNames &v, Orders o, unsigned i, unsigned j, Rational c = Rational(1))
{
    return BiSeries<Rational>::monomial(v, o, i, j, c);
}

std::string golden(const std::string &name)
{
    std::ifstream in(std::string(TAUTREL_GOLDEN_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(UniSeries, MulAndExp)
{
    UniSeries<Rational> a("z", 4);
    a.set(1, Rational(5, 6));
    const auto e = series_exp(a);
    EXPECT_EQ(e.coeff(1), Rational(5, 6));
    EXPECT_EQ(e.coeff(2), Rational(25, 72));
    EXPECT_EQ(e.coeff(4), Rational(625, 1296 * 24));
    EXPECT_THROW(e.coeff(5), series_error);
}

TEST(UniSeries, OrderMismatch)
{
    UniSeries<Rational> a("z", 3), b("z", 4), c("t", 3);
    EXPECT_THROW(a * b, series_error);
    EXPECT_THROW(a + c, series_error);
}

TEST(UniSeries, ExpNeedsZeroConstant)
{
    auto a = UniSeries<Rational>::one("z", 2);
    EXPECT_THROW(series_exp(a), series_error);
}

TEST(UniSeries, DerivativeShift)
{
    UniSeries<Rational> a("z", 3);
    a.set(3, Rational(2));
    EXPECT_EQ(a.derivative().coeff(2), Rational(6));
    EXPECT_EQ(a.derivative().order(), 2u);
    EXPECT_TRUE(a.shift(1).is_zero());
    EXPECT_EQ(a.shift_extend(2).coeff(5), Rational(2));
}

TEST(BiSeries, MulExamples)
{
    const Orders o20{2, 0};
    const auto p = BiSeries<Rational>::one(xu, o20) + mono(xu, o20, 1, 0);
    const auto m = BiSeries<Rational>::one(xu, o20) - mono(xu, o20, 1, 0);
    EXPECT_EQ(series_mul(p, m), BiSeries<Rational>::one(xu, o20) - mono(xu, o20, 2, 0));

    const Orders o02{0, 2};
    const auto t = BiSeries<Rational>::one(xu, o02) + mono(xu, o02, 0, 1, Rational(2));
    const auto sq = series_mul(t, t);
    EXPECT_EQ(sq.coeff(0, 1), Rational(4));
    EXPECT_EQ(sq.coeff(0, 2), Rational(4));

    const Orders o22{2, 2};
    const auto s = mono(xu, o22, 1, 0) + mono(xu, o22, 0, 1);
    const auto s2 = series_mul(s, s);
    EXPECT_EQ(s2.terms().size(), 3u);
    EXPECT_EQ(s2.coeff(2, 0), Rational(1));
    EXPECT_EQ(s2.coeff(1, 1), Rational(2));
    EXPECT_EQ(s2.coeff(0, 2), Rational(1));
}

TEST(BiSeries, MismatchIsAnError)
{
    const auto a = mono(xu, {2, 2}, 1, 0);
    EXPECT_THROW(a * mono(xu, {2, 3}, 1, 0), series_error);
    EXPECT_THROW(a + mono(xw, {2, 2}, 1, 0), series_error);
}

TEST(BiSeries, SparseNoZeros)
{
    auto a = mono(xu, {3, 3}, 1, 1, Rational(2));
    a += mono(xu, {3, 3}, 1, 1, Rational(-2));
    EXPECT_TRUE(a.is_zero());
    EXPECT_TRUE(a.terms().empty());
}

TEST(BiSeries, Exp)
{
    const Orders o{3, 0};
    EXPECT_EQ(series_exp(BiSeries<Rational>(xu, o)), BiSeries<Rational>::one(xu, o));
    const auto e = series_exp(mono(xu, o, 1, 0));
    EXPECT_EQ(extract_coeff(e, 3, 0), Rational(1, 6));
    EXPECT_EQ(dump(e), golden("exp_x_3_0.txt"));
    EXPECT_THROW(series_exp(BiSeries<Rational>::one(xu, o)), series_error);
}

TEST(BiSeries, ExtractCoeff)
{
    const Orders o{2, 2};
    const auto p = BiSeries<Rational>::one(xu, o) + mono(xu, o, 1, 2, Rational(3));
    EXPECT_EQ(extract_coeff(p, 1, 2), Rational(3));
    EXPECT_EQ(extract_coeff(p, 2, 0), Rational(0));
    EXPECT_THROW(extract_coeff(p, 3, 0), series_error);
}

TEST(BiSeries, BinomialUnitPow)
{
    const Orders o{0, 2};
    const auto r = binomial_unit_pow(Rational(4), Rational(1, 2), xu, o, Var::second);
    EXPECT_EQ(dump(r), golden("sqrt_1_4u_2.txt"));
    EXPECT_EQ(binomial_unit_pow(Rational(4), Rational(0), xu, o, Var::second), BiSeries<Rational>::one(xu, o));
    const auto inv = binomial_unit_pow(Rational(4), Rational(-1), xu, o, Var::second);
    EXPECT_EQ(inv.coeff(0, 1), Rational(-4));
    EXPECT_EQ(inv.coeff(0, 2), Rational(16));
}

TEST(BiSeries, CalculusOps)
{
    const Orders o{3, 3};
    const auto p = mono(xw, o, 2, 3, Rational(5));
    const auto dw = p.derivative(Var::second);
    EXPECT_EQ(dw.orders(), (Orders{3, 2}));
    EXPECT_EQ(dw.coeff(2, 2), Rational(15));
    const auto back = dw.integral(Var::second);
    EXPECT_EQ(back, p);
    EXPECT_TRUE(p.shift(Var::first, 2).is_zero());
    EXPECT_EQ(p.shift_extend(Var::first, 2).coeff(4, 3), Rational(5));
    EXPECT_THROW(p.truncate({4, 3}), series_error);
    EXPECT_EQ(p.truncate({3, 2}).terms().size(), 0u);
    EXPECT_EQ(p.rename(xu).variables(), xu);
}

TEST(ChangeOfVariables, Examples)
{
    EXPECT_EQ(change_vars_xw_to_yu(mono(xw, {1, 1}, 1, 1), 1, 1), Rational(1));
    EXPECT_EQ(change_vars_xw_to_yu(BiSeries<Rational>::one(xw, {0, 0}), 0, 0), Rational(1));
    EXPECT_EQ(change_vars_xw_to_yu(mono(xw, {0, 2}, 0, 2), 0, 2), Rational(1));
    EXPECT_THROW(change_vars_xw_to_yu(mono(xw, {1, 1}, 1, 1), 2, 1), series_error);
}

TEST(ChangeOfVariables, OffDiagonalMonomialsGiveZero)
{
    const Orders o{3, 3};
    EXPECT_EQ(change_vars_xw_to_yu(mono(xw, o, 1, 1), 2, 1), Rational(0));
    EXPECT_EQ(change_vars_xw_to_yu(mono(xw, o, 0, 1), 0, 3), Rational(0));
    EXPECT_EQ(change_vars_xw_to_yu(mono(xw, o, 2, 0), 2, 2), Rational(0));
}
