#include <gtest/gtest.h>

#include <tautrel/relations.hpp>

using namespace tautrel;

namespace
{

KappaPoly k(unsigned a)
{
    return KappaPoly::kappa(a);
}

struct Tables {
    QTable q{30};
    CTable c{q};
};

const Tables &tables()
{
    static const Tables t;
    return t;
}

} // namespace

TEST(FaberChoose, Examples)
{
    const auto c1 = faber_choose(10, 6);
    EXPECT_EQ(c1.d, 4);
    EXPECT_EQ(c1.b, 3);
    EXPECT_EQ(c1.case_tag, FaberCase::b_large);

    const auto c2 = faber_choose(5, 2);
    EXPECT_EQ(c2.d, 2);
    EXPECT_EQ(c2.b, 0);
    EXPECT_EQ(c2.case_tag, FaberCase::b0);

    const auto c3 = faber_choose(4, 2);
    EXPECT_EQ(c3.d, 2);
    EXPECT_EQ(c3.b, 1);
    EXPECT_EQ(c3.case_tag, FaberCase::b1);
}

TEST(FaberChoose, EmptyIntervalFallsBackToSmallB)
{
    // 3a >= g+5 but no integer d in [(g+3-a)/2, (g+2)/3]
    const auto c = faber_choose(6, 4);
    EXPECT_EQ(c.b, 1);
    EXPECT_EQ(c.d, 2);
    EXPECT_EQ(c.case_tag, FaberCase::b1);
    EXPECT_EQ(c.a, c.g + 1 + c.b - 2 * c.d);
}

TEST(FaberChoose, OutOfRange)
{
    EXPECT_THROW(faber_choose(10, 3), std::invalid_argument);
    EXPECT_THROW(faber_choose(10, 9), std::invalid_argument);
    EXPECT_THROW(faber_choose(1, 1), std::invalid_argument);
}

TEST(FaberChoose, ChoicesAreConsistent)
{
    for (long g = 2; g <= 40; ++g) {
        for (long a = g / 3 + 1; a <= g - 2; ++a) {
            const auto ch = faber_choose(g, a);
            EXPECT_EQ(ch.a, g + 1 + ch.b - 2 * ch.d) << g << "," << a;
            EXPECT_GE(ch.d, 2);
            EXPECT_GE(ch.b, 0);
            EXPECT_LE(3 * ch.d, g + 2) << g << "," << a;
            if (ch.case_tag == FaberCase::b_large) {
                EXPECT_GE(ch.b, 2);
            }
        }
    }
}

TEST(FaberSolve, GenusFive)
{
    const auto &[q, c] = tables();
    const auto ex = faber_solve(5, q, c);
    ASSERT_EQ(ex.size(), 2u);
    EXPECT_EQ(ex[0].a, 2);
    EXPECT_EQ(ex[0].rhs, k(1) * k(1) * Rational(5, 72));
    EXPECT_EQ(ex[0].reduced, ex[0].rhs);
    EXPECT_EQ(ex[1].a, 3);
    EXPECT_EQ(ex[1].choice.b, 1);
    EXPECT_EQ(ex[1].choice.d, 2);
    EXPECT_EQ(ex[1].reduced.max_kappa_index(), 1u);
}

TEST(FaberSolve, GenusFourAndSmall)
{
    const auto &[q, c] = tables();
    const auto ex = faber_solve(4, q, c);
    ASSERT_EQ(ex.size(), 1u);
    EXPECT_EQ(ex[0].rhs, k(1) * k(1) * Rational(3, 32));
    EXPECT_TRUE(faber_solve(2, q, c).empty());
    EXPECT_TRUE(faber_solve(3, q, c).empty());
    EXPECT_THROW(faber_solve(1, q, c), std::invalid_argument);
}

TEST(FaberSolve, RhsUsesLowerGenerators)
{
    const auto &[q, c] = tables();
    for (long g = 6; g <= 14; ++g) {
        for (const auto &e : faber_solve(g, q, c)) {
            if (const auto top = e.rhs.max_kappa_index()) {
                EXPECT_LT(static_cast<long>(*top), e.a);
            }
            if (const auto top = e.reduced.max_kappa_index()) {
                EXPECT_LE(static_cast<long>(*top), g / 3);
            }
            EXPECT_NE(e.leading, Rational(0));
            EXPECT_EQ(e.rhs.homogeneous_degree().value_or(e.a), static_cast<unsigned>(e.a));
        }
    }
}

TEST(LowOnlyMonomial, Detects)
{
    EXPECT_TRUE(has_low_only_monomial(k(1) * k(1) * k(1), 3));
    EXPECT_FALSE(has_low_only_monomial(k(1) * k(2), 3));
    EXPECT_FALSE(has_low_only_monomial(k(1) * k(1), 2));
    EXPECT_FALSE(has_low_only_monomial(KappaPoly(Rational(1)), 5));
}

TEST(Rank, FractionFree)
{
    using R = Rational;
    EXPECT_EQ(rational_rank({}), 0u);
    EXPECT_EQ(rational_rank({{R(1), R(2)}, {R(2), R(4)}}), 1u);
    EXPECT_EQ(rational_rank({{R(1, 2), R(1, 3)}, {R(1, 4), R(1, 5)}}), 2u);
    EXPECT_EQ(rational_rank({{R(0), R(0), R(1)}, {R(0), R(1), R(0)}, {R(0), R(1), R(1)}}), 2u);
    EXPECT_EQ(rational_rank({{R(0), R(0)}, {R(0), R(0)}}), 0u);
    EXPECT_EQ(rational_rank({{R(2), R(3), R(5)}, {R(7), R(11), R(13)}, {R(17), R(19), R(23)}}), 3u);
    EXPECT_THROW(rational_rank({{R(1)}, {R(1), R(2)}}), std::invalid_argument);
}

TEST(Independence, Examples)
{
    const auto &[q, c] = tables();
    const auto r43 = independence_report(4, 3, q, c);
    // (d,b) = (3,4) has x-exponent 0 and vanishes
    ASSERT_EQ(r43.pairs.size(), 2u);
    EXPECT_EQ(r43.pairs[0].d, 2);
    EXPECT_EQ(r43.pairs[0].b, 2);
    EXPECT_EQ(r43.pairs[1].d, 3);
    EXPECT_EQ(r43.pairs[1].b, 4);
    EXPECT_TRUE(r43.pairs[1].zero);
    EXPECT_EQ(r43.rank, 1u);
    EXPECT_EQ(r43.nonzero, 1u);

    const auto r52 = independence_report(5, 2, q, c);
    EXPECT_EQ(r52.nonzero, 1u);
    EXPECT_EQ(r52.rank, 1u);
}

TEST(Independence, GenusElevenDegreeFour)
{
    // (5,2) and (6,4) have 3d > g+2 and vanish identically; only (4,0) survives
    const auto &[q, c] = tables();
    const auto r = independence_report(11, 4, q, c);
    ASSERT_EQ(r.pairs.size(), 3u);
    EXPECT_EQ(r.pairs[0].d, 4);
    EXPECT_EQ(r.pairs[0].b, 0);
    EXPECT_FALSE(r.pairs[0].zero);
    EXPECT_EQ(r.pairs[1].d, 5);
    EXPECT_EQ(r.pairs[1].b, 2);
    EXPECT_TRUE(r.pairs[1].zero);
    EXPECT_TRUE(r.pairs[2].zero);
    EXPECT_EQ(r.nonzero, 1u);
    EXPECT_TRUE(r.independent());
}

TEST(Independence, SeveralNonzeroRelations)
{
    const auto &[q, c] = tables();
    const auto r = independence_report(12, 7, q, c);
    EXPECT_GE(r.nonzero, 2u);
    EXPECT_EQ(r.rank, r.nonzero);
}

TEST(Scan, Small)
{
    const auto &[q, c] = tables();
    KappaExpCache cache(c);
    const auto r1 = scan_nonvanishing(1, q, cache);
    EXPECT_TRUE(r1.passed());
    EXPECT_EQ(r1.checked, 1u);
    const auto r2 = scan_nonvanishing(2, q, cache);
    EXPECT_TRUE(r2.passed());
    EXPECT_EQ(r2.checked, 3u);
    EXPECT_EQ(r2.extraction_checked, 1u);
    EXPECT_THROW(scan_nonvanishing(0, q, cache), std::invalid_argument);
}

TEST(Scan, RemarkFormulaDiffersByEightDC)
{
    const auto &[q, c] = tables();
    KappaExpCache cache(c);
    const auto r = scan_nonvanishing(12, q, cache);
    EXPECT_TRUE(r.passed());
    for (const auto &m : r.remark_formula_mismatches) {
        EXPECT_EQ(m.coefficient - m.remark_coefficient, Rational(8 * m.d) * c.at(m.a, m.d));
    }
    EXPECT_EQ(r.remark_formula_mismatches.size(), r.checked);
}

TEST(Scan, UndersizedTables)
{
    const QTable q(5);
    const CTable c(q);
    KappaExpCache cache(c);
    EXPECT_THROW(scan_nonvanishing(8, q, cache), table_size_error);
}
