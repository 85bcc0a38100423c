#include <gtest/gtest.h>

#include <random>
#include <set>

#include "polycount/counting.hpp"
#include "polycount/oracle.hpp"
#include "support/test_oracles.hpp"

namespace polycount {
namespace {

const PrimeField F2{2};
const PrimeField F3{3};

DensePoly x(const PrimeField& f) { return DensePoly::variable(f, 2, 0); }
DensePoly y(const PrimeField& f) { return DensePoly::variable(f, 2, 1); }

DensePoly add(const DensePoly& a, const DensePoly& b)
{
    const unsigned bound = std::max(a.degree_bound(), b.degree_bound());
    DensePoly aa = a.with_degree_bound(bound), bb = b.with_degree_bound(bound);
    DensePoly out(a.field(), a.m(), bound);
    for (std::size_t i = 0; i < aa.coefficients().size(); ++i)
        out.set_coefficient_at(i, a.field().add(aa.coefficients()[i], bb.coefficients()[i]));
    return out;
}

TEST(PrimeFieldTest, Validation)
{
    EXPECT_THROW(PrimeField(4), std::invalid_argument);
    EXPECT_THROW(PrimeField(1), std::invalid_argument);
    EXPECT_THROW(PrimeField(257), std::invalid_argument);
    EXPECT_NO_THROW(PrimeField(251));
    const PrimeField f7(7);
    for (unsigned a = 1; a < 7; ++a)
        EXPECT_EQ(f7.mul(a, f7.inv(a)), 1u);
    EXPECT_THROW(f7.inv(0), std::domain_error);
}

TEST(MonomialBasisTest, GradedOrder)
{
    const auto basis = MonomialBasis::get(2, 2);
    ASSERT_EQ(basis->size(), 6u);
    const std::vector<std::vector<unsigned>> expect{{0, 0}, {1, 0}, {0, 1},
                                                    {2, 0}, {1, 1}, {0, 2}};
    for (std::size_t i = 0; i < expect.size(); ++i) {
        const auto e = basis->exponents(i);
        EXPECT_EQ(std::vector<unsigned>(e.begin(), e.end()), expect[i]) << i;
        EXPECT_EQ(basis->index_of(expect[i]), i);
    }
    EXPECT_EQ(basis->degree_begin(2), 3u);
    EXPECT_EQ(basis->degree_begin(3), 6u);
    const std::vector<unsigned> outside{3, 0};
    EXPECT_THROW(basis->index_of(outside), std::out_of_range);
    EXPECT_EQ(MonomialBasis::get(3, 4)->size(), 35u);
}

TEST(PolyMultiply, Examples)
{
    const DensePoly s = add(x(F2), y(F2));
    EXPECT_EQ(poly_multiply(s, s).to_string(), "x^2 + y^2");

    const DensePoly one = DensePoly::constant(F3, 2, 1);
    const DensePoly f = add(add(x(F3), y(F3)), one);
    EXPECT_EQ(poly_multiply(f, one).with_degree_bound(1), f);

    const DensePoly g = add(x(F3), one);
    EXPECT_EQ(poly_multiply(g, g).to_string(), "x^2 + 2*x + 1");
}

TEST(PolyMultiply, Mismatch)
{
    EXPECT_THROW(poly_multiply(x(F2), x(F3)), std::invalid_argument);
    EXPECT_THROW(poly_multiply(x(F2), DensePoly::variable(F2, 3, 0)), std::invalid_argument);
}

TEST(PolyMultiply, DegreesAddAndNormalizationIsClosed)
{
    std::mt19937_64 rng(99);
    for (const PrimeField& f : {F2, F3, PrimeField(5)})
        for (unsigned m : {2u, 3u})
            for (int trial = 0; trial < 200; ++trial) {
                const unsigned da = 1 + rng() % 3, db = 1 + rng() % 3;
                auto random_normalized = [&](unsigned d) {
                    for (;;) {
                        DensePoly p(f, m, d);
                        for (std::size_t i = 0; i < p.coefficients().size(); ++i)
                            p.set_coefficient_at(i, rng() % f.p());
                        if (p.total_degree() != static_cast<int>(d))
                            continue;
                        // Scale by the inverse of the leading coefficient.
                        const std::size_t lead = p.basis().degree_begin(d);
                        std::size_t i = lead;
                        while (p.coefficients()[i] == 0)
                            ++i;
                        const unsigned s = f.inv(p.coefficients()[i]);
                        DensePoly out(f, m, d);
                        for (std::size_t j = 0; j < p.coefficients().size(); ++j)
                            out.set_coefficient_at(j, f.mul(s, p.coefficients()[j]));
                        return out;
                    }
                };
                const DensePoly a = random_normalized(da), b = random_normalized(db);
                ASSERT_TRUE(a.is_normalized());
                const DensePoly c = poly_multiply(a, b);
                ASSERT_EQ(c.total_degree(), static_cast<int>(da + db));
                ASSERT_TRUE(c.is_normalized());
                ASSERT_EQ(c, poly_multiply(b, a));
            }
}

TEST(CanonicalForm, HexFixtures)
{
    const DensePoly f = add(add(x(F2), y(F2)), DensePoly::constant(F2, 2, 1));
    EXPECT_EQ(f.canonical_hex(), "010101");
    const DensePoly s = add(x(F2), y(F2));
    EXPECT_EQ(poly_multiply(s, s).canonical_hex(), "000000010001");
    EXPECT_EQ(DensePoly::variable(F2, 4, 3).to_string(), "x4");
}

TEST(Enumeration, DegreeOneOverF2)
{
    std::vector<std::string> seen;
    for (const auto& p : enumerate_normalized(F2, 2, 1))
        seen.push_back(p.to_string());
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(seen, (std::vector<std::string>{"x", "x + 1", "x + y", "x + y + 1", "y",
                                              "y + 1"}));
}

TEST(Enumeration, CardinalityMatchesClosedForm)
{
    struct Case {
        unsigned p, m, d;
    };
    for (const Case c : {Case{2, 2, 1}, Case{2, 2, 2}, Case{2, 2, 3}, Case{3, 2, 1}, Case{3, 2, 2},
                         Case{2, 3, 1}, Case{2, 3, 2}, Case{5, 2, 1}, Case{2, 1, 6}}) {
        std::set<std::vector<std::uint8_t>> distinct;
        for (const auto& p : enumerate_normalized(PrimeField(c.p), c.m, c.d)) {
            ASSERT_TRUE(p.is_normalized());
            ASSERT_EQ(p.total_degree(), static_cast<int>(c.d));
            distinct.insert(p.canonical_bytes());
        }
        EXPECT_EQ(BigCount(distinct.size()), count_normalized(CountingParams(c.p, c.m), c.d))
            << c.p << " " << c.m << " " << c.d;
    }
    std::size_t n = 0;
    for ([[maybe_unused]] const auto& p : enumerate_normalized(F2, 2, 2))
        ++n;
    EXPECT_EQ(n, 56u);
}

TEST(Enumeration, Guard)
{
    EXPECT_EQ(enumeration_candidates(F2, 2, 2), 64u);
    EXPECT_THROW(NormalizedPolys(F2, 2, 2, 63), InfeasibleError);
    EXPECT_NO_THROW(NormalizedPolys(F2, 2, 2, 64));
    EXPECT_THROW(NormalizedPolys(F2, 2, 8), InfeasibleError);
    EXPECT_THROW(NormalizedPolys(F2, 2, 0), std::invalid_argument);
    EXPECT_EQ(enumeration_candidates(F2, 2, 6), kDefaultOracleGuard);
    EXPECT_THROW(brute_force_counts(F2, 2, 7), InfeasibleError);
}

TEST(BruteForce, Examples)
{
    const auto c2 = brute_force_counts(F2, 2, 2);
    EXPECT_EQ(c2.normalized, BigCount(56));
    EXPECT_EQ(c2.irreducible, BigCount(35));
    EXPECT_EQ(c2.reducible, BigCount(21));
    EXPECT_EQ(brute_force_counts(F2, 2, 3).irreducible, BigCount(694));
    EXPECT_EQ(brute_force_counts(F2, 3, 2).irreducible, BigCount(903));
    EXPECT_EQ(brute_force_counts(F3, 2, 1).normalized, BigCount(12));
}

TEST(BruteForce, MatchesRecursion)
{
    struct Case {
        unsigned p, m, d_max;
    };
    for (const Case c : {Case{2, 2, 4}, Case{3, 2, 3}, Case{2, 3, 2}, Case{5, 2, 2}}) {
        BruteForceOracle oracle(PrimeField(c.p), c.m);
        CountTable table(CountingParams(c.p, c.m));
        table.extend_to(c.d_max);
        for (unsigned d = 1; d <= c.d_max; ++d) {
            const auto& got = oracle.counts(d);
            const auto& row = table.row(d);
            EXPECT_EQ(got.normalized, row.normalized) << c.p << c.m << d;
            EXPECT_EQ(got.irreducible, row.irreducible) << c.p << c.m << d;
            EXPECT_EQ(got.reducible, row.reducible) << c.p << c.m << d;
            EXPECT_EQ(got.by_factors, row.by_factors) << c.p << c.m << d;
        }
    }
}

TEST(BruteForce, UnivariateAgreesWithGauss)
{
    for (unsigned p : {2u, 3u}) {
        BruteForceOracle oracle(PrimeField(p), 1);
        for (unsigned d = 1; d <= 6; ++d)
            EXPECT_EQ(oracle.counts(d).irreducible, count_irreducible_univariate(p, d).monic)
                << p << " " << d;
    }
}

TEST(BruteForce, ReducibleSetIndependentOfSplit)
{
    // The oracle only multiplies degree a <= d/2 by d-a; taking every split
    // a = 1..d-1 must produce the same set.
    BruteForceOracle oracle(F2, 2);
    const unsigned d = 4;
    std::set<std::vector<std::uint8_t>> all_splits;
    for (unsigned a = 1; a < d; ++a)
        for (const auto& g : oracle.normalized(a))
            for (const auto& h : oracle.normalized(d - a))
                all_splits.insert(poly_multiply(g, h).with_degree_bound(d).canonical_bytes());
    EXPECT_EQ(BigCount(all_splits.size()), oracle.counts(d).reducible);

    std::set<std::vector<std::uint8_t>> irreducible;
    for (const auto& f : oracle.irreducibles(d)) {
        ASSERT_FALSE(all_splits.contains(f.canonical_bytes()));
        irreducible.insert(f.canonical_bytes());
    }
    EXPECT_EQ(irreducible.size() + all_splits.size(), 31744u);
}

TEST(UniqueFactorization, Reports)
{
    const auto r = verify_unique_factorization(F2, 2, 4);
    EXPECT_TRUE(r.ok());
    EXPECT_FALSE(r.collision.has_value());
    BigCount total;
    for (const auto& s : r.distinct)
        total += s;
    EXPECT_EQ(total, BigCount(31744));
    EXPECT_EQ(r.distinct, r.multisets);
    EXPECT_EQ(r.distinct, r.expected);

    EXPECT_TRUE(verify_unique_factorization(F3, 2, 3).ok());
    EXPECT_TRUE(verify_unique_factorization(F2, 3, 2).ok());
}

TEST(UniqueFactorization, DetectsWrongExpectation)
{
    // A table for a different field must be rejected outright.
    BruteForceOracle oracle(F2, 2);
    CountTable other(CountingParams(3, 2));
    other.extend_to(2);
    EXPECT_THROW(oracle.verify_unique_factorization(2, other), std::invalid_argument);

    // Tampered S_k values are caught by matches_counting.
    CountTable good(CountingParams(2, 2));
    good.extend_to(3);
    std::string doc = good.to_json();
    const auto pos = doc.find("\"210\"");
    ASSERT_NE(pos, std::string::npos);
    doc.replace(pos, 5, "\"209\"");
    const auto i3 = doc.find("\"694\"");
    ASSERT_NE(i3, std::string::npos);
    doc.replace(i3, 5, "\"695\"");
    const auto s1 = doc.find("\"694\"");
    ASSERT_NE(s1, std::string::npos);
    doc.replace(s1, 5, "\"695\"");
    const auto r3 = doc.find("\"266\"");
    ASSERT_NE(r3, std::string::npos);
    doc.replace(r3, 5, "\"265\"");
    const CountTable bad = CountTable::from_json(doc);
    const auto report = oracle.verify_unique_factorization(3, bad);
    EXPECT_FALSE(report.matches_counting);
    EXPECT_TRUE(report.unique);
    EXPECT_FALSE(report.ok());
}

} // namespace
} // namespace polycount
