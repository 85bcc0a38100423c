// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polycount/counting.hpp"
#include "polycount/oracle.hpp"
#include "polycount/partitions.hpp"
#include "support/test_oracles.hpp"

using namespace polycount;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

ExactRatio ratio(const BigCount& a, const BigCount& b) { return ExactRatio(a, b); }

const char* kTableN[] = {"6",
                         "56",
                         "960",
                         "31744",
                         "2064384",
                         "266338304",
                         "68451041280",
                         "35115652612096",
                         "35993612646875136",
                         "73750947497819242496"};
const char* kTableI[] = {"6",
                         "35",
                         "694",
                         "26089",
                         "1862994",
                         "253247715",
                         "66799608630",
                         "34698378752226",
                         "35781375988234520",
                         "73534241823793715433"};

Outcome ac1_table_reproduction()
{
    Outcome o;
    const auto t0 = Clock::now();
    CountTable table(CountingParams(2, 2));
    table.extend_to(10);
    for (unsigned d = 1; d <= 10; ++d) {
        o.check(table.row(d).normalized == BigCount::from_decimal(kTableN[d - 1]),
                "N(" + std::to_string(d) + ")");
        o.check(table.row(d).irreducible == BigCount::from_decimal(kTableI[d - 1]),
                "I(" + std::to_string(d) + ")");
    }
    const double secs = seconds_since(t0);
    o.check(secs < 1.0, "took " + std::to_string(secs) + " s");
    return o;
}

Outcome ac2_ratio_display()
{
    Outcome o;
    CountTable table(CountingParams(2, 2));
    table.extend_to(10);
    const std::vector<std::string> printed{"0.625",   "0.72291", "0.82185", "0.90244", "0.95084",
                                           "0.97587", "0.98811", "0.99410", "0.99706"};
    for (unsigned d = 2; d <= 10; ++d) {
        const auto& row = table.row(d);
        const std::string digits =
            render_decimal(ratio(row.irreducible, row.normalized), 5, Rounding::truncate);
        const std::string& want = printed[d - 2];
        o.check(digits.compare(0, want.size(), want) == 0,
                "d=" + std::to_string(d) + ": " + digits + " vs " + want);
    }
    return o;
}

Outcome ac3_asymptotic_constants()
{
    Outcome o;
    CountTable table(CountingParams(2, 2));
    const auto rows = asymptotic_report(table, 10);
    const auto& r10 = rows.back();
    o.check(r10.predicted_simplified == ratio(BigCount(3), BigCount(1024)), "3/2^10");
    o.check(r10.relative_error_simplified < ratio(BigCount(3), BigCount(1000)),
            "rel. error " + render_decimal(r10.relative_error_simplified, 6));
    for (std::uint64_t q : {2u, 3u}) {
        CountTable t(CountingParams(q, 2));
        const auto rep = asymptotic_report(t, 10);
        o.check(rep[8].relative_error_simplified < rep[3].relative_error_simplified,
                "q=" + std::to_string(q) + ": d=10 not better than d=5");
    }
    o.detail = o.pass ? "rel. error at d=10: " + render_decimal(r10.relative_error_simplified, 6)
                      : o.detail;
    return o;
}

Outcome ac4_oracle_equivalence()
{
    Outcome o;
    const auto t0 = Clock::now();
    struct Case {
        unsigned p, m, d_max;
    };
    for (const Case c : {Case{2, 2, 4}, Case{3, 2, 3}, Case{2, 3, 2}}) {
        BruteForceOracle oracle(PrimeField(c.p), c.m);
        CountTable table(CountingParams(c.p, c.m));
        table.extend_to(c.d_max);
        for (unsigned d = 1; d <= c.d_max; ++d) {
            const auto& got = oracle.counts(d);
            const auto& row = table.row(d);
            const std::string where = "q=" + std::to_string(c.p) + " m=" + std::to_string(c.m) +
                                      " d=" + std::to_string(d);
            o.check(got.normalized == row.normalized, where + " N");
            o.check(got.irreducible == row.irreducible, where + " I");
            o.check(got.by_factors == row.by_factors, where + " S_k");
        }
        if (c.p == 2 && c.m == 2)
            o.check(oracle.counts(4).irreducible == BigCount(26089), "I(4) = 26089");
    }
    const double secs = seconds_since(t0);
    o.check(secs < 60.0, "took " + std::to_string(secs) + " s");
    return o;
}

Outcome ac5_univariate()
{
    Outcome o;
    for (unsigned p : {2u, 3u})
        for (unsigned d = 1; d <= 6; ++d)
            o.check(count_irreducible_univariate(p, d).monic ==
                        BigCount(testing::monic_irreducibles_by_trial_division(p, d)),
                    "p=" + std::to_string(p) + " d=" + std::to_string(d));
    const ExactRatio density = ratio(count_irreducible_univariate(2, 50).monic, pow(BigCount(2), 50));
    const ExactRatio gap = abs(density * ExactRatio::integer(50) - ExactRatio::integer(1));
    o.check(gap < ratio(BigCount(1), BigCount(1000000)), "d * density at d=50");
    return o;
}

Outcome ac6_property_suites()
{
    Outcome o;
    // Consecutive ratio closed form.
    for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        const CountingParams params(q, 2);
        for (unsigned d = 1; d <= 40; ++d) {
            const BigCount qd2 = pow(BigCount(q), d + 2);
            const ExactRatio expect = ratio(BigCount(1), qd2) *
                                      (ExactRatio::integer(1) - ratio(BigCount(q - 1), qd2 - BigCount(1)));
            o.check(consecutive_ratio(params, d) == expect, "ratio identity q=" + std::to_string(q));
        }
    }
    // Product inequalities.
    for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        const CountingParams params(q, 2);
        std::vector<BigCount> n(61);
        for (unsigned d = 1; d <= 60; ++d)
            n[d] = count_normalized(params, d);
        const BigCount q3 = pow(BigCount(q), 3), q5 = pow(BigCount(q), 5);
        for (unsigned a = 1; a < 60; ++a)
            for (unsigned b = 1; a + b <= 60; ++b) {
                const BigCount prod = n[a] * n[b];
                o.check(prod <= n[a + b], "N(a)N(b) <= N(a+b)");
                o.check(prod <= q3 * n[a + b - 1], "N(a)N(b) <= q^3 N(a+b-1)");
                if (a >= 3 && b >= 3)
                    o.check(prod <= q5 * n[a + b - 2], "N(a)N(b) <= q^5 N(a+b-2)");
            }
    }
    // Torsion product against the plain product.
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<TorsionFactor> factors;
        BigCount plain(1);
        const int runs = 1 + static_cast<int>(rng() % 5);
        for (int j = 0; j < runs; ++j) {
            const BigCount ell = BigCount(1 + rng() % 100000) * pow(BigCount(2), rng() % 100);
            const unsigned alpha = 1 + static_cast<unsigned>(rng() % 6);
            plain *= pow(ell, alpha);
            factors.push_back({ell, alpha});
        }
        o.check(torsion_product(factors) <= plain, "torsion product bound");
    }
    // Partition count bound.
    for (unsigned d = 1; d <= 100; ++d)
        o.check(count_partitions(d).to_double() < hardy_ramanujan_bound(d),
                "P(" + std::to_string(d) + ")");
    // Non-dominant partition terms.
    CountTable table(CountingParams(2, 2));
    table.extend_to(30);
    const BigCount q6 = pow(BigCount(2), 6);
    for (unsigned d = 3; d <= 12; ++d)
        for (unsigned k = 2; k <= d; ++k)
            for (const auto& parts : partitions_of(d, k)) {
                if (k == 2 && parts[0] == 1)
                    continue;
                o.check(partition_contribution(table, parts) <= q6 * table.row(d - 2).normalized,
                        "term bound " + format_partition(parts));
            }
    // Two-sided reducible share.
    for (unsigned d = 10; d <= 30; ++d) {
        const ExactRatio r = ratio(table.row(d).reducible,
                                   table.row(1).normalized * table.row(d - 1).normalized);
        const ExactRatio slack(BigCount(1), BigCount(d));
        o.check(ExactRatio::integer(1) - slack <= r && r <= ExactRatio::integer(1) + slack,
                "reducible share d=" + std::to_string(d));
    }
    return o;
}

Outcome ac7_accounting()
{
    Outcome o;
    for (std::uint64_t q : {2u, 3u})
        for (unsigned m : {2u, 3u}) {
            CountTable table(CountingParams(q, m));
            table.extend_to(15);
            for (const auto& row : table.rows()) {
                BigCount s;
                for (const auto& v : row.by_factors)
                    s += v;
                const std::string where = "q=" + std::to_string(q) + " m=" + std::to_string(m) +
                                          " d=" + std::to_string(row.d);
                o.check(row.normalized == row.irreducible + row.reducible, where + " N=I+R");
                o.check(row.normalized == s, where + " N=sum S_k");
            }
        }
    return o;
}

Outcome ac8_scale()
{
    Outcome o;
    const auto t0 = Clock::now();
    CountTable table(CountingParams(2, 2));
    table.extend_to(50);
    const double secs = seconds_since(t0);
    o.check(table.max_degree() == 50, "table incomplete");
    o.check(secs < 10.0, "d=50 took " + std::to_string(secs) + " s");

    // The stream holds exactly one k-vector; it never grows while iterating.
    for (unsigned k : {2u, 5u, 10u}) {
        PartitionStream stream(50, k);
        auto it = stream.begin();
        const unsigned* base = it->data();
        const std::size_t cap = it->capacity();
        for (; it != stream.end(); ++it)
            o.check(it->data() == base && it->size() == k && it->capacity() == cap,
                    "stream storage changed at k=" + std::to_string(k));
        o.check(cap <= 2 * k, "capacity " + std::to_string(cap));
    }
    if (o.pass) {
        std::ostringstream s;
        s.precision(3);
        s << "d=50 in " << secs << " s";
        o.detail = s.str();
    }
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        const char* id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"AC1", "exact N(d), I(d) for q=2 m=2 d<=10", ac1_table_reproduction},
        {"AC2", "density prefixes at 5 digits", ac2_ratio_display},
        {"AC3", "defect vs 3/2^d, error shrinks for q=2,3", ac3_asymptotic_constants},
        {"AC4", "brute-force oracle equals recursion", ac4_oracle_equivalence},
        {"AC5", "univariate counts and density", ac5_univariate},
        {"AC6", "bound and identity property suites", ac6_property_suites},
        {"AC7", "N = I + R = sum S_k, q,m in {2,3}, d<=15", ac7_accounting},
        {"AC8", "d=50 table, bounded partition streams", ac8_scale},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = seconds_since(t0);
        std::printf("[%s] %s %s (%.3f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                    o.detail.empty() ? "" : ": ", o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
