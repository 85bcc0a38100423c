#include "polycount/counting.hpp"

#include <stdexcept>
#include <utility>

#include "polycount/partitions.hpp"

namespace polycount {

CountingParams::CountingParams(std::uint64_t q, unsigned m) : q_(q), m_(m)
{
    auto pp = prime_power_decomposition(q);
    if (!pp)
        throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    if (m == 0)
        throw std::invalid_argument("m must be at least 1");
    field_ = *pp;
}

namespace {

void require_degree(unsigned d, const char* what)
{
    if (d < 1)
        throw std::invalid_argument(std::string(what) + ": degree must be at least 1");
}

std::uint64_t checked_binomial(std::uint64_t n, std::uint64_t k)
{
    return binomial(n, k).to_u64();
}

BigCount q_pow(std::uint64_t q, std::uint64_t e) { return pow(BigCount(q), e); }

} // namespace

BigCount count_univariate(std::uint64_t q, unsigned d)
{
    require_degree(d, "count_univariate");
    if (!is_prime_power(q))
        throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    return q_pow(q, d + 1) - q_pow(q, d);
}

UnivariateIrreducibles count_irreducible_univariate(std::uint64_t q, unsigned d)
{
    require_degree(d, "count_irreducible_univariate");
    if (!is_prime_power(q))
        throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");

    mpz_class sum = 0;
    for (unsigned e = 1; e <= d; ++e) {
        if (d % e != 0)
            continue;
        const int mu = moebius(e);
        if (mu == 0)
            continue;
        mpz_class term;
        mpz_ui_pow_ui(term.get_mpz_t(), q, d / e);
        if (mu > 0)
            sum += term;
        else
            sum -= term;
    }
    if (sgn(sum) < 0)
        throw ArithmeticError("count_irreducible_univariate: negative Moebius sum");
    BigCount monic = exact_div(BigCount(sum), BigCount(d));
    BigCount all = monic * BigCount(q - 1);
    return {std::move(monic), std::move(all)};
}

std::uint64_t monomial_count(unsigned m, unsigned d)
{
    if (m == 0)
        throw std::invalid_argument("monomial_count: m must be at least 1");
    return checked_binomial(std::uint64_t{m} + d - 1, m - 1);
}

BigCount leading_form_count(const CountingParams& params, unsigned d)
{
    return q_pow(params.q(), monomial_count(params.m(), d)) - BigCount(1);
}

BigCount count_normalized(const CountingParams& params, unsigned d)
{
    require_degree(d, "count_normalized");
    const unsigned m = params.m();
    // Monomials of degree < d in m variables: C(m+d-1, m).
    const std::uint64_t lower = checked_binomial(std::uint64_t{m} + d - 1, m);
    return exact_div(leading_form_count(params, d), BigCount(params.q() - 1)) *
           q_pow(params.q(), lower);
}

ExactRatio consecutive_ratio(const CountingParams& params, unsigned d)
{
    return ExactRatio(count_normalized(params, d), count_normalized(params, d + 1));
}

BigCount torsion_product(std::span<const TorsionFactor> factors)
{
    if (factors.empty())
        throw std::invalid_argument("torsion_product: empty factor list");
    BigCount result(1);
    for (const auto& f : factors) {
        if (f.multiplicity == 0)
            throw std::invalid_argument("torsion_product: multiplicity must be positive");
        result *= multiset_coefficient(f.ell, f.multiplicity);
    }
    return result;
}

namespace {

/* C(I(e)+a-1, a) for already-computed degrees e, filled lazily. Lives for a
 * single extend_to() call so the table itself stays free of mutable state.
 */
class MultisetCache {
public:
    explicit MultisetCache(const std::vector<CountRow>& rows) : rows_(rows) {}

    const mpz_class& get(unsigned degree, unsigned alpha)
    {
        if (cache_.size() <= degree)
            cache_.resize(degree + 1);
        auto& slot = cache_[degree];
        if (slot.size() <= alpha)
            slot.resize(alpha + 1);
        if (sgn(slot[alpha]) == 0)
            slot[alpha] =
                multiset_coefficient(rows_[degree - 1].irreducible, alpha).mpz();
        return slot[alpha];
    }

    /// Product over runs of equal parts; parts must be nondecreasing.
    void accumulate(std::span<const unsigned> parts, mpz_class& sum)
    {
        product_ = 1;
        for (std::size_t i = 0; i < parts.size();) {
            std::size_t j = i + 1;
            while (j < parts.size() && parts[j] == parts[i])
                ++j;
            const auto alpha = static_cast<unsigned>(j - i);
            if (alpha == 1)
                product_ *= rows_[parts[i] - 1].irreducible.mpz();
            else
                product_ *= get(parts[i], alpha);
            i = j;
        }
        sum += product_;
    }

private:
    const std::vector<CountRow>& rows_;
    std::vector<std::vector<mpz_class>> cache_;
    mpz_class product_;
};

} // namespace

CountTable::CountTable(CountingParams params) : params_(std::move(params)) {}

const CountRow& CountTable::row(unsigned d) const
{
    if (!has(d))
        throw std::out_of_range("CountTable: degree " + std::to_string(d) +
                                " not computed (table holds 1.." +
                                std::to_string(max_degree()) + ")");
    return rows_[d - 1];
}

void CountTable::extend_to(unsigned d)
{
    require_degree(d, "CountTable::extend_to");
    if (d <= max_degree())
        return;
    rows_.reserve(d);
    MultisetCache cache(rows_);

    for (unsigned e = max_degree() + 1; e <= d; ++e) {
        CountRow row;
        row.d = e;
        row.normalized = count_normalized(params_, e);
        row.by_factors.resize(e);

        mpz_class reducible = 0;
        for (unsigned k = 2; k <= e; ++k) {
            mpz_class s = 0;
            for (const auto& parts : partitions_of(e, k))
                cache.accumulate(parts, s);
            reducible += s;
            row.by_factors[k - 1] = BigCount(std::move(s));
        }
        row.reducible = BigCount(std::move(reducible));
        if (row.reducible > row.normalized)
            throw ArithmeticError("CountTable: R(" + std::to_string(e) + ") exceeds N(" +
                                  std::to_string(e) + ")");
        row.irreducible = row.normalized - row.reducible;
        row.by_factors[0] = row.irreducible;
        rows_.push_back(std::move(row));
    }
}

BigCount partition_contribution(const CountTable& table, std::span<const unsigned> parts)
{
    if (parts.empty())
        throw std::invalid_argument("partition_contribution: empty partition");
    std::vector<TorsionFactor> factors;
    for (std::size_t i = 0; i < parts.size();) {
        if (parts[i] == 0 || (i > 0 && parts[i] < parts[i - 1]))
            throw std::invalid_argument("partition_contribution: parts must be positive "
                                        "and nondecreasing");
        std::size_t j = i + 1;
        while (j < parts.size() && parts[j] == parts[i])
            ++j;
        factors.push_back({table.row(parts[i]).irreducible, static_cast<unsigned>(j - i)});
        i = j;
    }
    return torsion_product(factors);
}

BigCount count_with_k_factors(const CountTable& table, unsigned d, unsigned k)
{
    if (d < 1 || k < 1 || k > d)
        throw std::invalid_argument("count_with_k_factors: need 1 <= k <= d");
    if (k == 1)
        return table.row(d).irreducible;
    if (d - 1 > table.max_degree())
        throw std::out_of_range("count_with_k_factors: I(e) for e < " + std::to_string(d) +
                                " not available (table holds 1.." +
                                std::to_string(table.max_degree()) + ")");
    BigCount sum;
    for (const auto& parts : partitions_of(d, k))
        sum += partition_contribution(table, parts);
    return sum;
}

BigCount count_irreducible(CountTable& table, unsigned d)
{
    require_degree(d, "count_irreducible");
    table.extend_to(d);
    return table.row(d).irreducible;
}

BigCount count_irreducible(const CountingParams& params, unsigned d)
{
    CountTable table(params);
    return count_irreducible(table, d);
}

BigCount count_reducible(CountTable& table, unsigned d)
{
    require_degree(d, "count_reducible");
    table.extend_to(d);
    return table.row(d).reducible;
}

BigCount count_reducible(const CountingParams& params, unsigned d)
{
    CountTable table(params);
    return count_reducible(table, d);
}

ExactRatio simplified_defect(const CountingParams& params, unsigned d)
{
    require_degree(d, "simplified_defect");
    return ExactRatio(count_normalized(params, 1),
                      q_pow(params.q(), monomial_count(params.m(), d)));
}

std::string simplified_defect_formula(const CountingParams& params)
{
    const std::string q = std::to_string(params.q());
    switch (params.m()) {
    case 1:
        return "1";
    case 2:
        return std::to_string(params.q() + 1) + "/" + q + "^d";
    case 3:
        return count_normalized(params, 1).to_string() + "/" + q + "^((d+1)(d+2)/2)";
    default: {
        const std::string mm = std::to_string(params.m() - 1);
        return count_normalized(params, 1).to_string() + "/" + q + "^C(d+" + mm + "," + mm +
               ")";
    }
    }
}

std::vector<AsymptoticRow> asymptotic_report(CountTable& table, unsigned d_max)
{
    if (d_max < 2)
        throw std::invalid_argument("asymptotic_report: d_max must be at least 2");
    table.extend_to(d_max);

    const auto& params = table.params();
    const BigCount& n1 = table.row(1).normalized;
    std::vector<AsymptoticRow> out;
    out.reserve(d_max - 1);
    for (unsigned d = 2; d <= d_max; ++d) {
        const CountRow& row = table.row(d);
        AsymptoticRow r;
        r.d = d;
        r.density = ExactRatio(row.irreducible, row.normalized);
        r.defect = ExactRatio(row.reducible, row.normalized);
        r.predicted = ExactRatio(n1 * table.row(d - 1).normalized, row.normalized);
        r.predicted_simplified = simplified_defect(params, d);
        r.relative_error = abs(r.defect - r.predicted) / r.predicted;
        r.relative_error_simplified =
            abs(r.defect - r.predicted_simplified) / r.predicted_simplified;
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace polycount
