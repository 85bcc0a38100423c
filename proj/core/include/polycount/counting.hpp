#pragma once

// Exact counts of polynomials of a given total degree over F_q in m
// variables. Everything counts *normalized* polynomials (one representative
// per nonzero scalar multiple) unless the name says otherwise; multiply by
// q - 1 for the raw counts.
//
// The irreducible count I(d) is obtained bottom-up from
//
//     I(d) = N(d) - sum_{k=2..d} S_k(d),
//     S_k(d) = sum over partitions [d_1..d_k] of d of prod_runs C(I(e)+a-1, a)
//
// where each run groups the a parts equal to a degree e. Degree 1 is the
// base case, I(1) = N(1).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polycount/numeric.hpp"

namespace polycount {

/// Field size q (a prime power) and variable count m >= 1.
class CountingParams {
public:
    /// Throws std::invalid_argument if q is not a prime power or m == 0.
    CountingParams(std::uint64_t q, unsigned m);

    std::uint64_t q() const noexcept { return q_; }
    unsigned m() const noexcept { return m_; }
    std::uint64_t characteristic() const noexcept { return field_.prime; }
    unsigned extension_degree() const noexcept { return field_.exponent; }

    friend bool operator==(const CountingParams& a, const CountingParams& b) noexcept
    {
        return a.q_ == b.q_ && a.m_ == b.m_;
    }

private:
    std::uint64_t q_;
    unsigned m_;
    PrimePower field_;
};

// -- Univariate ------------------------------------------------------------

/// All polynomials in F_q[x] of degree exactly d: q^{d+1} - q^d.
BigCount count_univariate(std::uint64_t q, unsigned d);

struct UnivariateIrreducibles {
    BigCount monic; ///< (1/d) sum_{e | d} mu(e) q^{d/e}
    BigCount all;   ///< monic * (q - 1)
};

/// Gauss's count of irreducibles of degree d in F_q[x].
UnivariateIrreducibles count_irreducible_univariate(std::uint64_t q, unsigned d);

// -- Closed forms ------------------------------------------------------------

/// Number of monomials of total degree exactly d in m variables.
std::uint64_t monomial_count(unsigned m, unsigned d);

/// Nonzero homogeneous polynomials of degree d: q^{C(m+d-1, m-1)} - 1.
BigCount leading_form_count(const CountingParams& params, unsigned d);

/// N_m(d) = (q^{C(m+d-1,m-1)} - 1)/(q - 1) * q^{C(m+d-1,m)}.
BigCount count_normalized(const CountingParams& params, unsigned d);

/// N_m(d) / N_m(d+1).
ExactRatio consecutive_ratio(const CountingParams& params, unsigned d);

// -- Torsion product ---------------------------------------------------------

struct TorsionFactor {
    BigCount ell;          ///< objects per box
    unsigned multiplicity; ///< how many picks share this box
};

/// prod_j C(ell_j + alpha_j - 1, alpha_j). Throws std::invalid_argument on an
/// empty list or a zero multiplicity.
BigCount torsion_product(std::span<const TorsionFactor> factors);

// -- Recursive counts --------------------------------------------------------

struct CountRow {
    unsigned d = 0;
    BigCount normalized;          ///< N(d)
    BigCount irreducible;         ///< I(d)
    BigCount reducible;           ///< R(d)
    std::vector<BigCount> by_factors; ///< S_1(d) .. S_d(d); by_factors[k-1] = S_k(d)

    const BigCount& with_k_factors(unsigned k) const { return by_factors.at(k - 1); }
};

/* Memo store for the bottom-up recursion. Rows are held for every degree
 * 1..max_degree() with no gaps; extend_to() appends the missing ones. A
 * table that is not being extended is safe to read from several threads.
 */
class CountTable {
public:
    explicit CountTable(CountingParams params);

    const CountingParams& params() const noexcept { return params_; }
    unsigned max_degree() const noexcept { return static_cast<unsigned>(rows_.size()); }
    bool has(unsigned d) const noexcept { return d >= 1 && d <= max_degree(); }

    /// Throws std::out_of_range if degree d has not been computed.
    const CountRow& row(unsigned d) const;
    std::span<const CountRow> rows() const noexcept { return rows_; }

    /// Computes every missing row up to and including d.
    void extend_to(unsigned d);

    /// Document {q, m, rows: [{d, N, I, R, S: [...]}]} with every count a
    /// decimal string.
    std::string to_json(int indent = -1) const;

    /* Parses to_json() output. Each row is checked against the closed form
     * for N and against N = I + R and N = sum S_k before it is accepted;
     * rows must run 1..n without gaps. Throws std::invalid_argument.
     */
    static CountTable from_json(std::string_view text);

private:
    CountingParams params_;
    std::vector<CountRow> rows_;
};

/// I(e) for every needed e is read from `table`; for k == 1 the row for d
/// itself must be present. Throws std::out_of_range when a needed row is
/// missing and std::invalid_argument unless 1 <= k <= d.
BigCount count_with_k_factors(const CountTable& table, unsigned d, unsigned k);

/// Contribution of one partition (nondecreasing parts) to S_k(d):
/// I(d_1) (x) ... (x) I(d_k), grouping equal degrees into one factor.
BigCount partition_contribution(const CountTable& table, std::span<const unsigned> parts);

/// Extends `table` through d and returns I(d).
BigCount count_irreducible(CountTable& table, unsigned d);
BigCount count_irreducible(const CountingParams& params, unsigned d);

BigCount count_reducible(CountTable& table, unsigned d);
BigCount count_reducible(const CountingParams& params, unsigned d);

// -- Asymptotics -------------------------------------------------------------

struct AsymptoticRow {
    unsigned d = 0;
    ExactRatio density;               ///< I(d)/N(d)
    ExactRatio defect;                ///< 1 - I(d)/N(d) = R(d)/N(d)
    ExactRatio predicted;             ///< N(1) N(d-1) / N(d)
    ExactRatio predicted_simplified;  ///< N(1) / q^{C(m+d-1, m-1)}; (q+1)/q^d for m = 2
    ExactRatio relative_error;        ///< |defect - predicted| / predicted
    ExactRatio relative_error_simplified;
};

/// Rows for d = 2..d_max; extends `table` as needed. Throws
/// std::invalid_argument for d_max < 2.
std::vector<AsymptoticRow> asymptotic_report(CountTable& table, unsigned d_max);

/// N_m(1)/q^{C(m+d-1,m-1)}, the leading-order estimate of 1 - I(d)/N(d).
ExactRatio simplified_defect(const CountingParams& params, unsigned d);

/// Human-readable form of simplified_defect for the given params, e.g.
/// "3/2^d" or "14/2^((d+1)(d+2)/2)".
std::string simplified_defect_formula(const CountingParams& params);

} // namespace polycount
