#pragma once

// Brute-force ground truth over prime fields: enumerate every normalized
// polynomial of a given degree, build the reducible ones as explicit
// products, and count. Nothing here uses the recursion in counting.hpp;
// verify_unique_factorization() is the only place the two meet.

#include <cstdint>
#include <iterator>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polycount/counting.hpp"
#include "polycount/numeric.hpp"

namespace polycount {

/// Raised when a brute-force request would enumerate more candidates than
/// the configured guard allows.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PrimeField {
public:
    /// Throws std::invalid_argument unless p is a prime below 256.
    explicit PrimeField(unsigned p);

    unsigned p() const noexcept { return p_; }

    unsigned add(unsigned a, unsigned b) const noexcept { return (a + b) % p_; }
    unsigned mul(unsigned a, unsigned b) const noexcept { return (a * b) % p_; }
    unsigned neg(unsigned a) const noexcept { return a == 0 ? 0 : p_ - a; }
    /// Throws std::domain_error for a == 0.
    unsigned inv(unsigned a) const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    unsigned p_;
};

/* Monomials in m variables of total degree <= degree_bound, ordered by
 * ascending total degree and, within one degree, lexicographically
 * descending in (e_1, ..., e_m). For m = 2, degree 2 this is x^2, xy, y^2.
 * This order is the coefficient order of canonical_bytes().
 */
class MonomialBasis {
public:
    /// Shared, immutable instance per (m, degree_bound).
    static std::shared_ptr<const MonomialBasis> get(unsigned m, unsigned degree_bound);

    MonomialBasis(unsigned m, unsigned degree_bound);

    unsigned m() const noexcept { return m_; }
    unsigned degree_bound() const noexcept { return bound_; }
    std::size_t size() const noexcept { return degrees_.size(); }

    std::span<const unsigned> exponents(std::size_t i) const
    {
        return {exps_.data() + i * m_, m_};
    }
    unsigned degree(std::size_t i) const { return degrees_[i]; }
    /// Index of the first monomial of degree t (t may be degree_bound + 1).
    std::size_t degree_begin(unsigned t) const { return offsets_.at(t); }

    /// Throws std::out_of_range if the monomial is not in the basis.
    std::size_t index_of(std::span<const unsigned> exponents) const;

private:
    std::uint64_t key(std::span<const unsigned> exponents) const;

    unsigned m_;
    unsigned bound_;
    std::vector<unsigned> exps_;
    std::vector<unsigned> degrees_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> lookup_; // dense table over key(); npos when absent
};

class DensePoly {
public:
    /// The zero polynomial.
    DensePoly(PrimeField field, unsigned m, unsigned degree_bound);

    static DensePoly constant(PrimeField field, unsigned m, unsigned value);
    /// x_{index+1}, i.e. variable(f, m, 0) is x.
    static DensePoly variable(PrimeField field, unsigned m, unsigned index);

    const PrimeField& field() const noexcept { return field_; }
    unsigned m() const noexcept { return basis_->m(); }
    unsigned degree_bound() const noexcept { return basis_->degree_bound(); }
    const MonomialBasis& basis() const noexcept { return *basis_; }

    std::span<const std::uint8_t> coefficients() const noexcept { return coeffs_; }
    unsigned coefficient(std::span<const unsigned> exponents) const;
    void set_coefficient(std::span<const unsigned> exponents, unsigned value);
    void set_coefficient_at(std::size_t index, unsigned value);

    bool is_zero() const noexcept;
    /// Largest total degree with a nonzero coefficient; -1 for zero.
    int total_degree() const noexcept;
    /// Nonzero, and the first nonzero coefficient of the top-degree form
    /// (in basis order) is 1.
    bool is_normalized() const noexcept;

    /// Same polynomial stored with a different degree bound. Throws
    /// std::invalid_argument if the new bound is below total_degree().
    DensePoly with_degree_bound(unsigned degree_bound) const;

    /// One byte per coefficient, in basis order.
    std::vector<std::uint8_t> canonical_bytes() const { return coeffs_; }
    std::string canonical_hex() const;

    /// e.g. "x^2 + 2*x*y + 1"; variables x, y, z for m <= 3, else x1..xm.
    std::string to_string() const;

    friend bool operator==(const DensePoly& a, const DensePoly& b) noexcept
    {
        return a.field_ == b.field_ && a.m() == b.m() &&
               a.degree_bound() == b.degree_bound() && a.coeffs_ == b.coeffs_;
    }

private:
    DensePoly(PrimeField field, std::shared_ptr<const MonomialBasis> basis);

    friend DensePoly poly_multiply(const DensePoly& a, const DensePoly& b);

    PrimeField field_;
    std::shared_ptr<const MonomialBasis> basis_;
    std::vector<std::uint8_t> coeffs_;
};

/// Exact product; the result's degree bound is the sum of the operands'.
/// Throws std::invalid_argument on mismatched field or variable count.
DensePoly poly_multiply(const DensePoly& a, const DensePoly& b);

inline constexpr std::uint64_t kDefaultOracleGuard = std::uint64_t{1} << 28;

/// p^{#monomials of degree <= d}, saturating at UINT64_MAX.
std::uint64_t enumeration_candidates(const PrimeField& field, unsigned m, unsigned d);

/* Every normalized polynomial of exact total degree d over `field` in m
 * variables, each once. Construction throws InfeasibleError when
 * enumeration_candidates() exceeds `guard`, std::invalid_argument for d == 0.
 */
class NormalizedPolys {
public:
    NormalizedPolys(PrimeField field, unsigned m, unsigned d,
                    std::uint64_t guard = kDefaultOracleGuard);

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = DensePoly;
        using difference_type = std::ptrdiff_t;
        using pointer = const DensePoly*;
        using reference = const DensePoly&;

        reference operator*() const noexcept { return *current_; }
        pointer operator->() const noexcept { return &*current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }

        friend bool operator==(const iterator& it, std::default_sentinel_t) noexcept
        {
            return !it.current_.has_value();
        }

    private:
        friend class NormalizedPolys;
        explicit iterator(const NormalizedPolys& owner);
        void place_pivot();

        std::optional<DensePoly> current_;
        std::size_t lead_begin_ = 0;
        std::size_t lead_size_ = 0;
        std::size_t pivot_ = 0;
    };

    iterator begin() const { return iterator(*this); }
    std::default_sentinel_t end() const noexcept { return {}; }

    const PrimeField& field() const noexcept { return field_; }
    unsigned m() const noexcept { return m_; }
    unsigned degree() const noexcept { return d_; }

private:
    PrimeField field_;
    unsigned m_;
    unsigned d_;
};

inline NormalizedPolys enumerate_normalized(PrimeField field, unsigned m, unsigned d,
                                            std::uint64_t guard = kDefaultOracleGuard)
{
    return NormalizedPolys(field, m, d, guard);
}

struct OracleCounts {
    unsigned d = 0;
    BigCount normalized;
    BigCount irreducible;
    BigCount reducible;
    std::vector<BigCount> by_factors; ///< by_factors[k-1] = distinct products of k irreducibles
};

struct FactorizationCollision {
    std::vector<std::string> first;  ///< factors of one multiset, as polynomials
    std::vector<std::string> second; ///< a different multiset with the same product
    std::string product;
};

struct FactorizationReport {
    unsigned d = 0;
    bool unique = true;               ///< all multisets give distinct products
    bool matches_counting = true;     ///< per-k counts equal counting-core S_k(d)
    bool covers_reducible = true;     ///< products with k >= 2 are exactly the reducible set
    std::vector<BigCount> multisets;  ///< multisets enumerated per k
    std::vector<BigCount> distinct;   ///< distinct products per k
    std::vector<BigCount> expected;   ///< counting-core S_k(d)
    std::optional<FactorizationCollision> collision;

    bool ok() const noexcept { return unique && matches_counting && covers_reducible; }
};

/* Incremental brute force for one (field, m). Degree d needs the normalized
 * lists of every lower degree, so results are cached per degree; memory is
 * dominated by the stored normalized polynomials.
 */
class BruteForceOracle {
public:
    BruteForceOracle(PrimeField field, unsigned m, std::uint64_t guard = kDefaultOracleGuard);
    ~BruteForceOracle();
    BruteForceOracle(BruteForceOracle&&) noexcept;
    BruteForceOracle& operator=(BruteForceOracle&&) noexcept;

    const PrimeField& field() const noexcept { return field_; }
    unsigned m() const noexcept { return m_; }

    /* N from enumeration; R as |{g*h : g normalized of degree a in
     * [1, d/2], h normalized of degree d-a}|; I = N - R; S_k as the number
     * of distinct products of k-element multisets of normalized irreducibles
     * with degree sum d.
     */
    const OracleCounts& counts(unsigned d);

    std::span<const DensePoly> normalized(unsigned d);
    std::span<const DensePoly> irreducibles(unsigned d);

    /// Uniqueness of factorization at degree d, and agreement of the per-k
    /// product counts with `expected` (the row for d must be present).
    FactorizationReport verify_unique_factorization(unsigned d, const CountTable& expected);

private:
    struct Degree;
    Degree& ensure(unsigned d);

    PrimeField field_;
    unsigned m_;
    std::uint64_t guard_;
    std::vector<std::unique_ptr<Degree>> degrees_;
};

OracleCounts brute_force_counts(PrimeField field, unsigned m, unsigned d,
                                 std::uint64_t guard = kDefaultOracleGuard);

/// Builds a CountTable for q = p internally and compares against it.
FactorizationReport verify_unique_factorization(PrimeField field, unsigned m, unsigned d,
                                                std::uint64_t guard = kDefaultOracleGuard);

} // namespace polycount
