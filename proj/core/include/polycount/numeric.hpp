#pragma once

// Exact integer and rational arithmetic used by every counting routine,
// plus the handful of elementary number-theoretic helpers (binomials,
// Moebius function, prime-power detection) the counts are built from.
//
// Storage is GMP (mpz/mpq); the wrappers enforce the domain invariants:
// a BigCount is never negative, an ExactRatio is always in lowest terms
// with a positive denominator.

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace polycount {

/// Raised when an exact computation hits a state that can only come from a
/// bug (a negative count, an inexact division that must be exact).
class ArithmeticError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class BigCount {
public:
    BigCount() = default;

    template <std::integral T>
    BigCount(T v) // NOLINT(google-explicit-constructor)
    {
        if constexpr (std::is_signed_v<T>) {
            if (v < 0)
                throw std::invalid_argument("BigCount: negative value");
            value_ = static_cast<unsigned long>(v);
        } else {
            value_ = static_cast<unsigned long>(v);
        }
    }

    explicit BigCount(mpz_class v);

    static BigCount from_decimal(std::string_view digits);

    const mpz_class& mpz() const noexcept { return value_; }
    std::string to_string() const { return value_.get_str(10); }

    bool is_zero() const noexcept { return sgn(value_) == 0; }

    /// Throws std::overflow_error if the value does not fit.
    std::uint64_t to_u64() const;
    double to_double() const { return value_.get_d(); }
    /// Number of bits in the binary representation (0 for zero).
    std::size_t bit_length() const;

    BigCount& operator+=(const BigCount& o);
    BigCount& operator*=(const BigCount& o);
    /// Throws ArithmeticError if the result would be negative.
    BigCount& operator-=(const BigCount& o);

    friend BigCount operator+(BigCount a, const BigCount& b) { return a += b; }
    friend BigCount operator*(BigCount a, const BigCount& b) { return a *= b; }
    friend BigCount operator-(BigCount a, const BigCount& b) { return a -= b; }

    friend bool operator==(const BigCount& a, const BigCount& b) noexcept
    {
        return cmp(a.value_, b.value_) == 0;
    }
    friend std::strong_ordering operator<=>(const BigCount& a, const BigCount& b) noexcept
    {
        return cmp(a.value_, b.value_) <=> 0;
    }

private:
    mpz_class value_ = 0;
};

BigCount pow(const BigCount& base, std::uint64_t exponent);

/// a / b, throwing ArithmeticError when b does not divide a or b is zero.
BigCount exact_div(const BigCount& a, const BigCount& b);

std::string to_string(const BigCount& v);

class ExactRatio {
public:
    ExactRatio() = default;
    ExactRatio(const BigCount& numerator, const BigCount& denominator);
    /// Signed numerator; throws std::invalid_argument on a zero denominator.
    ExactRatio(mpz_class numerator, mpz_class denominator);
    explicit ExactRatio(mpq_class v);

    static ExactRatio integer(long v) { return ExactRatio(mpz_class(v), mpz_class(1)); }

    const mpq_class& mpq() const noexcept { return value_; }
    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    int sign() const noexcept { return sgn(value_); }
    double to_double() const { return value_.get_d(); }
    /// "num/den" in lowest terms ("n" when the denominator is 1).
    std::string to_string() const;

    friend ExactRatio operator+(const ExactRatio& a, const ExactRatio& b);
    friend ExactRatio operator-(const ExactRatio& a, const ExactRatio& b);
    friend ExactRatio operator*(const ExactRatio& a, const ExactRatio& b);
    /// Throws std::invalid_argument on division by zero.
    friend ExactRatio operator/(const ExactRatio& a, const ExactRatio& b);
    friend ExactRatio abs(const ExactRatio& a);

    friend bool operator==(const ExactRatio& a, const ExactRatio& b) noexcept
    {
        return cmp(a.value_, b.value_) == 0;
    }
    friend std::strong_ordering operator<=>(const ExactRatio& a, const ExactRatio& b) noexcept
    {
        return cmp(a.value_, b.value_) <=> 0;
    }

private:
    mpq_class value_ = 0;
};

enum class Rounding {
    half_even, ///< round to nearest, ties to an even last digit
    truncate,  ///< drop digits past the precision (toward zero)
};

/// Fixed-point decimal rendering with exactly `precision` fractional
/// digits. Never uses scientific notation.
std::string render_decimal(const ExactRatio& r, unsigned precision,
                           Rounding mode = Rounding::half_even);

/// True when the decimal expansion of r terminates within `precision`
/// fractional digits.
bool decimal_terminates_within(const ExactRatio& r, unsigned precision);

/// C(n, k); zero when k > n.
BigCount binomial(const BigCount& n, std::uint64_t k);
BigCount binomial(std::uint64_t n, std::uint64_t k);

/// C(ell + alpha - 1, alpha): unordered selections of alpha items, with
/// repetition, from ell kinds.
BigCount multiset_coefficient(const BigCount& ell, std::uint64_t alpha);

/// Moebius function by trial division. Throws std::invalid_argument on 0.
int moebius(std::uint64_t n);

bool is_prime(std::uint64_t n);

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// (p, n) with q = p^n for a prime p and n >= 1, or nullopt.
std::optional<PrimePower> prime_power_decomposition(std::uint64_t q);

inline bool is_prime_power(std::uint64_t q)
{
    return prime_power_decomposition(q).has_value();
}

} // namespace polycount
