#include "polycount/numeric.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace polycount {

BigCount::BigCount(mpz_class v) : value_(std::move(v))
{
    if (sgn(value_) < 0)
        throw std::invalid_argument("BigCount: negative value");
}

BigCount BigCount::from_decimal(std::string_view digits)
{
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                       [](char c) { return c >= '0' && c <= '9'; }))
        throw std::invalid_argument("BigCount: not a nonnegative decimal integer: '" +
                                    std::string(digits) + "'");
    return BigCount(mpz_class(std::string(digits), 10));
}

std::uint64_t BigCount::to_u64() const
{
    if (!value_.fits_ulong_p())
        throw std::overflow_error("BigCount: value exceeds 64 bits");
    return value_.get_ui();
}

std::size_t BigCount::bit_length() const
{
    return is_zero() ? 0 : mpz_sizeinbase(value_.get_mpz_t(), 2);
}

BigCount& BigCount::operator+=(const BigCount& o)
{
    value_ += o.value_;
    return *this;
}

BigCount& BigCount::operator*=(const BigCount& o)
{
    value_ *= o.value_;
    return *this;
}

BigCount& BigCount::operator-=(const BigCount& o)
{
    if (cmp(value_, o.value_) < 0)
        throw ArithmeticError("BigCount: subtraction would go negative");
    value_ -= o.value_;
    return *this;
}

BigCount pow(const BigCount& base, std::uint64_t exponent)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.mpz().get_mpz_t(), exponent);
    return BigCount(std::move(r));
}

BigCount exact_div(const BigCount& a, const BigCount& b)
{
    if (b.is_zero())
        throw ArithmeticError("exact_div: division by zero");
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
    if (sgn(r) != 0)
        throw ArithmeticError("exact_div: " + a.to_string() + " is not divisible by " +
                              b.to_string());
    return BigCount(std::move(q));
}

std::string to_string(const BigCount& v) { return v.to_string(); }

ExactRatio::ExactRatio(const BigCount& numerator, const BigCount& denominator)
    : ExactRatio(numerator.mpz(), denominator.mpz())
{
}

ExactRatio::ExactRatio(mpz_class numerator, mpz_class denominator)
{
    if (sgn(denominator) == 0)
        throw std::invalid_argument("ExactRatio: zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

ExactRatio::ExactRatio(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

std::string ExactRatio::to_string() const { return value_.get_str(10); }

ExactRatio operator+(const ExactRatio& a, const ExactRatio& b)
{
    return ExactRatio(mpq_class(a.value_ + b.value_));
}

ExactRatio operator-(const ExactRatio& a, const ExactRatio& b)
{
    return ExactRatio(mpq_class(a.value_ - b.value_));
}

ExactRatio operator*(const ExactRatio& a, const ExactRatio& b)
{
    return ExactRatio(mpq_class(a.value_ * b.value_));
}

ExactRatio operator/(const ExactRatio& a, const ExactRatio& b)
{
    if (b.sign() == 0)
        throw std::invalid_argument("ExactRatio: division by zero");
    return ExactRatio(mpq_class(a.value_ / b.value_));
}

ExactRatio abs(const ExactRatio& a) { return ExactRatio(mpq_class(::abs(a.value_))); }

namespace {

mpz_class power_of_ten(unsigned precision)
{
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, precision);
    return scale;
}

} // namespace

std::string render_decimal(const ExactRatio& r, unsigned precision, Rounding mode)
{
    if (precision == 0)
        throw std::invalid_argument("render_decimal: precision must be at least 1");

    const mpz_class scale = power_of_ten(precision);
    mpz_class num = r.numerator();
    const mpz_class den = r.denominator();
    const bool negative = sgn(num) < 0;
    if (negative)
        num = -num;

    // |r| * 10^precision = q + rem/den
    mpz_class q, rem;
    const mpz_class scaled = num * scale;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());

    if (mode == Rounding::half_even) {
        const int c = cmp(mpz_class(2 * rem), den);
        if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t())))
            ++q;
    }

    std::string digits = q.get_str(10);
    if (digits.size() <= precision)
        digits.insert(0, precision + 1 - digits.size(), '0');
    const std::size_t int_len = digits.size() - precision;

    std::string out;
    if (negative && sgn(q) != 0)
        out.push_back('-');
    out.append(digits, 0, int_len);
    out.push_back('.');
    out.append(digits, int_len, std::string::npos);
    return out;
}

bool decimal_terminates_within(const ExactRatio& r, unsigned precision)
{
    const mpz_class scaled = r.numerator() * power_of_ten(precision);
    return mpz_divisible_p(scaled.get_mpz_t(), r.denominator().get_mpz_t()) != 0;
}

BigCount binomial(const BigCount& n, std::uint64_t k)
{
    if (cmp(n.mpz(), mpz_class(static_cast<unsigned long>(k))) < 0)
        return BigCount(0);
    // Multiplicative formula; after step i the accumulator is C(n-k+i, i),
    // so each division is exact.
    mpz_class acc = 1;
    const mpz_class base = n.mpz() - static_cast<unsigned long>(k);
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc *= base + static_cast<unsigned long>(i);
        mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), i);
    }
    return BigCount(std::move(acc));
}

BigCount binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return BigCount(0);
    return binomial(BigCount(n), std::min(k, n - k));
}

BigCount multiset_coefficient(const BigCount& ell, std::uint64_t alpha)
{
    if (alpha == 0)
        return BigCount(1);
    if (ell.is_zero())
        return BigCount(0);
    return binomial(ell + BigCount(alpha - 1), alpha);
}

int moebius(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("moebius: argument must be positive");
    int result = 1;
    for (std::uint64_t p = 2; p <= n / p; ++p) {
        if (n % p != 0)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        result = -result;
    }
    if (n > 1)
        result = -result;
    return result;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p = 2; p <= n / p; ++p)
        if (n % p == 0)
            return false;
    return true;
}

std::optional<PrimePower> prime_power_decomposition(std::uint64_t q)
{
    if (q < 2)
        return std::nullopt;
    std::uint64_t p = q;
    for (std::uint64_t c = 2; c <= q / c; ++c) {
        if (q % c == 0) {
            p = c;
            break;
        }
    }
    unsigned exponent = 0;
    while (q % p == 0) {
        q /= p;
        ++exponent;
    }
    if (q != 1)
        return std::nullopt;
    return PrimePower{p, exponent};
}

} // namespace polycount
