#include "polycount/partitions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace polycount {

std::string format_partition(std::span<const unsigned> parts)
{
    std::string out = "[";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out.push_back(',');
        out += std::to_string(parts[i]);
    }
    out.push_back(']');
    return out;
}

PartitionStream::PartitionStream(unsigned d, unsigned k) : d_(d), k_(k)
{
    if (k < 1 || k > d)
        throw std::invalid_argument("partitions_of: need 1 <= k <= d (got d=" +
                                    std::to_string(d) + ", k=" + std::to_string(k) + ")");
}

PartitionStream::iterator::iterator(unsigned d, unsigned k) : current_(k, 1u), done_(false)
{
    current_.back() = d - (k - 1);
}

PartitionStream::iterator& PartitionStream::iterator::operator++()
{
    if (!done_ && !next_partition(current_))
        done_ = true;
    return *this;
}

bool next_partition(std::span<unsigned> parts)
{
    const std::size_t k = parts.size();
    if (k < 2)
        return false;

    unsigned total = 0;
    for (unsigned v : parts)
        total += v;

    // Rightmost position i < k-1 that can grow by one while the tail is
    // refilled with that same value and the last part stays >= it.
    unsigned prefix = total - parts[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) {
        prefix -= parts[i];
        const unsigned v = parts[i] + 1;
        const unsigned fixed = prefix + v * static_cast<unsigned>(k - 1 - i);
        if (fixed < total && total - fixed >= v) {
            for (std::size_t j = i; j + 1 < k; ++j)
                parts[j] = v;
            parts[k - 1] = total - fixed;
            return true;
        }
    }
    return false;
}

BigCount count_partitions(unsigned d)
{
    if (d == 0)
        throw std::invalid_argument("count_partitions: d must be positive");

    // p(n) = sum_{j>=1} (-1)^{j+1} [p(n - j(3j-1)/2) + p(n - j(3j+1)/2)]
    std::vector<mpz_class> p(d + 1);
    p[0] = 1;
    for (unsigned n = 1; n <= d; ++n) {
        mpz_class acc = 0;
        for (unsigned j = 1;; ++j) {
            const unsigned g1 = j * (3 * j - 1) / 2;
            if (g1 > n)
                break;
            const unsigned g2 = j * (3 * j + 1) / 2;
            mpz_class term = p[n - g1];
            if (g2 <= n)
                term += p[n - g2];
            if (j % 2 == 1)
                acc += term;
            else
                acc -= term;
        }
        p[n] = acc;
    }
    return BigCount(p[d]);
}

double hardy_ramanujan_bound(unsigned d)
{
    if (d == 0)
        throw std::invalid_argument("hardy_ramanujan_bound: d must be positive");
    const double v = std::exp(std::numbers::pi * std::sqrt(2.0 * d / 3.0));
    return std::nextafter(v, std::numeric_limits<double>::infinity());
}

} // namespace polycount
