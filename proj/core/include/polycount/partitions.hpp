#pragma once

#include <cstddef>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "polycount/numeric.hpp"

namespace polycount {

/// Nondecreasing positive parts [d_1, ..., d_k].
using Partition = std::vector<unsigned>;

/// "[1,1,3]"
std::string format_partition(std::span<const unsigned> parts);

/* Range over the partitions of d into exactly k parts, in lexicographically
 * increasing order of the nondecreasing parts list:
 *
 *   PartitionStream(5, 3)  ->  [1,1,3], [1,2,2]
 *
 * Only the current partition is held, so memory is O(k) whatever the size
 * of P(k, d). Construction throws std::invalid_argument unless 1 <= k <= d.
 */
class PartitionStream {
public:
    PartitionStream(unsigned d, unsigned k);

    unsigned total() const noexcept { return d_; }
    unsigned parts() const noexcept { return k_; }

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Partition;
        using difference_type = std::ptrdiff_t;
        using pointer = const Partition*;
        using reference = const Partition&;

        iterator() = default;

        reference operator*() const noexcept { return current_; }
        pointer operator->() const noexcept { return &current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }

        friend bool operator==(const iterator& it, std::default_sentinel_t) noexcept
        {
            return it.done_;
        }

    private:
        friend class PartitionStream;
        iterator(unsigned d, unsigned k);

        Partition current_;
        bool done_ = true;
    };

    iterator begin() const { return iterator(d_, k_); }
    std::default_sentinel_t end() const noexcept { return {}; }

private:
    unsigned d_;
    unsigned k_;
};

inline PartitionStream partitions_of(unsigned d, unsigned k) { return PartitionStream(d, k); }

/// Advances `parts` (nondecreasing, fixed length and sum) to its lexicographic
/// successor in place. Returns false, leaving `parts` unchanged, when it is
/// already the last partition.
bool next_partition(std::span<unsigned> parts);

/// P(d) by Euler's pentagonal-number recurrence. Throws on d == 0.
BigCount count_partitions(unsigned d);

/// exp(pi * sqrt(2d/3)), rounded up to the next representable double, an
/// upper bound on P(d) for every d >= 1.
double hardy_ramanujan_bound(unsigned d);

} // namespace polycount
