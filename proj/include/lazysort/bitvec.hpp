#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace lazysort {

/// Fixed-size bitvector over positions 1..n marking elements that are
/// known to be in their final sorted place.  Supports rank and local
/// next/previous scans; never changes size.
class MarkBitvector {
public:
    explicit MarkBitvector(std::uint64_t n);

    std::uint64_t n() const noexcept { return n_; }
    std::uint64_t count() const noexcept { return count_; }

    void set(std::uint64_t i);
    bool test(std::uint64_t i) const;

    /// Number of marked positions in [1..i].
    std::uint64_t rank1(std::uint64_t i) const;

    /// Smallest marked j >= i; throws std::out_of_range if none.
    std::uint64_t next_marked(std::uint64_t i) const;
    /// Largest marked j <= i; throws std::out_of_range if none.
    std::uint64_t prev_marked(std::uint64_t i) const;

    /// Sentinel-returning variants: n+1 / 0 when no mark exists.
    std::uint64_t next_marked_or_end(std::uint64_t i) const;
    std::uint64_t prev_marked_or_begin(std::uint64_t i) const;

    /// All marked positions, ascending.
    std::vector<std::uint64_t> positions() const;

private:
    std::uint64_t n_;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> words_;
};

namespace detail {

inline constexpr std::uint32_t kLeafWords = 8;                  // 512 bits per leaf
inline constexpr std::uint32_t kLeafBits = kLeafWords * 64;
inline constexpr std::uint32_t kLeafMin = kLeafBits / 4;        // rebalance threshold
inline constexpr std::size_t kMaxKids = 16;
inline constexpr std::size_t kMinKids = kMaxKids / 4;

struct DBNode {
    bool leaf = true;
    // Leaf payload: bits [0, len) stored LSB-first; bits >= len are zero.
    std::uint32_t len = 0;
    std::array<std::uint64_t, kLeafWords> w{};
    // Internal payload: children plus cached subtree totals.
    std::vector<std::unique_ptr<DBNode>> kids;
    std::vector<std::uint64_t> kbits;
    std::vector<std::uint64_t> kones;
};

}  // namespace detail

/// Resizable bitvector (B-tree of 512-bit chunks) with rank/select,
/// point updates, and positional insert/erase, all O(log n).
/// Positions are 1-based to match rank conventions elsewhere.
class DynamicBitvector {
public:
    /// n zero bits.
    explicit DynamicBitvector(std::uint64_t n = 0);

    std::uint64_t size() const noexcept { return size_; }
    std::uint64_t count() const noexcept { return ones_; }

    bool test(std::uint64_t i) const;
    /// Toggle bit i; returns the new value.
    bool flip(std::uint64_t i);

    /// Insert a bit so that it becomes position i (old positions >= i shift
    /// up); valid i in [1, size()+1].
    void insert(std::uint64_t i, bool b);
    /// Remove the bit at position i; returns its value.
    bool erase(std::uint64_t i);

    /// Ones (zeros) in [1..i]; rank1(0) == 0.
    std::uint64_t rank1(std::uint64_t i) const;
    std::uint64_t rank0(std::uint64_t i) const;

    /// Position of the k-th one (zero), k >= 1; throws if out of range.
    std::uint64_t select1(std::uint64_t k) const;
    std::uint64_t select0(std::uint64_t k) const;

    /// Validates structural invariants and cached totals; throws
    /// std::logic_error on any violation.  Test hook.
    void check_consistency() const;

    /// ASCII dump, e.g. "10110".  Test hook; O(n).
    std::string to_string() const;

private:
    std::unique_ptr<detail::DBNode> root_;
    std::uint64_t size_ = 0;
    std::uint64_t ones_ = 0;
};

}  // namespace lazysort
