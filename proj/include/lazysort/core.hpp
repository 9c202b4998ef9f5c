#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace lazysort {

/// Element type used throughout the library.
using Key = std::int64_t;

/// Work categories tracked by the comparison ledger.  Every key-to-key
/// comparison performed by a selector is charged to exactly one phase.
enum class Phase : int {
    merge = 0,      ///< merging runs of equal length during normalization
    pivot = 1,      ///< choosing a pivot (median finding, sampling, scans)
    partition = 2,  ///< splitting an interval around a chosen pivot
    search = 3,     ///< locating a value (rank queries, probe descents)
    sort = 4,       ///< finishing small intervals by direct sorting
};

inline constexpr int kPhaseCount = 5;

/// Per-phase comparison counters.  Cheap to copy; useful for snapshots.
struct ComparisonLedger {
    std::uint64_t counts[kPhaseCount] = {0, 0, 0, 0, 0};

    void charge(Phase p, std::uint64_t k = 1) noexcept {
        counts[static_cast<int>(p)] += k;
    }
    std::uint64_t slot(Phase p) const noexcept {
        return counts[static_cast<int>(p)];
    }
    std::uint64_t total() const noexcept {
        std::uint64_t s = 0;
        for (std::uint64_t c : counts) s += c;
        return s;
    }
    ComparisonLedger operator-(const ComparisonLedger& o) const noexcept {
        ComparisonLedger d;
        for (int i = 0; i < kPhaseCount; ++i) d.counts[i] = counts[i] - o.counts[i];
        return d;
    }
};

/// Counting comparator: forwards to `<` on Key and charges one comparison
/// to the phase it was constructed with.  All element comparisons in the
/// library go through one of these.
class PhaseLess {
public:
    PhaseLess(ComparisonLedger& ledger, Phase phase) noexcept
        : ledger_(&ledger), phase_(phase) {}

    bool operator()(const Key& a, const Key& b) const noexcept {
        ledger_->charge(phase_);
        return a < b;
    }
    /// Re-aim the same ledger at a different phase.
    PhaseLess with(Phase phase) const noexcept { return PhaseLess(*ledger_, phase); }

private:
    ComparisonLedger* ledger_;
    Phase phase_;
};

/// log2(k!), exact to double precision, memoized across calls.
double log2_factorial(std::uint64_t k);

/// A set of 1-based target ranks over an array of size n.  Ranks are kept
/// sorted and de-duplicated lazily.  The gap vector uses the convention
/// s_0 = 0 and s_{t+1} = n, so its t+1 entries sum to n.
class QuerySet {
public:
    explicit QuerySet(std::uint64_t n);

    /// Record rank i (1-based, 1 <= i <= n).  Duplicates are fine.
    void add(std::uint64_t i);

    std::uint64_t n() const noexcept { return n_; }
    /// Number of distinct ranks recorded.
    std::uint64_t size() const;
    /// Sorted distinct ranks.
    const std::vector<std::uint64_t>& positions() const;
    /// Gap vector: {s_1 - s_0, s_2 - s_1, ..., n - s_t}; t+1 entries.
    std::vector<std::uint64_t> gaps() const;

private:
    void normalize() const;

    std::uint64_t n_;
    mutable std::vector<std::uint64_t> pos_;
    mutable bool dirty_ = false;
};

/// Information-theoretic comparison lower bound for answering the rank set
/// q over n elements: log2(n!) - sum_i log2(gap_i!).
double entropy_lower_bound(const QuerySet& q);

/// I/O lower bound, in block transfers, for a disk with block size B and
/// m = M/B memory blocks: n_blk*log_m(n_blk) - sum_i (gap_i/B)*log_m(gap_i/B),
/// where every term whose argument (in blocks) is at most m contributes 0,
/// and the result is clamped at 0.  Throws std::invalid_argument if m < 2.
double io_lower_bound(const QuerySet& q, std::uint64_t block_size, std::uint64_t mem_blocks);

/// The set of marked (in-place) positions accumulated by a selector,
/// exposed so bounds can be evaluated against the work actually done.
struct PivotSet {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> positions;  ///< sorted, 1-based

    QuerySet to_query_set() const {
        QuerySet q(n);
        for (std::uint64_t p : positions) q.add(p);
        return q;
    }
};

}  // namespace lazysort
