#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "lazysort/bitvec.hpp"
#include "lazysort/core.hpp"
#include "lazysort/pivot.hpp"

namespace lazysort {

/// How a selector picks the pivot of an unsorted interval.
enum class PivotPolicy {
    last_element,       ///< classic quickselect; no selection cost, no guarantee
    exact_median,       ///< worst-case linear median-of-medians; halves exactly
    randomized_sample,  ///< sampled median when the interval affords it, else exact
};

/// Result of a value search: `present` says whether the value occurs; `rank`
/// is its leftmost 1-based rank when present, otherwise the number of
/// strictly smaller elements (0..n).
struct SearchOutcome {
    std::uint64_t rank = 0;
    bool present = false;
};

/// Lazy quicksort over an in-place array: answers rank and value queries by
/// partitioning only the intervals the queries touch, remembering finished
/// positions in a mark bitvector so later queries reuse earlier work.
class SimpleSelector {
public:
    explicit SimpleSelector(std::vector<Key> a, PivotPolicy policy = PivotPolicy::exact_median,
                            std::uint64_t seed = 0,
                            std::shared_ptr<ComparisonLedger> ledger = nullptr);

    std::uint64_t n() const noexcept { return a_.size() - 1; }

    /// Element of rank s (1-based).
    Key select(std::uint64_t s);
    /// Leftmost rank of p if present, else the count of smaller elements.
    SearchOutcome search(Key p);

    const MarkBitvector& marks() const noexcept { return marks_; }
    const ComparisonLedger& ledger() const noexcept { return *ledger_; }
    const std::vector<PivotNode>& pivot_tree() const noexcept { return tree_; }
    /// Recursion depth of each marked pivot (index = position; -1 unmarked).
    const std::vector<std::int32_t>& pivot_depths() const noexcept { return pivot_depth_; }

    /// Element at physical position i (1-based); equals rank i when marked.
    Key at(std::uint64_t i) const { return a_.at(i); }

    PivotSet pivot_set() const;
    /// Ranks touched by the query history (selects plus search landings).
    QuerySet query_set() const;
    std::uint64_t searches() const noexcept { return searches_; }

private:
    struct PivotChoice {
        Key value;
        std::uint64_t index;
    };

    void preprocess();
    PivotChoice choose_pivot(std::uint64_t lo, std::uint64_t hi);
    std::uint64_t partition(std::uint64_t lo, std::uint64_t hi, std::uint64_t pidx);
    std::uint64_t mark_pivot_event(std::uint64_t a, std::uint64_t b, std::uint64_t j);
    Key select_in(std::uint64_t a, std::uint64_t b, std::uint64_t s);
    std::uint64_t positional_probe(Key p);

    std::vector<Key> a_;  // 1-based; a_[0] unused
    MarkBitvector marks_;
    std::shared_ptr<ComparisonLedger> ledger_;
    PivotPolicy policy_;
    std::mt19937_64 rng_;

    // Interval bookkeeping, keyed by the interval's left mark.
    std::vector<std::int32_t> depth_by_left_;
    std::vector<std::int64_t> creator_by_left_;
    std::vector<std::int32_t> pivot_depth_;
    std::vector<PivotNode> tree_;

    std::vector<std::uint64_t> query_ranks_;
    std::uint64_t searches_ = 0;
};

}  // namespace lazysort
