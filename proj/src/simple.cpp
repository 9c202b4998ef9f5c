#include "lazysort/simple.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace lazysort {

SimpleSelector::SimpleSelector(std::vector<Key> a, PivotPolicy policy, std::uint64_t seed,
                               std::shared_ptr<ComparisonLedger> ledger)
    : marks_(a.size()),
      ledger_(ledger ? std::move(ledger) : std::make_shared<ComparisonLedger>()),
      policy_(policy),
      rng_(seed) {
    if (a.empty()) throw std::invalid_argument("SimpleSelector: empty array");
    a_.reserve(a.size() + 1);
    a_.push_back(0);  // 1-based sentinel slot
    a_.insert(a_.end(), a.begin(), a.end());
    const std::uint64_t n = a.size();
    depth_by_left_.assign(n + 1, -1);
    creator_by_left_.assign(n + 1, -1);
    pivot_depth_.assign(n + 1, -1);
    preprocess();
}

void SimpleSelector::preprocess() {
    const std::uint64_t n = this->n();
    PhaseLess less(*ledger_, Phase::pivot);
    std::uint64_t mn = 1, mx = 1;
    std::uint64_t start = 2;
    if (n >= 2 && n % 2 == 0) {
        if (less(a_[2], a_[1])) {
            mn = 2;
            mx = 1;
        } else {
            mn = 1;
            mx = 2;
        }
        start = 3;
    }
    // Pairing scan: order the pair internally, then compare the smaller
    // against the running min and the larger against the running max.
    for (std::uint64_t i = start; i + 1 <= n; i += 2) {
        std::uint64_t lo = i, hi = i + 1;
        if (less(a_[hi], a_[lo])) std::swap(lo, hi);
        if (less(a_[lo], a_[mn])) mn = lo;
        if (less(a_[mx], a_[hi])) mx = hi;
    }
    std::swap(a_[1], a_[mn]);
    if (mx == 1) mx = mn;
    std::swap(a_[n], a_[mx]);
    marks_.set(1);
    pivot_depth_[1] = 0;
    if (n >= 2) {
        marks_.set(n);
        pivot_depth_[n] = 0;
    }
    if (n >= 3) {
        depth_by_left_[1] = 0;
        creator_by_left_[1] = -1;
    }
}

SimpleSelector::PivotChoice SimpleSelector::choose_pivot(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t len = hi - lo + 1;
    PhaseLess less(*ledger_, Phase::pivot);
    switch (policy_) {
        case PivotPolicy::last_element:
            return {a_[hi], hi};
        case PivotPolicy::randomized_sample: {
            SamplePlan plan = theorem_sample_plan(len, n());
            if (!plan.valid) {
                // Scale the recipe down so sampling still engages at small n.
                auto clg = [](std::uint64_t x) {
                    std::uint64_t b = 0;
                    while ((1ULL << b) < x) ++b;
                    return b;
                };
                plan = scaled_sample_plan(len, 6 * clg(n() + 1) * clg(len + 1),
                                          4 * clg(n() + 1));
            }
            if (plan.valid) {
                std::span<const Key> interval(a_.data() + lo, len);
                IdxKey got = sample_median_indexed(interval, lo, rng_, plan, less);
                return {got.v, got.idx};
            }
            [[fallthrough]];  // interval too small for any plan
        }
        case PivotPolicy::exact_median:
        default: {
            std::vector<IdxKey> scratch;
            scratch.reserve(len);
            for (std::uint64_t i = lo; i <= hi; ++i) scratch.push_back({a_[i], i});
            IdxKey got = select_nth<IdxKey>(
                scratch, (len + 1) / 2,
                [&](const IdxKey& x, const IdxKey& y) { return less(x.v, y.v); });
            return {got.v, got.idx};
        }
    }
}

std::uint64_t SimpleSelector::partition(std::uint64_t lo, std::uint64_t hi, std::uint64_t pidx) {
    PhaseLess less(*ledger_, Phase::partition);
    std::swap(a_[pidx], a_[hi]);
    const Key pv = a_[hi];
    std::uint64_t store = lo;
    for (std::uint64_t u = lo; u < hi; ++u) {
        if (!less(pv, a_[u])) {  // a_[u] <= pv: ties go left
            std::swap(a_[u], a_[store]);
            ++store;
        }
    }
    std::swap(a_[store], a_[hi]);
    return store;
}

std::uint64_t SimpleSelector::mark_pivot_event(std::uint64_t a, std::uint64_t b, std::uint64_t j) {
    const std::int32_t d = depth_by_left_[a];
    const std::int64_t creator = creator_by_left_[a];
    tree_.push_back({creator, d, b - a - 1});
    const std::int64_t id = static_cast<std::int64_t>(tree_.size()) - 1;
    marks_.set(j);
    pivot_depth_[j] = d;
    depth_by_left_[a] = d + 1;
    creator_by_left_[a] = id;
    depth_by_left_[j] = d + 1;
    creator_by_left_[j] = id;
    return static_cast<std::uint64_t>(id);
}

Key SimpleSelector::select_in(std::uint64_t a, std::uint64_t b, std::uint64_t s) {
    while (!marks_.test(s)) {
        const std::uint64_t lo = a + 1, hi = b - 1;
        std::uint64_t j;
        if (lo == hi) {
            j = lo;  // single stranded element is already in place
        } else {
            PivotChoice pc = choose_pivot(lo, hi);
            j = partition(lo, hi, pc.index);
        }
        mark_pivot_event(a, b, j);
        if (s < j)
            b = j;
        else if (s > j)
            a = j;
    }
    return a_[s];
}

Key SimpleSelector::select(std::uint64_t s) {
    if (s < 1 || s > n()) throw std::out_of_range("select: rank out of range");
    query_ranks_.push_back(s);
    if (marks_.test(s)) return a_[s];
    return select_in(marks_.prev_marked(s), marks_.next_marked(s), s);
}

std::uint64_t SimpleSelector::positional_probe(Key p) {
    // Binary search "as if sorted": positional midpoints routed by value,
    // aborted at the midpoint when the current endpoints betray disorder.
    PhaseLess less(*ledger_, Phase::search);
    std::uint64_t lo = 1, hi = n();
    while (lo < hi) {
        if (less(a_[hi], a_[lo])) return (lo + hi) / 2;
        const std::uint64_t mid = (lo + hi) / 2;
        if (less(a_[mid], p))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

SearchOutcome SimpleSelector::search(Key p) {
    ++searches_;
    const std::uint64_t n = this->n();
    PhaseLess less(*ledger_, Phase::search);
    // Global-bound quick outs; positions 1 and n are marked min/max.
    if (less(p, a_[1])) {
        query_ranks_.push_back(1);
        return {0, false};
    }
    if (!less(a_[1], p)) {
        query_ranks_.push_back(1);
        return {1, true};
    }
    if (less(a_[n], p)) {
        query_ranks_.push_back(n);
        return {n, false};
    }
    // Positional probe: cheap when the array is nearly sorted, and the
    // mandated first phase regardless.  Its landing spot is only a hint, so
    // the answer is derived from the marked bracket established below.
    (void)positional_probe(p);

    // Bisect over marked positions (sorted by value) to find consecutive
    // marks a < b with A[a] < p <= A[b] and no mark strictly between.
    std::uint64_t a = 1, b = n;  // invariants: A[a] < p <= A[b]
    while (b - a > 1) {
        const std::uint64_t mid = (a + b) / 2;
        std::uint64_t m = marks_.next_marked_or_end(mid);
        if (m >= b) {
            m = marks_.prev_marked_or_begin(mid);
            if (m <= a) break;  // no marks strictly inside (a, b)
        }
        if (less(a_[m], p))
            a = m;
        else
            b = m;
    }
    // Value-guided selection inside the single unmarked interval (a, b).
    while (b - a > 1) {
        const std::uint64_t lo = a + 1, hi = b - 1;
        std::uint64_t j;
        if (lo == hi) {
            j = lo;
        } else {
            PivotChoice pc = choose_pivot(lo, hi);
            j = partition(lo, hi, pc.index);
        }
        mark_pivot_event(a, b, j);
        if (less(a_[j], p))
            a = j;
        else
            b = j;
    }
    // Now ranks 1..a are < p and ranks b..n are >= p.
    if (!less(p, a_[b])) {
        query_ranks_.push_back(b);
        return {b, true};  // A[b] == p, and it is the leftmost occurrence
    }
    query_ranks_.push_back(a);
    return {a, false};
}

PivotSet SimpleSelector::pivot_set() const {
    return {n(), marks_.positions()};
}

QuerySet SimpleSelector::query_set() const {
    QuerySet q(n());
    for (std::uint64_t r : query_ranks_) q.add(r);
    return q;
}

}  // namespace lazysort
