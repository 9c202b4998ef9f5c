#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lazysort/core.hpp"

namespace lazysort {

/// A key bundled with the index it came from, so pivot selection can report
/// which array slot (or run) supplied the winning value.
struct IdxKey {
    Key v;
    std::uint64_t idx;
};

namespace detail {

/// Payload plus the id of the group-of-5 it represents at one selection level.
template <class T>
struct Tagged {
    T v;
    std::uint32_t grp;
};

/// Rearranges p[0..4] so that p[2] is the median, p[0], p[1] <= p[2], and
/// p[3], p[4] >= p[2], using exactly 6 comparisons.  The side guarantees are
/// what lets the surrounding selection skip most partition comparisons.
template <class T, class Less>
void med5(T* p, Less less) {
    auto lt = [&](int i, int j) { return less(p[i], p[j]); };
    auto sw = [&](int i, int j) { std::swap(p[i], p[j]); };
    if (lt(1, 0)) sw(0, 1);
    if (lt(3, 2)) sw(2, 3);
    if (lt(2, 0)) {  // make p0 the smaller pair-minimum; swap pairs wholesale
        sw(0, 2);
        sw(1, 3);
    }
    // Here p0 <= p1, p0 <= p2 <= p3, so p0 can never be the median.
    if (lt(4, 1)) sw(1, 4);
    // Here p1 <= p4; the median is the smaller-but-one of {p1, p2, p3, p4}.
    if (lt(1, 2)) {
        if (lt(4, 2)) sw(2, 4);  // median p4: [p0, p1, p4, p3, p2]
        // else median p2: identity layout already correct
    } else {
        if (lt(3, 1)) {  // median p3: rotate to [p0, p2, p3, p1, p4]
            T t = std::move(p[1]);
            p[1] = std::move(p[2]);
            p[2] = std::move(p[3]);
            p[3] = std::move(t);
        } else {  // median p1: [p0, p2, p1, p3, p4]
            sw(1, 2);
        }
    }
}

template <class T, class Less>
void insertion_sort(T* a, std::size_t n, Less less) {
    for (std::size_t i = 1; i < n; ++i) {
        T x = std::move(a[i]);
        std::size_t j = i;
        while (j > 0 && less(x, a[j - 1])) {
            a[j] = std::move(a[j - 1]);
            --j;
        }
        a[j] = std::move(x);
    }
}

/// In-place selection of the element of rank `rank` (1-based) by groups-of-5
/// medians-of-medians.  Postcondition mirrors std::nth_element: a[rank-1] is
/// the rank-th smallest, everything left of it compares <=, everything right
/// compares >=.  `less` compares the T payloads.
///
/// The med5 side certificates and the recursive ordering of the medians
/// array classify 3 of every 5 elements against the pivot for free, so the
/// partition pass costs ~2 comparisons per group instead of 5.
template <class T, class Less>
void tagged_nth(std::vector<Tagged<T>>& a, std::size_t rank, Less less) {
    using E = Tagged<T>;
    auto eless = [&](const E& x, const E& y) { return less(x.v, y.v); };
    std::size_t lo = 0, hi = a.size();
    const std::size_t k = rank - 1;
    std::vector<E> left, right;
    while (true) {
        const std::size_t n = hi - lo;
        if (n <= 16) {
            insertion_sort(a.data() + lo, n, eless);
            return;
        }
        const std::size_t g = n / 5;
        std::vector<E> meds;
        meds.reserve(g + 1);
        for (std::size_t i = 0; i < g; ++i) {
            med5(a.data() + lo + 5 * i, eless);
            meds.push_back({a[lo + 5 * i + 2].v, static_cast<std::uint32_t>(i)});
        }
        const std::size_t tail = n - 5 * g;
        const std::size_t toff = tail ? (tail - 1) / 2 : 0;
        if (tail) {
            insertion_sort(a.data() + lo + 5 * g, tail, eless);
            meds.push_back({a[lo + 5 * g + toff].v, static_cast<std::uint32_t>(g)});
        }
        const std::size_t mrank = (meds.size() + 1) / 2;
        tagged_nth(meds, mrank, less);
        const T pv = meds[mrank - 1].v;
        const std::uint32_t pg = meds[mrank - 1].grp;
        // 0: group median <= pivot; 1: group median >= pivot; 2: pivot's group.
        std::vector<std::uint8_t> side(g + (tail ? 1 : 0));
        for (std::size_t j = 0; j < meds.size(); ++j)
            side[meds[j].grp] = (meds[j].grp == pg) ? 2 : (j < mrank - 1 ? 0 : 1);

        left.clear();
        right.clear();
        E pivot_elem{};
        auto goes_left = [&](E& x) { return !less(pv, x.v); };  // x <= pivot
        for (std::size_t gi = 0; gi < g; ++gi) {
            E* grp = a.data() + lo + 5 * gi;
            switch (side[gi]) {
                case 2:
                    left.push_back(std::move(grp[0]));
                    left.push_back(std::move(grp[1]));
                    pivot_elem = std::move(grp[2]);
                    right.push_back(std::move(grp[3]));
                    right.push_back(std::move(grp[4]));
                    break;
                case 0:
                    for (int i = 0; i < 3; ++i) left.push_back(std::move(grp[i]));
                    for (int i = 3; i < 5; ++i)
                        (goes_left(grp[i]) ? left : right).push_back(std::move(grp[i]));
                    break;
                default:
                    for (int i = 0; i < 2; ++i)
                        (goes_left(grp[i]) ? left : right).push_back(std::move(grp[i]));
                    for (int i = 2; i < 5; ++i) right.push_back(std::move(grp[i]));
            }
        }
        if (tail) {
            E* tp = a.data() + lo + 5 * g;  // sorted ascending
            const std::uint8_t s = side[g];
            for (std::size_t i = 0; i < tail; ++i) {
                if (s == 2) {
                    if (i < toff)
                        left.push_back(std::move(tp[i]));
                    else if (i == toff)
                        pivot_elem = std::move(tp[i]);
                    else
                        right.push_back(std::move(tp[i]));
                } else if (s == 0) {
                    if (i <= toff)
                        left.push_back(std::move(tp[i]));
                    else
                        (goes_left(tp[i]) ? left : right).push_back(std::move(tp[i]));
                } else {
                    if (i < toff)
                        (goes_left(tp[i]) ? left : right).push_back(std::move(tp[i]));
                    else
                        right.push_back(std::move(tp[i]));
                }
            }
        }
        std::size_t j = lo;
        for (auto& x : left) a[j++] = std::move(x);
        const std::size_t pslot = j;
        a[j++] = std::move(pivot_elem);
        for (auto& x : right) a[j++] = std::move(x);
        if (pslot == k) return;
        if (k < pslot)
            hi = pslot;
        else
            lo = pslot + 1;
    }
}

}  // namespace detail

/// Returns the element of rank `rank` (1-based) under `less`, by worst-case
/// linear-time selection.  The input is not modified.
template <class T, class Less>
T select_nth(std::span<const T> a, std::size_t rank, Less less) {
    if (rank < 1 || rank > a.size())
        throw std::invalid_argument("select_nth: rank out of range");
    std::vector<detail::Tagged<T>> tagged;
    tagged.reserve(a.size());
    for (const T& x : a) tagged.push_back({x, 0});
    detail::tagged_nth(tagged, rank, less);
    return tagged[rank - 1].v;
}

/// Element of rank ceil(len/2); comparisons charged through `less`.
Key exact_median(std::span<const Key> interval, PhaseLess less);

/// Sizing recipe for the sampled-pivot policy.  `m` is the half-sample size
/// (2m values are drawn) and `t` the rank slack the tail bound eats.
struct SamplePlan {
    std::uint64_t delta = 0;  ///< interval length the plan was sized for
    std::uint64_t n = 0;      ///< array length (0 for hand-scaled plans)
    std::uint64_t m = 0;      ///< half-sample size
    std::uint64_t t = 0;      ///< rank slack
    bool valid = false;       ///< m >= 1 and m < delta
};

/// Full-strength plan: m = 6*(log2 n)^3*(log2 delta)^2, t = 4*(log2 n)^2*log2 delta.
/// Valid only when the interval can absorb the sample (m < delta); at small
/// scales it rarely is, which is why scaled_sample_plan exists.
SamplePlan theorem_sample_plan(std::uint64_t delta, std::uint64_t n);

/// Hand-sized plan for experiments and for sampling at practical scales.
SamplePlan scaled_sample_plan(std::uint64_t delta, std::uint64_t m, std::uint64_t t = 0);

/// Median (rank m of the 2m draws) of a with-replacement uniform sample.
/// Throws std::invalid_argument if the plan is invalid or sized for a
/// different interval length; callers fall back to exact_median.
Key sample_median(std::span<const Key> interval, std::mt19937_64& rng, const SamplePlan& plan,
                  PhaseLess less);

/// Same draw, but reports which slot supplied the winning value so callers
/// can move a concrete pivot instance.  `base_index` offsets the reported
/// index into the caller's coordinates.
IdxKey sample_median_indexed(std::span<const Key> interval, std::uint64_t base_index,
                             std::mt19937_64& rng, const SamplePlan& plan, PhaseLess less);

/// Upper bound 2^{2m-1} * exp(-t^2/(m+t)) on the number of size-(2m) subsets
/// whose sample median misses the target window by rank slack t.
/// Requires 0 <= t < m.
double binomial_tail_bound(std::uint64_t m, std::uint64_t t);

/// One partition event in a selector's recursion: the interval length it
/// split and where it sits in the recursion tree.
struct PivotNode {
    std::int64_t parent = -1;  ///< index of the creating event, -1 for roots
    std::int32_t depth = 0;
    std::uint64_t len = 0;
};

/// Max over (ancestor i, descendant j) pairs of len_j / (len_i * c^(d_j-d_i)).
/// A pivot policy that shrinks intervals by factor c per level keeps this
/// bounded; adversarial policies blow it up.  Diagnostic only.
double good_pivot_certificate(std::span<const PivotNode> nodes, double c);

}  // namespace lazysort
