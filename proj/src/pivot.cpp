#include "lazysort/pivot.hpp"

#include <cmath>

namespace lazysort {

Key exact_median(std::span<const Key> interval, PhaseLess less) {
    if (interval.empty()) throw std::invalid_argument("exact_median: empty interval");
    return select_nth<Key>(interval, (interval.size() + 1) / 2, less);
}

SamplePlan theorem_sample_plan(std::uint64_t delta, std::uint64_t n) {
    SamplePlan p;
    p.delta = delta;
    p.n = n;
    if (n < 2 || delta < 2) return p;  // logs degenerate; invalid
    const double lgn = std::log2(static_cast<double>(n));
    const double lgd = std::log2(static_cast<double>(delta));
    p.m = static_cast<std::uint64_t>(std::ceil(6.0 * lgn * lgn * lgn * lgd * lgd));
    p.t = static_cast<std::uint64_t>(std::ceil(4.0 * lgn * lgn * lgd));
    p.valid = p.m >= 1 && p.m < delta;
    return p;
}

SamplePlan scaled_sample_plan(std::uint64_t delta, std::uint64_t m, std::uint64_t t) {
    SamplePlan p;
    p.delta = delta;
    p.m = m;
    p.t = t;
    p.valid = m >= 1 && m < delta;
    return p;
}

IdxKey sample_median_indexed(std::span<const Key> interval, std::uint64_t base_index,
                             std::mt19937_64& rng, const SamplePlan& plan, PhaseLess less) {
    if (!plan.valid) throw std::invalid_argument("sample_median: invalid plan");
    if (plan.delta != interval.size())
        throw std::invalid_argument("sample_median: plan sized for a different interval");
    std::uniform_int_distribution<std::size_t> pick(0, interval.size() - 1);
    std::vector<IdxKey> sample;
    sample.reserve(2 * plan.m);
    for (std::uint64_t i = 0; i < 2 * plan.m; ++i) {
        const std::size_t off = pick(rng);
        sample.push_back({interval[off], base_index + off});
    }
    return select_nth<IdxKey>(sample, plan.m,
                              [&](const IdxKey& x, const IdxKey& y) { return less(x.v, y.v); });
}

Key sample_median(std::span<const Key> interval, std::mt19937_64& rng, const SamplePlan& plan,
                  PhaseLess less) {
    return sample_median_indexed(interval, 0, rng, plan, less).v;
}

double binomial_tail_bound(std::uint64_t m, std::uint64_t t) {
    if (t >= m) throw std::invalid_argument("binomial_tail_bound: requires t < m");
    const double md = static_cast<double>(m), td = static_cast<double>(t);
    // Work in log2 space so huge m does not overflow before the decay kicks in.
    const double log2e = 1.4426950408889634;
    return std::exp2((2.0 * md - 1.0) - td * td / (md + td) * log2e);
}

double good_pivot_certificate(std::span<const PivotNode> nodes, double c) {
    if (!(c > 0.0 && c < 1.0))
        throw std::invalid_argument("good_pivot_certificate: c must be in (0,1)");
    double worst = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        std::int64_t i = nodes[j].parent;
        while (i >= 0) {
            const PivotNode& anc = nodes[static_cast<std::size_t>(i)];
            const double denom = static_cast<double>(anc.len) *
                                 std::pow(c, static_cast<double>(nodes[j].depth - anc.depth));
            if (denom > 0.0)
                worst = std::max(worst, static_cast<double>(nodes[j].len) / denom);
            i = anc.parent;
        }
    }
    return worst;
}

}  // namespace lazysort
