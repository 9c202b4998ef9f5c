#include "lazysort/core.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace lazysort {

namespace {
// Prefix sums of log2(i): table[k] = log2(k!).  Grown on demand under a
// lock; reads of filled entries are safe because the vector is only ever
// appended to while the lock is held and readers re-check under the lock.
std::mutex g_fact_mutex;
std::vector<double> g_log2_fact = {0.0, 0.0};  // 0! = 1! = 1
}  // namespace

double log2_factorial(std::uint64_t k) {
    std::lock_guard<std::mutex> lock(g_fact_mutex);
    while (g_log2_fact.size() <= k) {
        std::uint64_t i = g_log2_fact.size();
        g_log2_fact.push_back(g_log2_fact.back() + std::log2(static_cast<double>(i)));
    }
    return g_log2_fact[k];
}

QuerySet::QuerySet(std::uint64_t n) : n_(n) {}

void QuerySet::add(std::uint64_t i) {
    if (i < 1 || i > n_) throw std::out_of_range("QuerySet::add: rank out of range");
    pos_.push_back(i);
    dirty_ = true;
}

void QuerySet::normalize() const {
    if (!dirty_) return;
    std::sort(pos_.begin(), pos_.end());
    pos_.erase(std::unique(pos_.begin(), pos_.end()), pos_.end());
    dirty_ = false;
}

std::uint64_t QuerySet::size() const {
    normalize();
    return pos_.size();
}

const std::vector<std::uint64_t>& QuerySet::positions() const {
    normalize();
    return pos_;
}

std::vector<std::uint64_t> QuerySet::gaps() const {
    normalize();
    std::vector<std::uint64_t> g;
    g.reserve(pos_.size() + 1);
    std::uint64_t prev = 0;
    for (std::uint64_t s : pos_) {
        g.push_back(s - prev);
        prev = s;
    }
    g.push_back(n_ - prev);
    return g;
}

double entropy_lower_bound(const QuerySet& q) {
    double b = log2_factorial(q.n());
    for (std::uint64_t d : q.gaps()) b -= log2_factorial(d);
    return std::max(b, 0.0);
}

double io_lower_bound(const QuerySet& q, std::uint64_t block_size, std::uint64_t mem_blocks) {
    if (block_size < 1) throw std::invalid_argument("io_lower_bound: block size must be >= 1");
    if (mem_blocks < 2) throw std::invalid_argument("io_lower_bound: need at least 2 memory blocks");
    const double m = static_cast<double>(mem_blocks);
    const double log2m = std::log2(m);
    // x is a length in elements; its cost term is (x/B) * log_m(x/B),
    // zeroed whenever the block count x/B is at most m.
    auto term = [&](std::uint64_t x) -> double {
        double blocks = static_cast<double>(x) / static_cast<double>(block_size);
        if (blocks <= m) return 0.0;
        return blocks * std::log2(blocks) / log2m;
    };
    double b = term(q.n());
    for (std::uint64_t d : q.gaps()) b -= term(d);
    return std::max(b, 0.0);
}

}  // namespace lazysort
