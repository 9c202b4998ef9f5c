#include "lazysort/bitvec.hpp"

#include <bit>
#include <stdexcept>

namespace lazysort {

// ---------------------------------------------------------------------------
// MarkBitvector
// ---------------------------------------------------------------------------

MarkBitvector::MarkBitvector(std::uint64_t n) : n_(n), words_((n + 63) / 64, 0) {}

void MarkBitvector::set(std::uint64_t i) {
    if (i < 1 || i > n_) throw std::out_of_range("MarkBitvector::set: position out of range");
    std::uint64_t b = i - 1;
    std::uint64_t mask = 1ULL << (b & 63);
    if (!(words_[b >> 6] & mask)) {
        words_[b >> 6] |= mask;
        ++count_;
    }
}

bool MarkBitvector::test(std::uint64_t i) const {
    if (i < 1 || i > n_) throw std::out_of_range("MarkBitvector::test: position out of range");
    std::uint64_t b = i - 1;
    return (words_[b >> 6] >> (b & 63)) & 1;
}

std::uint64_t MarkBitvector::rank1(std::uint64_t i) const {
    if (i > n_) throw std::out_of_range("MarkBitvector::rank1: position out of range");
    std::uint64_t r = 0, full = i >> 6;
    for (std::uint64_t wi = 0; wi < full; ++wi) r += std::popcount(words_[wi]);
    std::uint64_t rem = i & 63;
    if (rem) r += std::popcount(words_[full] & ((1ULL << rem) - 1));
    return r;
}

std::uint64_t MarkBitvector::next_marked_or_end(std::uint64_t i) const {
    if (i < 1) i = 1;
    if (i > n_) return n_ + 1;
    std::uint64_t b = i - 1;
    std::uint64_t wi = b >> 6;
    std::uint64_t w = words_[wi] & (~0ULL << (b & 63));
    while (true) {
        if (w) return (wi << 6) + static_cast<std::uint64_t>(std::countr_zero(w)) + 1;
        if (++wi >= words_.size()) return n_ + 1;
        w = words_[wi];
    }
}

std::uint64_t MarkBitvector::prev_marked_or_begin(std::uint64_t i) const {
    if (i > n_) i = n_;
    if (i < 1) return 0;
    std::uint64_t b = i - 1;
    std::uint64_t wi = b >> 6;
    std::uint64_t off = b & 63;
    std::uint64_t w = words_[wi] & (off == 63 ? ~0ULL : ((1ULL << (off + 1)) - 1));
    while (true) {
        if (w) return (wi << 6) + (63 - static_cast<std::uint64_t>(std::countl_zero(w))) + 1;
        if (wi == 0) return 0;
        w = words_[--wi];
    }
}

std::uint64_t MarkBitvector::next_marked(std::uint64_t i) const {
    std::uint64_t j = next_marked_or_end(i);
    if (j > n_) throw std::out_of_range("MarkBitvector::next_marked: no mark at or after position");
    return j;
}

std::uint64_t MarkBitvector::prev_marked(std::uint64_t i) const {
    std::uint64_t j = prev_marked_or_begin(i);
    if (j == 0) throw std::out_of_range("MarkBitvector::prev_marked: no mark at or before position");
    return j;
}

std::vector<std::uint64_t> MarkBitvector::positions() const {
    std::vector<std::uint64_t> out;
    out.reserve(count_);
    for (std::uint64_t wi = 0; wi < words_.size(); ++wi) {
        std::uint64_t w = words_[wi];
        while (w) {
            out.push_back((wi << 6) + static_cast<std::uint64_t>(std::countr_zero(w)) + 1);
            w &= w - 1;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// DynamicBitvector
// ---------------------------------------------------------------------------

namespace detail {
namespace {

bool leaf_get(const DBNode& nd, std::uint64_t pos) {
    return (nd.w[pos >> 6] >> (pos & 63)) & 1;
}

// Insert bit b at 0-based pos in [0, len], shifting [pos, len) up one.
// Requires len < kLeafBits.  Preserves the zero-padding invariant.
void leaf_insert_bit(DBNode& nd, std::uint64_t pos, bool b) {
    std::uint64_t* w = nd.w.data();
    std::uint64_t len = nd.len;
    std::uint64_t wi = pos >> 6, off = pos & 63, last = len >> 6;
    std::uint64_t carry = (w[wi] >> 63) & 1;
    std::uint64_t low_mask = off ? ((1ULL << off) - 1) : 0ULL;
    w[wi] = (w[wi] & low_mask) | ((w[wi] & ~low_mask) << 1) |
            (static_cast<std::uint64_t>(b) << off);
    for (std::uint64_t i = wi + 1; i <= last && i < kLeafWords; ++i) {
        std::uint64_t c2 = (w[i] >> 63) & 1;
        w[i] = (w[i] << 1) | carry;
        carry = c2;
    }
    nd.len = static_cast<std::uint32_t>(len + 1);
}

// Erase the bit at 0-based pos in [0, len); shifts [pos+1, len) down one.
void leaf_erase_bit(DBNode& nd, std::uint64_t pos) {
    std::uint64_t* w = nd.w.data();
    std::uint64_t len = nd.len;
    std::uint64_t wi = pos >> 6, off = pos & 63, last = (len - 1) >> 6;
    std::uint64_t low_mask = off ? ((1ULL << off) - 1) : 0ULL;
    std::uint64_t upper = (off == 63) ? 0 : ((w[wi] >> (off + 1)) << off);
    w[wi] = (w[wi] & low_mask) | upper;
    for (std::uint64_t i = wi; i < last; ++i) {
        w[i] |= (w[i + 1] & 1) << 63;
        w[i + 1] >>= 1;
    }
    nd.len = static_cast<std::uint32_t>(len - 1);
}

void leaf_append_bit(DBNode& nd, bool b) {
    if (b) nd.w[nd.len >> 6] |= 1ULL << (nd.len & 63);
    nd.len += 1;
}

std::uint64_t node_bits(const DBNode& nd) {
    if (nd.leaf) return nd.len;
    std::uint64_t s = 0;
    for (std::uint64_t b : nd.kbits) s += b;
    return s;
}

std::uint64_t node_ones(const DBNode& nd) {
    if (nd.leaf) {
        std::uint64_t s = 0;
        for (std::uint64_t x : nd.w) s += std::popcount(x);
        return s;
    }
    std::uint64_t s = 0;
    for (std::uint64_t o : nd.kones) s += o;
    return s;
}

// Split a full leaf in half; returns the new right sibling.
std::unique_ptr<DBNode> split_leaf(DBNode& nd) {
    auto right = std::make_unique<DBNode>();
    std::uint32_t half = nd.len / 2;
    for (std::uint32_t i = half; i < nd.len; ++i)
        leaf_append_bit(*right, leaf_get(nd, i));
    // Clear the moved upper bits.
    for (std::uint32_t i = half; i < nd.len; ++i)
        nd.w[i >> 6] &= ~(1ULL << (i & 63));
    nd.len = half;
    return right;
}

std::unique_ptr<DBNode> split_internal(DBNode& nd) {
    auto right = std::make_unique<DBNode>();
    right->leaf = false;
    std::size_t half = nd.kids.size() / 2;
    for (std::size_t i = half; i < nd.kids.size(); ++i) {
        right->kids.push_back(std::move(nd.kids[i]));
        right->kbits.push_back(nd.kbits[i]);
        right->kones.push_back(nd.kones[i]);
    }
    nd.kids.resize(half);
    nd.kbits.resize(half);
    nd.kones.resize(half);
    return right;
}

// May return a new right sibling when nd splits.
std::unique_ptr<DBNode> insert_rec(DBNode& nd, std::uint64_t pos, bool b) {
    if (nd.leaf) {
        if (nd.len == kLeafBits) {
            auto right = split_leaf(nd);
            if (pos > nd.len)
                leaf_insert_bit(*right, pos - nd.len, b);
            else
                leaf_insert_bit(nd, pos, b);
            return right;
        }
        leaf_insert_bit(nd, pos, b);
        return nullptr;
    }
    // Route: the new bit lands in the first child whose prefix can absorb it.
    std::size_t c = 0;
    while (c + 1 < nd.kids.size() && pos > nd.kbits[c]) {
        pos -= nd.kbits[c];
        ++c;
    }
    auto sib = insert_rec(*nd.kids[c], pos, b);
    if (sib) {
        nd.kbits[c] = node_bits(*nd.kids[c]);
        nd.kones[c] = node_ones(*nd.kids[c]);
        nd.kbits.insert(nd.kbits.begin() + c + 1, node_bits(*sib));
        nd.kones.insert(nd.kones.begin() + c + 1, node_ones(*sib));
        nd.kids.insert(nd.kids.begin() + c + 1, std::move(sib));
        if (nd.kids.size() > kMaxKids) return split_internal(nd);
    } else {
        nd.kbits[c] += 1;
        nd.kones[c] += b ? 1 : 0;
    }
    return nullptr;
}

// Rebuild two adjacent leaves' bits either merged into `left` (right emptied)
// or split evenly across both.
void leaf_merge_or_share(DBNode& left, DBNode& right, bool merge) {
    std::vector<bool> bits;
    bits.reserve(left.len + right.len);
    for (std::uint32_t i = 0; i < left.len; ++i) bits.push_back(leaf_get(left, i));
    for (std::uint32_t i = 0; i < right.len; ++i) bits.push_back(leaf_get(right, i));
    left.w.fill(0);
    left.len = 0;
    right.w.fill(0);
    right.len = 0;
    std::size_t split = merge ? bits.size() : bits.size() / 2;
    for (std::size_t i = 0; i < split; ++i) leaf_append_bit(left, bits[i]);
    for (std::size_t i = split; i < bits.size(); ++i) leaf_append_bit(right, bits[i]);
}

void refresh_slot(DBNode& parent, std::size_t c) {
    parent.kbits[c] = node_bits(*parent.kids[c]);
    parent.kones[c] = node_ones(*parent.kids[c]);
}

void drop_slot(DBNode& parent, std::size_t c) {
    parent.kids.erase(parent.kids.begin() + c);
    parent.kbits.erase(parent.kbits.begin() + c);
    parent.kones.erase(parent.kones.begin() + c);
}

bool underfull(const DBNode& nd) {
    return nd.leaf ? nd.len < kLeafMin : nd.kids.size() < kMinKids;
}

// Fix an underfull child c by merging with or borrowing from a neighbor.
void rebalance_child(DBNode& parent, std::size_t c) {
    if (parent.kids.size() < 2) return;  // nothing to balance against
    std::size_t l = (c > 0) ? c - 1 : c;
    std::size_t r = l + 1;
    DBNode& left = *parent.kids[l];
    DBNode& right = *parent.kids[r];
    if (left.leaf) {
        bool merge = left.len + right.len <= kLeafBits * 3 / 4;
        leaf_merge_or_share(left, right, merge);
        if (merge) {
            drop_slot(parent, r);
            refresh_slot(parent, l);
        } else {
            refresh_slot(parent, l);
            refresh_slot(parent, r);
        }
        return;
    }
    if (left.kids.size() + right.kids.size() <= kMaxKids * 3 / 4) {
        for (std::size_t i = 0; i < right.kids.size(); ++i) {
            left.kids.push_back(std::move(right.kids[i]));
            left.kbits.push_back(right.kbits[i]);
            left.kones.push_back(right.kones[i]);
        }
        drop_slot(parent, r);
        refresh_slot(parent, l);
        return;
    }
    // Borrow children to even the pair out.
    while (left.kids.size() + 1 < right.kids.size()) {
        left.kids.push_back(std::move(right.kids.front()));
        left.kbits.push_back(right.kbits.front());
        left.kones.push_back(right.kones.front());
        right.kids.erase(right.kids.begin());
        right.kbits.erase(right.kbits.begin());
        right.kones.erase(right.kones.begin());
    }
    while (right.kids.size() + 1 < left.kids.size()) {
        right.kids.insert(right.kids.begin(), std::move(left.kids.back()));
        right.kbits.insert(right.kbits.begin(), left.kbits.back());
        right.kones.insert(right.kones.begin(), left.kones.back());
        left.kids.pop_back();
        left.kbits.pop_back();
        left.kones.pop_back();
    }
    refresh_slot(parent, l);
    refresh_slot(parent, r);
}

bool erase_rec(DBNode& nd, std::uint64_t pos) {
    if (nd.leaf) {
        bool bit = leaf_get(nd, pos);
        leaf_erase_bit(nd, pos);
        return bit;
    }
    std::size_t c = 0;
    while (pos >= nd.kbits[c]) {
        pos -= nd.kbits[c];
        ++c;
    }
    bool bit = erase_rec(*nd.kids[c], pos);
    nd.kbits[c] -= 1;
    nd.kones[c] -= bit ? 1 : 0;
    if (underfull(*nd.kids[c])) rebalance_child(nd, c);
    return bit;
}

int flip_rec(DBNode& nd, std::uint64_t pos) {
    if (nd.leaf) {
        nd.w[pos >> 6] ^= 1ULL << (pos & 63);
        return leaf_get(nd, pos) ? 1 : -1;
    }
    std::size_t c = 0;
    while (pos >= nd.kbits[c]) {
        pos -= nd.kbits[c];
        ++c;
    }
    int d = flip_rec(*nd.kids[c], pos);
    nd.kones[c] += d;
    return d;
}

bool get_rec(const DBNode& nd, std::uint64_t pos) {
    const DBNode* cur = &nd;
    while (!cur->leaf) {
        std::size_t c = 0;
        while (pos >= cur->kbits[c]) {
            pos -= cur->kbits[c];
            ++c;
        }
        cur = cur->kids[c].get();
    }
    return leaf_get(*cur, pos);
}

// Ones among the first k bits of the subtree.
std::uint64_t rank1_rec(const DBNode& nd, std::uint64_t k) {
    const DBNode* cur = &nd;
    std::uint64_t r = 0;
    while (!cur->leaf) {
        std::size_t c = 0;
        while (k > cur->kbits[c]) {
            k -= cur->kbits[c];
            r += cur->kones[c];
            ++c;
        }
        cur = cur->kids[c].get();
    }
    std::uint64_t full = k >> 6;
    for (std::uint64_t i = 0; i < full; ++i) r += std::popcount(cur->w[i]);
    std::uint64_t rem = k & 63;
    if (rem) r += std::popcount(cur->w[full] & ((1ULL << rem) - 1));
    return r;
}

std::uint64_t select_in_word(std::uint64_t w, std::uint64_t k) {
    while (true) {
        std::uint64_t b = static_cast<std::uint64_t>(std::countr_zero(w));
        if (--k == 0) return b;
        w &= w - 1;
    }
}

// 0-based position of the k-th one (k >= 1) in the subtree.
std::uint64_t select1_rec(const DBNode& nd, std::uint64_t k) {
    const DBNode* cur = &nd;
    std::uint64_t base = 0;
    while (!cur->leaf) {
        std::size_t c = 0;
        while (k > cur->kones[c]) {
            k -= cur->kones[c];
            base += cur->kbits[c];
            ++c;
        }
        cur = cur->kids[c].get();
    }
    for (std::uint64_t i = 0; i < kLeafWords; ++i) {
        std::uint64_t pc = std::popcount(cur->w[i]);
        if (k <= pc) return base + (i << 6) + select_in_word(cur->w[i], k);
        k -= pc;
    }
    throw std::logic_error("DynamicBitvector: select1 internal overrun");
}

std::uint64_t select0_rec(const DBNode& nd, std::uint64_t k) {
    const DBNode* cur = &nd;
    std::uint64_t base = 0;
    while (!cur->leaf) {
        std::size_t c = 0;
        while (k > cur->kbits[c] - cur->kones[c]) {
            k -= cur->kbits[c] - cur->kones[c];
            base += cur->kbits[c];
            ++c;
        }
        cur = cur->kids[c].get();
    }
    for (std::uint64_t i = 0; i < kLeafWords; ++i) {
        std::uint64_t valid = (cur->len > (i << 6)) ? std::min<std::uint64_t>(64, cur->len - (i << 6)) : 0;
        if (valid == 0) break;
        std::uint64_t mask = (valid == 64) ? ~0ULL : ((1ULL << valid) - 1);
        std::uint64_t inv = ~cur->w[i] & mask;
        std::uint64_t pc = std::popcount(inv);
        if (k <= pc) return base + (i << 6) + select_in_word(inv, k);
        k -= pc;
    }
    throw std::logic_error("DynamicBitvector: select0 internal overrun");
}

struct CheckResult {
    std::uint64_t bits;
    std::uint64_t ones;
    std::uint64_t depth;
};

CheckResult check_rec(const DBNode& nd) {
    if (nd.leaf) {
        if (nd.len > kLeafBits) throw std::logic_error("bitvector check: leaf overflow");
        if (!nd.kids.empty()) throw std::logic_error("bitvector check: leaf has children");
        // Padding beyond len must be zero.
        for (std::uint32_t i = nd.len; i < kLeafBits; ++i)
            if (leaf_get(nd, i)) throw std::logic_error("bitvector check: dirty leaf padding");
        return {nd.len, node_ones(nd), 1};
    }
    if (nd.kids.empty() || nd.kids.size() > kMaxKids)
        throw std::logic_error("bitvector check: bad internal fanout");
    if (nd.kbits.size() != nd.kids.size() || nd.kones.size() != nd.kids.size())
        throw std::logic_error("bitvector check: cache arrays out of sync");
    CheckResult total{0, 0, 0};
    for (std::size_t c = 0; c < nd.kids.size(); ++c) {
        CheckResult kid = check_rec(*nd.kids[c]);
        if (kid.bits != nd.kbits[c] || kid.ones != nd.kones[c])
            throw std::logic_error("bitvector check: stale subtree cache");
        if (total.depth == 0) total.depth = kid.depth;
        if (kid.depth != total.depth) throw std::logic_error("bitvector check: uneven leaf depth");
        total.bits += kid.bits;
        total.ones += kid.ones;
    }
    total.depth += 1;
    return total;
}

}  // namespace
}  // namespace detail

DynamicBitvector::DynamicBitvector(std::uint64_t n) : size_(n), ones_(0) {
    using namespace detail;
    // Build all-zero leaves, then parent layers of balanced fanout.
    std::vector<std::unique_ptr<DBNode>> level;
    std::uint64_t remaining = n;
    do {
        auto leaf = std::make_unique<DBNode>();
        leaf->len = static_cast<std::uint32_t>(std::min<std::uint64_t>(remaining, kLeafBits));
        remaining -= leaf->len;
        level.push_back(std::move(leaf));
    } while (remaining > 0);
    while (level.size() > 1) {
        std::vector<std::unique_ptr<DBNode>> next;
        std::size_t groups = (level.size() + kMaxKids - 1) / kMaxKids;
        std::size_t base = level.size() / groups, extra = level.size() % groups;
        std::size_t at = 0;
        for (std::size_t g = 0; g < groups; ++g) {
            std::size_t take = base + (g < extra ? 1 : 0);
            auto nd = std::make_unique<DBNode>();
            nd->leaf = false;
            for (std::size_t i = 0; i < take; ++i) {
                nd->kbits.push_back(node_bits(*level[at]));
                nd->kones.push_back(0);
                nd->kids.push_back(std::move(level[at]));
                ++at;
            }
            next.push_back(std::move(nd));
        }
        level = std::move(next);
    }
    root_ = std::move(level.front());
}

bool DynamicBitvector::test(std::uint64_t i) const {
    if (i < 1 || i > size_) throw std::out_of_range("DynamicBitvector::test: position out of range");
    return detail::get_rec(*root_, i - 1);
}

bool DynamicBitvector::flip(std::uint64_t i) {
    if (i < 1 || i > size_) throw std::out_of_range("DynamicBitvector::flip: position out of range");
    int d = detail::flip_rec(*root_, i - 1);
    ones_ += d;
    return d > 0;
}

void DynamicBitvector::insert(std::uint64_t i, bool b) {
    if (i < 1 || i > size_ + 1)
        throw std::out_of_range("DynamicBitvector::insert: position out of range");
    auto sib = detail::insert_rec(*root_, i - 1, b);
    if (sib) {
        auto new_root = std::make_unique<detail::DBNode>();
        new_root->leaf = false;
        new_root->kbits = {detail::node_bits(*root_), detail::node_bits(*sib)};
        new_root->kones = {detail::node_ones(*root_), detail::node_ones(*sib)};
        new_root->kids.push_back(std::move(root_));
        new_root->kids.push_back(std::move(sib));
        root_ = std::move(new_root);
    }
    ++size_;
    if (b) ++ones_;
}

bool DynamicBitvector::erase(std::uint64_t i) {
    if (i < 1 || i > size_) throw std::out_of_range("DynamicBitvector::erase: position out of range");
    bool bit = detail::erase_rec(*root_, i - 1);
    --size_;
    if (bit) --ones_;
    while (!root_->leaf && root_->kids.size() == 1) root_ = std::move(root_->kids.front());
    return bit;
}

std::uint64_t DynamicBitvector::rank1(std::uint64_t i) const {
    if (i > size_) throw std::out_of_range("DynamicBitvector::rank1: position out of range");
    if (i == 0) return 0;
    return detail::rank1_rec(*root_, i);
}

std::uint64_t DynamicBitvector::rank0(std::uint64_t i) const {
    return i - rank1(i);
}

std::uint64_t DynamicBitvector::select1(std::uint64_t k) const {
    if (k < 1 || k > ones_) throw std::out_of_range("DynamicBitvector::select1: rank out of range");
    return detail::select1_rec(*root_, k) + 1;
}

std::uint64_t DynamicBitvector::select0(std::uint64_t k) const {
    if (k < 1 || k > size_ - ones_)
        throw std::out_of_range("DynamicBitvector::select0: rank out of range");
    return detail::select0_rec(*root_, k) + 1;
}

void DynamicBitvector::check_consistency() const {
    detail::CheckResult r = detail::check_rec(*root_);
    if (r.bits != size_) throw std::logic_error("bitvector check: size mismatch");
    if (r.ones != ones_) throw std::logic_error("bitvector check: ones mismatch");
    if (!root_->leaf && root_->kids.size() < 2)
        throw std::logic_error("bitvector check: degenerate root");
}

std::string DynamicBitvector::to_string() const {
    std::string s;
    s.reserve(size_);
    for (std::uint64_t i = 1; i <= size_; ++i) s.push_back(test(i) ? '1' : '0');
    return s;
}

}  // namespace lazysort
