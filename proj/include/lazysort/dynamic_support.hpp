#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "lazysort/bitvec.hpp"
#include "lazysort/core.hpp"

namespace lazysort {

/// Everything a base selector needs to rebuild itself around pending updates
/// without comparing elements: which base ranks died, and the inserted values
/// (already pinned to their base-rank gaps, sorted within each gap).
struct RebuildPlan {
    /// dead->test(r) == true iff the base element of rank r was deleted.
    const DynamicBitvector* dead = nullptr;
    /// gap rank r (0..base n) -> values that sort between base ranks r and r+1.
    std::map<std::uint64_t, std::vector<Key>> attachments;
    /// Expected size after the rebuild (sanity-checked by implementations).
    std::uint64_t new_size = 0;
};

/// Balanced tree over inserted elements, indexed by inorder position.
/// Positional operations never compare element values; value lookups within
/// a window use explicit counted comparisons.  Each node also remembers the
/// base-rank gap its value was pinned to at insert time (for rebuilds).
class OrderTree {
public:
    explicit OrderTree(std::uint64_t seed = 0x9e3779b97f4a7c15ULL);
    ~OrderTree();
    OrderTree(const OrderTree&) = delete;
    OrderTree& operator=(const OrderTree&) = delete;
    OrderTree(OrderTree&& o) noexcept;
    OrderTree& operator=(OrderTree&& o) noexcept;

    std::uint64_t size() const noexcept { return count_; }

    /// Insert v so it becomes inorder position pos (1 <= pos <= size()+1).
    void insert_at(std::uint64_t pos, Key v, std::uint64_t gap_rank);
    void erase_at(std::uint64_t pos);
    Key value_at(std::uint64_t pos) const;
    std::uint64_t gap_at(std::uint64_t pos) const;

    /// Number of values <= v (resp. < v) among inorder positions [l, r].
    /// The window must be sorted by value, which holds for the logical-order
    /// use here; comparisons are charged through `less`.
    std::uint64_t count_leq_in(std::uint64_t l, std::uint64_t r, Key v, PhaseLess less) const;
    std::uint64_t count_less_in(std::uint64_t l, std::uint64_t r, Key v, PhaseLess less) const;

    /// Inorder traversal: f(value, gap_rank).
    template <class F>
    void for_each(F&& f) const {
        walk(root_, f);
    }

    void clear();

private:
    struct Node {
        Key v;
        std::uint64_t gap;
        std::uint64_t prio;
        std::uint64_t size;
        Node* l;
        Node* r;
    };
    static std::uint64_t size_of(const Node* t) noexcept { return t ? t->size : 0; }
    static void pull(Node* t) noexcept { t->size = 1 + size_of(t->l) + size_of(t->r); }
    static Node* merge(Node* a, Node* b);
    static void split(Node* t, std::uint64_t k, Node*& a, Node*& b);  // a gets k nodes
    static void free_tree(Node* t);
    const Node* node_at(std::uint64_t pos) const;

    template <class F>
    static void walk(const Node* t, F&& f) {
        if (!t) return;
        walk(t->l, f);
        f(t->v, t->gap);
        walk(t->r, f);
    }

    Node* root_ = nullptr;
    std::uint64_t count_ = 0;
    std::mt19937_64 rng_;
};

}  // namespace lazysort
