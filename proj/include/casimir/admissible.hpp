#pragma once

// Admissible subsets of the positive roots: order filters of the root poset,
// i.e. sets S such that x in S and x -> y (y = x + alpha_i) imply y in S.
//
// Roots are visited in the datum's order (height descending), so every arrow
// target precedes its source. A root can be taken only once all of its arrow
// targets are taken; skipping a root is always allowed. Each filter of size j
// corresponds to exactly one include/skip path, so the enumeration visits
// every filter of size <= j once and yields each size-j filter once.

#include <cstddef>
#include <iterator>
#include <vector>

#include "casimir/rootdata.hpp"

namespace casimir {

class AdmissibleSubsets {
public:
    AdmissibleSubsets(const RootDatum& d, std::size_t j) : d_(&d), j_(j) {}

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = std::vector<std::size_t>;
        using difference_type = std::ptrdiff_t;
        using pointer = const value_type*;
        using reference = const value_type&;

        iterator() = default;
        iterator(const RootDatum* d, std::size_t j) : d_(d), j_(j), taken_(d->positive_roots().size(), false) {
            done_ = !advance();
        }

        reference operator*() const { return chosen_; }
        pointer operator->() const { return &chosen_; }
        iterator& operator++() {
            done_ = !advance();
            return *this;
        }
        void operator++(int) { ++*this; }
        friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.done_; }

    private:
        bool takeable(std::size_t k) const {
            for (auto t : d_->arrows_from(k))
                if (!taken_[t]) return false;
            return true;
        }
        // Undo the last inclusion; the popped root counts as skipped from now on.
        bool backtrack() {
            if (chosen_.empty()) return false;
            std::size_t c = chosen_.back();
            chosen_.pop_back();
            taken_[c] = false;
            pos_ = c + 1;
            return true;
        }
        bool advance() {
            const std::size_t n = taken_.size();
            if (!started_) {
                started_ = true;
                if (j_ > n) return false;
            } else if (chosen_.size() == j_ && !backtrack()) {
                return false;
            }
            for (;;) {
                if (chosen_.size() == j_) return true;
                std::size_t k = pos_;
                if (j_ - chosen_.size() <= n - pos_)
                    while (k < n && !takeable(k)) ++k;
                else
                    k = n;
                if (k < n) {
                    taken_[k] = true;
                    chosen_.push_back(k);
                    pos_ = k + 1;
                } else if (!backtrack()) {
                    return false;
                }
            }
        }

        const RootDatum* d_ = nullptr;
        std::size_t j_ = 0;
        std::vector<bool> taken_;
        std::vector<std::size_t> chosen_;  // root indices, ascending
        std::size_t pos_ = 0;
        bool started_ = false;
        bool done_ = true;
    };

    iterator begin() const { return iterator(d_, j_); }
    std::default_sentinel_t end() const { return {}; }

private:
    const RootDatum* d_;
    std::size_t j_;
};

inline AdmissibleSubsets admissible_subsets(const RootDatum& d, std::size_t j) { return {d, j}; }

inline std::vector<std::vector<std::size_t>> admissible_subset_list(const RootDatum& d, std::size_t j) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& s : admissible_subsets(d, j)) out.push_back(s);
    return out;
}

// Dynkin labels of the sum of the given positive roots.
inline Weight root_sum_labels(const RootDatum& d, const std::vector<std::size_t>& subset) {
    Weight w(d.rank());
    for (auto k : subset) w += d.positive_roots()[k].labels;
    return w;
}

// Is `subset` upward closed? Independent of the enumeration order.
inline bool is_admissible(const RootDatum& d, const std::vector<std::size_t>& subset) {
    std::vector<bool> in(d.positive_roots().size(), false);
    for (auto k : subset) in[k] = true;
    for (auto& [from, to] : d.poset_arrows())
        if (in[from] && !in[to]) return false;
    return true;
}

}  // namespace casimir
