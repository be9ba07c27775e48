#pragma once

// Formal characters: sparse maps weight -> multiplicity. Virtual characters
// (negative entries) are the same type; zero entries are never stored.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "casimir/core.hpp"
#include "casimir/rootdata.hpp"

namespace casimir {

struct ResourceLimits {
    std::uint64_t max_weights = 50'000'000;
};

class Character {
public:
    using Map = std::unordered_map<Weight, BigInt, WeightHash>;

    explicit Character(DatumPtr datum) : datum_(std::move(datum)) {}

    const DatumPtr& datum_ptr() const noexcept { return datum_; }
    const RootDatum& datum() const noexcept { return *datum_; }

    void add(const Weight& w, const BigInt& m) {
        if (m == 0) return;
        auto [it, inserted] = entries_.try_emplace(w, m);
        if (!inserted) {
            it->second += m;
            if (it->second == 0) entries_.erase(it);
        }
    }
    BigInt multiplicity(const Weight& w) const {
        auto it = entries_.find(w);
        return it == entries_.end() ? BigInt(0) : it->second;
    }
    const Map& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    BigInt virtual_dim() const {
        BigInt s = 0;
        for (auto& [w, m] : entries_) s += m;
        return s;
    }
    bool is_nonnegative() const {
        for (auto& [w, m] : entries_)
            if (m < 0) return false;
        return true;
    }
    // m(lambda) = m(s_i lambda) for every stored weight and simple reflection.
    bool is_weyl_invariant() const {
        for (auto& [w, m] : entries_)
            for (std::size_t i = 0; i < datum_->rank(); ++i)
                if (w[i] != 0 && multiplicity(datum_->reflect(w, i)) != m) return false;
        return true;
    }

    std::vector<std::pair<Weight, BigInt>> sorted_entries() const {
        std::vector<std::pair<Weight, BigInt>> v(entries_.begin(), entries_.end());
        std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first > b.first; });
        return v;
    }

    Character dominant_part() const {
        Character out(datum_);
        for (auto& [w, m] : entries_)
            if (w.is_dominant()) out.entries_.emplace(w, m);
        return out;
    }

    Character& operator+=(const Character& o) {
        check_compatible(o);
        for (auto& [w, m] : o.entries_) add(w, m);
        return *this;
    }
    Character& operator-=(const Character& o) {
        check_compatible(o);
        for (auto& [w, m] : o.entries_) add(w, -m);
        return *this;
    }
    Character& operator*=(const BigInt& k) {
        if (k == 0) {
            entries_.clear();
            return *this;
        }
        for (auto& [w, m] : entries_) m *= k;
        return *this;
    }
    friend Character operator+(Character a, const Character& b) { return a += b; }
    friend Character operator-(Character a, const Character& b) { return a -= b; }
    friend bool operator==(const Character& a, const Character& b) {
        return a.same_algebra(b) && a.entries_ == b.entries_;
    }

    bool same_algebra(const Character& o) const {
        return datum_ == o.datum_ || datum_->spec().matrix == o.datum_->spec().matrix;
    }
    void check_compatible(const Character& o) const {
        if (!same_algebra(o))
            throw ValidationError("characters belong to different algebras (" + datum_->name() + " vs " +
                                  o.datum_->name() + ")");
    }

    // Human-readable construction log, for diagnostics only.
    const std::vector<std::string>& provenance() const noexcept { return provenance_; }
    Character& note(std::string step) {
        provenance_.push_back(std::move(step));
        return *this;
    }

private:
    DatumPtr datum_;
    Map entries_;
    std::vector<std::string> provenance_;
};

}  // namespace casimir
