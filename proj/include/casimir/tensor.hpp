#pragma once

// Character algebra: products, Adams operations, exterior powers via the
// Newton recursion, the symmetric/antisymmetric square, and decomposition
// into irreducibles by highest-weight subtraction.

#include <algorithm>
#include <functional>
#include <map>
#include <thread>
#include <utility>
#include <vector>

#include "casimir/character.hpp"
#include "casimir/reps.hpp"
#include "casimir/rootdata.hpp"

namespace casimir {

inline Character trivial_character(const DatumPtr& d) {
    Character ch(d);
    ch.add(Weight(d->rank()), 1);
    ch.note("trivial");
    return ch;
}

// Roots with multiplicity 1, the zero weight with multiplicity rank.
inline Character adjoint_character(const DatumPtr& d) {
    Character ch(d);
    for (const auto& r : d->positive_roots()) {
        ch.add(r.labels, 1);
        ch.add(-r.labels, 1);
    }
    ch.add(Weight(d->rank()), static_cast<long>(d->rank()));
    ch.note("ad");
    return ch;
}

namespace detail {

inline std::uint64_t saturating(const BigInt& x) {
    return x > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                           : static_cast<std::uint64_t>(x);
}

inline void check_weight_budget(const BigInt& estimate, const ResourceLimits& limits, const std::string& what) {
    if (estimate > limits.max_weights)
        throw ResourceError(what + ": predicted " + estimate.str() + " distinct weights exceeds the ceiling of " +
                                std::to_string(limits.max_weights),
                            saturating(estimate), limits.max_weights);
}

// Product of the bounding boxes of two supports, an upper bound on the
// number of distinct weights in their product.
inline BigInt product_box(const Character& a, const Character& b) {
    const std::size_t n = a.datum().rank();
    BigInt box = 1;
    for (std::size_t i = 0; i < n; ++i) {
        int alo = 0, ahi = 0, blo = 0, bhi = 0;
        bool first = true;
        for (auto& [w, m] : a.entries()) {
            alo = first ? w[i] : std::min(alo, w[i]);
            ahi = first ? w[i] : std::max(ahi, w[i]);
            first = false;
        }
        first = true;
        for (auto& [w, m] : b.entries()) {
            blo = first ? w[i] : std::min(blo, w[i]);
            bhi = first ? w[i] : std::max(bhi, w[i]);
            first = false;
        }
        box *= (ahi + bhi) - (alo + blo) + 1;
    }
    return std::min(box, BigInt(a.size()) * b.size());
}

}  // namespace detail

// (a * b)(l) = sum_{m + n = l} a(m) b(n). With jobs > 1 the outer loop is
// split across threads; partial maps are merged in thread order, and the
// result does not depend on the split.
inline Character char_product(const Character& a, const Character& b, const ResourceLimits& limits = {},
                              unsigned jobs = 1) {
    a.check_compatible(b);
    Character out(a.datum_ptr());
    if (a.empty() || b.empty()) return out;
    detail::check_weight_budget(detail::product_box(a, b), limits, "character product");

    std::vector<std::pair<Weight, BigInt>> left(a.entries().begin(), a.entries().end());
    std::vector<std::pair<Weight, BigInt>> right(b.entries().begin(), b.entries().end());
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(left.size() / 64 + 1)));
    if (jobs == 1) {
        for (auto& [wa, ma] : left)
            for (auto& [wb, mb] : right) out.add(wa + wb, ma * mb);
        return out;
    }
    std::vector<Character> partial(jobs, Character(a.datum_ptr()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < left.size(); i += jobs)
                for (auto& [wb, mb] : right) partial[t].add(left[i].first + wb, left[i].second * mb);
        });
    }
    for (auto& th : pool) th.join();
    for (auto& p : partial) out += p;
    return out;
}

// psi^k: every weight multiplied by k.
inline Character adams(const Character& chi, int k) {
    Character out(chi.datum_ptr());
    for (auto& [w, m] : chi.entries()) out.add(k * w, m);
    return out;
}

// Upper bound on the distinct weights of the j-th exterior power:
// min(C(D, j), box of side 2 j max|label_i| + 1).
inline BigInt exterior_weight_estimate(const Character& chi, std::size_t j) {
    const std::size_t n = chi.datum().rank();
    BigInt box = 1;
    for (std::size_t i = 0; i < n; ++i) {
        int mx = 0;
        for (auto& [w, m] : chi.entries()) mx = std::max(mx, std::abs(w[i]));
        box *= BigInt(2) * j * mx + 1;
    }
    BigInt dim = chi.virtual_dim();
    if (dim < 0) return box;
    return std::min(box, binomial(static_cast<std::uint64_t>(dim), j));
}

// e_j = (1/j) sum_{k=1..j} (-1)^{k-1} psi^k(chi) e_{j-k}
inline Character exterior_power(const Character& chi, std::size_t j, const ResourceLimits& limits = {},
                                unsigned jobs = 1) {
    detail::check_weight_budget(exterior_weight_estimate(chi, j), limits,
                                "exterior power " + std::to_string(j) + " of a character of " + chi.datum().name());
    std::vector<Character> e{trivial_character(chi.datum_ptr())};
    std::vector<Character> p;
    for (std::size_t k = 1; k <= j; ++k) p.push_back(adams(chi, static_cast<int>(k)));
    for (std::size_t s = 1; s <= j; ++s) {
        Character acc(chi.datum_ptr());
        for (std::size_t k = 1; k <= s; ++k) {
            Character term = char_product(p[k - 1], e[s - k], limits, jobs);
            if (k % 2 == 1)
                acc += term;
            else
                acc -= term;
        }
        Character next(chi.datum_ptr());
        for (auto& [w, m] : acc.entries()) {
            if (m % s != 0)
                throw ConsistencyError("Newton recursion: multiplicity at " + w.str() + " not divisible by " +
                                       std::to_string(s));
            next.add(w, m / s);
        }
        e.push_back(std::move(next));
    }
    Character out = std::move(e[j]);
    out.note("exterior^" + std::to_string(j));
    return out;
}

struct SquareParts {
    Character sym;
    Character antisym;
};

// sym = (chi^2 + psi^2 chi)/2, antisym = (chi^2 - psi^2 chi)/2.
inline SquareParts sym_antisym_square(const Character& chi, const ResourceLimits& limits = {}, unsigned jobs = 1) {
    Character sq = char_product(chi, chi, limits, jobs);
    Character p2 = adams(chi, 2);
    auto halve = [&](const Character& c, const char* label) {
        Character out(chi.datum_ptr());
        for (auto& [w, m] : c.entries()) {
            if (m % 2 != 0) throw ConsistencyError(std::string(label) + " square is not integral at " + w.str());
            out.add(w, m / 2);
        }
        out.note(label);
        return out;
    };
    return {halve(sq + p2, "sym"), halve(sq - p2, "antisym")};
}

// ---------------------------------------------------------------------------
// decomposition

struct DecompositionPart {
    Weight highest_weight;
    BigInt multiplicity;
    BigInt dim;
    Rational casimir;
    friend bool operator==(const DecompositionPart&, const DecompositionPart&) = default;
};

struct Decomposition {
    std::vector<DecompositionPart> parts;  // casimir descending, then labels ascending
    bool complete = true;

    BigInt total_dim() const {
        BigInt s = 0;
        for (auto& p : parts) s += p.multiplicity * p.dim;
        return s;
    }
    BigInt multiplicity(const Weight& hw) const {
        for (auto& p : parts)
            if (p.highest_weight == hw) return p.multiplicity;
        return 0;
    }
    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

inline void sort_parts(std::vector<DecompositionPart>& parts) {
    std::sort(parts.begin(), parts.end(), [](const DecompositionPart& a, const DecompositionPart& b) {
        if (a.casimir != b.casimir) return a.casimir > b.casimir;
        return a.highest_weight < b.highest_weight;
    });
}

namespace detail {

// Key for processing order: larger |l + rho|^2 first, then lex descending.
struct SubtractionOrder {
    bool operator()(const std::pair<std::int64_t, Weight>& a, const std::pair<std::int64_t, Weight>& b) const {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    }
};

}  // namespace detail

// Peels off irreducibles from the dominant part of chi. No subtraction can
// add weight above an already cleared |l + rho|^2 level, so every selected
// multiplicity is final.
inline Decomposition decompose(const Character& chi) {
    const RootDatum& d = chi.datum();
    const Weight rho = d.weyl_vector();
    std::map<std::pair<std::int64_t, Weight>, BigInt, detail::SubtractionOrder> rem;
    for (auto& [w, m] : chi.entries())
        if (w.is_dominant()) rem[{d.inner_scaled(w + rho, w + rho), w}] = m;

    Decomposition out;
    while (!rem.empty()) {
        auto top = rem.begin();
        if (top->second == 0) {
            rem.erase(top);
            continue;
        }
        const Weight hw = top->first.second;
        const BigInt mult = top->second;
        if (mult < 0)
            throw ValidationError("not a true character: multiplicity " + mult.str() + " at dominant weight " +
                                  hw.str() + " during decomposition");
        auto dom = dominant_character(d, hw);
        for (std::size_t q = 0; q < dom.size(); ++q) {
            const Weight& w = dom.weights()[q];
            auto key = std::make_pair(d.inner_scaled(w + rho, w + rho), w);
            auto it = rem.find(key);
            BigInt v = (it == rem.end() ? BigInt(0) : it->second) - mult * dom.multiplicities()[q];
            if (v == 0) {
                if (it != rem.end()) rem.erase(it);
            } else if (it == rem.end()) {
                rem.emplace(key, v);
            } else {
                it->second = v;
            }
        }
        out.parts.push_back({hw, mult, weyl_dim(d, hw), casimir(d, hw)});
    }
    sort_parts(out.parts);
    return out;
}

inline Decomposition restrict_to_casimir(const Decomposition& dec, const Rational& c) {
    Decomposition out;
    out.complete = dec.complete;
    for (auto& p : dec.parts)
        if (p.casimir == c) out.parts.push_back(p);
    return out;
}

// Parts of chi with casimir eigenvalue exactly j.
inline Decomposition casimir_eigenspace(const Character& chi, const Rational& j) {
    return restrict_to_casimir(decompose(chi), j);
}

// Sum over parts of mult * character; the inverse of decompose.
inline Character recompose(const DatumPtr& d, const Decomposition& dec, const ResourceLimits& limits = {}) {
    Character out(d);
    for (auto& p : dec.parts) {
        Character c = freudenthal_character(d, p.highest_weight, limits);
        c *= p.multiplicity;
        out += c;
    }
    return out;
}

// ---------------------------------------------------------------------------
// truncated certification

// Multiplicity of V(hw) in the j-th exterior power of the adjoint, without
// forming the full exterior power. Only weights mu >= hw matter:
//   1. count j-subsets of the adjoint weight basis summing to each dominant
//      mu >= hw (branch and bound on root coordinates);
//   2. peel irreducibles off those counts in decreasing |mu + rho|^2 order,
//      using Freudenthal tables truncated at hw.
// `max_subsets` bounds the subset search.
inline BigInt exterior_multiplicity(const DatumPtr& dp, std::size_t j, const Weight& hw,
                                    std::uint64_t max_subsets = 200'000'000) {
    const RootDatum& d = *dp;
    require_dominant(d, hw);
    const std::size_t n = d.rank();
    auto target = d.integral_root_coords(hw);
    if (!target) return 0;

    // adjoint basis: positive roots (height desc), rank zeros, negative roots
    std::vector<RootCoords> basis;
    for (auto& r : d.positive_roots()) basis.push_back(r.coords);
    for (std::size_t z = 0; z < n; ++z) basis.emplace_back(n, 0);
    for (auto it = d.positive_roots().rbegin(); it != d.positive_roots().rend(); ++it) {
        RootCoords c = it->coords;
        for (auto& x : c) x = -x;
        basis.push_back(std::move(c));
    }
    const std::size_t m = basis.size();
    if (j > m) return 0;

    // best[k][s][i]: max of coordinate i over s picks from basis[k..]
    constexpr int kNone = std::numeric_limits<int>::min() / 4;
    std::vector<std::vector<RootCoords>> best(m + 1, std::vector<RootCoords>(j + 1, RootCoords(n, kNone)));
    for (std::size_t k = m + 1; k-- > 0;) {
        best[k][0] = RootCoords(n, 0);
        if (k == m) continue;
        for (std::size_t s = 1; s <= j; ++s)
            for (std::size_t i = 0; i < n; ++i) {
                int skip = best[k + 1][s][i];
                int take = best[k + 1][s - 1][i] == kNone ? kNone : best[k + 1][s - 1][i] + basis[k][i];
                best[k][s][i] = std::max(skip, take);
            }
    }

    std::unordered_map<RootCoords, BigInt, WeightHash> counts;
    RootCoords sum(n, 0);
    std::uint64_t visited = 0;
    auto dfs = [&](auto& self, std::size_t k, std::size_t left) -> void {
        if (++visited > max_subsets)
            throw ResourceError("subset search for " + hw.str() + " exceeded " + std::to_string(max_subsets) +
                                    " nodes",
                                visited, max_subsets);
        if (left == 0) {
            // the bound above is per coordinate over all choices; recheck the pick
            for (std::size_t i = 0; i < n; ++i)
                if (sum[i] < (*target)[i]) return;
            counts[sum] += 1;
            return;
        }
        if (m - k < left) return;
        for (std::size_t i = 0; i < n; ++i)
            if (best[k][left][i] == kNone || sum[i] + best[k][left][i] < (*target)[i]) return;
        for (std::size_t i = 0; i < n; ++i) sum[i] += basis[k][i];
        self(self, k + 1, left - 1);
        for (std::size_t i = 0; i < n; ++i) sum[i] -= basis[k][i];
        self(self, k + 1, left);
    };
    dfs(dfs, 0, j);

    const Weight rho = d.weyl_vector();
    std::map<std::pair<std::int64_t, Weight>, BigInt, detail::SubtractionOrder> rem;
    for (auto& [coords, c] : counts) {
        Weight w = d.dynkin_labels(coords);
        if (w.is_dominant()) rem[{d.inner_scaled(w + rho, w + rho), w}] += c;
    }
    while (!rem.empty()) {
        auto top = rem.begin();
        const Weight lam = top->first.second;
        const BigInt mult = top->second;
        if (lam == hw) return mult;
        rem.erase(top);
        if (mult == 0) continue;
        if (mult < 0) throw ConsistencyError("negative multiplicity at " + lam.str() + " in truncated decomposition");
        auto dom = dominant_character(d, lam, &hw);
        for (std::size_t q = 1; q < dom.size(); ++q) {
            const Weight& w = dom.weights()[q];
            rem[{d.inner_scaled(w + rho, w + rho), w}] -= mult * dom.multiplicities()[q];
        }
    }
    return 0;
}

}  // namespace casimir
