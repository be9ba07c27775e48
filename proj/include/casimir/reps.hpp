#pragma once

// Irreducible representations: Weyl dimension, quadratic Casimir, Freudenthal
// multiplicities, Weyl and diagram-automorphism orbits, and enumeration of
// irreps with a prescribed Casimir eigenvalue.
//
// Casimir normalization: on each simple block <L, L + 2 rho> in the form with
// long roots of squared length 2, divided by 2 h^vee; blocks add with no
// relative scaling. The adjoint of every simple factor gets eigenvalue 1.

#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "casimir/character.hpp"
#include "casimir/core.hpp"
#include "casimir/rootdata.hpp"

namespace casimir {

struct IrrepInfo {
    Weight highest_weight;
    BigInt dim;
    Rational casimir;
    friend bool operator==(const IrrepInfo&, const IrrepInfo&) = default;
};

inline void require_dominant(const RootDatum& d, const Weight& hw) {
    d.check_rank(hw);
    if (!hw.is_dominant()) throw NotDominantError("weight " + hw.str() + " is not dominant");
}

// prod_{alpha>0} <L + rho, alpha^vee> / <rho, alpha^vee>
inline BigInt weyl_dim(const RootDatum& d, const Weight& hw) {
    require_dominant(d, hw);
    const Weight rho = d.weyl_vector();
    const Weight shifted = hw + rho;
    BigInt num = 1, den = 1;
    for (std::size_t k = 0; k < d.positive_roots().size(); ++k) {
        num *= d.pair_with_coroot(shifted, k);
        den *= d.pair_with_coroot(rho, k);
    }
    if (num % den != 0) throw ConsistencyError("Weyl dimension is not integral for " + hw.str());
    return num / den;
}

inline Rational casimir(const RootDatum& d, const Weight& w) {
    d.check_rank(w);
    return Rational(d.casimir_scaled(w), d.casimir_denominator());
}

inline IrrepInfo irrep_info(const RootDatum& d, const Weight& hw) { return {hw, weyl_dim(d, hw), casimir(d, hw)}; }

// Weyl-group orbit of a dominant weight, sorted descending.
inline std::vector<Weight> weyl_orbit(const RootDatum& d, const Weight& dominant) {
    require_dominant(d, dominant);
    std::unordered_set<Weight, WeightHash> seen{dominant};
    std::vector<Weight> out{dominant};
    for (std::size_t k = 0; k < out.size(); ++k) {
        for (std::size_t i = 0; i < d.rank(); ++i) {
            if (out[k][i] <= 0) continue;
            Weight r = d.reflect(out[k], i);
            if (seen.insert(r).second) out.push_back(std::move(r));
        }
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

// ---------------------------------------------------------------------------
// Freudenthal recursion on the dominant chamber

// Dominant weights of V(highest) with their multiplicities, top level first.
// With a floor, only dominant weights mu >= floor (mu - floor a non-negative
// root combination) are produced; the recursion is closed on that interval.
class DominantCharacter {
public:
    const Weight& highest() const noexcept { return highest_; }
    const std::vector<Weight>& weights() const noexcept { return weights_; }
    const std::vector<BigInt>& multiplicities() const noexcept { return mult_; }
    const std::vector<int>& levels() const noexcept { return level_; }
    std::size_t size() const noexcept { return weights_.size(); }

    BigInt multiplicity(const Weight& w) const {
        auto it = index_.find(w);
        return it == index_.end() ? BigInt(0) : mult_[it->second];
    }
    bool contains(const Weight& w) const { return index_.count(w) != 0; }

    friend DominantCharacter dominant_character(const RootDatum& d, const Weight& hw, const Weight* floor);

private:
    Weight highest_;
    std::vector<Weight> weights_;
    std::vector<BigInt> mult_;
    std::vector<int> level_;
    std::unordered_map<Weight, std::size_t, WeightHash> index_;
};

inline DominantCharacter dominant_character(const RootDatum& d, const Weight& hw, const Weight* floor = nullptr) {
    require_dominant(d, hw);
    const std::size_t n = d.rank();
    const auto& roots = d.positive_roots();

    std::optional<RootCoords> floor_depth;
    if (floor) {
        floor_depth = d.integral_root_coords(hw - *floor);
        if (!floor_depth) throw ValidationError("floor weight is not in the root lattice of the highest weight");
        for (int c : *floor_depth)
            if (c < 0) throw ValidationError("floor weight lies above the highest weight");
    }

    // Every dominant weight below hw is reachable through dominant weights by
    // subtracting positive roots one at a time (Stembridge).
    struct Node {
        Weight w;
        RootCoords depth;
    };
    std::vector<Node> nodes{{hw, RootCoords(n, 0)}};
    std::unordered_set<Weight, WeightHash> seen{hw};
    for (std::size_t q = 0; q < nodes.size(); ++q) {
        for (const auto& r : roots) {
            Weight nu = nodes[q].w - r.labels;
            if (!nu.is_dominant() || seen.count(nu)) continue;
            RootCoords depth = nodes[q].depth;
            bool ok = true;
            for (std::size_t i = 0; i < n; ++i) {
                depth[i] += r.coords[i];
                if (floor_depth && depth[i] > (*floor_depth)[i]) ok = false;
            }
            if (!ok) continue;
            seen.insert(nu);
            nodes.push_back({std::move(nu), std::move(depth)});
        }
    }
    std::vector<std::pair<int, std::size_t>> order;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
        int lvl = std::accumulate(nodes[q].depth.begin(), nodes[q].depth.end(), 0);
        order.emplace_back(lvl, q);
    }
    std::sort(order.begin(), order.end(), [&](auto& a, auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return nodes[a.second].w > nodes[b.second].w;
    });

    DominantCharacter out;
    out.highest_ = hw;
    for (auto& [lvl, q] : order) {
        out.index_.emplace(nodes[q].w, out.weights_.size());
        out.weights_.push_back(nodes[q].w);
        out.level_.push_back(lvl);
    }
    out.mult_.assign(out.weights_.size(), BigInt(0));
    if (out.weights_.empty()) return out;
    out.mult_[0] = 1;

    const Weight rho = d.weyl_vector();
    const std::int64_t top = d.inner_scaled(hw + rho, hw + rho);
    for (std::size_t q = 1; q < out.weights_.size(); ++q) {
        const Weight& mu = out.weights_[q];
        BigInt num = 0;
        for (std::size_t k = 0; k < roots.size(); ++k) {
            Weight nu = mu;
            for (;;) {
                nu += roots[k].labels;
                auto it = out.index_.find(d.to_dominant(nu));
                if (it == out.index_.end()) break;
                num += out.mult_[it->second] * d.pair_with_root_scaled(nu, k);
            }
        }
        const std::int64_t den = top - d.inner_scaled(mu + rho, mu + rho);
        num *= 2;
        if (den <= 0 || num % den != 0)
            throw ConsistencyError("Freudenthal recursion produced a non-integral multiplicity at " + mu.str());
        out.mult_[q] = num / den;
    }
    return out;
}

// Full weight multiplicity map of V(hw). Refuses when the predicted number
// of distinct weights exceeds the ceiling.
inline Character freudenthal_character(const DatumPtr& d, const Weight& hw, const ResourceLimits& limits = {}) {
    auto dom = dominant_character(*d, hw);
    BigInt predicted = 0;
    for (const auto& w : dom.weights()) predicted += d->orbit_size(w);
    if (predicted > limits.max_weights) {
        throw ResourceError("character of " + hw.str() + " for " + d->name() + " would have " + predicted.str() +
                                " distinct weights (ceiling " + std::to_string(limits.max_weights) + ")",
                            predicted > std::numeric_limits<std::uint64_t>::max()
                                ? std::numeric_limits<std::uint64_t>::max()
                                : static_cast<std::uint64_t>(predicted),
                            limits.max_weights);
    }
    Character ch(d);
    for (std::size_t q = 0; q < dom.size(); ++q)
        for (auto& w : weyl_orbit(*d, dom.weights()[q])) ch.add(w, dom.multiplicities()[q]);
    ch.note("V" + hw.str());
    return ch;
}

// ---------------------------------------------------------------------------
// diagram automorphisms

// Orbit of hw under all Dynkin-diagram symmetries, sorted descending.
inline std::vector<Weight> automorphism_orbit(const RootDatum& d, const Weight& hw) {
    d.check_rank(hw);
    std::set<Weight, std::greater<>> orbit;
    for (const auto& sigma : d.diagram_automorphisms()) orbit.insert(d.apply_automorphism(sigma, hw));
    return {orbit.begin(), orbit.end()};
}

// Highest weight of the dual representation: -w0(hw).
inline Weight conjugate(const RootDatum& d, const Weight& hw) {
    require_dominant(d, hw);
    return d.to_dominant(-hw);
}

// ---------------------------------------------------------------------------
// bounded search for irreps with casimir == target

// All dominant weights with casimir exactly `target`, in lexicographic order.
// Casimir strictly increases with every label, so each coordinate is walked
// upward only until the partial weight (later labels zero) overshoots.
// `max_label` optionally caps every label as well.
inline std::vector<IrrepInfo> irreps_with_casimir(const RootDatum& d, const Rational& target,
                                                  std::optional<int> max_label = std::nullopt) {
    std::vector<IrrepInfo> out;
    const Rational scaled = target * d.casimir_denominator();
    if (target <= 0 || !is_integer(scaled)) return out;
    const std::int64_t goal = static_cast<std::int64_t>(boost::multiprecision::numerator(scaled));
    const std::size_t n = d.rank();
    Weight w(n);
    auto rec = [&](auto& self, std::size_t i) -> void {
        if (i == n) {
            if (d.casimir_scaled(w) == goal) out.push_back(irrep_info(d, w));
            return;
        }
        for (int v = 0;; ++v) {
            if (max_label && v > *max_label) break;
            w[i] = v;
            if (d.casimir_scaled(w) > goal) break;
            self(self, i + 1);
        }
        w[i] = 0;
    };
    rec(rec, 0);
    return out;
}

}  // namespace casimir
