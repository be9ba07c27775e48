#pragma once

// The X_j family of an algebra: irreps of Casimir eigenvalue j inside the
// j-th exterior power of the adjoint, read off from admissible subsets, and
// the signed fallback once an algebra has dropped out.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "casimir/admissible.hpp"
#include "casimir/polyfit.hpp"
#include "casimir/reps.hpp"
#include "casimir/rootdata.hpp"

namespace casimir {

struct Constituent {
    Weight highest_weight;
    BigInt dim;
    int sign = 1;  // +1, -1 or 0
    friend bool operator==(const Constituent&, const Constituent&) = default;
};

enum class FamilyPath { admissible, fallback };

inline const char* to_string(FamilyPath p) { return p == FamilyPath::admissible ? "admissible" : "fallback"; }

struct FamilyAssignment {
    std::string algebra;
    int j = 0;
    FamilyPath path = FamilyPath::admissible;
    std::vector<Constituent> constituents;
    // Automorphism orbits as index lists into `constituents`.
    std::vector<std::vector<std::size_t>> orbits;
    // No admissible subset of size j sums to a weight of casimir j.
    bool dropped_out = false;
    BigInt signed_sum = 0;
    std::optional<BigInt> target;  // fallback only
    bool matched = true;           // fallback only: a sign vector reached the target
    bool zeros_required = false;
    std::string note;
};

// Groups weights into diagram-automorphism orbits, in order of first
// appearance. Every orbit member must be present in `ws`.
inline std::vector<std::vector<std::size_t>> group_orbits(const RootDatum& d, const std::vector<Weight>& ws) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> used(ws.size(), false);
    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> orb;
        for (const auto& w : automorphism_orbit(d, ws[i])) {
            auto it = std::find(ws.begin(), ws.end(), w);
            if (it == ws.end())
                throw ConsistencyError("automorphism image " + w.str() + " of " + ws[i].str() + " is missing");
            std::size_t k = static_cast<std::size_t>(it - ws.begin());
            used[k] = true;
            orb.push_back(k);
        }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

// Distinct sums over admissible subsets of size j, with their casimir values.
inline std::map<Weight, Rational> admissible_sums(const RootDatum& d, std::size_t j) {
    std::map<Weight, Rational> out;
    for (const auto& s : admissible_subsets(d, j)) {
        Weight w = root_sum_labels(d, s);
        if (!out.count(w)) out.emplace(w, casimir::casimir(d, w));
    }
    return out;
}

inline FamilyAssignment family_via_admissible(const RootDatum& d, int j) {
    if (j < 1) throw ValidationError("family index j must be at least 1");
    FamilyAssignment fa;
    fa.algebra = d.name();
    fa.j = j;
    std::vector<Weight> ws;
    for (auto& [w, c] : admissible_sums(d, static_cast<std::size_t>(j)))
        if (c == j) ws.push_back(w);
    for (auto& w : ws) {
        BigInt dim = weyl_dim(d, w);
        fa.constituents.push_back({w, dim, 1});
        fa.signed_sum += dim;
    }
    fa.orbits = group_orbits(d, ws);
    fa.dropped_out = ws.empty();
    return fa;
}

// Smallest j in 2..j_max at which the algebra drops out.
inline std::optional<int> dropout_index(const RootDatum& d, int j_max) {
    for (int j = 2; j <= j_max; ++j)
        if (family_via_admissible(d, j).dropped_out) return j;
    return std::nullopt;
}

// Expected dimension of X_j for an algebra of dimension D: d_1 = D, and the
// closed forms for j = 2..9.
inline std::optional<BigInt> expected_dimension(int j, const BigInt& D) {
    if (j == 1) return D;
    if (j >= kMinBuiltinJ && j <= kMaxBuiltinJ) return eval_d(j, D);
    return std::nullopt;
}

namespace detail {

// Sign per orbit from {+1, -1, 0} hitting `target`; preference: fewest zeros,
// then fewest minus signs, then lexicographic with + < - < 0.
inline std::optional<std::vector<int>> search_signs(const std::vector<BigInt>& orbit_dims, const BigInt& target) {
    const std::size_t n = orbit_dims.size();
    constexpr std::size_t kMaxOrbits = 14;
    if (n > kMaxOrbits)
        throw ResourceError("sign search over " + std::to_string(n) + " orbits", n, kMaxOrbits);
    static constexpr int kSign[3] = {1, -1, 0};
    std::optional<std::vector<int>> best;
    std::tuple<int, int, std::vector<int>> best_key;
    std::vector<int> code(n, 0);
    for (;;) {
        BigInt s = 0;
        int zeros = 0, minus = 0;
        for (std::size_t i = 0; i < n; ++i) {
            s += kSign[code[i]] * orbit_dims[i];
            zeros += code[i] == 2;
            minus += code[i] == 1;
        }
        if (s == target) {
            auto key = std::make_tuple(zeros, minus, code);
            if (!best || key < best_key) {
                best_key = key;
                std::vector<int> signs(n);
                for (std::size_t i = 0; i < n; ++i) signs[i] = kSign[code[i]];
                best = signs;
            }
        }
        std::size_t i = 0;
        while (i < n && code[i] == 2) code[i++] = 0;
        if (i == n) break;
        ++code[i];
    }
    return best;
}

}  // namespace detail

// All irreps of casimir j, signed orbit by orbit so that the signed sum of
// dimensions equals `target`.
inline FamilyAssignment fallback_family(const RootDatum& d, int j, const BigInt& target) {
    FamilyAssignment fa;
    fa.algebra = d.name();
    fa.j = j;
    fa.path = FamilyPath::fallback;
    fa.target = target;
    std::vector<Weight> ws;
    for (auto& info : irreps_with_casimir(d, Rational(j))) {
        ws.push_back(info.highest_weight);
        fa.constituents.push_back({info.highest_weight, info.dim, 0});
    }
    fa.orbits = group_orbits(d, ws);
    std::vector<BigInt> orbit_dims;
    for (auto& orb : fa.orbits) {
        BigInt s = 0;
        for (auto k : orb) s += fa.constituents[k].dim;
        orbit_dims.push_back(s);
    }
    auto signs = detail::search_signs(orbit_dims, target);
    fa.matched = signs.has_value();
    if (signs) {
        for (std::size_t o = 0; o < fa.orbits.size(); ++o) {
            for (auto k : fa.orbits[o]) fa.constituents[k].sign = (*signs)[o];
            fa.signed_sum += (*signs)[o] * orbit_dims[o];
            if ((*signs)[o] == 0) fa.zeros_required = true;
        }
    }
    return fa;
}

// Admissible family when it is nonempty and its dimension agrees with
// d_j(D); the signed fallback against d_j(D) otherwise.
inline FamilyAssignment resolve_family(const RootDatum& d, int j) {
    FamilyAssignment adm = family_via_admissible(d, j);
    auto expected = expected_dimension(j, BigInt(d.dimension()));
    if (!expected || (!adm.dropped_out && adm.signed_sum == *expected)) return adm;
    FamilyAssignment fb = fallback_family(d, j, *expected);
    fb.dropped_out = adm.dropped_out;
    if (!adm.dropped_out)
        fb.note = "admissible family has dimension " + adm.signed_sum.str() + ", d_" + std::to_string(j) + "(" +
                  std::to_string(d.dimension()) + ") = " + expected->str();
    return fb;
}

}  // namespace casimir
