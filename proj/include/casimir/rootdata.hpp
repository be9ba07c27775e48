#pragma once

// Root system, root poset and normalized invariant form of a (semi)simple
// Lie algebra, built from its Cartan matrix.

#include <map>
#include <memory>
#include <numeric>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "casimir/cartan.hpp"
#include "casimir/core.hpp"

namespace casimir {

struct Root {
    RootCoords coords;  // simple-root basis, all >= 0
    int height = 0;
    std::size_t block = 0;
    Weight labels;  // Dynkin labels
};

class RootDatum;
using DatumPtr = std::shared_ptr<const RootDatum>;

class RootDatum {
public:
    explicit RootDatum(CartanSpec spec) : spec_(std::move(spec)) {
        init_form();
        init_roots();
        init_pairings();
        init_automorphisms();
    }

    const CartanSpec& spec() const noexcept { return spec_; }
    const std::string& name() const noexcept { return spec_.name; }
    std::size_t rank() const noexcept { return spec_.rank(); }
    std::size_t num_blocks() const noexcept { return spec_.blocks.size(); }
    // dim g = rank + 2 |positive roots|
    std::size_t dimension() const noexcept { return rank() + 2 * roots_.size(); }

    // Sorted by (height desc, coords lex ascending).
    const std::vector<Root>& positive_roots() const noexcept { return roots_; }
    // (k, l) with root_l = root_k + alpha_i for some simple alpha_i.
    const std::vector<std::pair<std::size_t, std::size_t>>& poset_arrows() const noexcept { return arrows_; }
    // Targets of the arrows leaving root k (all strictly higher).
    const std::vector<std::size_t>& arrows_from(std::size_t k) const { return up_[k]; }

    std::optional<std::size_t> root_index(const RootCoords& c) const {
        auto it = index_.find(c);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t highest_root(std::size_t block) const {
        for (std::size_t k = 0; k < roots_.size(); ++k)
            if (roots_[k].block == block) return k;
        throw ValidationError("block has no roots");
    }

    Weight weyl_vector() const {
        Weight w(rank());
        for (auto& x : w) x = 1;
        return w;
    }
    const std::vector<int>& dual_coxeter() const noexcept { return dual_coxeter_; }
    // <alpha_i, alpha_j>, each block normalized to long roots of squared length 2.
    const RatMatrix& form() const noexcept { return form_; }
    // per block 1 / (2 h^vee)
    const std::vector<Rational>& casimir_scale() const noexcept { return casimir_scale_; }
    const std::vector<Rational>& simple_root_lengths() const noexcept { return len2_; }
    // (omega_i, omega_j)
    const RatMatrix& weight_gram() const noexcept { return gram_; }
    const RatMatrix& inverse_cartan() const noexcept { return inv_cartan_; }

    Weight simple_root_labels(std::size_t i) const {
        return Weight(spec_.matrix[i].begin(), spec_.matrix[i].end());
    }

    // labels_i = sum_j coords_j A_ji
    Weight dynkin_labels(const RootCoords& coords) const {
        if (coords.size() != rank()) throw ValidationError("coordinate vector has wrong length");
        Weight w(rank());
        for (std::size_t j = 0; j < rank(); ++j) {
            if (coords[j] == 0) continue;
            for (std::size_t i = 0; i < rank(); ++i) w[i] += coords[j] * spec_.matrix[j][i];
        }
        return w;
    }

    // Inverse of dynkin_labels, over the rationals.
    std::vector<Rational> root_coords(const Weight& w) const {
        check_rank(w);
        std::vector<Rational> c(rank(), Rational(0));
        for (std::size_t j = 0; j < rank(); ++j)
            for (std::size_t i = 0; i < rank(); ++i)
                if (w[i] != 0) c[j] += inv_cartan_[i][j] * w[i];
        return c;
    }

    // Root coordinates when w lies in the root lattice.
    std::optional<RootCoords> integral_root_coords(const Weight& w) const {
        auto c = root_coords(w);
        RootCoords out;
        for (auto& x : c) {
            if (!is_integer(x)) return std::nullopt;
            out.push_back(static_cast<int>(boost::multiprecision::numerator(x)));
        }
        return out;
    }

    // (lambda, mu) in the normalized form.
    Rational inner(const Weight& a, const Weight& b) const {
        check_rank(a);
        check_rank(b);
        Rational s = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < rank(); ++j)
                if (b[j] != 0) s += gram_[i][j] * (a[i] * b[j]);
        }
        return s;
    }

    // Integer multiple (by form_scale()) of the normalized form; exact.
    std::int64_t inner_scaled(const Weight& a, const Weight& b) const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (a[i] == 0) continue;
            std::int64_t t = 0;
            for (std::size_t j = 0; j < rank(); ++j) t += gram_scaled_[i][j] * b[j];
            s += t * a[i];
        }
        return s;
    }
    std::int64_t form_scale() const noexcept { return form_scale_; }

    // (lambda, alpha_k) * form_scale() for positive root k.
    std::int64_t pair_with_root_scaled(const Weight& w, std::size_t k) const {
        std::int64_t s = 0;
        const auto& p = root_pair_scaled_[k];
        for (std::size_t i = 0; i < rank(); ++i) s += static_cast<std::int64_t>(w[i]) * p[i];
        return s;
    }
    // <lambda, alpha_k^vee>: integer for integral weights.
    std::int64_t pair_with_coroot(const Weight& w, std::size_t k) const {
        std::int64_t s = 0;
        const auto& cv = coroot_coeffs_[k];
        for (std::size_t i = 0; i < rank(); ++i) s += static_cast<std::int64_t>(w[i]) * cv[i];
        return s;
    }
    // Coefficients of alpha_k^vee in the simple-coroot basis.
    const IntVec& coroot_coeffs(std::size_t k) const { return coroot_coeffs_[k]; }

    // Quadratic Casimir in exact integer form: casimir(w) = casimir_scaled(w) / casimir_denominator().
    // Per block <w, w + 2 rho> / (2 h^vee), blocks summed.
    std::int64_t casimir_scaled(const Weight& w) const {
        std::int64_t total = 0;
        for (std::size_t b = 0; b < num_blocks(); ++b) {
            const auto& blk = spec_.blocks[b];
            std::int64_t s = 0;
            for (std::size_t i = blk.begin; i < blk.end; ++i) {
                if (w[i] == 0) continue;
                std::int64_t t = 0;
                for (std::size_t j = blk.begin; j < blk.end; ++j) t += gram_scaled_[i][j] * (w[j] + 2);
                s += t * w[i];
            }
            total += s * casimir_block_factor_[b];
        }
        return total;
    }
    std::int64_t casimir_denominator() const noexcept { return casimir_denominator_; }

    // Simple reflection s_i.
    Weight reflect(Weight w, std::size_t i) const {
        int c = w[i];
        if (c != 0)
            for (std::size_t k = 0; k < rank(); ++k) w[k] -= c * spec_.matrix[i][k];
        return w;
    }

    Weight to_dominant(Weight w) const {
        check_rank(w);
        for (;;) {
            std::size_t i = 0;
            while (i < rank() && w[i] >= 0) ++i;
            if (i == rank()) return w;
            int c = w[i];
            for (std::size_t k = 0; k < rank(); ++k) w[k] -= c * spec_.matrix[i][k];
        }
    }

    // |W|, from the exponents read off the height distribution of the roots.
    BigInt weyl_group_order() const { return parabolic_order(std::vector<bool>(rank(), true)); }

    // |W_J| for the standard parabolic subgroup generated by the marked nodes.
    BigInt parabolic_order(const std::vector<bool>& nodes) const {
        std::map<int, std::int64_t> by_height;
        int max_h = 0;
        for (auto& r : roots_) {
            bool inside = true;
            for (std::size_t i = 0; i < rank() && inside; ++i)
                if (r.coords[i] != 0 && !nodes[i]) inside = false;
            if (inside) {
                ++by_height[r.height];
                max_h = std::max(max_h, r.height);
            }
        }
        BigInt order = 1;
        for (int k = 1; k <= max_h; ++k) {
            std::int64_t count = by_height[k] - (by_height.count(k + 1) ? by_height[k + 1] : 0);
            for (std::int64_t c = 0; c < count; ++c) order *= (k + 1);
        }
        return order;
    }

    // Size of the Weyl-group orbit of a dominant weight.
    BigInt orbit_size(const Weight& dominant) const {
        std::vector<bool> stab(rank());
        for (std::size_t i = 0; i < rank(); ++i) stab[i] = dominant[i] == 0;
        return weyl_group_order() / parabolic_order(stab);
    }

    // Node permutations sigma with A[sigma i][sigma j] = A[i][j], identity first.
    const std::vector<std::vector<std::size_t>>& diagram_automorphisms() const noexcept { return automorphisms_; }

    // Weight with labels permuted: (sigma w)_{sigma(i)} = w_i.
    Weight apply_automorphism(const std::vector<std::size_t>& sigma, const Weight& w) const {
        Weight out(rank());
        for (std::size_t i = 0; i < rank(); ++i) out[sigma[i]] = w[i];
        return out;
    }

    void check_rank(const Weight& w) const {
        if (w.size() != rank())
            throw ValidationError("weight " + w.str() + " has length " + std::to_string(w.size()) +
                                  ", algebra " + name() + " has rank " + std::to_string(rank()));
    }

private:
    void init_form() {
        const std::size_t n = rank();
        len2_.assign(n, Rational(0));
        for (const auto& blk : spec_.blocks) {
            auto l = detail::block_root_lengths(spec_.matrix, blk);
            for (std::size_t i = 0; i < blk.size(); ++i) len2_[blk.begin + i] = l[i];
        }
        form_.assign(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) form_[i][j] = Rational(spec_.matrix[i][j]) * len2_[j] / 2;

        // inverse Cartan matrix by Gauss-Jordan
        RatMatrix a(n, std::vector<Rational>(2 * n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a[i][j] = spec_.matrix[i][j];
            a[i][n + i] = 1;
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (a[p][c] == 0) ++p;
            std::swap(a[p], a[c]);
            Rational inv = 1 / a[c][c];
            for (auto& x : a[c]) x *= inv;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || a[r][c] == 0) continue;
                Rational f = a[r][c];
                for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
            }
        }
        inv_cartan_.assign(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv_cartan_[i][j] = a[i][n + j];

        // (omega_i, omega_j) = (A^-1)_ji |alpha_i|^2 / 2
        gram_.assign(n, std::vector<Rational>(n));
        BigInt lcm = 1;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                gram_[i][j] = inv_cartan_[j][i] * len2_[i] / 2;
                lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(gram_[i][j]));
            }
            lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(len2_[i] / 2));
        }
        form_scale_ = static_cast<std::int64_t>(lcm);
        gram_scaled_.assign(n, std::vector<std::int64_t>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                gram_scaled_[i][j] = static_cast<std::int64_t>(gram_[i][j] * form_scale_);
    }

    void init_roots() {
        const std::size_t n = rank();
        std::vector<RootCoords> found;
        std::unordered_set<RootCoords, WeightHash> seen;
        for (std::size_t i = 0; i < n; ++i) {
            RootCoords c(n, 0);
            c[i] = 1;
            found.push_back(c);
            seen.insert(c);
        }
        // Breadth-first closure: found[] stays ordered by height, so the
        // alpha_i-string below beta is complete when beta is processed.
        for (std::size_t k = 0; k < found.size(); ++k) {
            RootCoords beta = found[k];
            Weight lab = dynkin_labels(beta);
            for (std::size_t i = 0; i < n; ++i) {
                int q = 0;
                RootCoords down = beta;
                for (;;) {
                    down[i] -= 1;
                    if (!seen.count(down)) break;
                    ++q;
                }
                int p = q - lab[i];
                if (p <= 0) continue;
                RootCoords up = beta;
                up[i] += 1;
                if (seen.insert(up).second) found.push_back(up);
            }
        }
        for (auto& c : found) {
            Root r;
            r.coords = c;
            r.height = std::accumulate(c.begin(), c.end(), 0);
            for (std::size_t i = 0; i < n; ++i)
                if (c[i] != 0) {
                    r.block = spec_.block_of(i);
                    break;
                }
            r.labels = dynkin_labels(c);
            roots_.push_back(std::move(r));
        }
        std::sort(roots_.begin(), roots_.end(), [](const Root& a, const Root& b) {
            if (a.height != b.height) return a.height > b.height;
            return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end());
        });
        for (std::size_t k = 0; k < roots_.size(); ++k) index_.emplace(roots_[k].coords, k);
        up_.assign(roots_.size(), {});
        for (std::size_t k = 0; k < roots_.size(); ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                RootCoords c = roots_[k].coords;
                c[i] += 1;
                auto it = index_.find(c);
                if (it != index_.end()) {
                    arrows_.emplace_back(k, it->second);
                    up_[k].push_back(it->second);
                }
            }
        }
        std::sort(arrows_.begin(), arrows_.end());
    }

    void init_pairings() {
        const std::size_t n = rank();
        for (auto& r : roots_) {
            Rational norm = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (r.coords[i] && r.coords[j]) norm += form_[i][j] * (r.coords[i] * r.coords[j]);
            IntVec cv(n, 0);
            IntVec pr(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                Rational c = Rational(r.coords[i]) * len2_[i] / norm;
                if (!is_integer(c)) throw ConsistencyError("coroot coefficient is not integral");
                cv[i] = static_cast<int>(boost::multiprecision::numerator(c));
                Rational p = Rational(r.coords[i]) * len2_[i] / 2 * form_scale_;
                pr[i] = static_cast<int>(boost::multiprecision::numerator(p));
            }
            coroot_coeffs_.push_back(cv);
            root_pair_scaled_.push_back(pr);
        }
        // h^vee = 1 + <rho, theta^vee>
        for (std::size_t b = 0; b < num_blocks(); ++b) {
            const auto& cv = coroot_coeffs_[highest_root(b)];
            int h = 1 + std::accumulate(cv.begin(), cv.end(), 0);
            dual_coxeter_.push_back(h);
            casimir_scale_.push_back(Rational(1, 2 * h));
        }
        std::int64_t l = 1;
        for (int h : dual_coxeter_) l = std::lcm(l, static_cast<std::int64_t>(2 * h));
        for (int h : dual_coxeter_) casimir_block_factor_.push_back(l / (2 * h));
        casimir_denominator_ = l * form_scale_;
    }

    void init_automorphisms() {
        const std::size_t n = rank();
        std::vector<std::size_t> sigma(n);
        std::vector<bool> used(n, false);
        const auto& a = spec_.matrix;
        auto rec = [&](auto& self, std::size_t i) -> void {
            if (i == n) {
                automorphisms_.push_back(sigma);
                return;
            }
            for (std::size_t t = 0; t < n; ++t) {
                if (used[t] || a[t][t] != a[i][i]) continue;
                bool ok = true;
                for (std::size_t k = 0; k < i && ok; ++k)
                    ok = a[sigma[k]][t] == a[k][i] && a[t][sigma[k]] == a[i][k];
                if (!ok) continue;
                used[t] = true;
                sigma[i] = t;
                self(self, i + 1);
                used[t] = false;
            }
        };
        rec(rec, 0);
    }

    CartanSpec spec_;
    std::vector<Rational> len2_;
    RatMatrix form_;
    RatMatrix inv_cartan_;
    RatMatrix gram_;
    std::vector<std::vector<std::int64_t>> gram_scaled_;
    std::int64_t form_scale_ = 1;

    std::vector<Root> roots_;
    std::unordered_map<RootCoords, std::size_t, WeightHash> index_;
    std::vector<std::pair<std::size_t, std::size_t>> arrows_;
    std::vector<std::vector<std::size_t>> up_;
    std::vector<IntVec> coroot_coeffs_;
    std::vector<IntVec> root_pair_scaled_;

    std::vector<int> dual_coxeter_;
    std::vector<Rational> casimir_scale_;
    std::vector<std::int64_t> casimir_block_factor_;
    std::int64_t casimir_denominator_ = 1;
    std::vector<std::vector<std::size_t>> automorphisms_;
};

inline DatumPtr build_root_datum(CartanSpec spec) { return std::make_shared<const RootDatum>(std::move(spec)); }

}  // namespace casimir
