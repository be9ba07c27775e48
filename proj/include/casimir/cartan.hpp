#pragma once

// Cartan matrices: validation, block detection, and the built-in registry.
//
// Convention: row i of the matrix holds the Dynkin labels of the simple root
// alpha_i, i.e. A_ij = <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j).
// Node numbering follows the tables of Fuchs/Schweigert-style references:
//   B_n, C_n, F4   Bourbaki ordering (alpha_n short for B_n, long for C_n)
//   G2             alpha_1 long, so the adjoint is (10)
//   D_n            chain 1..n-2, nodes n-1 and n attached to n-2
//   E_n            chain 1..n-1, node n attached to node 3

#include <cctype>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/core.hpp"

namespace casimir {

// Half-open index range [begin, end) of one irreducible diagonal block.
struct Block {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const noexcept { return end - begin; }
    bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }
    friend bool operator==(const Block&, const Block&) = default;
};

struct CartanSpec {
    std::string name;
    IntMatrix matrix;
    std::vector<Block> blocks;

    std::size_t rank() const noexcept { return matrix.size(); }
    std::size_t block_of(std::size_t node) const {
        for (std::size_t b = 0; b < blocks.size(); ++b)
            if (blocks[b].contains(node)) return b;
        throw ValidationError("node index out of range");
    }
};

namespace detail {

// Squared lengths of the simple roots of one block, normalized so the longest
// is 2. Throws if the block is not symmetrizable.
inline std::vector<Rational> block_root_lengths(const IntMatrix& a, const Block& blk) {
    const std::size_t n = blk.size();
    std::vector<std::optional<Rational>> len(n);
    len[0] = Rational(1);
    std::vector<std::size_t> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::size_t i = queue[qi];
        for (std::size_t j = 0; j < n; ++j) {
            int aij = a[blk.begin + i][blk.begin + j];
            int aji = a[blk.begin + j][blk.begin + i];
            if (i == j || aij == 0) continue;
            // (a_i, a_j) = A_ij |a_j|^2 / 2 = A_ji |a_i|^2 / 2
            Rational lj = *len[i] * aji / aij;
            if (!len[j]) {
                len[j] = lj;
                queue.push_back(j);
            } else if (*len[j] != lj) {
                throw ValidationError("block is not symmetrizable");
            }
        }
    }
    Rational longest = 0;
    for (auto& l : len) longest = std::max(longest, *l);
    std::vector<Rational> out;
    for (auto& l : len) out.push_back(*l * 2 / longest);
    return out;
}

// Sylvester test on the symmetrized block via exact elimination: every pivot
// must be positive.
inline bool block_positive_definite(const IntMatrix& a, const Block& blk, const std::vector<Rational>& len) {
    const std::size_t n = blk.size();
    RatMatrix s(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s[i][j] = Rational(a[blk.begin + i][blk.begin + j]) * len[j] / 2;
    for (std::size_t k = 0; k < n; ++k) {
        if (s[k][k] <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            Rational f = s[i][k] / s[k][k];
            if (f == 0) continue;
            for (std::size_t j = k; j < n; ++j) s[i][j] -= f * s[k][j];
        }
    }
    return true;
}

}  // namespace detail

// Validates a Cartan matrix and detects its irreducible blocks from the zero
// pattern. Blocks must be contiguous index ranges.
inline CartanSpec make_cartan_spec(std::string name, IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) throw ValidationError(name + ": empty Cartan matrix");
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw ValidationError(name + ": Cartan matrix is not square");
        if (m[i][i] != 2) throw ValidationError(name + ": diagonal entry " + std::to_string(i + 1) + " is not 2");
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (m[i][j] > 0) throw ValidationError(name + ": positive off-diagonal entry");
            if ((m[i][j] == 0) != (m[j][i] == 0))
                throw ValidationError(name + ": zero pattern is not symmetric at (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ")");
        }
    }
    // connected components of the Dynkin graph
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            auto i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && m[i][j] != 0 && comp[j] < 0) {
                    comp[j] = ncomp;
                    stack.push_back(j);
                }
        }
        ++ncomp;
    }
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < n; ++i) {
        if (blocks.empty() || comp[i] != comp[blocks.back().begin]) {
            for (auto& b : blocks)
                if (comp[b.begin] == comp[i])
                    throw ValidationError(name + ": irreducible components are not contiguous; reorder the nodes");
            blocks.push_back({i, i + 1});
        } else {
            blocks.back().end = i + 1;
        }
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::string where = name + ": block " + std::to_string(b + 1) + " (nodes " +
                            std::to_string(blocks[b].begin + 1) + ".." + std::to_string(blocks[b].end) + ")";
        std::vector<Rational> len;
        try {
            len = detail::block_root_lengths(m, blocks[b]);
        } catch (const ValidationError& e) {
            throw ValidationError(where + " " + e.what());
        }
        if (!detail::block_positive_definite(m, blocks[b], len))
            throw ValidationError(where + " is not of finite type");
    }
    return CartanSpec{std::move(name), std::move(m), std::move(blocks)};
}

// ---------------------------------------------------------------------------
// registry

namespace detail {

inline IntMatrix chain(std::size_t n) {
    IntMatrix m(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = 2;
        if (i + 1 < n) m[i][i + 1] = m[i + 1][i] = -1;
    }
    return m;
}

inline IntMatrix simple_matrix(char type, std::size_t n) {
    switch (type) {
        case 'A':
            if (n < 1) break;
            return chain(n);
        case 'B': {
            if (n < 2) break;
            auto m = chain(n);
            m[n - 2][n - 1] = -2;
            return m;
        }
        case 'C': {
            if (n < 2) break;
            auto m = chain(n);
            m[n - 1][n - 2] = -2;
            return m;
        }
        case 'D': {
            if (n < 4) break;
            auto m = chain(n);
            m[n - 2][n - 1] = m[n - 1][n - 2] = 0;
            m[n - 3][n - 1] = m[n - 1][n - 3] = -1;
            return m;
        }
        case 'G':
            if (n != 2) break;
            return {{2, -3}, {-1, 2}};
        case 'F':
            if (n != 4) break;
            return {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
        case 'E': {
            if (n < 6 || n > 8) break;
            auto m = chain(n - 1);
            for (auto& row : m) row.push_back(0);
            m.emplace_back(n, 0);
            m[n - 1][n - 1] = 2;
            m[2][n - 1] = m[n - 1][2] = -1;
            return m;
        }
        default:
            break;
    }
    throw ValidationError(std::string("unknown simple algebra ") + type + std::to_string(n));
}

inline std::string trim(std::string s) {
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

}  // namespace detail

inline CartanSpec direct_sum(const std::string& name, const std::vector<IntMatrix>& parts) {
    std::size_t n = 0;
    for (auto& p : parts) n += p.size();
    IntMatrix m(n, std::vector<int>(n, 0));
    std::size_t off = 0;
    for (auto& p : parts) {
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j) m[off + i][off + j] = p[i][j];
        off += p.size();
    }
    return make_cartan_spec(name, std::move(m));
}

// Resolves names such as "F4", "E8", "A1+A1+A1", "A1^4" or "B2+G2".
inline CartanSpec parse_algebra(const std::string& text) {
    std::string name;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) name += static_cast<char>(std::toupper(c));
    if (name.empty()) throw ValidationError("empty algebra name");
    std::vector<IntMatrix> parts;
    std::size_t pos = 0;
    while (pos <= name.size()) {
        auto plus = name.find('+', pos);
        std::string term = name.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
        if (term.empty()) throw ValidationError("malformed algebra name '" + text + "'");
        std::size_t copies = 1;
        if (auto caret = term.find('^'); caret != std::string::npos) {
            try {
                copies = std::stoul(term.substr(caret + 1));
            } catch (const std::exception&) {
                throw ValidationError("malformed power in '" + text + "'");
            }
            if (copies == 0) throw ValidationError("zero power in '" + text + "'");
            term = term.substr(0, caret);
        }
        if (term.size() < 2 || !std::isalpha(static_cast<unsigned char>(term[0])))
            throw ValidationError("malformed algebra name '" + text + "'");
        std::size_t rank = 0;
        try {
            std::size_t used = 0;
            rank = std::stoul(term.substr(1), &used);
            if (used != term.size() - 1) throw std::invalid_argument(term);
        } catch (const std::exception&) {
            throw ValidationError("malformed algebra name '" + text + "'");
        }
        auto m = detail::simple_matrix(term[0], rank);
        for (std::size_t c = 0; c < copies; ++c) parts.push_back(m);
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    return direct_sum(name, parts);
}

// Relabels nodes: new node k is old node perm[k]. Blocks are re-detected, so
// the permutation must keep every simple summand contiguous.
inline CartanSpec permute_nodes(const CartanSpec& spec, const std::vector<std::size_t>& perm) {
    const std::size_t n = spec.rank();
    if (perm.size() != n) throw ValidationError("node permutation has wrong length");
    std::vector<bool> seen(n, false);
    for (auto p : perm) {
        if (p >= n || seen[p]) throw ValidationError("node ordering is not a permutation");
        seen[p] = true;
    }
    IntMatrix m(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = spec.matrix[perm[i]][perm[j]];
    return make_cartan_spec(spec.name, std::move(m));
}

}  // namespace casimir
