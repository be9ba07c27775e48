#pragma once

// Shared vocabulary: exact numbers, integer lattice vectors, error types.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/container_hash/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace casimir {

// Expression templates off: `auto` always names a concrete number.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

using IntVec = boost::container::small_vector<int, 8>;
using IntMatrix = std::vector<std::vector<int>>;
using RatMatrix = std::vector<std::vector<Rational>>;

// Coordinates of a root-lattice element in the simple-root basis.
using RootCoords = IntVec;

// ---------------------------------------------------------------------------
// errors

struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotDominantError : std::domain_error {
    using std::domain_error::domain_error;
};

// A computation would exceed a configured ceiling. `estimate` is the predicted
// size that tripped the guard.
struct ResourceError : std::runtime_error {
    ResourceError(const std::string& what, std::uint64_t estimate_, std::uint64_t ceiling_)
        : std::runtime_error(what), estimate(estimate_), ceiling(ceiling_) {}
    std::uint64_t estimate;
    std::uint64_t ceiling;
};

// Internal-consistency failure: an exact identity that must hold did not.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Weight: Dynkin labels (coordinates in the fundamental-weight basis).

class Weight {
public:
    Weight() = default;
    explicit Weight(std::size_t rank) : labels_(rank, 0) {}
    Weight(std::initializer_list<int> l) : labels_(l) {}
    template <class It>
    Weight(It first, It last) : labels_(first, last) {}

    static Weight fundamental(std::size_t rank, std::size_t i, int multiple = 1) {
        Weight w(rank);
        w.labels_[i] = multiple;
        return w;
    }

    std::size_t size() const noexcept { return labels_.size(); }
    int operator[](std::size_t i) const { return labels_[i]; }
    int& operator[](std::size_t i) { return labels_[i]; }
    auto begin() const noexcept { return labels_.begin(); }
    auto end() const noexcept { return labels_.end(); }
    auto begin() noexcept { return labels_.begin(); }
    auto end() noexcept { return labels_.end(); }

    bool is_dominant() const noexcept {
        return std::all_of(labels_.begin(), labels_.end(), [](int x) { return x >= 0; });
    }
    bool is_zero() const noexcept {
        return std::all_of(labels_.begin(), labels_.end(), [](int x) { return x == 0; });
    }

    Weight& operator+=(const Weight& o) {
        for (std::size_t i = 0; i < labels_.size(); ++i) labels_[i] += o.labels_[i];
        return *this;
    }
    Weight& operator-=(const Weight& o) {
        for (std::size_t i = 0; i < labels_.size(); ++i) labels_[i] -= o.labels_[i];
        return *this;
    }
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(int k, Weight a) {
        for (auto& x : a.labels_) x *= k;
        return a;
    }
    Weight operator-() const { return -1 * *this; }

    friend bool operator==(const Weight& a, const Weight& b) noexcept { return a.labels_ == b.labels_; }
    friend std::strong_ordering operator<=>(const Weight& a, const Weight& b) noexcept {
        return std::lexicographical_compare_three_way(a.labels_.begin(), a.labels_.end(), b.labels_.begin(),
                                                      b.labels_.end());
    }

    // Compact table-style spelling: "0100" when every label is a single
    // non-negative digit, otherwise "(a,b,...)".
    std::string str() const {
        bool compact = std::all_of(labels_.begin(), labels_.end(), [](int x) { return x >= 0 && x <= 9; });
        std::string s;
        if (compact) {
            for (int x : labels_) s += static_cast<char>('0' + x);
            return s;
        }
        s = "(";
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(labels_[i]);
        }
        return s + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.str(); }

private:
    IntVec labels_;
};

struct WeightHash {
    std::size_t operator()(const Weight& w) const noexcept { return boost::hash_range(w.begin(), w.end()); }
    std::size_t operator()(const IntVec& v) const noexcept { return boost::hash_range(v.begin(), v.end()); }
};

// Parses "0100", "4,4", "(2,2,2)" or "[1, 0]" into a weight of the given rank.
// Digit strings are only accepted when their length equals the rank.
inline Weight parse_weight(std::string_view text, std::size_t rank) {
    std::string cleaned;
    for (char c : text) {
        if (c == '(' || c == ')' || c == '[' || c == ']' || c == ' ') continue;
        cleaned += c;
    }
    Weight w;
    std::vector<int> vals;
    if (cleaned.find(',') != std::string::npos) {
        std::stringstream ss(cleaned);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                int v = std::stoi(item, &used);
                if (used != item.size()) throw std::invalid_argument(item);
                vals.push_back(v);
            } catch (const std::exception&) {
                throw ValidationError("malformed weight label '" + item + "' in '" + std::string(text) + "'");
            }
        }
    } else {
        for (char c : cleaned) {
            if (c < '0' || c > '9') throw ValidationError("malformed weight '" + std::string(text) + "'");
            vals.push_back(c - '0');
        }
    }
    if (vals.size() != rank) {
        throw ValidationError("weight '" + std::string(text) + "' has " + std::to_string(vals.size()) +
                              " labels, expected " + std::to_string(rank));
    }
    return Weight(vals.begin(), vals.end());
}

// ---------------------------------------------------------------------------
// exact-number formatting

inline std::string to_string(const BigInt& x) { return x.str(); }

// Canonical "p/q" spelling (q >= 1, always present).
inline std::string to_fraction_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

// "p/q", or just "p" when the denominator is 1.
inline std::string to_display_string(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
    return to_fraction_string(r);
}

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw ValidationError("zero denominator in '" + s + "'");
        return Rational(num, den);
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("malformed rational '" + s + "'");
    }
}

inline BigInt parse_bigint(std::string_view text) {
    std::string s(text);
    if (s.empty() || s.find_first_not_of("+-0123456789") != std::string::npos) {
        throw ValidationError("malformed integer '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    return BigInt(s);
}

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace casimir
