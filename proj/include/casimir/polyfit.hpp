#pragma once

// Exact univariate polynomials over Q in the variable D, the closed-form
// dimension polynomials d_2..d_9, constrained interpolation, integer-root
// extraction, integrality scans and the (m, alpha, D) parametrization.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/core.hpp"

namespace casimir {

class RatPoly {
public:
    RatPoly() = default;
    // Constant term first. Trailing zeros are dropped.
    explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RatPoly constant(const Rational& a) { return RatPoly(std::vector<Rational>{a}); }
    static RatPoly x() { return RatPoly(std::vector<Rational>{0, 1}); }
    // D - r
    static RatPoly linear_factor(const Rational& r) { return RatPoly(std::vector<Rational>{-r, 1}); }

    bool is_zero() const noexcept { return c_.empty(); }
    // -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    RatPoly& operator+=(const RatPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    RatPoly& operator-=(const RatPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t k = 0; k < b.c_.size(); ++k) r[i + k] += a.c_[i] * b.c_[k];
        return RatPoly(std::move(r));
    }
    friend RatPoly operator*(const Rational& s, RatPoly p) {
        for (auto& x : p.c_) x *= s;
        p.trim();
        return p;
    }
    friend bool operator==(const RatPoly&, const RatPoly&) = default;

    // Quotient and remainder of division by (D - r).
    std::pair<RatPoly, Rational> divide_linear(const Rational& r) const {
        if (c_.empty()) return {{}, 0};
        std::vector<Rational> q(c_.size() - 1);
        Rational carry = 0;
        for (std::size_t k = c_.size(); k-- > 0;) {
            carry = carry * r + c_[k];
            if (k > 0) q[k - 1] = carry;
        }
        return {RatPoly(std::move(q)), carry};
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline RatPoly product_of_roots(const std::vector<long>& roots) {
    RatPoly p = RatPoly::constant(1);
    for (long r : roots) p = p * RatPoly::linear_factor(r);
    return p;
}

// Plain expanded spelling, highest power first: "D^3 - 60 D^2 + 491 D - 120".
inline std::string to_expanded_string(const RatPoly& p, const std::string& var = "D") {
    if (p.is_zero()) return "0";
    std::string s;
    for (int k = p.degree(); k >= 0; --k) {
        Rational a = p.coeff(static_cast<std::size_t>(k));
        if (a == 0) continue;
        bool neg = a < 0;
        if (neg) a = -a;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        bool unit = a == 1 && k > 0;
        if (!unit) s += to_display_string(a);
        if (k > 0) {
            if (!unit) s += " ";
            s += var;
            if (k > 1) s += "^" + std::to_string(k);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// closed forms

inline constexpr int kMinBuiltinJ = 2;
inline constexpr int kMaxBuiltinJ = 9;

// 1/j! * prod (D - root) * residual
inline RatPoly builtin_d(int j) {
    struct Form {
        std::vector<long> roots;
        std::vector<Rational> residual;  // constant first
    };
    static const std::map<int, Form> forms = {
        {2, {{0, 3}, {1}}},
        {3, {{0, 1, 8}, {1}}},
        {4, {{0, 1, 3, 14}, {1}}},
        {5, {{0, 3, 6}, {8, -21, 1}}},
        {6, {{0, 1, 10}, {-144, 181, -34, 1}}},
        {7, {{0, 2, 3, 8}, {-120, 529, -50, 1}}},
        {8, {{0, 1, 3, 6}, {4200, -9994, 1571, -74, 1}}},
        {9, {{0, 1, 3, 4, 14, 26}, {-120, 491, -60, 1}}},
    };
    auto it = forms.find(j);
    if (it == forms.end())
        throw ValidationError("no closed-form dimension polynomial for j = " + std::to_string(j) + " (available: " +
                              std::to_string(kMinBuiltinJ) + ".." + std::to_string(kMaxBuiltinJ) + ")");
    return Rational(1, factorial(static_cast<unsigned>(j))) *
           (product_of_roots(it->second.roots) * RatPoly(it->second.residual));
}

inline BigInt eval_d(int j, const BigInt& D) {
    Rational v = builtin_d(j)(Rational(D));
    if (!is_integer(v))
        throw ConsistencyError("d_" + std::to_string(j) + "(" + D.str() + ") = " + to_fraction_string(v) +
                               " is not an integer");
    return boost::multiprecision::numerator(v);
}

// ---------------------------------------------------------------------------
// interpolation

struct InterpolationConstraints {
    bool root_at_zero = false;
    std::optional<Rational> leading;
    std::optional<int> degree;
};

struct InterpolationPoint {
    BigInt D;
    BigInt value;
};

struct InterpolationResult {
    RatPoly poly;
    int degree = 0;  // number of unknowns - 1
    // p(D) - value for every input point; all zero on success.
    std::vector<Rational> residuals;
};

struct InterpolationError : ValidationError {
    using ValidationError::ValidationError;
};

// Default degree: (#points - 1) + root_at_zero + (leading given). Solves the
// square or overdetermined linear system by exact elimination; points beyond
// the rank are checked as residuals.
inline InterpolationResult interpolate(const std::vector<InterpolationPoint>& points,
                                       const InterpolationConstraints& cons = {}) {
    if (points.empty()) throw InterpolationError("interpolation needs at least one point");
    {
        std::vector<BigInt> xs;
        for (auto& p : points) xs.push_back(p.D);
        std::sort(xs.begin(), xs.end());
        if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
            throw InterpolationError("interpolation points must have distinct D values");
    }
    const int deg = cons.degree.value_or(static_cast<int>(points.size()) - 1 + (cons.root_at_zero ? 1 : 0) +
                                         (cons.leading ? 1 : 0));
    if (deg < 0) throw InterpolationError("negative degree");
    const std::size_t nu = static_cast<std::size_t>(deg) + 1;

    // rows: [c_0 .. c_deg | rhs], with a tag naming the source
    std::vector<std::vector<Rational>> rows;
    std::vector<std::string> tags;
    for (auto& p : points) {
        std::vector<Rational> r(nu + 1);
        Rational pw = 1;
        for (std::size_t k = 0; k < nu; ++k, pw *= Rational(p.D)) r[k] = pw;
        r[nu] = Rational(p.value);
        rows.push_back(std::move(r));
        tags.push_back("point D=" + p.D.str());
    }
    if (cons.root_at_zero) {
        std::vector<Rational> r(nu + 1);
        r[0] = 1;
        rows.push_back(std::move(r));
        tags.push_back("root at zero");
    }
    if (cons.leading) {
        std::vector<Rational> r(nu + 1);
        r[nu - 1] = 1;
        r[nu] = *cons.leading;
        rows.push_back(std::move(r));
        tags.push_back("leading coefficient");
    }

    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nu && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        std::swap(tags[piv], tags[rank]);
        Rational inv = 1 / rows[rank][col];
        for (auto& x : rows[rank]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            Rational f = rows[i][col];
            for (std::size_t k = col; k <= nu; ++k) rows[i][k] -= f * rows[rank][k];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t i = rank; i < rows.size(); ++i)
        if (rows[i][nu] != 0)
            throw InterpolationError("inconsistent data: " + tags[i] + " leaves residual " +
                                     to_fraction_string(rows[i][nu]) + " after elimination");
    if (rank < nu)
        throw InterpolationError("singular system: " + std::to_string(rank) + " independent conditions for " +
                                 std::to_string(nu) + " coefficients");

    std::vector<Rational> c(nu);
    for (std::size_t i = 0; i < rank; ++i) c[pivot_col[i]] = rows[i][nu];
    InterpolationResult out{RatPoly(std::move(c)), deg, {}};
    for (auto& p : points) out.residuals.push_back(out.poly(Rational(p.D)) - Rational(p.value));
    return out;
}

// ---------------------------------------------------------------------------
// integer roots

struct RootExtraction {
    std::vector<BigInt> roots;  // ascending, with multiplicity
    Rational content;           // p = content * prod (D - r) * residual
    RatPoly residual;           // integer, primitive, positive leading coefficient
};

namespace detail {

inline BigInt lcm_of_denominators(const RatPoly& p) {
    BigInt l = 1;
    for (auto& a : p.coeffs()) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(a));
    return l;
}

inline BigInt gcd_of_numerators(const RatPoly& p) {
    BigInt g = 0;
    for (auto& a : p.coeffs()) g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(a));
    return g;
}

}  // namespace detail

// Candidates are the divisors of the trailing nonzero coefficient of the
// primitive integer polynomial; the search is refused when that coefficient
// has too many digits for trial division.
inline RootExtraction integer_roots(const RatPoly& p) {
    if (p.is_zero()) throw ValidationError("integer_roots of the zero polynomial");
    BigInt l = detail::lcm_of_denominators(p);
    RatPoly q = Rational(l) * p;
    BigInt g = detail::gcd_of_numerators(q);
    if (q.leading() < 0) g = -g;
    q = Rational(1, g) * q;
    RootExtraction out{{}, Rational(g, l), {}};

    while (q.degree() > 0 && q.coeff(0) == 0) {
        out.roots.push_back(0);
        q = q.divide_linear(0).first;
    }
    if (q.degree() > 0) {
        BigInt c0 = abs(boost::multiprecision::numerator(q.coeff(0)));
        constexpr std::uint64_t kTrialLimit = 100'000'000;
        if (c0 > BigInt(kTrialLimit) * kTrialLimit)
            throw ResourceError("constant term " + c0.str() + " too large for divisor search", 0, kTrialLimit);
        std::vector<BigInt> divisors;
        for (BigInt dv = 1; dv * dv <= c0; ++dv) {
            if (c0 % dv != 0) continue;
            divisors.push_back(dv);
            if (dv * dv != c0) divisors.push_back(c0 / dv);
        }
        for (auto& dv : divisors)
            for (BigInt r : {dv, BigInt(-dv)}) {
                for (;;) {
                    if (q.degree() <= 0) break;
                    auto [quot, rem] = q.divide_linear(Rational(r));
                    if (rem != 0) break;
                    out.roots.push_back(r);
                    q = quot;
                }
            }
    }
    std::sort(out.roots.begin(), out.roots.end());
    out.residual = q;
    return out;
}

// "1/5! · D(D−3)(D−6)(D²−21D+8)"
inline std::string to_factored_string(const RatPoly& p) {
    if (p.is_zero()) return "0";
    auto ex = integer_roots(p);
    auto sup = [](int k) {
        static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
        std::string s;
        for (char ch : std::to_string(k)) s += digits[ch - '0'];
        return s;
    };
    auto poly_text = [&](const RatPoly& r) {
        std::string s;
        for (int k = r.degree(); k >= 0; --k) {
            BigInt a = boost::multiprecision::numerator(r.coeff(static_cast<std::size_t>(k)));
            if (a == 0) continue;
            bool neg = a < 0;
            if (neg) a = -a;
            if (!s.empty() || neg) s += neg ? "−" : "+";
            if (a != 1 || k == 0) s += a.str();
            if (k > 0) s += "D";
            if (k > 1) s += sup(k);
        }
        return s;
    };

    std::string s;
    const Rational& c = ex.content;
    BigInt num = boost::multiprecision::numerator(c), den = boost::multiprecision::denominator(c);
    std::string cs;
    if (num == 1 || num == -1) {
        std::optional<unsigned> fact;
        for (unsigned n = 2; n <= 40 && factorial(n) <= den; ++n)
            if (factorial(n) == den) fact = n;
        if (den == 1)
            cs = num == 1 ? "" : "−";
        else
            cs = std::string(num < 0 ? "−" : "") + "1/" + (fact ? std::to_string(*fact) + "!" : den.str());
    } else {
        cs = to_display_string(c);
    }
    bool has_factors = !ex.roots.empty() || ex.residual.degree() > 0;
    if (!has_factors) return to_display_string(c * ex.residual.coeff(0));
    if (!cs.empty() && cs != "−") s = cs + " · ";
    else s = cs;

    std::map<BigInt, int> mult;
    for (auto& r : ex.roots) ++mult[r];
    for (auto& [r, k] : mult) {
        std::string f = r == 0 ? "D" : std::string("(D") + (r > 0 ? "−" : "+") + abs(r).str() + ")";
        s += f;
        if (k > 1) s += sup(k);
    }
    if (ex.residual.degree() > 0) s += "(" + poly_text(ex.residual) + ")";
    return s;
}

// ---------------------------------------------------------------------------
// integrality scan

struct ScanReport {
    int j = 0;
    BigInt lo, hi;
    bool all_integral = true;
    std::vector<BigInt> counterexamples;
};

inline ScanReport integrality_scan(int j, const BigInt& lo, const BigInt& hi) {
    if (lo > hi) throw ValidationError("empty scan range");
    RatPoly p = builtin_d(j);
    BigInt l = detail::lcm_of_denominators(p);
    std::vector<BigInt> ic;
    for (auto& a : p.coeffs()) ic.push_back(boost::multiprecision::numerator(a * Rational(l)));
    ScanReport rep{j, lo, hi, true, {}};
    for (BigInt D = lo; D <= hi; ++D) {
        BigInt acc = 0;
        for (auto it = ic.rbegin(); it != ic.rend(); ++it) acc = acc * D + *it;
        if (acc % l != 0) {
            rep.all_integral = false;
            rep.counterexamples.push_back(D);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// parametrization by m

struct Parametrization {
    Rational m;
    Rational D;
    Rational alpha;
    Rational h_dual;
};

// D = 2(3m+7)(5m+8)/(m+4), 1/alpha = 3(m+2) = h^vee.
inline Parametrization param_maps(const Rational& m) {
    if (m == -4) throw ValidationError("m = -4 is a pole of D(m)");
    if (m == -2) throw ValidationError("m = -2 gives h^vee = 0, alpha undefined");
    Parametrization p;
    p.m = m;
    p.D = 2 * (3 * m + 7) * (5 * m + 8) / (m + 4);
    p.h_dual = 3 * (m + 2);
    p.alpha = 1 / p.h_dual;
    return p;
}

inline Rational m_from_dual_coxeter(const Rational& h) { return h / 3 - 2; }

// Both sides of D^2 - 21 D + 8 = 6 (15m^2+67m+68)(10m^2+27m+8) / (m+4)^2.
inline std::pair<Rational, Rational> identity_h101(const Rational& m) {
    Rational D = param_maps(m).D;
    Rational lhs = D * D - 21 * D + 8;
    Rational rhs = 6 * (15 * m * m + 67 * m + 68) * (10 * m * m + 27 * m + 8) / ((m + 4) * (m + 4));
    return {lhs, rhs};
}

// Discriminants of the two quadratic factors in identity_h101.
inline std::pair<BigInt, BigInt> h101_discriminants() {
    auto disc = [](long a, long b, long c) { return BigInt(b) * b - BigInt(4) * a * c; };
    return {disc(15, 67, 68), disc(10, 27, 8)};
}

}  // namespace casimir
