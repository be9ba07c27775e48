#include <gtest/gtest.h>

#include <map>

#include "casimir/registry.hpp"
#include "casimir/tensor.hpp"

using namespace casimir;

namespace {

std::vector<Weight> part_weights(const Decomposition& dec) {
    std::vector<Weight> out;
    for (auto& p : dec.parts) out.push_back(p.highest_weight);
    std::sort(out.begin(), out.end());
    return out;
}

// Weights of the adjoint as a list with repetition (rank zeros included).
std::vector<Weight> adjoint_basis(const RootDatum& d) {
    std::vector<Weight> out;
    for (auto& r : d.positive_roots()) {
        out.push_back(r.labels);
        out.push_back(-r.labels);
    }
    for (std::size_t i = 0; i < d.rank(); ++i) out.emplace_back(d.rank());
    return out;
}

// Exterior power by summing every j-subset of the adjoint basis.
std::map<Weight, BigInt> exterior_by_subsets(const RootDatum& d, std::size_t j) {
    auto basis = adjoint_basis(d);
    std::map<Weight, BigInt> out;
    std::vector<std::size_t> idx;
    Weight sum(d.rank());
    auto rec = [&](auto& self, std::size_t from) -> void {
        if (idx.size() == j) {
            out[sum] += 1;
            return;
        }
        for (std::size_t k = from; k < basis.size(); ++k) {
            idx.push_back(k);
            sum += basis[k];
            self(self, k + 1);
            sum -= basis[k];
            idx.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace

TEST(CharProduct, A1AdjointSquared) {
    auto d = datum_for("A1");
    auto ad = adjoint_character(d);
    auto sq = char_product(ad, ad);
    EXPECT_EQ(sq.virtual_dim(), 9);
    EXPECT_EQ(sq.size(), 5u);
    EXPECT_EQ(sq.multiplicity(Weight({4})), 1);
    EXPECT_EQ(sq.multiplicity(Weight({2})), 2);
    EXPECT_EQ(sq.multiplicity(Weight({0})), 3);
    EXPECT_EQ(sq.multiplicity(Weight({-2})), 2);
    EXPECT_EQ(sq.multiplicity(Weight({-4})), 1);
}

TEST(CharProduct, TrivialIsIdentityAndDimensionsMultiply) {
    auto d = datum_for("A2");
    auto ad = adjoint_character(d);
    EXPECT_EQ(char_product(ad, trivial_character(d)), ad);
    EXPECT_EQ(char_product(ad, ad).virtual_dim(), 64);
}

TEST(CharProduct, IndependentOfThreadCount) {
    auto d = datum_for("F4");
    auto ad = adjoint_character(d);
    auto a = char_product(ad, ad, {}, 1);
    auto b = char_product(ad, ad, {}, 4);
    auto c = char_product(ad, ad, {}, 7);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
}

TEST(CharProduct, RejectsDifferentAlgebras) {
    EXPECT_THROW(char_product(adjoint_character(datum_for("A2")), adjoint_character(datum_for("G2"))), ValidationError);
}

TEST(ExteriorPower, BinomialDimensions) {
    for (auto name : {"A1", "A2", "B2", "G2", "D4", "F4", "E6", "A1+A1"}) {
        auto d = datum_for(name);
        auto ad = adjoint_character(d);
        const std::uint64_t D = d->dimension();
        EXPECT_EQ(exterior_power(ad, 0), trivial_character(d)) << name;
        EXPECT_EQ(exterior_power(ad, 1), ad) << name;
        EXPECT_EQ(exterior_power(ad, 2).virtual_dim(), BigInt(D * (D - 1) / 2)) << name;
    }
}

TEST(ExteriorPower, MatchesSubsetSums) {
    for (auto name : {"A2", "A1+A1", "B2"}) {
        auto d = datum_for(name);
        auto ad = adjoint_character(d);
        for (std::size_t j = 0; j <= std::min<std::size_t>(d->dimension(), 6); ++j) {
            auto got = exterior_power(ad, j);
            auto brute = exterior_by_subsets(*d, j);
            ASSERT_EQ(got.size(), brute.size()) << name << " j=" << j;
            for (auto& [w, m] : brute) EXPECT_EQ(got.multiplicity(w), m) << name << " j=" << j << " " << w.str();
        }
    }
}

TEST(ExteriorPower, BinomialSymmetry) {
    auto d = datum_for("A2");
    auto ad = adjoint_character(d);
    for (std::size_t j = 0; j <= 8; ++j) {
        auto a = exterior_power(ad, j);
        auto b = exterior_power(ad, 8 - j);
        EXPECT_EQ(a.virtual_dim(), b.virtual_dim());
        EXPECT_EQ(a, b) << "weights of the adjoint are symmetric under negation";
    }
    EXPECT_TRUE(exterior_power(ad, 9).empty());
}

TEST(ExteriorPower, ResourceCeiling) {
    auto d = datum_for("E8");
    try {
        exterior_power(adjoint_character(d), 5, ResourceLimits{1'000'000});
        FAIL() << "ceiling ignored";
    } catch (const ResourceError& e) {
        EXPECT_GT(e.estimate, 1'000'000u);
        EXPECT_EQ(e.ceiling, 1'000'000u);
    }
}

TEST(SymAntisym, TableDecompositions) {
    auto f4 = datum_for("F4");
    auto sq = sym_antisym_square(adjoint_character(f4));
    EXPECT_EQ(part_weights(decompose(sq.sym)),
              (std::vector<Weight>{Weight({0, 0, 0, 0}), Weight({0, 0, 0, 2}), Weight({2, 0, 0, 0})}));
    EXPECT_EQ(part_weights(decompose(sq.antisym)), (std::vector<Weight>{Weight({0, 1, 0, 0}), Weight({1, 0, 0, 0})}));

    auto g2 = datum_for("G2");
    auto gsq = sym_antisym_square(adjoint_character(g2));
    auto anti = decompose(gsq.antisym);
    ASSERT_EQ(anti.parts.size(), 2u);
    EXPECT_EQ(anti.parts[0].highest_weight, Weight({0, 3}));
    EXPECT_EQ(anti.parts[0].dim, 77);
    EXPECT_EQ(anti.parts[1].highest_weight, Weight({1, 0}));
    EXPECT_EQ(anti.parts[1].dim, 14);
}

TEST(SymAntisym, DimensionsAndSum) {
    for (auto name : {"A2", "G2", "B3", "D4"}) {
        auto d = datum_for(name);
        auto ad = adjoint_character(d);
        auto sq = sym_antisym_square(ad);
        const std::uint64_t D = d->dimension();
        EXPECT_EQ(sq.antisym.virtual_dim(), BigInt(D * (D - 1) / 2));
        EXPECT_EQ(sq.sym.virtual_dim(), BigInt(D * (D + 1) / 2));
        EXPECT_EQ(sq.sym + sq.antisym, char_product(ad, ad)) << name;
        EXPECT_EQ(sq.antisym, exterior_power(ad, 2)) << name;
    }
}

TEST(Decompose, A2SecondExteriorPower) {
    auto d = datum_for("A2");
    auto dec = decompose(exterior_power(adjoint_character(d), 2));
    ASSERT_EQ(dec.parts.size(), 3u);
    EXPECT_TRUE(dec.complete);
    // casimir desc, then labels asc
    EXPECT_EQ(dec.parts[0].highest_weight, Weight({0, 3}));
    EXPECT_EQ(dec.parts[1].highest_weight, Weight({3, 0}));
    EXPECT_EQ(dec.parts[2].highest_weight, Weight({1, 1}));
    EXPECT_EQ(dec.parts[0].dim, 10);
    EXPECT_EQ(dec.parts[2].dim, 8);
    EXPECT_EQ(dec.total_dim(), 28);
}

TEST(Decompose, TableEigenspaces) {
    auto g2 = datum_for("G2");
    auto g3 = decompose(exterior_power(adjoint_character(g2), 3));
    EXPECT_EQ(g3.multiplicity(Weight({0, 4})), 1);

    auto f4 = datum_for("F4");
    auto f3 = casimir_eigenspace(exterior_power(adjoint_character(f4), 3), 3);
    ASSERT_EQ(f3.parts.size(), 1u);
    EXPECT_EQ(f3.parts[0].highest_weight, Weight({0, 0, 2, 0}));
    EXPECT_EQ(f3.parts[0].dim, 19448);

    auto d4 = datum_for("D4");
    auto e4 = decompose(exterior_power(adjoint_character(d4), 4));
    auto c4 = restrict_to_casimir(e4, 4);
    EXPECT_EQ(part_weights(c4), (std::vector<Weight>{Weight({1, 0, 1, 3}), Weight({1, 0, 3, 1}), Weight({3, 0, 1, 1})}));
    for (auto& p : c4.parts) EXPECT_EQ(p.dim, 3675);
    EXPECT_EQ(e4.multiplicity(Weight({0, 3, 0, 0})), 0);
    EXPECT_EQ(weyl_dim(*d4, Weight({0, 3, 0, 0})), 1925);
    EXPECT_EQ(casimir::casimir(*d4, Weight({0, 3, 0, 0})), 4);
}

TEST(Decompose, DroppedOutEigenspacesAreEmpty) {
    auto g2 = datum_for("G2");
    EXPECT_TRUE(casimir_eigenspace(exterior_power(adjoint_character(g2), 5), 5).parts.empty());
    EXPECT_EQ(casimir::casimir(*g2, Weight({1, 4})), 5);
    // the sixth exterior power of a 6-dimensional space is one-dimensional
    auto a11 = datum_for("A1+A1");
    auto e6 = exterior_power(adjoint_character(a11), 6);
    EXPECT_EQ(e6, trivial_character(a11));
    EXPECT_TRUE(casimir_eigenspace(e6, 6).parts.empty());
}

TEST(Decompose, SecondPowerEigenspaceHasDimensionDDminus3Over2) {
    for (auto name : {"A2", "B2", "G2", "B3", "D4", "F4"}) {
        auto d = datum_for(name);
        const long D = static_cast<long>(d->dimension());
        auto x2 = casimir_eigenspace(exterior_power(adjoint_character(d), 2), 2);
        EXPECT_EQ(x2.total_dim(), D * (D - 3) / 2) << name;
    }
}

TEST(Decompose, RecomposeReproducesInput) {
    for (auto [name, j] : {std::pair{"A2", 3}, std::pair{"G2", 3}, std::pair{"B2", 4}, std::pair{"A1^3", 4}}) {
        auto d = datum_for(name);
        auto chi = exterior_power(adjoint_character(d), j);
        auto dec = decompose(chi);
        EXPECT_EQ(recompose(d, dec), chi) << name;
        EXPECT_EQ(dec.total_dim(), chi.virtual_dim());
    }
    auto d = datum_for("E6");
    EXPECT_EQ(decompose(trivial_character(d)).parts.size(), 1u);
}

TEST(Decompose, RejectsVirtualInput) {
    auto d = datum_for("A2");
    Character neg = trivial_character(d) - adjoint_character(d);
    EXPECT_THROW(decompose(neg), ValidationError);
}

TEST(ExteriorMultiplicity, AgreesWithFullDecomposition) {
    struct Case {
        const char* name;
        std::size_t j;
    };
    for (auto [name, j] : {Case{"A2", 2}, Case{"A2", 4}, Case{"G2", 3}, Case{"G2", 5}, Case{"B2", 4}, Case{"D4", 4},
                           Case{"A1^3", 3}}) {
        auto d = datum_for(name);
        auto dec = decompose(exterior_power(adjoint_character(d), j));
        for (auto& p : dec.parts)
            EXPECT_EQ(exterior_multiplicity(d, j, p.highest_weight), p.multiplicity)
                << name << " j=" << j << " " << p.highest_weight.str();
        for (auto& info : irreps_with_casimir(*d, Rational(static_cast<long>(j))))
            EXPECT_EQ(exterior_multiplicity(d, j, info.highest_weight), dec.multiplicity(info.highest_weight))
                << name << " j=" << j << " " << info.highest_weight.str();
    }
}

TEST(ExteriorMultiplicity, ExceptionalCertificates) {
    EXPECT_EQ(exterior_multiplicity(datum_for("E6"), 3, Weight({0, 1, 0, 1, 0, 0})), 1);
    EXPECT_EQ(exterior_multiplicity(datum_for("F4"), 4, Weight({0, 0, 2, 1})), 1);
    EXPECT_EQ(exterior_multiplicity(datum_for("D4"), 4, Weight({0, 3, 0, 0})), 0);
}
