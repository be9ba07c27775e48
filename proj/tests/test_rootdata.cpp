#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <set>

#include "casimir/admissible.hpp"
#include "casimir/json_io.hpp"
#include "casimir/registry.hpp"

using namespace casimir;

namespace {

RootCoords coords(std::initializer_list<int> c) { return RootCoords(c.begin(), c.end()); }

// Upward closure straight from the definition: y = x + alpha_i with x in S
// forces y in S.
bool upward_closed(const RootDatum& d, const std::vector<std::size_t>& s) {
    std::set<std::size_t> in(s.begin(), s.end());
    const auto& roots = d.positive_roots();
    for (auto k : s)
        for (std::size_t i = 0; i < d.rank(); ++i) {
            RootCoords up = roots[k].coords;
            up[i] += 1;
            if (auto y = d.root_index(up); y && !in.count(*y)) return false;
        }
    return true;
}

}  // namespace

TEST(RootData, PositiveRootCountsMatchDimension) {
    // (dim - rank) / 2 with the classical dimension formulas.
    struct Case {
        const char* name;
        std::size_t dim;
    };
    for (auto [name, dim] : {Case{"A1", 3}, Case{"A2", 8}, Case{"A4", 24}, Case{"B2", 10}, Case{"B3", 21},
                             Case{"C3", 21}, Case{"D4", 28}, Case{"D5", 45}, Case{"G2", 14}, Case{"F4", 52},
                             Case{"E6", 78}, Case{"E7", 133}, Case{"E8", 248}, Case{"A1+A1", 6}, Case{"A1^4", 12},
                             Case{"B2+G2", 24}}) {
        auto d = datum_for(name);
        EXPECT_EQ(d->dimension(), dim) << name;
        EXPECT_EQ(d->positive_roots().size(), (dim - d->rank()) / 2) << name;
    }
    EXPECT_EQ(datum_for("E8")->positive_roots().size(), 120u);
    EXPECT_EQ(datum_for("A1")->positive_roots().size(), 1u);
    EXPECT_EQ(datum_for("A1")->positive_roots()[0].height, 1);
}

TEST(RootData, F4HighestRoot) {
    auto d = datum_for("F4");
    const auto& top = d->positive_roots()[0];
    EXPECT_EQ(top.coords, coords({2, 3, 4, 2}));
    EXPECT_EQ(top.height, 11);
    EXPECT_EQ(d->positive_roots()[1].coords, coords({1, 3, 4, 2}));
}

TEST(RootData, AdjointHighestWeights) {
    EXPECT_EQ(datum_for("G2")->positive_roots()[0].labels, Weight({1, 0}));
    EXPECT_EQ(datum_for("F4")->positive_roots()[0].labels, Weight({1, 0, 0, 0}));
    EXPECT_EQ(datum_for("E6")->positive_roots()[0].labels, Weight({0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(datum_for("E7")->positive_roots()[0].labels, Weight({1, 0, 0, 0, 0, 0, 0}));
    EXPECT_EQ(datum_for("E8")->positive_roots()[0].labels, Weight({0, 0, 0, 0, 0, 0, 1, 0}));
}

TEST(RootData, SimpleRootLabelsAreCartanRows) {
    for (auto name : {"F4", "G2", "B3", "E6", "A1+A2"}) {
        auto d = datum_for(name);
        for (std::size_t i = 0; i < d->rank(); ++i) {
            RootCoords e(d->rank(), 0);
            e[i] = 1;
            Weight row(d->spec().matrix[i].begin(), d->spec().matrix[i].end());
            EXPECT_EQ(d->dynkin_labels(e), row) << name << " node " << i;
        }
    }
}

TEST(RootData, RootCoordsRoundTrip) {
    for (auto name : {"F4", "E7", "C3", "A1^3"}) {
        auto d = datum_for(name);
        for (auto& r : d->positive_roots()) {
            auto back = d->integral_root_coords(r.labels);
            ASSERT_TRUE(back) << name;
            EXPECT_EQ(*back, r.coords);
        }
    }
}

TEST(RootData, OrderingIsHeightDescThenCoordsAscending) {
    for (auto name : {"F4", "E6", "B3", "A1+G2"}) {
        const auto& roots = datum_for(name)->positive_roots();
        for (std::size_t k = 1; k < roots.size(); ++k) {
            const auto& a = roots[k - 1];
            const auto& b = roots[k];
            EXPECT_TRUE(a.height > b.height || (a.height == b.height && a.coords < b.coords)) << name << " at " << k;
        }
    }
}

TEST(RootData, ArrowsAreExactlyUnitSteps) {
    for (auto name : {"F4", "G2", "D4", "A1+A2"}) {
        auto d = datum_for(name);
        std::set<std::pair<std::size_t, std::size_t>> expected;
        const auto& roots = d->positive_roots();
        for (std::size_t k = 0; k < roots.size(); ++k)
            for (std::size_t l = 0; l < roots.size(); ++l) {
                int diff = 0, unit = 0;
                for (std::size_t i = 0; i < d->rank(); ++i) {
                    int x = roots[l].coords[i] - roots[k].coords[i];
                    diff += x != 0;
                    unit += x == 1;
                }
                if (diff == 1 && unit == 1) expected.insert({k, l});
            }
        std::set<std::pair<std::size_t, std::size_t>> got(d->poset_arrows().begin(), d->poset_arrows().end());
        EXPECT_EQ(got, expected) << name;
    }
}

TEST(RootData, HighestRootIsTheOnlySinkPerBlock) {
    for (auto name : {"F4", "E8", "A1^3", "B2+G2"}) {
        auto d = datum_for(name);
        std::vector<int> sinks(d->num_blocks(), 0);
        for (std::size_t k = 0; k < d->positive_roots().size(); ++k)
            if (d->arrows_from(k).empty()) {
                ++sinks[d->positive_roots()[k].block];
                EXPECT_EQ(k, d->highest_root(d->positive_roots()[k].block)) << name;
            }
        for (int s : sinks) EXPECT_EQ(s, 1) << name;
    }
}

TEST(RootData, HeightsGiveTheExponents) {
    // #roots of height h = #exponents >= h.
    auto check = [](const char* name, std::vector<int> exps) {
        auto d = datum_for(name);
        int top = *std::max_element(exps.begin(), exps.end());
        for (int h = 1; h <= top + 1; ++h) {
            auto n = std::count_if(d->positive_roots().begin(), d->positive_roots().end(),
                                   [&](auto& r) { return r.height == h; });
            auto e = std::count_if(exps.begin(), exps.end(), [&](int x) { return x >= h; });
            EXPECT_EQ(n, e) << name << " height " << h;
        }
    };
    check("G2", {1, 5});
    check("F4", {1, 5, 7, 11});
    check("E6", {1, 4, 5, 7, 8, 11});
    check("E8", {1, 7, 11, 13, 17, 19, 23, 29});
}

TEST(RootData, DualCoxeterNumbers) {
    struct Case {
        const char* name;
        int h;
    };
    for (auto [name, h] : {Case{"A1", 2}, Case{"A5", 6}, Case{"B3", 5}, Case{"C3", 4}, Case{"D4", 6}, Case{"D6", 10},
                           Case{"G2", 4}, Case{"F4", 9}, Case{"E6", 12}, Case{"E7", 18}, Case{"E8", 30}})
        EXPECT_EQ(datum_for(name)->dual_coxeter(), std::vector<int>{h}) << name;
    EXPECT_EQ(datum_for("A1+G2")->dual_coxeter(), (std::vector<int>{2, 4}));
}

TEST(RootData, LongRootsHaveLengthTwo) {
    for (auto name : {"B3", "C3", "G2", "F4", "A1+B2"}) {
        auto d = datum_for(name);
        for (std::size_t b = 0; b < d->num_blocks(); ++b) {
            const Weight& theta = d->positive_roots()[d->highest_root(b)].labels;
            EXPECT_EQ(d->inner(theta, theta), Rational(2)) << name;
        }
    }
}

TEST(RootData, RejectsInvalidMatrices) {
    EXPECT_THROW(make_cartan_spec("bad", {{2, -1}, {-1}}), ValidationError);
    EXPECT_THROW(make_cartan_spec("bad", {{3, -1}, {-1, 2}}), ValidationError);
    EXPECT_THROW(make_cartan_spec("bad", {{2, 1}, {-1, 2}}), ValidationError);
    EXPECT_THROW(make_cartan_spec("bad", {{2, -1}, {0, 2}}), ValidationError);
    EXPECT_THROW(make_cartan_spec("bad", {}), ValidationError);
    try {
        // affine A1 in the second block
        make_cartan_spec("A1+affine", {{2, 0, 0}, {0, 2, -2}, {0, -2, 2}});
        FAIL() << "affine block accepted";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("block 2"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("finite type"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_algebra("Q3"), ValidationError);
    EXPECT_THROW(parse_algebra("D3"), ValidationError);
    EXPECT_THROW(parse_algebra("A1+"), ValidationError);
}

TEST(RootData, CartanJsonDetectsBlocks) {
    Json doc = Json::parse(R"({"name": "two copies", "matrix": [[2, 0], [0, 2]]})");
    CartanSpec spec = cartan_from_json(doc);
    ASSERT_EQ(spec.blocks.size(), 2u);
    auto d = build_root_datum(spec);
    EXPECT_EQ(d->dimension(), 6u);
    EXPECT_THROW(cartan_from_json(Json::parse(R"({"matrix": "no"})")), ValidationError);
    EXPECT_THROW(cartan_from_json(Json::parse(R"({"name": "x"})")), ValidationError);
}

TEST(RootData, PermutedNodesPermuteLabels) {
    auto f4 = datum_for("F4");
    auto rev = build_root_datum(permute_nodes(f4->spec(), {3, 2, 1, 0}));
    EXPECT_EQ(rev->positive_roots().size(), 24u);
    Weight theta = rev->positive_roots()[0].labels;
    EXPECT_EQ(theta, Weight({0, 0, 0, 1}));
    EXPECT_THROW(permute_nodes(f4->spec(), {0, 0, 1, 2}), ValidationError);
    // interleaving two summands breaks block contiguity
    EXPECT_THROW(permute_nodes(datum_for("A2+A2")->spec(), {0, 2, 1, 3}), ValidationError);
}

// ---------------------------------------------------------------------------
// admissible subsets

TEST(Admissible, AgreesWithBruteForceOnSmallPosets) {
    for (auto name : {"A2", "B2", "G2", "A1+A1", "A1+A2"}) {
        auto d = datum_for(name);
        const std::size_t n = d->positive_roots().size();
        ASSERT_LE(n, 6u);
        for (std::size_t j = 0; j <= n + 1; ++j) {
            std::set<std::vector<std::size_t>> brute;
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                if (static_cast<std::size_t>(std::popcount(mask)) != j) continue;
                std::vector<std::size_t> s;
                for (std::size_t k = 0; k < n; ++k)
                    if (mask >> k & 1) s.push_back(k);
                if (upward_closed(*d, s)) brute.insert(s);
            }
            std::set<std::vector<std::size_t>> got;
            for (const auto& s : admissible_subsets(*d, j)) {
                std::vector<std::size_t> v(s.begin(), s.end());
                std::sort(v.begin(), v.end());
                EXPECT_TRUE(got.insert(v).second) << name << " j=" << j << ": subset yielded twice";
            }
            EXPECT_EQ(got, brute) << name << " j=" << j;
        }
    }
}

TEST(Admissible, F4TopOfThePoset) {
    auto d = datum_for("F4");
    auto one = admissible_subset_list(*d, 1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], std::vector<std::size_t>{0});
    auto two = admissible_subset_list(*d, 2);
    ASSERT_EQ(two.size(), 1u);
    std::set<std::size_t> s2(two[0].begin(), two[0].end());
    EXPECT_EQ(s2, (std::set<std::size_t>{0, 1}));
    EXPECT_EQ(root_sum_labels(*d, two[0]), Weight({0, 1, 0, 0}));

    auto three = admissible_subset_list(*d, 3);
    ASSERT_EQ(three.size(), 1u);
    EXPECT_EQ(root_sum_labels(*d, three[0]), Weight({0, 0, 2, 0}));

    auto five = admissible_subset_list(*d, 5);
    ASSERT_EQ(five.size(), 2u);
    std::set<Weight> sums{root_sum_labels(*d, five[0]), root_sum_labels(*d, five[1])};
    EXPECT_EQ(sums, (std::set<Weight>{Weight({0, 0, 3, 0}), Weight({0, 1, 0, 3})}));
}

TEST(Admissible, EmptyAndOversized) {
    auto d = datum_for("E6");
    auto zero = admissible_subset_list(*d, 0);
    ASSERT_EQ(zero.size(), 1u);
    EXPECT_TRUE(zero[0].empty());
    EXPECT_TRUE(admissible_subset_list(*d, d->positive_roots().size() + 1).empty());
    EXPECT_EQ(admissible_subset_list(*d, d->positive_roots().size()).size(), 1u);
}

TEST(Admissible, EveryFilterExtendsASmallerOne) {
    for (auto name : {"A2", "G2", "B3", "D4", "F4", "E6", "E7", "E8", "A1^3"}) {
        auto d = datum_for(name);
        for (std::size_t j = 1; j <= 10; ++j) {
            std::set<std::vector<std::size_t>> smaller;
            for (auto s : admissible_subset_list(*d, j - 1)) {
                std::sort(s.begin(), s.end());
                smaller.insert(s);
            }
            for (const auto& s : admissible_subsets(*d, j)) {
                EXPECT_TRUE(is_admissible(*d, s));
                bool extends = false;
                for (std::size_t drop = 0; drop < s.size() && !extends; ++drop) {
                    std::vector<std::size_t> t;
                    for (std::size_t q = 0; q < s.size(); ++q)
                        if (q != drop) t.push_back(s[q]);
                    std::sort(t.begin(), t.end());
                    extends = smaller.count(t) > 0;
                }
                EXPECT_TRUE(extends) << name << " j=" << j;
            }
        }
    }
}

TEST(Admissible, IsAdmissibleRejectsGaps) {
    auto d = datum_for("F4");
    EXPECT_TRUE(is_admissible(*d, {0}));
    EXPECT_FALSE(is_admissible(*d, {1}));
    EXPECT_TRUE(is_admissible(*d, {}));
}
