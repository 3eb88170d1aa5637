#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

using namespace twistfuse;

TEST(Weyl, OrdersMatchClassicalFormulas) {
    const std::vector<std::pair<std::string, std::pair<char, int>>> cases = {
        {"A1", {'A', 1}}, {"A2", {'A', 2}}, {"A4", {'A', 4}}, {"B3", {'B', 3}}, {"C4", {'C', 4}},
        {"D4", {'D', 4}}, {"D5", {'D', 5}}, {"G2", {'G', 2}}, {"F4", {'F', 4}}, {"E6", {'E', 6}}};
    for (const auto& [name, fam] : cases)
        EXPECT_EQ(static_cast<Int>(weyl_group(*build_cartan(name))->order()), oracle::weyl_order(fam.first, fam.second))
            << name;
    EXPECT_EQ(weyl_group(*build_cartan("A2"))->order(), 6u);
    EXPECT_EQ(weyl_group(*build_cartan("D4"))->order(), 192u);
    EXPECT_EQ(weyl_group(*build_cartan("E6"))->order(), 51840u);
    EXPECT_EQ(weyl_group(*build_cartan("F4"))->order(), 1152u);
}

TEST(Weyl, ElementsAgreeWithMatrixClosure) {
    for (const char* name : {"A3", "B3", "G2", "D4"}) {
        const auto& c = *build_cartan(name);
        const auto w = weyl_group(c);
        const auto ref = oracle::weyl_matrices(c.cartan_fin);
        std::set<std::vector<Int>> mine(ref.begin(), ref.end()), got;
        for (std::size_t e = 0; e < w->order(); ++e) {
            const auto m = w->element(e);
            std::vector<Int> flat;
            for (int i = 0; i < c.l; ++i)
                for (int j = 0; j < c.l; ++j) flat.push_back(m(i, j));
            got.insert(flat);
            EXPECT_EQ(w->signs[e], oracle::det_sign(flat, c.l));
        }
        EXPECT_EQ(got, mine) << name;
    }
}

TEST(Weyl, RankLimit) {
    try {
        weyl_group(*build_cartan("E7"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RankTooLarge);
    }
    WeylOptions big{8, 3000000};
    EXPECT_EQ(weyl_group(*build_cartan("A7"), big)->order(), 40320u);
}

TEST(Weyl, SimpleReflectionIsAnInvolution) {
    for (const char* name : {"A3", "B2", "G2", "F4"}) {
        const auto& c = *build_cartan(name);
        gen::for_all(30, [&](gen::Gen& g) {
            const auto x = g.labels(c.l, -6, 6);
            const int i = static_cast<int>(g.integer(1, c.l));
            EXPECT_EQ(simple_reflect(c, i, simple_reflect(c, i, x)), x);
            // (s_i x, s_i y) = (x, y)
            const auto y = g.labels(c.l, -6, 6);
            EXPECT_EQ(c.form(simple_reflect(c, i, x), simple_reflect(c, i, y)), c.form(x, y));
        });
    }
}

TEST(Weyl, ToDominantExamples) {
    const auto& a1 = *build_cartan("A1");
    auto r = to_dominant(a1, Labels{-3});
    EXPECT_EQ(r.rep, Labels{3});
    EXPECT_EQ(r.sign, -1);
    const auto& a2 = *build_cartan("A2");
    EXPECT_EQ(to_dominant(a2, Labels{0, -1}).sign, 0);
}

TEST(Weyl, ToDominantIsOrbitInvariant) {
    for (const char* name : {"A2", "B3", "G2", "D4"}) {
        const auto& c = *build_cartan(name);
        const auto w = weyl_group(c);
        gen::for_all(30, [&](gen::Gen& g) {
            const auto x = g.labels(c.l, -5, 5);
            const auto e = static_cast<std::size_t>(g.integer(0, static_cast<Int>(w->order()) - 1));
            const auto a = to_dominant(c, x), b = to_dominant(c, w->apply(e, x));
            EXPECT_EQ(a.rep, b.rep) << gen::show(x);
            EXPECT_EQ(b.sign, a.sign * w->signs[e]) << gen::show(x);
            EXPECT_TRUE(is_dominant(a.rep));
        });
    }
}

TEST(Alcove, FoldExamplesAtA1LevelOne) {
    const auto& a = *build_cartan("A1^(1)");
    EXPECT_EQ(alcove_fold(a, 1, {3}).sign, 0);
    auto one = alcove_fold(a, 1, {1});
    EXPECT_EQ(one.sign, 1);
    EXPECT_EQ(one.rep, Labels{1});
    auto four = alcove_fold(a, 1, {4});
    EXPECT_EQ(four.sign, -1);
    EXPECT_EQ(four.rep, Labels{2});
}

TEST(Alcove, FoldIsIdempotent) {
    for (const char* name : {"A2^(1)", "C2^(1)", "G2^(1)", "A3^(2)", "D4^(3)"}) {
        const auto& a = *build_cartan(name);
        gen::for_all(40, [&](gen::Gen& g) {
            const Int k = g.integer(0, 4);
            const auto x = g.labels(a.l, -12, 12);
            const auto r = alcove_fold(a, k, x);
            if (r.sign == 0) return;
            const auto again = alcove_fold(a, k, *r.rep);
            EXPECT_EQ(again.sign, 1);
            EXPECT_EQ(again.rep, r.rep);
            EXPECT_EQ(again.reflections_used, 0);
        });
    }
}

TEST(Alcove, FoldMatchesExhaustiveSearch) {
    for (const auto& [name, kmax] : std::vector<std::pair<std::string, Int>>{{"A1^(1)", 3}, {"A2^(1)", 2}, {"A3^(2)", 2}}) {
        const auto& a = *build_cartan(name);
        gen::for_all(25, [&](gen::Gen& g) {
            const Int k = g.integer(0, kmax);
            const auto x = g.labels(a.l, -8, 8);
            const auto fast = alcove_fold(a, k, x);
            const auto slow = oracle::brute_force_fold(a, k, x, 4);
            EXPECT_EQ(fast.sign, slow.sign) << name << " k=" << k << " x=" << gen::show(x);
            EXPECT_EQ(fast.rep, slow.rep) << name << " k=" << k << " x=" << gen::show(x);
        });
    }
}

TEST(Alcove, RequiresAffineDatum) {
    EXPECT_THROW(alcove_fold(*build_cartan("A2"), 1, {1, 1}), Error);
}
