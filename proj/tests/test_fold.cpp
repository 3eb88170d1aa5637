#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "twistfuse/selfcheck.hpp"

using namespace twistfuse;

namespace {

struct Case {
    std::string base;
    int order;
    std::string twisted, adjacent;
};

const std::vector<Case> kFoldings = {
    {"A3^(1)", 0, "A3^(2)", "D3^(2)"}, {"A5^(1)", 0, "A5^(2)", "D4^(2)"}, {"D4^(1)", 2, "D4^(2)", "A5^(2)"},
    {"D5^(1)", 0, "D5^(2)", "A7^(2)"}, {"E6^(1)", 0, "E6^(2)", "E6^(2)"}, {"D4^(1)", 3, "D4^(3)", "D4^(3)"},
};

} // namespace

TEST(Fold, BuiltinPermutations) {
    EXPECT_EQ(builtin_sigma(LieType::parse("A3^(1)")).perm, (std::vector<int>{0, 3, 2, 1}));
    EXPECT_EQ(builtin_sigma(LieType::parse("D4^(1)"), 3).perm, (std::vector<int>{0, 3, 2, 4, 1}));
    EXPECT_EQ(builtin_sigma(LieType::parse("D4^(1)"), 2).perm, (std::vector<int>{0, 1, 2, 4, 3}));
    EXPECT_EQ(builtin_sigma(LieType::parse("E6^(1)")).perm, (std::vector<int>{0, 5, 4, 3, 2, 1, 6}));
    EXPECT_EQ(builtin_sigma(LieType::parse("D4^(1)")).order, 3);
}

TEST(Fold, MissingBuiltins) {
    for (const char* name : {"B3^(1)", "A2^(1)", "G2^(1)", "A3"}) {
        try {
            builtin_sigma(LieType::parse(name));
            ADD_FAILURE() << name;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::NoBuiltinAutomorphism) << name;
        }
    }
}

TEST(Fold, InvalidAutomorphisms) {
    auto a3 = build_cartan("A3^(1)");
    for (const auto& perm : std::vector<std::vector<int>>{{0, 1, 2, 3}, {1, 0, 2, 3}, {0, 2, 1, 3}, {0, 1, 1, 3}, {0, 3, 2}}) {
        try {
            make_automorphism(a3, perm);
            ADD_FAILURE();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidAutomorphism);
        }
    }
}

TEST(Fold, TwistedAndAdjacentTypes) {
    for (const auto& c : kFoldings) {
        const auto f = build_folding(LieType::parse(c.base), c.order);
        EXPECT_EQ(f.twisted->type.name(), c.twisted);
        EXPECT_EQ(f.adjacent->type.name(), c.adjacent);
        EXPECT_EQ(f.orbit.type, f.adjacent->type);
        EXPECT_EQ(f.r, f.twisted->type.twist());
    }
}

TEST(Fold, OrbitCartanWithoutExpectationPicksFirstCandidate) {
    // A3^(2) and D3^(2) have the same diagram; the unprompted match lists A first
    const auto oc = orbit_cartan(builtin_sigma(LieType::parse("A3^(1)")));
    EXPECT_EQ(oc.type.name(), "A3^(2)");
    const auto hinted = orbit_cartan(builtin_sigma(LieType::parse("A3^(1)")), LieType::parse("D3^(2)"));
    EXPECT_EQ(hinted.type.name(), "D3^(2)");
}

TEST(Fold, Identities) {
    for (const auto& c : kFoldings) {
        const auto f = build_folding(LieType::parse(c.base), c.order);
        const auto ids = folding_identities(f);
        EXPECT_EQ(ids.size(), 6u);
        for (const auto& id : ids) EXPECT_TRUE(id.ok) << f.name() << ": " << id.name;
    }
}

TEST(Fold, PstarSendsAdjacentRhoToRho) {
    for (const auto& c : kFoldings) {
        const auto f = build_folding(LieType::parse(c.base), c.order);
        EXPECT_EQ(f.pstar(Labels(f.adjacent->l, 1)), Labels(f.base->l, 1)) << f.name();
    }
}

TEST(Fold, PstarPreservesInnerProducts) {
    for (const auto& c : kFoldings) {
        const auto f = build_folding(LieType::parse(c.base), c.order);
        gen::for_all(20, [&](gen::Gen& g) {
            const auto x = g.labels(f.adjacent->l, -4, 4), y = g.labels(f.adjacent->l, -4, 4);
            EXPECT_EQ(f.base->form(f.pstar(x), f.pstar(y)), f.adjacent->form(x, y));
        });
    }
}

TEST(Fold, WeightSetBijections) {
    for (const auto& c : kFoldings) {
        const auto f = build_folding(LieType::parse(c.base), c.order);
        for (Int k = 0; k <= 3; ++k) {
            const auto sym = symmetric_weights(f, k);
            EXPECT_EQ(sym.size(), level_weights(*f.twisted, k).size()) << f.name() << " k=" << k;
            for (const auto& w : sym) EXPECT_TRUE(f.is_symmetric(w));
        }
    }
}

TEST(Fold, AnomalyIsPreserved) {
    for (const auto& c : kFoldings) {
        const auto f = build_folding(LieType::parse(c.base), c.order);
        for (Int k = 0; k <= 3; ++k)
            for (const auto& w : level_weights(*f.adjacent, k))
                EXPECT_EQ(conformal(*f.adjacent, k, w).m, conformal(*f.base, k, f.pstar(w)).m) << f.name() << gen::show(w);
    }
}

TEST(Fold, CorruptedFixtureIsRejected) {
    try {
        corrupt_fold_fixture();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnrecognizedFoldedType);
        EXPECT_TRUE(e.is_check_failure());
    }
}
