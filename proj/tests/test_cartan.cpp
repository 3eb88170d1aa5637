#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

using namespace twistfuse;

namespace {

const std::vector<std::string> kAffine = {"A1^(1)", "A2^(1)", "A3^(1)", "A5^(1)", "B2^(1)", "B3^(1)", "C2^(1)",
                                          "C3^(1)", "D4^(1)", "D5^(1)", "G2^(1)", "F4^(1)", "E6^(1)", "E7^(1)",
                                          "E8^(1)", "A3^(2)", "A5^(2)", "D3^(2)", "D4^(2)", "D5^(2)", "E6^(2)",
                                          "D4^(3)"};

void expect_error(ErrorCode code, auto&& f) {
    try {
        f();
        ADD_FAILURE() << "no error thrown";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

} // namespace

TEST(Cartan, ParsesNames) {
    EXPECT_EQ(LieType::parse("A3").kind, Kind::Finite);
    EXPECT_EQ(LieType::parse("A3^(1)").kind, Kind::Affine1);
    EXPECT_EQ(LieType::parse("E6^(2)").kind, Kind::Affine2);
    EXPECT_EQ(LieType::parse("D4^(3)").name(), "D4^(3)");
    expect_error(ErrorCode::InvalidArgument, [] { LieType::parse("Q2"); });
    expect_error(ErrorCode::InvalidArgument, [] { LieType::parse("A3^(4)"); });
}

TEST(Cartan, RejectsUnsupportedTypes) {
    for (const char* name : {"A4^(2)", "A2^(2)", "D3", "B1", "E9", "F3", "G3", "D5^(3)", "E7^(2)"})
        expect_error(ErrorCode::UnsupportedType, [&] { build_cartan(name); });
}

TEST(Cartan, MarksAndComarks) {
    auto a3 = build_cartan("A3^(1)");
    EXPECT_EQ(a3->marks, (Labels{1, 1, 1, 1}));
    EXPECT_EQ(a3->hdual, 4);
    EXPECT_EQ(build_cartan("A1^(1)")->hdual, 2);

    auto e62 = build_cartan("E6^(2)");
    EXPECT_EQ(e62->marks, (Labels{1, 2, 3, 2, 1}));
    EXPECT_EQ(e62->comarks, (Labels{1, 2, 3, 4, 2}));

    auto d43 = build_cartan("D4^(3)");
    EXPECT_EQ(d43->marks, (Labels{1, 2, 1}));
    EXPECT_EQ(d43->comarks, (Labels{1, 2, 3}));
}

TEST(Cartan, MarksMatchBruteForceNullVectors) {
    for (const auto& name : kAffine) {
        SCOPED_TRACE(name);
        auto c = build_cartan(name);
        if (c->l > 5) continue; // search space grows as 6^(l+1)
        EXPECT_EQ(oracle::null_vector_search(c->A), c->marks);
        EXPECT_EQ(oracle::null_vector_search(c->A.transpose()), c->comarks);
    }
}

TEST(Cartan, DualCoxeterNumbers) {
    const std::map<std::string, Int> expected = {{"A1^(1)", 2},  {"A5^(1)", 6},  {"B3^(1)", 5}, {"C3^(1)", 4},
                                                 {"D5^(1)", 8},  {"G2^(1)", 4},  {"F4^(1)", 9}, {"E6^(1)", 12},
                                                 {"E7^(1)", 18}, {"E8^(1)", 30}, {"D4^(3)", 6}, {"E6^(2)", 12}};
    for (const auto& [name, h] : expected) EXPECT_EQ(build_cartan(name)->hdual, h) << name;
}

TEST(Cartan, SymmetrizedMatrix) {
    for (const auto& name : kAffine) {
        auto c = build_cartan(name);
        EXPECT_TRUE((diagonal(c->d) * c->A.cast<Rational>()).is_symmetric()) << name;
        EXPECT_EQ(c->gram_roots, diagonal(c->d) * c->A.cast<Rational>()) << name;
    }
}

TEST(Cartan, FundamentalWeightProducts) {
    auto a1 = build_cartan("A1");
    EXPECT_EQ(a1->form({1}, {1}), Rational(1, 2));
    auto a2 = build_cartan("A2");
    EXPECT_EQ(a2->form({1, 0}, {0, 1}), Rational(1, 3));
    EXPECT_EQ(a2->form({1, 0}, {1, 0}), Rational(2, 3));
}

TEST(Cartan, HighestRootHasLengthTwoUntwisted) {
    for (const auto& name : kAffine) {
        auto c = build_cartan(name);
        if (c->type.kind != Kind::Affine1) continue;
        EXPECT_EQ(c->form(c->theta, c->theta), Rational(2)) << name;
    }
}

// alpha_i = sum_j A_ji omega_j (Kac convention), and (alpha_i^vee, omega_j) = delta_ij fixes the orientation of the gram matrix.
TEST(Cartan, CorootsPairDuallyWithFundamentalWeights) {
    for (const auto& name : kAffine) {
        SCOPED_TRACE(name);
        const auto& f = build_cartan(name)->finite_part();
        for (int i = 0; i < f.l; ++i) {
            Labels alpha(f.l);
            for (int j = 0; j < f.l; ++j) alpha[j] = f.cartan_fin(j, i);
            const Rational len = f.form(alpha, alpha);
            for (int j = 0; j < f.l; ++j) {
                Labels omega(f.l, 0);
                omega[j] = 1;
                EXPECT_EQ(Rational(2) * f.form(alpha, omega) / len, Rational(i == j ? 1 : 0));
            }
        }
    }
}

TEST(Cartan, FormIsSymmetricBilinear) {
    for (const char* name : {"A3", "B3", "C3", "G2", "F4", "E6"}) {
        auto c = build_cartan(name);
        gen::for_all(40, [&](gen::Gen& g) {
            const auto x = g.labels(c->l, -5, 5), y = g.labels(c->l, -5, 5), z = g.labels(c->l, -5, 5);
            const Int a = g.integer(-4, 4);
            EXPECT_EQ(c->form(x, y), c->form(y, x));
            EXPECT_EQ(c->form(detail::add(x, z, a), y), c->form(x, y) + Rational(a) * c->form(z, y));
        });
    }
}

TEST(Cartan, TwistedLongRootsHaveLengthTwiceTheOrder) {
    for (const char* name : {"A3^(2)", "D4^(2)", "E6^(2)", "D4^(3)"}) {
        auto c = build_cartan(name);
        const int r = c->type.twist();
        Rational longest = 0;
        for (int i = 1; i <= c->l; ++i) longest = std::max(longest, 2 * c->d[i]);
        EXPECT_EQ(longest, Rational(2 * r)) << name;
    }
}

TEST(Lattice, IndexOfScaledLattice) {
    const auto p = weight_lattice(3);
    EXPECT_EQ(lattice_index(p, scaled(p, Rational(2))), Rational(8));
    auto a3 = build_cartan("A3");
    EXPECT_EQ(lattice_index(p, root_lattice(*a3)), Rational(4));
    expect_error(ErrorCode::NotSublattice, [&] { lattice_index(root_lattice(*a3), p); });
}

TEST(Lattice, DoubleDualIsIdentity) {
    for (const char* name : {"A2^(1)", "B3^(1)", "G2^(1)", "A3^(2)", "D4^(3)"}) {
        auto c = build_cartan(name);
        const auto& g = c->finite_part().gram_weights;
        const auto m = c->M_basis;
        const auto dd = dual_lattice(dual_lattice(m, g), g);
        EXPECT_EQ(lattice_index(m, dd), Rational(1)) << name;
        EXPECT_EQ(lattice_index(dd, m), Rational(1)) << name;
    }
}

TEST(Lattice, ComarkPairingIsTheLevel) {
    auto c = build_cartan("E6^(2)");
    EXPECT_EQ(comark_pairing(*c, {1, 0, 0, 0}), 2);
    EXPECT_EQ(comark_pairing(*c, {0, 0, 0, 1}), 2);
}
