#include <gtest/gtest.h>

#include <json.hpp>

#include "cli_app.hpp"

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "twistfuse");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = twistfuse::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(Cli, SmatrixJson) {
    const auto r = cli({"smatrix", "A1", "--level", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["provenance"], "untwisted-S");
    EXPECT_EQ(j["rows"].size(), 2u);
    EXPECT_NEAR(j["re"][1][1].get<double>(), -std::sqrt(0.5), 1e-15);
    EXPECT_EQ(j["precision"], 53);
}

TEST(Cli, FloatsRoundTrip) {
    const auto r = cli({"smatrix", "A2", "--level", "2"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto s = twistfuse::untwisted_S(*twistfuse::build_cartan("A2^(1)"), 2);
    for (std::size_t i = 0; i < s.nrows(); ++i)
        for (std::size_t c = 0; c < s.ncols(); ++c) EXPECT_EQ(j["re"][i][c].get<double>(), s(i, c).re);
}

TEST(Cli, DiagramTwistEmitsBothMatrices) {
    const auto r = cli({"smatrix", "A3", "--level", "1", "--twist", "diagram"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["twisted_sector"]["provenance"], "twisted-sector-S");
    EXPECT_EQ(j["untwisted"]["cols"].size(), j["twisted_sector"]["cols"].size());
}

TEST(Cli, ExtendedPrecision) {
    const auto r = cli({"--precision-bits", "200", "smatrix", "A1", "--level", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["precision"], 200);
}

TEST(Cli, FusionTriplePrintsInteger) {
    const auto r = cli({"fusion", "A1", "--level", "1", "1", "1", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1\n");
    EXPECT_EQ(cli({"fusion", "A3", "--level", "1", "--pattern", "1,s,s", "0,0,1", "0,0", "1,0"}).out, "1\n");
}

TEST(Cli, FusionTableJson) {
    const auto r = cli({"fusion", "A2", "--level", "1"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["entries"].size(), 27u);
    EXPECT_EQ(j["pattern"], "1,1,1");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli({"smatrix", "A20", "--level", "1"}).code, 1);
    EXPECT_EQ(cli({"fusion", "A3", "--level", "1", "--pattern", "s,s,s"}).code, 1);
    EXPECT_EQ(cli({"fusion", "D4", "--order", "3", "--level", "1", "--pattern", "s,s,1"}).code, 1);
    EXPECT_EQ(cli({"smatrix", "A3^(2)", "--level", "1"}).code, 1);
    EXPECT_EQ(cli({"frobnicate"}).code, 1);
    EXPECT_EQ(cli({"smatrix", "A2", "--level", "1", "--output", "xml"}).code, 1);
    EXPECT_EQ(cli({"selfcheck", "--fixture", "corrupt-fold"}).code, 2);
    EXPECT_EQ(cli({"fold-info", "B3"}).code, 1);
}

TEST(Cli, TinySelfcheck) {
    const auto r = cli({"--output", "table", "selfcheck", "--grid", "tiny"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, FoldInfoAndWeights) {
    const auto f = cli({"fold-info", "D4", "--order", "3"});
    ASSERT_EQ(f.code, 0) << f.err;
    const auto j = nlohmann::json::parse(f.out);
    for (const auto& id : j["identities"]) EXPECT_TRUE(id["holds"].get<bool>()) << id.dump();
    const auto w = cli({"weights", "E6", "--level", "1"});
    ASSERT_EQ(w.code, 0);
    EXPECT_FALSE(nlohmann::json::parse(w.out).empty());
}

TEST(Cli, Branch) {
    const auto r = cli({"--output", "table", "branch", "A3", "--weight", "0,1,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("5"), std::string::npos);
    EXPECT_EQ(cli({"branch", "A3", "--weight", "1,x,0"}).code, 1);
}
