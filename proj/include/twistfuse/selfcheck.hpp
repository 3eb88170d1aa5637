#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "twistfuse/cartan.hpp"
#include "twistfuse/fold.hpp"
#include "twistfuse/fusion.hpp"
#include "twistfuse/rep.hpp"
#include "twistfuse/smatrix.hpp"

namespace twistfuse {

enum class Grid { Tiny, Default };

inline Grid parse_grid(std::string_view s) {
    if (s == "tiny") return Grid::Tiny;
    if (s == "default") return Grid::Default;
    throw Error(ErrorCode::InvalidArgument, "unknown grid '" + std::string(s) + "'");
}

struct SelfcheckOptions {
    Grid grid = Grid::Default;
    double integer_tolerance = 1e-6;
    double unitarity_tolerance = 1e-9;
    unsigned threads = 1;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0; // NaN for exact checks
    std::string detail;
    double seconds = 0;
};

struct FoldingCase {
    const char* type;
    int order;
    Int kmax;
};

/// The corrupted fixture: i -> -i mod 5 on A4^(1) is a valid diagram automorphism whose orbit
/// Cartan matrix is of the excluded type A4^(2).
inline OrbitCartan corrupt_fold_fixture() {
    return orbit_cartan(make_automorphism(build_cartan("A4^(1)"), {0, 4, 3, 2, 1}));
}

inline std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& opt,
                                              const std::function<void(const CheckResult&)>& report = {}) {
    const bool tiny = opt.grid == Grid::Tiny;
    SOptions so;
    so.threads = opt.threads;
    FusionOptions fo;
    fo.integer_tolerance = opt.integer_tolerance;
    fo.threads = opt.threads;
    fo.s = so;
    const double exact = std::numeric_limits<double>::quiet_NaN();
    std::vector<CheckResult> out;
    auto check = [&](std::string name, const std::function<double()>& body, double tol) {
        CheckResult r;
        r.name = std::move(name);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            r.residual = body();
            r.passed = std::isnan(r.residual) ? true : r.residual < tol;
        } catch (const Error& e) {
            r.passed = false;
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (report) report(r);
        out.push_back(std::move(r));
    };
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw Error(ErrorCode::MethodMismatch, what);
    };

    const std::vector<const char*> untwisted = tiny ? std::vector<const char*>{"A1^(1)", "A2^(1)"}
                                                    : std::vector<const char*>{"A1^(1)", "A2^(1)", "A3^(1)", "B2^(1)",
                                                                               "C2^(1)", "G2^(1)", "D4^(1)"};
    const Int kmax = tiny ? 2 : 3;
    const std::vector<FoldingCase> foldings =
        tiny ? std::vector<FoldingCase>{{"A3^(1)", 0, 1}}
             : std::vector<FoldingCase>{{"A3^(1)", 0, 2}, {"D4^(1)", 2, 1}, {"D4^(1)", 3, 1}, {"E6^(1)", 0, 1}};

    check("cartan invariants", [&] {
        for (const char* name : {"A1^(1)", "A3^(1)", "B3^(1)", "C3^(1)", "D4^(1)", "G2^(1)", "F4^(1)", "E6^(1)", "A3^(2)",
                                 "D3^(2)", "A5^(2)", "D4^(3)", "E6^(2)"}) {
            const auto c = build_cartan(name);
            const QMatrix da = diagonal(c->d) * c->A.cast<Rational>();
            require(da.is_symmetric(), std::string(name) + ": diag(d) A not symmetric");
            Int h = 0;
            for (auto x : c->comarks) h += x;
            require(h == c->hdual, std::string(name) + ": h^vee");
            require(c->form(c->theta, c->theta) == Rational(2 * c->marks[0]), std::string(name) + ": (theta, theta)");
        }
        return exact;
    }, 0);

    check("S symmetric and unitary", [&] {
        double worst = 0;
        for (const char* name : untwisted)
            for (Int k = 1; k <= kmax; ++k) {
                const auto s = untwisted_S(*build_cartan(name), k, so);
                worst = std::max({worst, symmetry_residual(s), unitarity_residual(s)});
            }
        return worst;
    }, opt.unitarity_tolerance);

    check("Verlinde = Kac-Walton", [&] {
        for (const char* name : untwisted)
            for (Int k = 1; k <= kmax; ++k) fusion_table(*build_cartan(name), k, fo);
        return exact;
    }, 0);

    check("folding identities", [&] {
        for (const auto& fc : foldings) {
            const auto f = build_folding(LieType::parse(fc.type), fc.order);
            for (const auto& id : folding_identities(f)) require(id.ok, f.name() + ": " + id.name);
            for (Int k = 0; k <= 3; ++k)
                for (const auto& w : level_weights(*f.adjacent, k))
                    require(conformal(*f.adjacent, k, w).m == conformal(*f.base, k, f.pstar(w)).m, f.name() + ": anomaly");
        }
        return exact;
    }, 0);

    check("weight-set bijections", [&] {
        for (const auto& fc : foldings) {
            const auto f = build_folding(LieType::parse(fc.type), fc.order);
            for (Int k = 0; k <= 3; ++k)
                require(level_weights(*f.twisted, k).size() == symmetric_weights(f, k).size(), f.name() + ": counts");
        }
        return exact;
    }, 0);

    check("twisted a-matrix unitary", [&] {
        double worst = 0;
        for (const auto& fc : foldings) {
            const auto f = build_folding(LieType::parse(fc.type), fc.order);
            for (Int k = 1; k <= fc.kmax; ++k) worst = std::max(worst, unitarity_residual(twisted_a(f, k, so)));
        }
        return worst;
    }, opt.unitarity_tolerance);

    check("twisted Verlinde = twisted Kac-Walton", [&] {
        for (const auto& fc : foldings) {
            const auto f = build_folding(LieType::parse(fc.type), fc.order);
            for (Int k = 1; k <= fc.kmax; ++k) {
                fusion_table(f, k, parse_pattern("1,s,s"), fo);
                fusion_table(f, k, parse_pattern("s,1,s"), fo);
            }
        }
        return exact;
    }, 0);

    check("(s,s,1) integrality and unit law", [&] {
        double worst = 0;
        const auto f = build_folding(LieType::parse("A3^(1)"), 0);
        for (Int k = 1; k <= kmax; ++k) {
            const auto d = twisted_modular_data(f, k, so);
            const auto tw = level_weights(*f.twisted, k);
            const Labels vac(f.base->l, 0);
            for (const auto& a : tw) {
                int partners = 0;
                for (const auto& b : tw) {
                    const auto sum = twisted_verlinde_sum(d, {Sector::Sigma, a}, {Sector::Sigma, b}, {Sector::Untwisted, vac});
                    worst = std::max(worst, integer_residual(sum));
                    const Int n = round_coefficient(sum, opt.integer_tolerance);
                    require(n <= 1, "vacuum coefficient above 1");
                    partners += static_cast<int>(n);
                }
                require(partners == 1, "sigma-sector weight without a unique dual");
            }
        }
        return worst;
    }, opt.integer_tolerance);

    check("representation conservation", [&] {
        for (const char* name : untwisted) {
            const auto c = build_cartan(name);
            const auto ws = level_weights(*c, kmax);
            for (const auto& a : ws) {
                require(weight_system(*c, a)->total() == dim(*c, a), c->id + ": Freudenthal mass");
                for (const auto& b : ws)
                    require(table_dimension(*c, tensor_decompose(*c, a, b)) == dim(*c, a) * dim(*c, b), c->id + ": tensor");
            }
        }
        for (const auto& fc : foldings) {
            const auto f = build_folding(LieType::parse(fc.type), fc.order);
            const auto& sub = f.twisted->finite_part();
            for (const auto& w : level_weights(*f.base, fc.kmax))
                require(table_dimension(sub, branch(*f.base, sub, f.iota_dual, w)) == dim(*f.base, w), f.name() + ": branch");
        }
        return exact;
    }, 0);

    return out;
}

} // namespace twistfuse
