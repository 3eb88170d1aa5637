#pragma once

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "twistfuse/extended.hpp"
#include "twistfuse/io.hpp"
#include "twistfuse/selfcheck.hpp"
#include "twistfuse/twistfuse.hpp"

namespace twistfuse::cli {

struct RunConfig {
    std::string type;
    Int level = 1;
    std::string twist = "none";
    int order = 0;
    int precision_bits = 53;
    double integer_tolerance = 1e-6;
    double unitarity_tolerance = 1e-9;
    std::string output = "json";
    unsigned parallelism = 0;
};

inline LieType untwisted_type(const std::string& spec) {
    LieType t = LieType::parse(spec);
    if (t.kind == Kind::Finite) t.kind = Kind::Affine1;
    if (t.kind != Kind::Affine1) throw Error(ErrorCode::InvalidArgument, "expected an untwisted type such as A3");
    return t;
}

inline Labels parse_weight(const std::string& text) {
    Labels w;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            w.push_back(std::stoll(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, "bad weight '" + text + "'");
        }
    }
    return w;
}

class App {
public:
    App(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(int argc, const char* const* argv) {
        CLI::App app{"Twisted and untwisted fusion rules of affine VOAs"};
        app.require_subcommand(1);
        app.fallthrough();
        app.add_option("--precision-bits", cfg_.precision_bits, "float precision in bits (53 = double)")->check(CLI::Range(24, 4096));
        app.add_option("--integer-tolerance", cfg_.integer_tolerance)->check(CLI::PositiveNumber);
        app.add_option("--unitarity-tolerance", cfg_.unitarity_tolerance)->check(CLI::PositiveNumber);
        app.add_option("--output", cfg_.output)->check(CLI::IsMember({"json", "table"}));
        app.add_option("--parallelism,--threads", cfg_.parallelism, "worker threads, 0 = all cores");

        auto typed = [&](CLI::App* sub, bool level) {
            sub->add_option("type", cfg_.type, "Lie type, e.g. A3")->required();
            if (level) sub->add_option("--level,-k", cfg_.level)->check(CLI::NonNegativeNumber);
            sub->add_option("--twist", cfg_.twist)->check(CLI::IsMember({"none", "diagram"}));
            sub->add_option("--order", cfg_.order, "automorphism order for D4 (2 or 3)");
        };
        auto* smatrix = app.add_subcommand("smatrix", "modular S-matrices");
        typed(smatrix, true);

        auto* fusion = app.add_subcommand("fusion", "fusion coefficients");
        typed(fusion, true);
        std::optional<std::string> pattern;
        std::string method = "both";
        std::vector<std::string> triple;
        fusion->add_option("--pattern", pattern, "sector pattern such as 1,s,s");
        fusion->add_option("--method", method)->check(CLI::IsMember({"both", "verlinde", "kac-walton"}));
        fusion->add_option("triple", triple, "three weights, each a comma list of labels")->expected(3);

        auto* fold_info = app.add_subcommand("fold-info", "folding maps and identities");
        typed(fold_info, false);

        auto* weights = app.add_subcommand("weights", "level-k dominant weights");
        typed(weights, true);

        auto* branch_cmd = app.add_subcommand("branch", "restrict to the fixed-point subalgebra");
        typed(branch_cmd, false);
        std::string weight;
        branch_cmd->add_option("--weight", weight)->required();

        auto* selfcheck = app.add_subcommand("selfcheck", "run the invariant suite");
        std::string grid = "default", fixture;
        selfcheck->add_option("--grid", grid)->check(CLI::IsMember({"tiny", "default"}));
        selfcheck->add_option("--fixture", fixture, "error-path fixture")->check(CLI::IsMember({"corrupt-fold"}));

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            std::ostringstream o, er;
            const int code = app.exit(e, o, er);
            out_ << o.str();
            err_ << er.str();
            return code == 0 ? 0 : 1;
        }
        try {
            if (*smatrix) return cmd_smatrix();
            if (*fusion) return cmd_fusion(pattern, method, triple);
            if (*fold_info) return cmd_fold_info();
            if (*weights) return cmd_weights();
            if (*branch_cmd) return cmd_branch(weight);
            if (const char* env = std::getenv("TWISTFUSE_GRID"); env && *env) grid = env;
            return cmd_selfcheck(grid, fixture);
        } catch (const Error& e) {
            err_ << "error: " << e.what() << "\n";
            return e.is_check_failure() ? 2 : 1;
        }
    }

private:
    std::ostream& out_;
    std::ostream& err_;
    RunConfig cfg_;

    bool json() const { return cfg_.output == "json"; }
    SOptions s_options() const { return {cfg_.parallelism, {}, cfg_.precision_bits}; }

    FoldingData folding() const { return build_folding(untwisted_type(cfg_.type), cfg_.order); }

    template <class Real>
    int smatrix_impl() {
        const auto affine = build_cartan(untwisted_type(cfg_.type));
        const auto opt = s_options();
        io::Writer w;
        const auto s = untwisted_S<Real>(*affine, cfg_.level, opt);
        double worst = std::max(static_cast<double>(symmetry_residual(s)), static_cast<double>(unitarity_residual(s)));
        if (cfg_.twist == "none") {
            emit(w, io::to_json(w, s.to_double()), io::text_table(s.to_double()));
        } else {
            const auto f = folding();
            const auto a = twisted_sector_S<Real>(f, cfg_.level, opt);
            worst = std::max(worst, static_cast<double>(unitarity_residual(a)));
            const auto restricted = select_columns(s, a.cols).to_double();
            io::Json j{{"schema", 1},
                       {"untwisted", io::to_json(w, restricted)},
                       {"twisted_sector", io::to_json(w, a.to_double())}};
            emit(w, j, io::text_table(restricted) + "\n" + io::text_table(a.to_double()));
        }
        err_ << fmt::format("max symmetry/unitarity residual {:.3g}\n", worst);
        if (!(worst < cfg_.unitarity_tolerance)) {
            err_ << "error: unitarity check failed\n";
            return 2;
        }
        return 0;
    }

    int cmd_smatrix() {
        if (cfg_.precision_bits <= 53) return smatrix_impl<double>();
        PrecisionScope scope(cfg_.precision_bits);
        return smatrix_impl<Extended>();
    }

    int cmd_fusion(const std::optional<std::string>& pattern_text, const std::string& method, const std::vector<std::string>& triple) {
        const auto type = untwisted_type(cfg_.type);
        const bool twisted = cfg_.twist == "diagram" || (pattern_text && pattern_text->find_first_of("sS") != std::string::npos);
        const Pattern pat = parse_pattern(pattern_text.value_or(twisted ? "1,s,s" : "1,1,1"));
        FusionOptions fo{cfg_.integer_tolerance, cfg_.parallelism,
                         method == "verlinde" ? Method::Verlinde : method == "kac-walton" ? Method::KacWalton : Method::Both,
                         s_options()};
        std::optional<FoldingData> f;
        if (twisted) {
            f = build_folding(type, cfg_.order);
            check_pattern(pat, f->p());
        }
        if (!triple.empty()) {
            std::array<SectorLabel, 3> m;
            for (std::size_t i = 0; i < 3; ++i) m[i] = {pat[i], parse_weight(triple[i])};
            const Int n = twisted ? single_twisted(*f, pat, m, fo) : single_untwisted(*build_cartan(type), m, fo);
            out_ << n << "\n";
            return 0;
        }
        const auto t = twisted ? fusion_table(*f, cfg_.level, pat, fo) : fusion_table(*build_cartan(type), cfg_.level, fo);
        io::Writer w;
        emit(w, io::to_json(t), io::text_table(t));
        return 0;
    }

    Int single_untwisted(const CartanDatum& affine, const std::array<SectorLabel, 3>& m, const FusionOptions& fo) const {
        const Int k = cfg_.level;
        if (k == 0) return kac_walton(affine, 0, m[0].weight, m[1].weight, m[2].weight);
        std::optional<Int> v, kw;
        if (fo.method != Method::KacWalton)
            v = verlinde(untwisted_S<double>(affine, k, fo.s), m[0].weight, m[1].weight, m[2].weight, fo.integer_tolerance);
        if (fo.method != Method::Verlinde) kw = kac_walton(affine, k, m[0].weight, m[1].weight, m[2].weight);
        return agree(v, kw);
    }

    Int single_twisted(const FoldingData& f, const Pattern& pat, const std::array<SectorLabel, 3>& m, const FusionOptions& fo) const {
        const Int k = cfg_.level;
        std::optional<Int> v, kw;
        const bool ss = pat[0] == Sector::Sigma && pat[1] == Sector::Sigma;
        if (fo.method != Method::KacWalton || ss)
            v = twisted_verlinde(twisted_modular_data<double>(f, k, fo.s), m[0], m[1], m[2], fo.integer_tolerance);
        if (fo.method != Method::Verlinde && !ss) {
            if (pat[0] == Sector::Untwisted && pat[1] == Sector::Untwisted)
                kw = kac_walton(*f.base, k, m[0].weight, m[1].weight, m[2].weight);
            else if (pat[0] == Sector::Untwisted)
                kw = twisted_kac_walton(f, k, m[0].weight, m[1].weight, m[2].weight);
            else
                kw = twisted_kac_walton(f, k, m[1].weight, m[0].weight, m[2].weight);
        }
        return agree(v, kw);
    }

    static Int agree(const std::optional<Int>& v, const std::optional<Int>& kw) {
        if (v && kw && *v != *kw)
            throw Error(ErrorCode::MethodMismatch, fmt::format("verlinde {} vs kac-walton {}", *v, *kw));
        return v ? *v : *kw;
    }

    int cmd_fold_info() {
        const auto f = folding();
        io::Writer w;
        std::vector<std::vector<std::string>> rows;
        for (const auto& id : folding_identities(f)) rows.push_back({id.name, id.ok ? "holds" : "FAILS"});
        emit(w, io::to_json(f),
             fmt::format("{} -> twisted {}, adjacent {}, r = {}\n", f.name(), f.twisted->id, f.adjacent->id, f.r) +
                 io::text_table({"identity", "status"}, rows));
        for (const auto& id : folding_identities(f))
            if (!id.ok) return 2;
        return 0;
    }

    int cmd_weights() {
        const auto type = untwisted_type(cfg_.type);
        const auto affine = build_cartan(type);
        io::Json j{{"schema", 1}, {"algebra", affine->id}, {"level", cfg_.level}, {"weights", io::labels(level_weights(*affine, cfg_.level))}};
        std::vector<std::vector<std::string>> rows;
        for (const auto& x : level_weights(*affine, cfg_.level)) rows.push_back({"untwisted", io::format_labels(x), std::to_string(dim(*affine, x))});
        if (cfg_.twist == "diagram") {
            const auto f = folding();
            j["symmetric"] = io::labels(symmetric_weights(f, cfg_.level));
            j["twisted"] = io::labels(level_weights(*f.twisted, cfg_.level));
            j["adjacent"] = io::labels(level_weights(*f.adjacent, cfg_.level));
            for (const auto& x : symmetric_weights(f, cfg_.level)) rows.push_back({"symmetric", io::format_labels(x), std::to_string(dim(*affine, x))});
            for (const auto& x : level_weights(*f.twisted, cfg_.level))
                rows.push_back({"sigma", io::format_labels(x), std::to_string(dim(f.twisted->finite_part(), x))});
        }
        io::Writer w;
        emit(w, j, io::text_table({"sector", "weight", "dim"}, rows));
        return 0;
    }

    int cmd_branch(const std::string& weight) {
        const auto f = folding();
        const Labels lambda = parse_weight(weight);
        if (static_cast<int>(lambda.size()) != f.base->l || !is_dominant(lambda))
            throw Error(ErrorCode::InvalidArgument, "weight must be dominant with " + std::to_string(f.base->l) + " labels");
        const auto& sub = f.twisted->finite_part();
        const auto table = branch(*f.base, sub, f.iota_dual, lambda);
        io::Json j{{"schema", 1}, {"ambient", f.base->finite_part().id}, {"sub", sub.id}, {"weight", lambda},
                   {"dim", dim(*f.base, lambda)}, {"components", io::to_json(sub, table)}};
        std::vector<std::vector<std::string>> rows;
        for (const auto& [x, m] : table) rows.push_back({io::format_labels(x), std::to_string(m), std::to_string(dim(sub, x))});
        io::Writer w;
        emit(w, j, io::text_table({"weight", "mult", "dim"}, rows));
        return 0;
    }

    int cmd_selfcheck(const std::string& grid, const std::string& fixture) {
        if (fixture == "corrupt-fold") {
            corrupt_fold_fixture();
            err_ << "error: corrupted fixture was accepted\n";
            return 2;
        }
        SelfcheckOptions so{parse_grid(grid), cfg_.integer_tolerance, cfg_.unitarity_tolerance, cfg_.parallelism};
        io::Json checks = io::Json::array();
        io::Writer w;
        auto results = run_selfcheck(so, [&](const CheckResult& r) {
            if (!json())
                out_ << fmt::format("{} {:<40} residual {:<10} {:.2f}s{}\n", r.passed ? "PASS" : "FAIL", r.name,
                                    std::isnan(r.residual) ? "exact" : fmt::format("{:.2e}", r.residual), r.seconds,
                                    r.detail.empty() ? "" : "  " + r.detail);
        });
        const CheckResult* first_failure = nullptr;
        for (const auto& r : results) {
            checks.push_back({{"name", r.name},
                              {"passed", r.passed},
                              {"residual", std::isnan(r.residual) ? io::Json(nullptr) : w.number(r.residual)},
                              {"seconds", w.number(r.seconds)},
                              {"detail", r.detail}});
            if (!r.passed && !first_failure) first_failure = &r;
        }
        if (json()) out_ << w.dump(io::Json{{"schema", 1}, {"grid", grid}, {"checks", checks}}) << "\n";
        if (first_failure) {
            err_ << "error: check failed: " << first_failure->name << (first_failure->detail.empty() ? "" : " (" + first_failure->detail + ")") << "\n";
            return 2;
        }
        return 0;
    }

    void emit(const io::Writer& w, const io::Json& j, const std::string& table) {
        if (json()) out_ << w.dump(j) << "\n";
        else out_ << table;
    }
};

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) { return App(out, err).run(argc, argv); }

} // namespace twistfuse::cli
