#pragma once

#include <fmt/format.h>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "twistfuse/cartan.hpp"
#include "twistfuse/fold.hpp"
#include "twistfuse/fusion.hpp"
#include "twistfuse/rep.hpp"
#include "twistfuse/smatrix.hpp"

namespace twistfuse::io {

using Json = nlohmann::ordered_json;

/// Builds JSON whose floats are emitted with 17 significant digits. nlohmann prints shortest
/// round-trip forms, so floats are stored as placeholder strings and substituted in dump().
class Writer {
public:
    Json number(double x) {
        floats_.push_back(fmt::format("{:.17g}", x));
        return Json(token(floats_.size() - 1));
    }

    std::string dump(const Json& j, int indent = 2) const {
        std::string s = j.dump(indent);
        std::string out;
        out.reserve(s.size());
        const std::string open = "\"" + std::string(kMark);
        std::size_t pos = 0;
        while (true) {
            const std::size_t at = s.find(open, pos);
            if (at == std::string::npos) break;
            out.append(s, pos, at - pos);
            std::size_t end = at + open.size();
            std::size_t idx = 0;
            while (std::isdigit(static_cast<unsigned char>(s[end]))) idx = idx * 10 + static_cast<std::size_t>(s[end++] - '0');
            out += floats_.at(idx);
            pos = end + 1; // closing quote
        }
        out.append(s, pos, std::string::npos);
        return out;
    }

private:
    static constexpr const char* kMark = "@@float:";
    static std::string token(std::size_t i) { return std::string(kMark) + std::to_string(i); }
    std::vector<std::string> floats_;
};

inline Json labels(const Labels& w) { return Json(w); }

inline Json labels(const std::vector<Labels>& ws) {
    Json a = Json::array();
    for (const auto& w : ws) a.push_back(w);
    return a;
}

inline Json rational(const Rational& q) { return is_integer(q) ? Json(q.numerator()) : Json(to_string(q)); }

inline Json matrix(const IMatrix& m) { return Json(m.to_rows()); }

inline Json matrix(const QMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational(m(i, j)));
        a.push_back(row);
    }
    return a;
}

inline Json vector(const QVector& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(rational(q));
    return a;
}

inline Json to_json(Writer& w, const ModularMatrix<double>& m) {
    Json re = Json::array(), im = Json::array();
    for (std::size_t i = 0; i < m.nrows(); ++i) {
        Json r = Json::array(), c = Json::array();
        for (std::size_t j = 0; j < m.ncols(); ++j) {
            r.push_back(w.number(m(i, j).re));
            c.push_back(w.number(m(i, j).im));
        }
        re.push_back(r);
        im.push_back(c);
    }
    return Json{{"schema", 1},          {"label", m.label},     {"rows", labels(m.rows)},
                {"cols", labels(m.cols)}, {"re", re},             {"im", im},
                {"provenance", to_string(m.provenance)}, {"precision", m.precision_bits}};
}

inline Json to_json(const SectorLabel& s) {
    return Json{{"sector", s.sector == Sector::Untwisted ? "1" : "s"}, {"weight", s.weight}};
}

inline Json to_json(const FusionTable& t) {
    Json entries = Json::array();
    for (const auto& e : t.entries)
        entries.push_back({{"m1", to_json(e.m1)}, {"m2", to_json(e.m2)}, {"m3", to_json(e.m3)}, {"N", e.N}, {"method", e.method}});
    return Json{{"schema", 1},           {"algebra", t.algebra}, {"level", t.level},
                {"twist", t.twist},      {"pattern", t.pattern}, {"entries", entries}};
}

inline Json to_json(const CartanDatum& c) {
    Json j{{"type", c.type.name()},
           {"id", c.id},
           {"l", c.l},
           {"A", matrix(c.A)},
           {"d", vector(c.d)},
           {"npos", c.npos},
           {"gram_weights", matrix(c.finite_part().gram_weights)},
           {"gram_roots", matrix(c.finite_part().gram_roots)},
           {"theta", c.theta}};
    if (c.affine()) {
        j["marks"] = c.marks;
        j["comarks"] = c.comarks;
        j["hdual"] = c.hdual;
        Json m = Json::array();
        for (const auto& v : c.M_basis.basis) m.push_back(vector(v));
        j["M_basis"] = m;
    }
    return j;
}

inline Json to_json(const FoldingData& f) {
    Json ids = Json::array();
    for (const auto& c : folding_identities(f)) ids.push_back({{"identity", c.name}, {"holds", c.ok}});
    return Json{{"schema", 1},
                {"base", to_json(*f.base)},
                {"twisted", to_json(*f.twisted)},
                {"adjacent", to_json(*f.adjacent)},
                {"p", f.p()},
                {"r", f.r},
                {"perm", f.sigma.perm},
                {"orbits", f.sigma.orbits()},
                {"orbit_cartan", matrix(f.orbit.Ahat)},
                {"orbit_to_adjacent", f.orbit.to_canonical},
                {"N", f.N},
                {"s", vector(f.s)},
                {"Pstar", matrix(f.Pstar)},
                {"phi", matrix(f.phi)},
                {"iota_dual", matrix(f.iota_dual)},
                {"identities", ids}};
}

inline Json to_json(const CartanDatum& sub, const DecompTable& t) {
    Json a = Json::array();
    for (const auto& [w, m] : t) a.push_back({{"weight", w}, {"mult", m}, {"dim", dim(sub, w)}});
    return a;
}

inline std::string format_labels(const Labels& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

inline std::string format_label(const SectorLabel& s) {
    return (s.sector == Sector::Sigma ? "s" : "") + format_labels(s.weight);
}

/// Aligned text table.
inline std::string text_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    std::string out;
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c) out += fmt::format("{:<{}}{}", r[c], width[c], c + 1 < r.size() ? "  " : "\n");
    };
    line(header);
    std::vector<std::string> rule;
    for (auto w : width) rule.push_back(std::string(w, '-'));
    line(rule);
    for (const auto& r : rows) line(r);
    return out;
}

inline std::string text_table(const FusionTable& t) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : t.entries)
        rows.push_back({format_label(e.m1), format_label(e.m2), format_label(e.m3), std::to_string(e.N), e.method});
    return fmt::format("{} level {} twist {} pattern {}\n", t.algebra, t.level, t.twist, t.pattern) +
           text_table({"m1", "m2", "m3", "N", "method"}, rows);
}

inline std::string text_table(const ModularMatrix<double>& m) {
    // values that print as zero lose their sign
    auto clean = [](double x) { return std::abs(x) < 5e-7 ? 0.0 : x; };
    std::vector<std::string> header{""};
    for (const auto& c : m.cols) header.push_back(format_labels(c));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < m.nrows(); ++i) {
        std::vector<std::string> r{format_labels(m.rows[i])};
        for (std::size_t j = 0; j < m.ncols(); ++j) r.push_back(fmt::format("{:.6f}{:+.6f}i", clean(m(i, j).re), clean(m(i, j).im)));
        rows.push_back(r);
    }
    return fmt::format("{} [{}]\n", m.label, to_string(m.provenance)) + text_table(header, rows);
}

} // namespace twistfuse::io
