#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "twistfuse/cartan.hpp"

namespace twistfuse {

struct WeylOptions {
    int max_rank = 6;
    std::size_t element_cap = 100000;
};

/// Finite Weyl group as integer matrices on Dynkin labels, with signs.
struct WeylGroup {
    std::string datum_id;
    int l = 0;
    std::vector<int> entries; // element e occupies entries[e*l*l, (e+1)*l*l), row-major
    std::vector<int> signs;

    std::size_t order() const { return signs.size(); }

    IMatrix element(std::size_t e) const {
        IMatrix m(l, l);
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) m(i, j) = entries[e * l * l + i * l + j];
        return m;
    }

    template <class T>
    std::vector<T> apply(std::size_t e, const std::vector<T>& v) const {
        std::vector<T> out(l, T(0));
        const int* m = entries.data() + e * l * l;
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) out[i] += T(m[i * l + j]) * v[j];
        return out;
    }
};

template <class T>
std::vector<T> simple_reflect(const CartanDatum& datum, int i, std::vector<T> v) {
    const auto& f = datum.finite_part();
    if (i < 1 || i > f.l) throw Error(ErrorCode::InvalidArgument, "reflection index out of range");
    const T c = v[i - 1];
    for (int j = 0; j < f.l; ++j) v[j] -= c * T(f.cartan_fin(j, i - 1));
    return v;
}

inline Weight simple_reflect(int i, const Weight& w) { return {w.datum, simple_reflect(*w.datum, i, w.coords)}; }

/// Breadth-first closure on the simple reflections, deduplicated by the image of rho.
inline WeylGroup generate_weyl(const CartanDatum& datum, const WeylOptions& opt = {}) {
    const auto& f = datum.finite_part();
    const int l = f.l;
    if (l > opt.max_rank)
        throw Error(ErrorCode::RankTooLarge, f.id + " has rank " + std::to_string(l) + " above the limit " + std::to_string(opt.max_rank));
    WeylGroup g;
    g.datum_id = f.id;
    g.l = l;
    std::vector<Labels> images{Labels(l, 1)};
    std::map<Labels, std::size_t> seen{{images[0], 0}};
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) g.entries.push_back(i == j ? 1 : 0);
    g.signs.push_back(1);
    for (std::size_t q = 0; q < images.size(); ++q) {
        for (int s = 0; s < l; ++s) {
            Labels img = images[q];
            const Int c = img[s];
            for (int j = 0; j < l; ++j) img[j] -= c * f.cartan_fin(j, s);
            if (seen.contains(img)) continue;
            if (images.size() >= opt.element_cap)
                throw Error(ErrorCode::RankTooLarge, f.id + ": Weyl group exceeds the element cap");
            seen.emplace(img, images.size());
            images.push_back(img);
            // new element = r_s * old
            const std::size_t base = q * l * l;
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < l; ++j) {
                    Int v = g.entries[base + i * l + j] - f.cartan_fin(i, s) * g.entries[base + s * l + j];
                    g.entries.push_back(static_cast<int>(v));
                }
            g.signs.push_back(-g.signs[q]);
        }
    }
    return g;
}

/// Shared Weyl groups keyed by finite datum id.
inline std::shared_ptr<const WeylGroup> weyl_group(const CartanDatum& datum, const WeylOptions& opt = {}) {
    static std::shared_mutex mu;
    static std::map<std::string, std::shared_ptr<const WeylGroup>> cache;
    const auto& id = datum.finite_part().id;
    {
        std::shared_lock lock(mu);
        if (auto it = cache.find(id); it != cache.end()) return it->second;
    }
    auto g = std::make_shared<const WeylGroup>(generate_weyl(datum, opt));
    std::unique_lock lock(mu);
    return cache.emplace(id, g).first->second;
}

template <class T>
struct DominantResult {
    std::vector<T> rep;
    int sign = 1; // 0 when the orbit meets a wall
    int reflections = 0;
};

/// Reflect at the most negative label (lowest index on ties) until dominant.
template <class T>
DominantResult<T> to_dominant(const CartanDatum& datum, std::vector<T> v) {
    const auto& f = datum.finite_part();
    DominantResult<T> r;
    while (true) {
        int at = -1;
        for (int i = 0; i < f.l; ++i)
            if (v[i] < T(0) && (at < 0 || v[i] < v[at])) at = i;
        if (at < 0) break;
        const T c = v[at];
        for (int j = 0; j < f.l; ++j) v[j] -= c * T(f.cartan_fin(j, at));
        ++r.reflections;
        if (r.reflections > 10000000) throw Error(ErrorCode::NonTermination, "dominant reduction did not terminate");
    }
    r.sign = (r.reflections % 2 == 0) ? 1 : -1;
    for (const auto& x : v)
        if (x == T(0)) r.sign = 0;
    r.rep = std::move(v);
    return r;
}

struct FoldResult {
    int sign = 0;
    std::optional<Labels> rep;
    int reflections_used = 0;
};

/// Signed reduction of a rho-shifted weight x into the open level-(k + h^vee) alcove.
inline FoldResult alcove_fold(const CartanDatum& affine, Int k, const Labels& x, std::size_t max_iterations = 10000000) {
    if (!affine.affine()) throw Error(ErrorCode::NotAffine, affine.id + " is finite");
    const int l = affine.l;
    const Int t = k + affine.hdual;
    Labels y(l + 1);
    y[0] = t - comark_pairing(affine, x);
    for (int i = 0; i < l; ++i) y[i + 1] = x[i];
    FoldResult out;
    while (true) {
        int at = -1;
        for (int i = 0; i <= l; ++i)
            if (y[i] < 0 && (at < 0 || y[i] < y[at])) at = i;
        if (at < 0) break;
        const Int c = y[at];
        for (int j = 0; j <= l; ++j) y[j] -= c * affine.A(j, at);
        if (static_cast<std::size_t>(++out.reflections_used) > max_iterations)
            throw Error(ErrorCode::NonTermination, "alcove folding exceeded the iteration cap");
    }
    for (auto v : y)
        if (v == 0) return out;
    out.sign = out.reflections_used % 2 == 0 ? 1 : -1;
    out.rep = Labels(y.begin() + 1, y.end());
    return out;
}

} // namespace twistfuse
