#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "twistfuse/cartan.hpp"
#include "twistfuse/weyl.hpp"

namespace twistfuse {

struct RepOptions {
    Int dimension_cap = 1000000;
};

struct WeightSystem {
    Labels highest;
    std::map<Labels, Int> mults;

    Int total() const {
        Int s = 0;
        for (const auto& [w, m] : mults) s += m;
        return s;
    }
};

using DecompTable = std::map<Labels, Int>;

/// Finite labels lambda >= 0 with sum a_i^vee lambda_i <= k, in ascending lexicographic order.
inline std::vector<LeveledWeight> dominant_level_weights(const CartanDatum& affine, Int k) {
    if (!affine.affine()) throw Error(ErrorCode::NotAffine, affine.id + " is finite");
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "level must be non-negative");
    std::vector<LeveledWeight> out;
    Labels cur(affine.l, 0);
    auto rec = [&](auto&& self, int i, Int budget) -> void {
        if (i == affine.l) {
            out.push_back({k, cur});
            return;
        }
        const Int c = affine.comarks[i + 1];
        for (Int v = 0; v * c <= budget; ++v) {
            cur[i] = v;
            self(self, i + 1, budget - v * c);
        }
        cur[i] = 0;
    };
    rec(rec, 0, k);
    return out;
}

inline std::vector<Labels> level_weights(const CartanDatum& affine, Int k) {
    std::vector<Labels> out;
    for (auto& w : dominant_level_weights(affine, k)) out.push_back(std::move(w.finite));
    return out;
}

inline bool is_dominant(const Labels& x) {
    return std::all_of(x.begin(), x.end(), [](Int v) { return v >= 0; });
}

/// Weyl dimension formula, exact.
inline Int dim(const CartanDatum& datum, const Labels& lambda) {
    using boost::multiprecision::cpp_int;
    const auto& f = datum.finite_part();
    if (!is_dominant(lambda)) throw Error(ErrorCode::InvalidArgument, "dimension of a non-dominant weight");
    // (lambda + rho, alpha) = sum_j alpha_j d_j (lambda_j + 1); scale d to integers
    const Int den = lcm_denominators(f.d_fin);
    cpp_int num = 1, dnm = 1;
    for (const auto& a : f.positive_roots) {
        Int top = 0, bottom = 0;
        for (int j = 0; j < f.l; ++j) {
            const Int dj = (f.d_fin[j] * den).numerator();
            top += a[j] * dj * (lambda[j] + 1);
            bottom += a[j] * dj;
        }
        num *= top;
        dnm *= bottom;
    }
    if (num % dnm != 0) throw Error(ErrorCode::InvalidArgument, "Weyl dimension is not integral");
    const cpp_int q = num / dnm;
    if (q > cpp_int(std::numeric_limits<Int>::max())) throw Error(ErrorCode::DimensionCap, "dimension overflows 64 bits");
    return static_cast<Int>(q);
}

namespace detail {

struct ScaledForm {
    int l = 0;
    std::vector<Int> g; // integer gram of weights, scaled

    explicit ScaledForm(const CartanDatum& f) : l(f.l), g(f.l * f.l) {
        Int den = 1;
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) den = std::lcm(den, f.gram_weights(i, j).denominator());
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) g[i * l + j] = (f.gram_weights(i, j) * den).numerator();
    }
    Int operator()(const Labels& x, const Labels& y) const {
        Int s = 0;
        for (int i = 0; i < l; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < l; ++j) s += x[i] * g[i * l + j] * y[j];
        }
        return s;
    }
};

inline Labels add(Labels a, const Labels& b, Int scale = 1) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += scale * b[i];
    return a;
}

inline std::vector<Labels> positive_root_labels(const CartanDatum& f) {
    std::vector<Labels> out;
    for (const auto& r : f.positive_roots) out.push_back(labels_of_root(f.cartan_fin, r));
    return out;
}

} // namespace detail

/// Weight multiplicities by Freudenthal's formula over dominant weights, then W-orbits.
inline WeightSystem freudenthal(const CartanDatum& datum, const Labels& lambda, const RepOptions& opt = {}) {
    const auto& f = datum.finite_part();
    if (!is_dominant(lambda)) throw Error(ErrorCode::InvalidArgument, "highest weight must be dominant");
    const Int d = dim(f, lambda);
    if (d > opt.dimension_cap)
        throw Error(ErrorCode::DimensionCap, "dimension " + std::to_string(d) + " exceeds cap " + std::to_string(opt.dimension_cap));

    const detail::ScaledForm form(f);
    const auto roots = detail::positive_root_labels(f);
    const Labels rho(f.l, 1);

    // dominant weights below lambda: subtract positive roots staying dominant
    std::map<Labels, Int> depth{{lambda, 0}};
    std::vector<Labels> order{lambda};
    const QMatrix cinv = inverse(f.cartan_fin.cast<Rational>());
    auto height = [&](const Labels& x) {
        Rational h = 0;
        for (int i = 0; i < f.l; ++i)
            for (int j = 0; j < f.l; ++j) h += cinv(i, j) * x[j];
        return h;
    };
    for (std::size_t q = 0; q < order.size(); ++q)
        for (const auto& a : roots) {
            Labels nu = detail::add(order[q], a, -1);
            if (!is_dominant(nu) || depth.contains(nu)) continue;
            depth.emplace(nu, 0);
            order.push_back(nu);
        }
    const Rational top = height(lambda);
    std::vector<std::pair<Rational, Labels>> by_depth;
    for (const auto& w : order) by_depth.emplace_back(top - height(w), w);
    std::sort(by_depth.begin(), by_depth.end());

    std::map<Labels, Int> dom_mult;
    const Labels lr = detail::add(lambda, rho);
    const Int norm_top = form(lr, lr);
    for (const auto& [dep, mu] : by_depth) {
        if (mu == lambda) {
            dom_mult[mu] = 1;
            continue;
        }
        Int acc = 0;
        for (const auto& a : roots) {
            for (Int j = 1;; ++j) {
                const Labels nu = detail::add(mu, a, j);
                const auto red = to_dominant(f, nu);
                const auto it = dom_mult.find(red.rep);
                if (it == dom_mult.end()) break;
                acc += it->second * form(nu, a);
            }
        }
        const Labels mr = detail::add(mu, rho);
        const Int denom = norm_top - form(mr, mr);
        if (denom <= 0 || (2 * acc) % denom != 0)
            throw Error(ErrorCode::InvalidArgument, "Freudenthal recursion produced a non-integral multiplicity");
        dom_mult[mu] = 2 * acc / denom;
    }

    WeightSystem ws;
    ws.highest = lambda;
    for (const auto& [mu, m] : dom_mult) {
        if (m == 0) continue;
        for (const auto& w : detail::weyl_orbit(f.cartan_fin, mu)) ws.mults[w] = m;
    }
    return ws;
}

/// Write-once cache of weight systems keyed by (finite datum id, highest weight).
class WeightSystemCache {
public:
    std::shared_ptr<const WeightSystem> get(const CartanDatum& datum, const Labels& lambda, const RepOptions& opt = {}) {
        auto key = std::make_pair(datum.finite_part().id, lambda);
        {
            std::shared_lock lock(mu_);
            if (auto it = map_.find(key); it != map_.end()) return it->second;
        }
        auto ws = std::make_shared<const WeightSystem>(freudenthal(datum, lambda, opt));
        std::unique_lock lock(mu_);
        return map_.emplace(std::move(key), std::move(ws)).first->second;
    }

    std::size_t size() const {
        std::shared_lock lock(mu_);
        return map_.size();
    }

    static WeightSystemCache& global() {
        static WeightSystemCache cache;
        return cache;
    }

private:
    mutable std::shared_mutex mu_;
    std::map<std::pair<std::string, Labels>, std::shared_ptr<const WeightSystem>> map_;
};

inline std::shared_ptr<const WeightSystem> weight_system(const CartanDatum& datum, const Labels& lambda, const RepOptions& opt = {}) {
    return WeightSystemCache::global().get(datum, lambda, opt);
}

/// Klimyk: fold the weights of the smaller factor against the other highest weight.
inline DecompTable tensor_decompose(const CartanDatum& datum, Labels lambda, Labels mu, const RepOptions& opt = {}) {
    const auto& f = datum.finite_part();
    if (dim(f, mu) > dim(f, lambda)) std::swap(lambda, mu);
    const auto ws = weight_system(f, mu, opt);
    DecompTable acc;
    const Labels lr = detail::add(lambda, Labels(f.l, 1));
    for (const auto& [tau, m] : ws->mults) {
        const auto red = to_dominant(f, detail::add(lr, tau));
        if (red.sign == 0) continue;
        acc[detail::add(red.rep, Labels(f.l, 1), -1)] += red.sign * m;
    }
    DecompTable out;
    for (const auto& [w, m] : acc) {
        if (m < 0) throw Error(ErrorCode::NegativeMultiplicity, "Klimyk sum produced a negative multiplicity");
        if (m > 0) out.emplace(w, m);
    }
    return out;
}

/// Restrict the weight system of lambda through `restriction` and peel off sub-algebra irreps.
inline DecompTable branch(const CartanDatum& ambient, const CartanDatum& sub, const IMatrix& restriction,
                          const Labels& lambda, const RepOptions& opt = {}) {
    const auto& fa = ambient.finite_part();
    const auto& fs = sub.finite_part();
    if (restriction.rows() != static_cast<std::size_t>(fs.l) || restriction.cols() != static_cast<std::size_t>(fa.l))
        throw Error(ErrorCode::InvalidArgument, "restriction matrix has the wrong shape");

    // peel key: height in sub simple-root coordinates, then lexicographic
    const QMatrix cinv = inverse(fs.cartan_fin.cast<Rational>());
    QVector hq(fs.l, Rational(0));
    for (int i = 0; i < fs.l; ++i)
        for (int j = 0; j < fs.l; ++j) hq[j] += cinv(i, j);
    const Int hden = lcm_denominators(hq);
    Labels hvec(fs.l);
    for (int j = 0; j < fs.l; ++j) hvec[j] = (hq[j] * hden).numerator();
    auto key = [&](const Labels& x) { return std::make_pair(dot(hvec, x), x); };

    std::map<std::pair<Int, Labels>, Int> rest;
    const auto ws = weight_system(fa, lambda, opt);
    for (const auto& [w, m] : ws->mults) rest[key(restriction * w)] += m;

    DecompTable out;
    while (!rest.empty()) {
        auto it = std::prev(rest.end());
        if (it->second == 0) {
            rest.erase(it);
            continue;
        }
        const Labels nu = it->first.second;
        const Int m = it->second;
        if (m < 0 || !is_dominant(nu))
            throw Error(ErrorCode::NegativeMultiplicity, "branching residue is negative or non-dominant");
        out[nu] = m;
        for (const auto& [w, mw] : weight_system(fs, nu, opt)->mults) {
            auto slot = rest.find(key(w));
            if (slot == rest.end()) throw Error(ErrorCode::NegativeMultiplicity, "sub-algebra weight missing from restriction");
            slot->second -= m * mw;
            if (slot->second == 0) rest.erase(slot);
        }
    }
    return out;
}

inline Int table_dimension(const CartanDatum& datum, const DecompTable& t) {
    Int s = 0;
    for (const auto& [w, m] : t) s += m * dim(datum, w);
    return s;
}

} // namespace twistfuse
