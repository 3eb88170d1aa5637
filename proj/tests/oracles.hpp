#pragma once

// Independent reference computations. These avoid the library's algorithms wherever a
// slower or closed-form route exists, so agreement is meaningful.

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "twistfuse/twistfuse.hpp"

namespace oracle {

using twistfuse::Int;
using twistfuse::Labels;

inline constexpr double pi = 3.14159265358979323846;

/// sqrt(2/(k+2)) sin(pi (a+1)(b+1)/(k+2))
inline double a1_s(Int k, Int a, Int b) {
    const double t = static_cast<double>(k + 2);
    return std::sqrt(2.0 / t) * std::sin(pi * static_cast<double>((a + 1) * (b + 1)) / t);
}

/// Verlinde sum for A1 at level k built from the sine formula.
inline double a1_verlinde(Int k, Int a, Int b, Int c) {
    double n = 0;
    for (Int r = 0; r <= k; ++r) n += a1_s(k, a, r) * a1_s(k, b, r) * a1_s(k, c, r) / a1_s(k, 0, r);
    return n;
}

/// Truncated Clebsch-Gordan rule for su(2) at level k.
inline Int a1_fusion(Int k, Int a, Int b, Int c) {
    if ((a + b + c) % 2 != 0) return 0;
    return (c >= std::abs(a - b) && c <= std::min(a + b, 2 * k - a - b)) ? 1 : 0;
}

/// Smallest positive integer vector v (entries <= bound) with m v = 0; rows of m as given.
inline std::optional<Labels> null_vector_search(const twistfuse::IMatrix& m, Int bound = 6) {
    const std::size_t n = m.cols();
    Labels v(n, 1);
    std::optional<Labels> best;
    auto total = [](const Labels& x) { return std::accumulate(x.begin(), x.end(), Int{0}); };
    while (true) {
        bool zero = true;
        for (std::size_t i = 0; i < m.rows() && zero; ++i) {
            Int s = 0;
            for (std::size_t j = 0; j < n; ++j) s += m(i, j) * v[j];
            zero = s == 0;
        }
        if (zero && (!best || total(v) < total(*best))) best = v;
        std::size_t pos = 0;
        while (pos < n && v[pos] == bound) v[pos++] = 1;
        if (pos == n) break;
        ++v[pos];
    }
    return best;
}

/// Weyl group elements as integer matrices on Dynkin labels, by closure under left
/// multiplication with the simple reflections.
inline std::vector<std::vector<Int>> weyl_matrices(const twistfuse::IMatrix& a) {
    const std::size_t l = a.rows();
    auto reflection = [&](std::size_t s) {
        std::vector<Int> r(l * l, 0);
        for (std::size_t i = 0; i < l; ++i) r[i * l + i] = 1;
        for (std::size_t j = 0; j < l; ++j) r[j * l + s] -= a(j, s);
        return r;
    };
    auto mul = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
        std::vector<Int> z(l * l, 0);
        for (std::size_t i = 0; i < l; ++i)
            for (std::size_t k = 0; k < l; ++k)
                for (std::size_t j = 0; j < l; ++j) z[i * l + j] += x[i * l + k] * y[k * l + j];
        return z;
    };
    std::vector<std::vector<Int>> gens;
    for (std::size_t s = 0; s < l; ++s) gens.push_back(reflection(s));
    std::vector<Int> id(l * l, 0);
    for (std::size_t i = 0; i < l; ++i) id[i * l + i] = 1;
    std::set<std::vector<Int>> seen{id};
    std::vector<std::vector<Int>> queue{id};
    for (std::size_t q = 0; q < queue.size(); ++q)
        for (const auto& g : gens) {
            auto next = mul(g, queue[q]);
            if (seen.insert(next).second) queue.push_back(next);
        }
    return queue;
}

/// Determinant sign of an integer matrix (for epsilon(w) of a reflection product).
inline int det_sign(std::vector<Int> m, std::size_t l) {
    std::vector<double> a(m.begin(), m.end());
    double det = 1;
    for (std::size_t c = 0; c < l; ++c) {
        std::size_t p = c;
        for (std::size_t r = c; r < l; ++r)
            if (std::abs(a[r * l + c]) > std::abs(a[p * l + c])) p = r;
        if (a[p * l + c] == 0) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < l; ++j) std::swap(a[p * l + j], a[c * l + j]);
            det = -det;
        }
        det *= a[c * l + c];
        for (std::size_t r = c + 1; r < l; ++r) {
            const double f = a[r * l + c] / a[c * l + c];
            for (std::size_t j = c; j < l; ++j) a[r * l + j] -= f * a[c * l + j];
        }
    }
    return det > 0 ? 1 : -1;
}

/// Classical Weyl group orders.
inline Int weyl_order(char family, int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    switch (family) {
    case 'A': return f * (n + 1);
    case 'B':
    case 'C': return (Int{1} << n) * f;
    case 'D': return (Int{1} << (n - 1)) * f;
    case 'G': return 12;
    case 'F': return 1152;
    case 'E': return n == 6 ? 51840 : n == 7 ? 2903040 : 696729600;
    }
    return 0;
}

struct BruteFold {
    int sign = 0;
    std::optional<Labels> rep;
};

/// Exhaustive search for x in the closed level-t alcove image under W-bar and translations by
/// t M (box of radius `box` in the M basis). Interior hit gives (eps(w), image); a boundary hit
/// means x lies on an affine wall.
inline BruteFold brute_force_fold(const twistfuse::CartanDatum& affine, Int k, const Labels& x, Int box) {
    using twistfuse::Rational;
    const auto& fin = affine.finite_part();
    const std::size_t l = static_cast<std::size_t>(affine.l);
    const Int t = k + affine.hdual;
    const auto ws = weyl_matrices(fin.cartan_fin);
    std::vector<Labels> basis;
    for (const auto& v : affine.M_basis.basis) basis.push_back(twistfuse::to_integral(v));
    std::vector<Labels> shifts;
    Labels n(l, -box);
    while (true) {
        Labels s(l, 0);
        for (std::size_t b = 0; b < l; ++b)
            for (std::size_t i = 0; i < l; ++i) s[i] += t * n[b] * basis[b][i];
        shifts.push_back(s);
        std::size_t pos = 0;
        while (pos < l && n[pos] == box) n[pos++] = -box;
        if (pos == l) break;
        ++n[pos];
    }
    std::optional<BruteFold> interior;
    bool boundary = false;
    for (const auto& w : ws) {
        Labels wx(l, 0);
        for (std::size_t i = 0; i < l; ++i)
            for (std::size_t j = 0; j < l; ++j) wx[i] += w[i * l + j] * x[j];
        for (const auto& s : shifts) {
            Labels y(l);
            Int level = 0;
            bool nonneg = true, positive = true;
            for (std::size_t i = 0; i < l; ++i) {
                y[i] = wx[i] + s[i];
                nonneg = nonneg && y[i] >= 0;
                positive = positive && y[i] > 0;
                level += affine.comarks[i + 1] * y[i];
            }
            if (!nonneg || level > t) continue;
            if (positive && level < t) interior = BruteFold{det_sign(w, l), y};
            else boundary = true;
        }
    }
    if (boundary) return {};
    return interior.value_or(BruteFold{});
}

/// Tensor product by multiplying characters and peeling highest weights.
inline std::map<Labels, Int> character_product(const twistfuse::CartanDatum& fin, const Labels& a, const Labels& b) {
    using twistfuse::weight_system;
    std::map<Labels, Int> prod;
    for (const auto& [u, m] : weight_system(fin, a)->mults)
        for (const auto& [v, n] : weight_system(fin, b)->mults) {
            Labels s(u.size());
            for (std::size_t i = 0; i < s.size(); ++i) s[i] = u[i] + v[i];
            prod[s] += m * n;
        }
    // heights in simple-root coordinates pick a maximal weight
    const auto cinv = twistfuse::inverse(fin.cartan_fin.cast<twistfuse::Rational>());
    auto height = [&](const Labels& w) {
        twistfuse::Rational h = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = 0; j < w.size(); ++j) h += cinv(i, j) * w[j];
        return h;
    };
    std::map<Labels, Int> out;
    while (!prod.empty()) {
        auto top = prod.begin();
        for (auto it = prod.begin(); it != prod.end(); ++it)
            if (height(it->first) > height(top->first)) top = it;
        const Labels hw = top->first;
        const Int m = top->second;
        out[hw] += m;
        for (const auto& [w, n] : weight_system(fin, hw)->mults) {
            auto it = prod.find(w);
            it->second -= m * n;
            if (it->second == 0) prod.erase(it);
        }
    }
    return out;
}

} // namespace oracle
