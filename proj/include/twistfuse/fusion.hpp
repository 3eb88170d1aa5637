#pragma once

#include <array>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "twistfuse/fold.hpp"
#include "twistfuse/parallel.hpp"
#include "twistfuse/rep.hpp"
#include "twistfuse/smatrix.hpp"
#include "twistfuse/weyl.hpp"

namespace twistfuse {

enum class Sector { Untwisted, Sigma };

struct SectorLabel {
    Sector sector = Sector::Untwisted;
    Labels weight;

    bool operator==(const SectorLabel&) const = default;
    auto operator<=>(const SectorLabel&) const = default;
};

using Pattern = std::array<Sector, 3>;

inline Pattern parse_pattern(std::string_view text) {
    Pattern p{};
    std::size_t slot = 0;
    for (char ch : text) {
        if (ch == ',' || ch == ' ') continue;
        if (slot == 3) throw Error(ErrorCode::InvalidArgument, "pattern has more than three sectors");
        if (ch == '1' || ch == 'u') p[slot++] = Sector::Untwisted;
        else if (ch == 's' || ch == 'S') p[slot++] = Sector::Sigma;
        else throw Error(ErrorCode::InvalidArgument, "unknown sector '" + std::string(1, ch) + "'");
    }
    if (slot != 3) throw Error(ErrorCode::InvalidArgument, "pattern needs three sectors");
    return p;
}

inline std::string to_string(const Pattern& p) {
    std::string s;
    for (std::size_t i = 0; i < 3; ++i) {
        if (i) s += ',';
        s += p[i] == Sector::Untwisted ? '1' : 's';
    }
    return s;
}

/// Sector rule g3 = g1 g2 in Z/p. Patterns whose product is sigma^2 (p = 3) have no label here.
inline void check_pattern(const Pattern& pat, int p) {
    auto g = [](Sector s) { return s == Sector::Sigma ? 1 : 0; };
    if (p == 3 && pat[0] == Sector::Sigma && pat[1] == Sector::Sigma)
        throw Error(ErrorCode::UnsupportedSectorPattern, "pattern " + to_string(pat) + " needs the sigma^-1 sector S-matrix at p = 3");
    if ((g(pat[0]) + g(pat[1])) % p != g(pat[2]))
        throw Error(ErrorCode::SectorRuleViolation, "pattern " + to_string(pat) + " violates g3 = g1 g2");
}

enum class Method { Both, Verlinde, KacWalton };

struct FusionOptions {
    double integer_tolerance = 1e-6;
    unsigned threads = 1;
    Method method = Method::Both;
    SOptions s;
};

/// Distance of a Verlinde sum from the nearest integer, imaginary part included.
template <class Real>
double integer_residual(const Complex<Real>& sum) {
    using std::abs;
    using std::round;
    return static_cast<double>(abs(sum.re - round(sum.re))) + static_cast<double>(abs(sum.im));
}

/// Rounds a Verlinde sum, enforcing integrality within tol and non-negativity.
template <class Real>
Int round_coefficient(const Complex<Real>& sum, double tol) {
    using std::round;
    const Real r = round(sum.re);
    if (!(integer_residual(sum) < tol))
        throw Error(ErrorCode::NotInteger, "Verlinde sum " + std::to_string(static_cast<double>(sum.re)) + " + " +
                                               std::to_string(static_cast<double>(sum.im)) + "i is not an integer");
    const Int n = static_cast<Int>(static_cast<double>(r));
    if (n < 0) throw Error(ErrorCode::NegativeCoefficient, "Verlinde sum rounds to " + std::to_string(n));
    return n;
}

/// sum_r S_ir S_jr conj(S_kr) / S_0r over a square untwisted S, unrounded.
template <class Real>
Complex<Real> verlinde_sum(const ModularMatrix<Real>& s, const Labels& i, const Labels& j, const Labels& k) {
    const std::size_t a = s.row_of(i), b = s.row_of(j), c = s.row_of(k);
    const std::size_t v = s.row_of(Labels(i.size(), 0));
    Complex<Real> acc;
    for (std::size_t r = 0; r < s.ncols(); ++r) acc += s(a, r) * s(b, r) * s(c, r).conj() / s(v, r);
    return acc;
}

template <class Real>
Int verlinde(const ModularMatrix<Real>& s, const Labels& i, const Labels& j, const Labels& k, double tol = 1e-6) {
    return round_coefficient(verlinde_sum(s, i, j, k), tol);
}

namespace detail {

inline void require_level(const CartanDatum& affine, Int k, const Labels& w) {
    if (static_cast<int>(w.size()) != affine.l || !is_dominant(w) || comark_pairing(affine, w) > k)
        throw Error(ErrorCode::InvalidArgument, "weight is not in P~+_" + std::to_string(k) + "(" + affine.id + ")");
}

/// Sum of sign * mult over components mu whose alcove fold lands on target + rho.
inline Int fold_and_match(const CartanDatum& affine, Int k, const DecompTable& table, const Labels& target) {
    const Labels goal = add(target, Labels(affine.l, 1));
    Int n = 0;
    for (const auto& [mu, m] : table) {
        const auto r = alcove_fold(affine, k, add(mu, Labels(affine.l, 1)));
        if (r.sign != 0 && *r.rep == goal) n += r.sign * m;
    }
    if (n < 0) throw Error(ErrorCode::NegativeCoefficient, "Kac-Walton sum is negative");
    return n;
}

} // namespace detail

/// Kac-Walton: alcove-folded tensor product multiplicities.
inline Int kac_walton(const CartanDatum& affine, Int k, const Labels& l1, const Labels& l2, const Labels& l3,
                      const RepOptions& opt = {}) {
    for (const auto* w : {&l1, &l2, &l3}) detail::require_level(affine, k, *w);
    return detail::fold_and_match(affine, k, tensor_decompose(affine, l1, l2, opt), l3);
}

/// Twisted Kac-Walton: branch l1 to the fixed-point algebra, tensor with l2, fold over A^dag.
inline Int twisted_kac_walton(const FoldingData& f, Int k, const Labels& l1, const Labels& l2, const Labels& l3,
                              const RepOptions& opt = {}) {
    detail::require_level(*f.base, k, l1);
    detail::require_level(*f.twisted, k, l2);
    detail::require_level(*f.twisted, k, l3);
    const auto& fin = f.twisted->finite_part();
    DecompTable total;
    for (const auto& [nu, m] : branch(*f.base, fin, f.iota_dual, l1, opt))
        for (const auto& [mu, n] : tensor_decompose(fin, nu, l2, opt)) total[mu] += m * n;
    return detail::fold_and_match(*f.twisted, k, total, l3);
}

/// S-matrix columns over M(1, sigma) for one folding and level.
template <class Real = double>
struct TwistedModularData {
    int p = 2;
    std::vector<Labels> symmetric;
    ModularMatrix<Real> untwisted; // full S of A
    ModularMatrix<Real> sector;    // rows P~+_k(A^dag), columns = symmetric
};

template <class Real = double>
TwistedModularData<Real> twisted_modular_data(const FoldingData& f, Int k, const SOptions& opt = {}) {
    TwistedModularData<Real> d;
    d.p = f.p();
    d.symmetric = symmetric_weights(f, k);
    d.untwisted = untwisted_S<Real>(*f.base, k, opt);
    d.sector = twisted_sector_S<Real>(f, k, opt);
    return d;
}

/// Twisted Verlinde sum over W in M(1, sigma), unrounded; the all-untwisted pattern uses the full Verlinde sum.
template <class Real>
Complex<Real> twisted_verlinde_sum(const TwistedModularData<Real>& d, const SectorLabel& m1, const SectorLabel& m2,
                                   const SectorLabel& m3) {
    check_pattern({m1.sector, m2.sector, m3.sector}, d.p);
    if (m1.sector == Sector::Untwisted && m2.sector == Sector::Untwisted)
        return verlinde_sum(d.untwisted, m1.weight, m2.weight, m3.weight);
    auto column = [&](const SectorLabel& m) {
        std::vector<Complex<Real>> out;
        if (m.sector == Sector::Untwisted) {
            const std::size_t r = d.untwisted.row_of(m.weight);
            for (const auto& w : d.symmetric) out.push_back(d.untwisted(r, d.untwisted.col_of(w)));
        } else {
            const std::size_t r = d.sector.row_of(m.weight);
            for (std::size_t c = 0; c < d.symmetric.size(); ++c) out.push_back(d.sector(r, c));
        }
        return out;
    };
    const auto s1 = column(m1), s2 = column(m2), s3 = column(m3);
    const auto vac = column({Sector::Untwisted, Labels(d.untwisted.rows.front().size(), 0)});
    Complex<Real> acc;
    for (std::size_t c = 0; c < vac.size(); ++c) acc += s1[c] * s2[c] * s3[c].conj() / vac[c];
    return acc;
}

template <class Real>
Int twisted_verlinde(const TwistedModularData<Real>& d, const SectorLabel& m1, const SectorLabel& m2,
                     const SectorLabel& m3, double tol = 1e-6) {
    return round_coefficient(twisted_verlinde_sum(d, m1, m2, m3), tol);
}

inline Int twisted_verlinde(const FoldingData& f, Int k, const SectorLabel& m1, const SectorLabel& m2,
                            const SectorLabel& m3, const FusionOptions& opt = {}) {
    return twisted_verlinde(twisted_modular_data<double>(f, k, opt.s), m1, m2, m3, opt.integer_tolerance);
}

struct FusionEntry {
    SectorLabel m1, m2, m3;
    Int N = 0;
    std::string method;
};

struct FusionTable {
    std::string algebra;
    Int level = 0;
    std::string twist = "none";
    std::string pattern = "1,1,1";
    std::vector<FusionEntry> entries;
};

namespace detail {

inline std::string mismatch_message(const FusionEntry& e, Int v, Int kw) {
    auto lab = [](const SectorLabel& m) {
        std::string s = m.sector == Sector::Sigma ? "s(" : "(";
        for (std::size_t i = 0; i < m.weight.size(); ++i) s += (i ? "," : "") + std::to_string(m.weight[i]);
        return s + ")";
    };
    return lab(e.m1) + " x " + lab(e.m2) + " -> " + lab(e.m3) + ": verlinde " + std::to_string(v) + ", kac-walton " +
           std::to_string(kw);
}

inline std::vector<SectorLabel> labels_of(Sector s, const std::vector<Labels>& ws) {
    std::vector<SectorLabel> out;
    for (const auto& w : ws) out.push_back({s, w});
    return out;
}

/// Evaluates every triple with the requested methods; entries are in lexicographic triple order.
template <class V, class K>
std::vector<FusionEntry> run_triples(const std::array<std::vector<SectorLabel>, 3>& sets, bool has_kw,
                                     const FusionOptions& opt, V&& verl, K&& kw) {
    std::vector<FusionEntry> out;
    for (const auto& a : sets[0])
        for (const auto& b : sets[1])
            for (const auto& c : sets[2]) out.push_back({a, b, c, 0, ""});
    const bool want_v = opt.method != Method::KacWalton || !has_kw;
    const bool want_k = has_kw && opt.method != Method::Verlinde;
    parallel_for(out.size(), opt.threads, [&](std::size_t i) {
        auto& e = out[i];
        if (want_v && want_k) {
            const Int v = verl(e), w = kw(e);
            if (v != w) throw Error(ErrorCode::MethodMismatch, mismatch_message(e, v, w));
            e.N = v;
            e.method = "verlinde+kac-walton";
        } else if (want_v) {
            e.N = verl(e);
            e.method = has_kw ? "verlinde" : "verlinde-only";
        } else {
            e.N = kw(e);
            e.method = "kac-walton";
        }
    });
    return out;
}

} // namespace detail

/// All untwisted triples at level k, Verlinde and Kac-Walton cross-checked.
inline FusionTable fusion_table(const CartanDatum& affine, Int k, const FusionOptions& opt = {}) {
    FusionTable t;
    t.algebra = affine.id;
    t.level = k;
    const auto ws = detail::labels_of(Sector::Untwisted, level_weights(affine, k));
    if (k == 0) {
        t.entries.push_back({ws[0], ws[0], ws[0], 1, "trivial"});
        return t;
    }
    ModularMatrix<double> s;
    if (opt.method != Method::KacWalton) s = untwisted_S<double>(affine, k, opt.s);
    t.entries = detail::run_triples(
        {ws, ws, ws}, true, opt,
        [&](const FusionEntry& e) { return verlinde(s, e.m1.weight, e.m2.weight, e.m3.weight, opt.integer_tolerance); },
        [&](const FusionEntry& e) { return kac_walton(affine, k, e.m1.weight, e.m2.weight, e.m3.weight); });
    return t;
}

/// All triples of a sector pattern for a folding at level k.
inline FusionTable fusion_table(const FoldingData& f, Int k, const Pattern& pat, const FusionOptions& opt = {}) {
    check_pattern(pat, f.p());
    FusionTable t;
    t.algebra = f.base->id;
    t.level = k;
    t.twist = f.p() == 3 ? "triality" : "order-2";
    t.pattern = to_string(pat);
    std::array<std::vector<SectorLabel>, 3> sets;
    for (std::size_t i = 0; i < 3; ++i)
        sets[i] = pat[i] == Sector::Untwisted ? detail::labels_of(Sector::Untwisted, level_weights(*f.base, k))
                                              : detail::labels_of(Sector::Sigma, level_weights(*f.twisted, k));
    if (k == 0) {
        t.entries.push_back({sets[0][0], sets[1][0], sets[2][0], 1, "trivial"});
        return t;
    }
    const bool sigma_sigma = pat[0] == Sector::Sigma && pat[1] == Sector::Sigma;
    const bool need_s = opt.method != Method::KacWalton || sigma_sigma;
    TwistedModularData<double> d;
    if (need_s) d = twisted_modular_data<double>(f, k, opt.s);
    auto verl = [&](const FusionEntry& e) { return twisted_verlinde(d, e.m1, e.m2, e.m3, opt.integer_tolerance); };
    auto kw = [&](const FusionEntry& e) -> Int {
        if (pat[0] == Sector::Untwisted && pat[1] == Sector::Untwisted)
            return kac_walton(*f.base, k, e.m1.weight, e.m2.weight, e.m3.weight);
        if (pat[0] == Sector::Untwisted) return twisted_kac_walton(f, k, e.m1.weight, e.m2.weight, e.m3.weight);
        return twisted_kac_walton(f, k, e.m2.weight, e.m1.weight, e.m3.weight);
    };
    t.entries = detail::run_triples(sets, !sigma_sigma, opt, verl, kw);
    return t;
}

/// Labeled V^G S-matrix blocks that are computable from the untwisted S and the
/// twisted-sector S at p = 2. Characters: Lambda_s(sigma) = exp(-2 pi i s / p).
template <class Real = double>
std::vector<ModularMatrix<Real>> orbifold_block_report(const FoldingData& f, Int k, const SOptions& opt = {}) {
    if (f.p() != 2) throw Error(ErrorCode::UnsupportedOrder, "orbifold blocks are computed for p = 2 only");
    const auto d = twisted_modular_data<Real>(f, k, opt);
    const Real half = Real(1) / Real(2);

    // orbit representatives of non-symmetric weights: lexicographically smallest in the sigma-orbit
    std::set<Labels> reps;
    for (const auto& w : level_weights(*f.base, k)) {
        if (f.is_symmetric(w)) continue;
        Labels image(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) image[f.sigma.perm[i + 1] - 1] = w[i];
        reps.insert(std::min(w, image));
    }
    const std::vector<Labels> orbit(reps.begin(), reps.end());
    const auto& sym = d.symmetric;
    const auto& tw = d.sector.rows;

    std::vector<ModularMatrix<Real>> out;
    auto block = [&](std::vector<Labels> r, std::vector<Labels> c, std::string name, auto&& entry) {
        ModularMatrix<Real> m(std::move(r), std::move(c), Provenance::OrbifoldBlock, std::move(name));
        m.precision_bits = d.untwisted.precision_bits;
        for (std::size_t i = 0; i < m.nrows(); ++i)
            for (std::size_t j = 0; j < m.ncols(); ++j) m(i, j) = entry(i, j);
        out.push_back(std::move(m));
    };
    auto s_untw = [&](const Labels& a, const Labels& b) { return d.untwisted(d.untwisted.row_of(a), d.untwisted.col_of(b)); };
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) {
            const Real sign_s = s ? Real(-1) : Real(1), sign_t = t ? Real(-1) : Real(1);
            const std::string tag = "[" + std::to_string(s) + "] x ";
            const std::string col = "[" + std::to_string(t) + "]";
            block(sym, sym, "sym" + tag + "sym" + col, [&](std::size_t i, std::size_t j) { return half * s_untw(sym[i], sym[j]); });
            block(tw, sym, "sigma" + tag + "sym" + col,
                  [&](std::size_t i, std::size_t j) { return (half * sign_t) * d.sector(i, j); });
            block(sym, tw, "sym" + tag + "sigma" + col,
                  [&](std::size_t i, std::size_t j) { return (half * sign_s) * d.sector(j, i); });
        }
    for (int t = 0; t < 2; ++t) {
        const std::string col = "[" + std::to_string(t) + "]";
        block(orbit, sym, "orbit x sym" + col, [&](std::size_t i, std::size_t j) { return s_untw(orbit[i], sym[j]); });
        block(orbit, tw, "orbit x sigma" + col, [&](std::size_t, std::size_t) { return Complex<Real>(); });
    }
    return out;
}

} // namespace twistfuse
