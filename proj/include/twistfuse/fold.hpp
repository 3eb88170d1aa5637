#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "twistfuse/cartan.hpp"
#include "twistfuse/rep.hpp"

namespace twistfuse {

struct DiagramAutomorphism {
    CartanPtr base;
    std::vector<int> perm; // node i -> perm[i], nodes 0..l
    int order = 1;

    std::vector<std::vector<int>> orbits() const {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(perm.size(), false);
        for (std::size_t i = 0; i < perm.size(); ++i) {
            if (seen[i]) continue;
            std::vector<int> orb;
            for (int j = static_cast<int>(i); !seen[j]; j = perm[j]) {
                seen[j] = true;
                orb.push_back(j);
            }
            std::sort(orb.begin(), orb.end());
            out.push_back(orb);
        }
        return out;
    }
};

/// Validates perm against the base: affine-r1, fixes node 0, preserves A, order 2 or 3.
inline DiagramAutomorphism make_automorphism(CartanPtr base, std::vector<int> perm) {
    auto bad = [](const std::string& why) { return Error(ErrorCode::InvalidAutomorphism, why); };
    if (!base || base->type.kind != Kind::Affine1) throw bad("base must be an untwisted affine datum");
    const std::size_t n = base->A.rows();
    if (perm.size() != n) throw bad("permutation has the wrong length");
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i)
        if (sorted[i] != static_cast<int>(i)) throw bad("not a permutation");
    if (perm[0] != 0) throw bad("automorphism must fix node 0");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (base->A(perm[i], perm[j]) != base->A(i, j)) throw bad("permutation does not preserve the Cartan matrix");
    int order = 1;
    std::vector<int> power = perm;
    auto is_identity = [&](const std::vector<int>& p) {
        for (std::size_t i = 0; i < n; ++i)
            if (p[i] != static_cast<int>(i)) return false;
        return true;
    };
    while (!is_identity(power)) {
        for (auto& x : power) x = perm[x];
        ++order;
    }
    if (order != 2 && order != 3) throw bad("order must be 2 or 3, got " + std::to_string(order));
    return {std::move(base), std::move(perm), order};
}

/// Built-in automorphisms. For D4, order 0 selects triality and order 2 the 3<->4 swap.
inline DiagramAutomorphism builtin_sigma(const LieType& type, int order = 0) {
    auto none = [&] { return Error(ErrorCode::NoBuiltinAutomorphism, type.name() + (order ? " of order " + std::to_string(order) : "")); };
    if (type.kind != Kind::Affine1) throw none();
    const int n = type.rank;
    std::vector<int> perm(n + 1);
    std::iota(perm.begin(), perm.end(), 0);
    if (type.family == Family::A && n % 2 == 1 && n >= 3 && (order == 0 || order == 2)) {
        for (int i = 1; i <= n; ++i) perm[i] = n + 1 - i; // i -> 2m - i
    } else if (type.family == Family::D && n == 4 && (order == 0 || order == 3)) {
        perm[1] = 3;
        perm[3] = 4;
        perm[4] = 1;
    } else if (type.family == Family::D && n >= 4 && (order == 0 || order == 2)) {
        std::swap(perm[n - 1], perm[n]);
    } else if (type.family == Family::E && n == 6 && (order == 0 || order == 2)) {
        std::swap(perm[1], perm[5]);
        std::swap(perm[2], perm[4]);
    } else {
        throw none();
    }
    return make_automorphism(build_cartan(type), std::move(perm));
}

struct OrbitCartan {
    std::vector<int> Ihat;   // orbit minima, ascending
    std::vector<int> Icheck; // members of Ihat with positive orbit sum
    std::vector<std::vector<int>> orbits;
    std::vector<int> N;
    QVector s;
    IMatrix Ahat; // indexed by position in Ihat
    LieType type;
    std::vector<int> to_canonical; // position in Ihat -> node of the canonical datum
    CartanPtr datum;
};

namespace detail {

/// Node relabelings p with p[0] = 0 and target(p[i], p[j]) == source(i, j).
inline std::optional<std::vector<int>> match_cartan(const IMatrix& source, const IMatrix& target, bool fix_zero) {
    const std::size_t n = source.rows();
    if (target.rows() != n) return std::nullopt;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        if (fix_zero && p[0] != 0) continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) ok = target(p[i], p[j]) == source(i, j);
        if (ok) return p;
    } while (std::next_permutation(p.begin(), p.end()));
    return std::nullopt;
}

inline std::vector<LieType> twisted_candidates(int l) {
    std::vector<LieType> out;
    if (l >= 2) {
        out.push_back({Family::A, 2 * l - 1, Kind::Affine2});
        out.push_back({Family::D, l + 1, Kind::Affine2});
    }
    if (l == 4) out.push_back({Family::E, 6, Kind::Affine2});
    if (l == 2) out.push_back({Family::D, 4, Kind::Affine3});
    return out;
}

} // namespace detail

/// Orbit Cartan matrix, identified with a canonical twisted affine type. A3^(2) and D3^(2)
/// share a diagram, so an expected type is tried first when given.
inline OrbitCartan orbit_cartan(const DiagramAutomorphism& sigma, std::optional<LieType> expected = std::nullopt) {
    const auto& a = sigma.base->A;
    OrbitCartan oc;
    for (auto& orb : sigma.orbits()) {
        oc.Ihat.push_back(orb.front());
        oc.orbits.push_back(orb);
    }
    const std::size_t m = oc.Ihat.size();
    for (std::size_t p = 0; p < m; ++p) {
        const int i = oc.Ihat[p];
        Int sum = 0;
        for (int j : oc.orbits[p]) sum += a(i, j);
        oc.N.push_back(static_cast<int>(oc.orbits[p].size()));
        if (sum > 0) {
            oc.Icheck.push_back(i);
            oc.s.push_back(Rational(a(i, i), sum));
        } else {
            oc.s.push_back(1);
        }
    }
    QMatrix q(m, m);
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t c = 0; c < m; ++c) {
            Int sum = 0;
            for (int j : oc.orbits[c]) sum += a(oc.Ihat[p], j);
            q(p, c) = oc.s[c] * sum;
        }
    oc.Ahat = IMatrix(m, m);
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t c = 0; c < m; ++c) {
            if (!is_integer(q(p, c))) throw Error(ErrorCode::UnrecognizedFoldedType, "orbit Cartan matrix is not integral");
            oc.Ahat(p, c) = q(p, c).numerator();
        }
    auto candidates = detail::twisted_candidates(static_cast<int>(m) - 1);
    if (expected) candidates.insert(candidates.begin(), *expected);
    for (const auto& cand : candidates) {
        auto target = build_cartan(cand);
        if (auto p = detail::match_cartan(oc.Ahat, target->A, true)) {
            oc.type = cand;
            oc.to_canonical = *p;
            oc.datum = target;
            return oc;
        }
    }
    throw Error(ErrorCode::UnrecognizedFoldedType, "orbit Cartan matrix of " + sigma.base->id + " matches no supported twisted type");
}

struct FoldingData {
    DiagramAutomorphism sigma;
    OrbitCartan orbit;
    CartanPtr base, twisted, adjacent;
    int r = 1;
    std::vector<int> N; // by adjacent node 0..l'
    QVector s;
    std::vector<std::vector<int>> adjacent_orbits; // adjacent node -> nodes of A
    std::vector<std::vector<int>> twisted_orbits;  // twisted finite node (0-based) -> finite nodes of A
    std::vector<int> phi_target;                   // phi(alpha'_i) is a multiple of alpha^dag_{phi_target[i]}
    IMatrix Pstar;                                 // l x l'
    QMatrix phi;                                   // l^dag x l'
    IMatrix iota_dual;                             // l^dag x l

    int p() const { return sigma.order; }
    std::string name() const { return base->id + (sigma.order == 3 ? "/triality" : "/order-2"); }

    Labels pstar(const Labels& x) const { return Pstar * x; }
    Labels restrict(const Labels& x) const { return iota_dual * x; }
    QVector apply_phi(const Labels& x) const { return phi * to_rational(x); }

    bool is_symmetric(const Labels& lambda) const {
        for (const auto& orb : sigma.orbits())
            for (int m : orb)
                if (m != 0 && lambda[m - 1] != lambda[orb.front() - 1]) return false;
        return true;
    }
};

inline LieType twisted_partner(const DiagramAutomorphism& sigma) {
    const auto& t = sigma.base->type;
    if (sigma.order == 3) return {Family::D, 4, Kind::Affine3};
    if (t.family == Family::E) return {Family::E, 6, Kind::Affine2};
    return {t.family, t.rank, Kind::Affine2};
}

inline LieType adjacent_of(const LieType& twisted) {
    if (twisted.kind == Kind::Affine3 || twisted.family == Family::E) return twisted;
    if (twisted.family == Family::A) return {Family::D, (twisted.rank + 1) / 2 + 1, Kind::Affine2};
    return {Family::A, 2 * (twisted.rank - 1) - 1, Kind::Affine2};
}

inline FoldingData build_folding(const DiagramAutomorphism& sigma) {
    FoldingData f;
    f.sigma = sigma;
    f.base = sigma.base;
    f.twisted = build_cartan(twisted_partner(sigma));
    f.adjacent = build_cartan(adjacent_of(f.twisted->type));
    f.orbit = orbit_cartan(sigma, f.adjacent->type);
    f.r = f.twisted->type.twist();
    if (f.orbit.type != f.adjacent->type)
        throw Error(ErrorCode::UnrecognizedFoldedType,
                    "orbit Cartan matrix is of type " + f.orbit.type.name() + ", expected " + f.adjacent->type.name());
    const int l = f.base->l, lp = f.adjacent->l, lt = f.twisted->l;

    f.N.assign(lp + 1, 0);
    f.s.assign(lp + 1, Rational(0));
    f.adjacent_orbits.assign(lp + 1, {});
    for (std::size_t pos = 0; pos < f.orbit.Ihat.size(); ++pos) {
        const int j = f.orbit.to_canonical[pos];
        f.N[j] = f.orbit.N[pos];
        f.s[j] = f.orbit.s[pos];
        f.adjacent_orbits[j] = f.orbit.orbits[pos];
    }
    f.Pstar = IMatrix(l, lp);
    for (int j = 1; j <= lp; ++j)
        for (int m : f.adjacent_orbits[j]) f.Pstar(m - 1, j - 1) = 1;

    // fixed-point subalgebra: coroots are orbit sums, so its Cartan entries are sum_{m in orb(i)} a_{m, j}
    std::vector<std::vector<int>> fin_orbits;
    for (const auto& orb : sigma.orbits())
        if (orb.front() != 0) fin_orbits.push_back(orb);
    IMatrix fixed(fin_orbits.size(), fin_orbits.size());
    for (std::size_t i = 0; i < fin_orbits.size(); ++i)
        for (std::size_t j = 0; j < fin_orbits.size(); ++j) {
            Int sum = 0;
            for (int m : fin_orbits[i]) sum += f.base->A(m, fin_orbits[j].front());
            fixed(i, j) = sum;
        }
    const auto match = detail::match_cartan(fixed, f.twisted->cartan_fin, false);
    if (!match) throw Error(ErrorCode::UnrecognizedFoldedType, "fixed-point subalgebra does not match " + f.twisted->id);
    f.twisted_orbits.assign(lt, {});
    for (std::size_t i = 0; i < fin_orbits.size(); ++i) f.twisted_orbits[(*match)[i]] = fin_orbits[i];
    f.iota_dual = IMatrix(lt, l);
    for (int i = 0; i < lt; ++i)
        for (int m : f.twisted_orbits[i]) f.iota_dual(i, m - 1) = 1;

    // phi(alpha'_i) = (a^dag_j / a^dag_j^vee) alpha^dag_j, j = i or l + 1 - i
    const bool reversed = f.twisted->type.family == Family::E || f.twisted->type.kind == Kind::Affine3;
    QMatrix phi_root(lt, lp);
    f.phi_target.resize(lp);
    for (int i = 0; i < lp; ++i) {
        const int j = reversed ? lp - 1 - i : i;
        f.phi_target[i] = j;
        phi_root(j, i) = Rational(f.twisted->marks[j + 1], f.twisted->comarks[j + 1]);
    }
    f.phi = f.twisted->cartan_fin.cast<Rational>() * phi_root * inverse(f.adjacent->cartan_fin.cast<Rational>());
    return f;
}

inline FoldingData build_folding(const LieType& type, int order = 0) { return build_folding(builtin_sigma(type, order)); }

/// (P_sigma^* applied to P~+_k(A')), asserted to be the sigma-fixed part of P~+_k(A).
inline std::vector<Labels> symmetric_weights(const FoldingData& f, Int k) {
    std::vector<Labels> out;
    for (const auto& w : level_weights(*f.adjacent, k)) out.push_back(f.pstar(w));
    std::set<Labels> image(out.begin(), out.end()), fixed;
    for (const auto& w : level_weights(*f.base, k))
        if (f.is_symmetric(w)) fixed.insert(w);
    if (image != fixed || image.size() != out.size())
        throw Error(ErrorCode::UnrecognizedFoldedType, "P_sigma^* is not a bijection onto the symmetric weights");
    return out;
}

struct IdentityCheck {
    std::string name;
    bool ok = false;
};

/// The exact matrix identities relating A, A^dag and A'.
inline std::vector<IdentityCheck> folding_identities(const FoldingData& f) {
    std::vector<IdentityCheck> out;
    const auto& gA = f.base->finite_part().gram_weights;
    const auto& gT = f.twisted->finite_part().gram_weights;
    const auto& gP = f.adjacent->finite_part().gram_weights;
    const QMatrix ps = f.Pstar.cast<Rational>();

    out.push_back({"Pstar(rho') = rho", f.pstar(Labels(f.adjacent->l, 1)) == Labels(f.base->l, 1)});
    out.push_back({"(Pstar x, Pstar y) = (x, y)'", ps.transpose() * gA * ps == gP});

    const QMatrix lhs = f.base->cartan_fin.cast<Rational>() * f.iota_dual.transpose().cast<Rational>() *
                        diagonal(f.twisted->d_fin) * inverse(f.twisted->cartan_fin.cast<Rational>());
    out.push_back({"nu iota nu_dag^-1 = Pstar phi^-1", lhs == ps * inverse(f.phi)});

    bool iso = true;
    for (std::size_t p = 0; p < f.orbit.Ahat.rows(); ++p)
        for (std::size_t q = 0; q < f.orbit.Ahat.cols(); ++q)
            iso = iso && f.orbit.Ahat(p, q) == f.adjacent->A(f.orbit.to_canonical[p], f.orbit.to_canonical[q]);
    out.push_back({"orbit Cartan matrix = adjacent", iso});

    out.push_back({"(phi x, phi y)_dag = (x, y)' / r", f.phi.transpose() * gT * f.phi == Rational(1, f.r) * gP});

    bool level = true;
    for (int j = 0; j <= f.adjacent->l; ++j) {
        Int sum = 0;
        for (int m : f.adjacent_orbits[j]) sum += f.base->comarks[m];
        level = level && sum == f.adjacent->comarks[j];
    }
    out.push_back({"Pstar preserves level", level});
    return out;
}

} // namespace twistfuse
