#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twistfuse/error.hpp"
#include "twistfuse/matrix.hpp"

namespace twistfuse {

enum class Family { A, B, C, D, E, F, G };
enum class Kind { Finite, Affine1, Affine2, Affine3 };

struct LieType {
    Family family = Family::A;
    int rank = 1; // the subscript N of X_N or X_N^(r)
    Kind kind = Kind::Finite;

    bool affine() const { return kind != Kind::Finite; }
    int twist() const {
        switch (kind) {
        case Kind::Affine2: return 2;
        case Kind::Affine3: return 3;
        default: return 1;
        }
    }
    LieType finite_type() const { return {family, rank, Kind::Finite}; }
    LieType untwisted() const { return {family, rank, Kind::Affine1}; }

    std::string name() const {
        std::string s(1, "ABCDEFG"[static_cast<int>(family)]);
        s += std::to_string(rank);
        if (affine()) s += "^(" + std::to_string(twist()) + ")";
        return s;
    }

    bool operator==(const LieType&) const = default;
    auto operator<=>(const LieType&) const = default;

    /// Accepts "A3", "A3^(1)", "A3(2)", "D4^3" style spellings.
    static LieType parse(std::string_view text) {
        auto bad = [&] { return Error(ErrorCode::InvalidArgument, "cannot parse Lie type '" + std::string(text) + "'"); };
        if (text.size() < 2) throw bad();
        const std::string letters = "ABCDEFG";
        const auto f = letters.find(static_cast<char>(std::toupper(static_cast<unsigned char>(text[0]))));
        if (f == std::string::npos) throw bad();
        std::size_t pos = 1;
        int rank = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            rank = rank * 10 + (text[pos++] - '0');
        if (rank == 0) throw bad();
        Kind kind = Kind::Finite;
        if (pos < text.size()) {
            std::string rest;
            for (; pos < text.size(); ++pos)
                if (std::isdigit(static_cast<unsigned char>(text[pos]))) rest += text[pos];
                else if (std::string_view("^()").find(text[pos]) == std::string_view::npos) throw bad();
            if (rest == "1") kind = Kind::Affine1;
            else if (rest == "2") kind = Kind::Affine2;
            else if (rest == "3") kind = Kind::Affine3;
            else throw bad();
        }
        return {static_cast<Family>(f), rank, kind};
    }
};

struct LatticeBasis {
    std::vector<QVector> basis;

    std::size_t rank() const { return basis.size(); }
    QMatrix matrix() const { return QMatrix::from_rows(basis); }
    bool operator==(const LatticeBasis&) const = default;
};

struct CartanDatum;
using CartanPtr = std::shared_ptr<const CartanDatum>;

/// Immutable root-system record. Affine data index nodes 0..l; finite data index 1..l
/// (stored 0-based). All weight coordinates are Dynkin labels of the finite part.
struct CartanDatum {
    LieType type;
    std::string id; // distinguishes finite parts that differ only by normalization
    int l = 0;      // finite rank
    IMatrix A;
    QVector d;
    Labels marks, comarks;
    Int hdual = 0;
    QMatrix gram_roots;
    QMatrix gram_weights;
    Labels theta;      // labels of theta
    Labels theta_root; // simple-root coordinates of theta
    QVector theta_covec;
    Labels rhobar;
    LatticeBasis M_basis;
    int npos = 0;

    IMatrix cartan_fin; // finite block
    QVector d_fin;
    std::vector<Labels> positive_roots; // simple-root coordinates
    CartanPtr finite;                   // finite part; null for finite data

    bool affine() const { return type.affine(); }
    const CartanDatum& finite_part() const { return finite ? *finite : *this; }

    /// (lambda, mu) for integral labels.
    Rational form(const Labels& x, const Labels& y) const {
        const auto& g = finite_part().gram_weights;
        Rational s = 0;
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) s += g(i, j) * (x[i] * y[j]);
        return s;
    }
};

/// A weight in Dynkin-label coordinates, tied to the finite datum it lives on.
struct Weight {
    CartanPtr datum;
    QVector coords;

    static Weight of(CartanPtr datum, const Labels& labels) {
        CartanPtr fin = datum->finite ? datum->finite : datum;
        return {fin, to_rational(labels)};
    }
    bool operator==(const Weight& o) const { return datum->id == o.datum->id && coords == o.coords; }
};

/// Level-k weight: the node-0 label is implicit (k minus the comark pairing).
struct LeveledWeight {
    Int level = 0;
    Labels finite;
    bool operator==(const LeveledWeight&) const = default;
    auto operator<=>(const LeveledWeight&) const = default;
};

namespace detail {

inline IMatrix chain_matrix(int n) {
    IMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = 2;
        if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = -1;
    }
    return a;
}

inline void link(IMatrix& a, int i, int j) { a(i, j) = a(j, i) = -1; }

/// Finite Cartan matrix in Kac's convention a_ij = <alpha_i^vee, alpha_j> (0-based).
/// `reversed_f4` gives F4 with alpha_1, alpha_2 short; `short_first_g2` gives G2 with alpha_1 short.
inline IMatrix finite_cartan(Family f, int n, bool reversed_f4 = false, bool short_first_g2 = false) {
    switch (f) {
    case Family::A: return chain_matrix(n);
    case Family::B: {
        auto a = chain_matrix(n);
        a(n - 1, n - 2) = -2; // alpha_n short
        return a;
    }
    case Family::C: {
        auto a = chain_matrix(n);
        a(n - 2, n - 1) = -2; // alpha_n long
        return a;
    }
    case Family::D: {
        auto a = chain_matrix(n);
        a(n - 2, n - 1) = a(n - 1, n - 2) = 0;
        link(a, n - 3, n - 1);
        return a;
    }
    case Family::E: {
        // chain 1..n-1 with node n attached to node 3
        IMatrix a = chain_matrix(n);
        a(n - 2, n - 1) = a(n - 1, n - 2) = 0;
        link(a, 2, n - 1);
        return a;
    }
    case Family::F: {
        auto a = chain_matrix(4);
        if (reversed_f4) a(1, 2) = -2; // alpha_1, alpha_2 short
        else a(2, 1) = -2;             // alpha_3, alpha_4 short
        return a;
    }
    case Family::G: {
        IMatrix a{{2, -1}, {-3, 2}}; // alpha_1 long
        if (short_first_g2) a = IMatrix{{2, -3}, {-1, 2}};
        return a;
    }
    }
    throw Error(ErrorCode::UnsupportedType, "unknown family");
}

/// Symmetrizer d with diag(d)*A symmetric, scaled so that min d = 1.
inline QVector symmetrizer(const IMatrix& a) {
    const std::size_t n = a.rows();
    QVector d(n, Rational(0));
    d[0] = 1;
    std::vector<std::size_t> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        const auto i = queue[q];
        for (std::size_t j = 0; j < n; ++j) {
            if (a(i, j) == 0 || d[j] != Rational(0)) continue;
            d[j] = d[i] * Rational(a(i, j), a(j, i));
            queue.push_back(j);
        }
    }
    for (const auto& x : d)
        if (x == Rational(0)) throw Error(ErrorCode::UnsupportedType, "disconnected Dynkin diagram");
    const Rational m = *std::min_element(d.begin(), d.end());
    for (auto& x : d) x /= m;
    return d;
}

/// Positive roots in simple-root coordinates via simple-root strings, by increasing height.
inline std::vector<Labels> positive_roots(const IMatrix& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<Labels> roots;
    std::map<Labels, std::size_t> index;
    for (int i = 0; i < n; ++i) {
        Labels e(n, 0);
        e[i] = 1;
        index[e] = roots.size();
        roots.push_back(e);
    }
    for (std::size_t q = 0; q < roots.size(); ++q) {
        const Labels beta = roots[q];
        for (int i = 0; i < n; ++i) {
            // <beta, alpha_i^vee> = sum_j a_ij beta_j
            Int pairing = 0;
            for (int j = 0; j < n; ++j) pairing += a(i, j) * beta[j];
            Int down = 0;
            Labels probe = beta;
            while (true) {
                probe[i] -= 1;
                if (!index.contains(probe)) break;
                ++down;
            }
            const Int up = down - pairing;
            if (up <= 0) continue;
            Labels next = beta;
            next[i] += 1;
            if (!index.contains(next)) {
                index[next] = roots.size();
                roots.push_back(next);
            }
        }
    }
    return roots;
}

inline Labels primitive_positive(const QVector& v) {
    const Int den = lcm_denominators(v);
    Labels out(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = (v[i] * den).numerator();
        g = std::gcd(g, out[i]);
    }
    const bool negative = out[0] < 0;
    for (auto& x : out) {
        x /= g;
        if (negative) x = -x;
    }
    for (auto x : out)
        if (x <= 0) throw Error(ErrorCode::UnsupportedType, "null vector is not positive");
    return out;
}

inline Labels labels_of_root(const IMatrix& a, const Labels& root) {
    Labels out(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * root[j];
    return out;
}

/// Orbit of an integral weight under the Weyl group generated by the columns of `a`.
inline std::vector<Labels> weyl_orbit(const IMatrix& a, const Labels& start) {
    std::map<Labels, bool> seen{{start, true}};
    std::vector<Labels> orbit{start};
    for (std::size_t q = 0; q < orbit.size(); ++q)
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const Int c = orbit[q][i];
            if (c == 0) continue;
            Labels next = orbit[q];
            for (std::size_t j = 0; j < a.rows(); ++j) next[j] -= c * a(j, i);
            if (seen.emplace(next, true).second) orbit.push_back(next);
        }
    return orbit;
}

inline void validate(const LieType& t) {
    auto unsupported = [&](const std::string& why) { return Error(ErrorCode::UnsupportedType, t.name() + ": " + why); };
    const int n = t.rank;
    if (n < 1) throw unsupported("rank must be positive");
    switch (t.kind) {
    case Kind::Finite:
    case Kind::Affine1:
        switch (t.family) {
        case Family::A: return;
        case Family::B:
        case Family::C: if (n < 2) throw unsupported("rank must be at least 2"); return;
        case Family::D: if (n < 4) throw unsupported("rank must be at least 4"); return;
        case Family::E: if (n < 6 || n > 8) throw unsupported("E rank must be 6, 7 or 8"); return;
        case Family::F: if (n != 4) throw unsupported("F rank must be 4"); return;
        case Family::G: if (n != 2) throw unsupported("G rank must be 2"); return;
        }
        return;
    case Kind::Affine2:
        if (t.family == Family::A) {
            if (n % 2 == 0) throw unsupported("type A_{2l}^(2) is not supported");
            if (n < 3) throw unsupported("A_{2l-1}^(2) needs l >= 2");
            return;
        }
        if (t.family == Family::D && n >= 3) return;
        if (t.family == Family::E && n == 6) return;
        throw unsupported("no such twisted affine type of order 2");
    case Kind::Affine3:
        if (t.family == Family::D && n == 4) return;
        throw unsupported("only D4^(3) has twist order 3");
    }
}

struct FinitePart {
    Family family;
    int rank;
    IMatrix matrix;
};

inline FinitePart finite_part_of(const LieType& t) {
    if (t.kind == Kind::Finite || t.kind == Kind::Affine1) return {t.family, t.rank, finite_cartan(t.family, t.rank)};
    if (t.kind == Kind::Affine3) return {Family::G, 2, finite_cartan(Family::G, 2, false, true)};
    switch (t.family) {
    case Family::A: return {Family::C, (t.rank + 1) / 2, finite_cartan(Family::C, (t.rank + 1) / 2)};
    case Family::D: return {Family::B, t.rank - 1, finite_cartan(Family::B, t.rank - 1)};
    default: return {Family::F, 4, finite_cartan(Family::F, 4, true)};
    }
}

/// Fill gram matrices, rho, theta coroot coordinates and dual Coxeter number from A_fin, d_fin, theta.
inline void fill_finite_fields(CartanDatum& c) {
    const QMatrix cf = c.cartan_fin.cast<Rational>();
    c.gram_weights = diagonal(c.d_fin) * inverse(cf);
    c.rhobar = Labels(c.l, 1);
    c.theta = labels_of_root(c.cartan_fin, c.theta_root);
    Rational tt = 0;
    for (int i = 0; i < c.l; ++i)
        for (int j = 0; j < c.l; ++j) tt += c.d_fin[i] * c.cartan_fin(i, j) * (c.theta_root[i] * c.theta_root[j]);
    c.theta_covec.assign(c.l, Rational(0));
    for (int i = 0; i < c.l; ++i) c.theta_covec[i] = Rational(2) * c.theta_root[i] * c.d_fin[i] / tt;
    c.npos = static_cast<int>(c.positive_roots.size());
}

inline Rational root_length2(const IMatrix& a, const QVector& d, const Labels& root) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += d[i] * a(i, j) * (root[i] * root[j]);
    return s;
}

inline Labels highest_root(const std::vector<Labels>& roots, const IMatrix& a, const QVector& d, bool short_only) {
    Rational shortest = -1;
    if (short_only)
        for (const auto& r : roots) {
            const auto len = root_length2(a, d, r);
            if (shortest < 0 || len < shortest) shortest = len;
        }
    const Labels* best = nullptr;
    Int best_height = -1;
    for (const auto& r : roots) {
        if (short_only && root_length2(a, d, r) != shortest) continue;
        const Int h = std::accumulate(r.begin(), r.end(), Int(0));
        if (h > best_height) {
            best_height = h;
            best = &r;
        }
    }
    return *best;
}

inline CartanPtr make_finite(const LieType& t) {
    auto c = std::make_shared<CartanDatum>();
    c->type = t;
    c->id = t.name();
    const auto fp = finite_part_of(t);
    c->l = fp.rank;
    c->cartan_fin = fp.matrix;
    c->A = fp.matrix;
    c->d_fin = symmetrizer(fp.matrix);
    c->positive_roots = positive_roots(fp.matrix);
    // long roots have length 2
    Rational longest = 0;
    for (const auto& x : c->d_fin) longest = std::max(longest, x);
    for (auto& x : c->d_fin) x /= longest;
    c->d = c->d_fin;
    c->theta_root = highest_root(c->positive_roots, fp.matrix, c->d_fin, false);
    fill_finite_fields(*c);
    c->gram_roots = diagonal(c->d) * c->A.cast<Rational>();
    c->hdual = 1;
    for (const auto& x : c->theta_covec) c->hdual += x.numerator();
    return c;
}

inline CartanPtr make_affine(const LieType& t) {
    const auto fp = finite_part_of(t);
    const int l = fp.rank;
    const auto roots = positive_roots(fp.matrix);
    const QVector d0 = symmetrizer(fp.matrix);
    const Labels theta_root = highest_root(roots, fp.matrix, d0, t.kind != Kind::Affine1);
    const Labels theta = labels_of_root(fp.matrix, theta_root);

    // node 0 from theta: a_00 = 2, a_0j = -<theta^vee, alpha_j>, a_j0 = -<alpha_j^vee, theta>
    Rational tt = root_length2(fp.matrix, d0, theta_root);
    IMatrix a(l + 1, l + 1);
    a(0, 0) = 2;
    for (int j = 0; j < l; ++j) {
        Rational th_aj = 0;
        for (int i = 0; i < l; ++i) th_aj += d0[i] * fp.matrix(i, j) * theta_root[i];
        const Rational v = Rational(2) * th_aj / tt;
        if (!is_integer(v)) throw Error(ErrorCode::UnsupportedType, "non-integral affine extension");
        a(0, j + 1) = -v.numerator();
        a(j + 1, 0) = -theta[j];
        for (int i = 0; i < l; ++i) a(i + 1, j + 1) = fp.matrix(i, j);
    }

    auto c = std::make_shared<CartanDatum>();
    c->type = t;
    c->id = t.name();
    c->l = l;
    c->A = a;
    const auto qa = a.cast<Rational>();
    auto ker = null_space(qa);
    auto coker = null_space(qa.transpose());
    if (ker.size() != 1 || coker.size() != 1) throw Error(ErrorCode::UnsupportedType, "affine matrix must have corank 1");
    c->marks = primitive_positive(ker[0]);
    c->comarks = primitive_positive(coker[0]);
    if (c->marks[0] != 1) throw Error(ErrorCode::UnsupportedType, "a_0 must be 1");
    c->d.resize(l + 1);
    for (int i = 0; i <= l; ++i) c->d[i] = Rational(c->comarks[i], c->marks[i]);
    c->gram_roots = diagonal(c->d) * qa;
    if (!c->gram_roots.is_symmetric()) throw Error(ErrorCode::UnsupportedType, "diag(d)A is not symmetric");
    c->hdual = std::accumulate(c->comarks.begin(), c->comarks.end(), Int(0));

    // finite part shares the affine normalization
    auto fin = std::make_shared<CartanDatum>();
    fin->type = t.finite_type();
    fin->type.family = fp.family;
    fin->type.rank = fp.rank;
    fin->id = t.kind == Kind::Affine1 ? t.finite_type().name() : fin->type.name() + "[" + t.name() + "]";
    fin->l = l;
    fin->cartan_fin = fp.matrix;
    fin->A = fp.matrix;
    fin->d_fin = QVector(c->d.begin() + 1, c->d.end());
    fin->d = fin->d_fin;
    fin->positive_roots = roots;
    fin->theta_root = theta_root;
    fill_finite_fields(*fin);
    fin->gram_roots = diagonal(fin->d) * fin->A.cast<Rational>();
    fin->hdual = c->hdual;

    c->cartan_fin = fp.matrix;
    c->d_fin = fin->d_fin;
    c->positive_roots = roots;
    c->theta_root = theta_root;
    fill_finite_fields(*c);
    c->gram_weights = fin->gram_weights;

    // M = Z-span of the finite Weyl orbit of nu(theta^vee) = theta / a_0
    const auto orbit = weyl_orbit(fp.matrix, theta);
    for (const auto& v : hermite_basis(orbit)) c->M_basis.basis.push_back(to_rational(v));
    fin->M_basis = c->M_basis;
    c->finite = fin;
    return c;
}

} // namespace detail

/// Build the root datum of a finite or affine type. Results are cached and shared.
inline CartanPtr build_cartan(const LieType& type) {
    static std::mutex mu;
    static std::map<LieType, CartanPtr> cache;
    detail::validate(type);
    std::lock_guard lock(mu);
    if (auto it = cache.find(type); it != cache.end()) return it->second;
    CartanPtr c = type.affine() ? detail::make_affine(type) : detail::make_finite(type);
    cache.emplace(type, c);
    return c;
}

inline CartanPtr build_cartan(std::string_view name) { return build_cartan(LieType::parse(name)); }

inline Rational inner_product(const Weight& x, const Weight& y) {
    if (!x.datum || !y.datum || x.datum->id != y.datum->id)
        throw Error(ErrorCode::MixedDatum, "weights belong to different root data");
    return bilinear(x.coords, x.datum->gram_weights, y.coords);
}

inline LatticeBasis lattice_M(const CartanDatum& datum) {
    if (!datum.affine()) throw Error(ErrorCode::NotAffine, datum.id + " is finite");
    return datum.M_basis;
}

/// |L1 / L2| for L2 contained in L1.
inline Rational lattice_index(const LatticeBasis& l1, const LatticeBasis& l2) {
    const QMatrix b1 = l1.matrix(), b2 = l2.matrix();
    if (b1.rows() != b1.cols() || b2.rows() != b2.cols() || b1.rows() != b2.rows())
        throw Error(ErrorCode::InvalidArgument, "lattice bases must be square and of equal rank");
    // rows of b2 = X * rows of b1 with X integral
    const QMatrix x = b2 * inverse(b1);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            if (!is_integer(x(i, j))) throw Error(ErrorCode::NotSublattice, "second lattice is not contained in the first");
    return boost::abs(determinant(x));
}

/// Dual lattice with respect to the gram matrix on weight coordinates.
inline LatticeBasis dual_lattice(const LatticeBasis& lat, const QMatrix& gram) {
    const QMatrix b = lat.matrix();
    const QMatrix dual = inverse(gram * b.transpose());
    LatticeBasis out;
    out.basis = dual.to_rows();
    return out;
}

inline LatticeBasis dual_lattice(const LatticeBasis& lat, const CartanDatum& datum) {
    return dual_lattice(lat, datum.finite_part().gram_weights);
}

inline QMatrix lattice_gram(const LatticeBasis& lat, const QMatrix& gram) {
    const QMatrix b = lat.matrix();
    return b * gram * b.transpose();
}

inline LatticeBasis scaled(const LatticeBasis& lat, const Rational& s) {
    LatticeBasis out = lat;
    for (auto& v : out.basis)
        for (auto& x : v) x *= s;
    return out;
}

inline LatticeBasis weight_lattice(int l) {
    LatticeBasis out;
    for (int i = 0; i < l; ++i) {
        QVector e(l, Rational(0));
        e[i] = 1;
        out.basis.push_back(e);
    }
    return out;
}

inline LatticeBasis root_lattice(const CartanDatum& datum) {
    const auto& f = datum.finite_part();
    LatticeBasis out;
    for (int j = 0; j < f.l; ++j) out.basis.push_back(to_rational(f.cartan_fin.col(j)));
    return out;
}

/// Level of a finite weight for an affine datum: sum_i a_i^vee lambda_i over i >= 1.
inline Int comark_pairing(const CartanDatum& affine, const Labels& lambda) {
    Int s = 0;
    for (int i = 0; i < affine.l; ++i) s += affine.comarks[i + 1] * lambda[i];
    return s;
}

} // namespace twistfuse
