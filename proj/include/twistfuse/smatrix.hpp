#pragma once

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "twistfuse/cartan.hpp"
#include "twistfuse/fold.hpp"
#include "twistfuse/parallel.hpp"
#include "twistfuse/rep.hpp"
#include "twistfuse/weyl.hpp"

namespace twistfuse {

/// dim X_N from the family and rank, so D3 (the X_N of D3^(2)) needs no datum of its own.
inline Int lie_dimension(Family f, Int n) {
    switch (f) {
    case Family::A: return n * (n + 2);
    case Family::B:
    case Family::C: return n * (2 * n + 1);
    case Family::D: return n * (2 * n - 1);
    case Family::E: return n == 6 ? 78 : n == 7 ? 133 : 248;
    case Family::F: return 52;
    case Family::G: return 14;
    }
    return 0;
}

struct ConformalData {
    Int k = 0;
    Rational m, h, c;
};

/// Anomaly m, conformal weight h and central charge c of the level-k module with finite labels lambda.
/// c is k dim(g)/(k + h^vee). For untwisted data g is X_N; for twisted data it is the X_N of the
/// adjacent type, whose characters the normalized ones pair with. Only that choice gives h - m = c/24
/// (A5^(2) pairs with D4, dim 28, not A5).
inline ConformalData conformal(const CartanDatum& affine, Int k, const Labels& lambda) {
    if (!affine.affine()) throw Error(ErrorCode::NotAffine, affine.id + " is finite");
    if (k < 0 || !is_dominant(lambda) || comark_pairing(affine, lambda) > k)
        throw Error(ErrorCode::InvalidArgument, "weight is not dominant of level " + std::to_string(k));
    const Rational t(k + affine.hdual);
    const Labels rho(affine.l, 1);
    const Labels lr = detail::add(lambda, rho);
    const Labels l2r = detail::add(lambda, rho, 2);
    const LieType x = affine.type.kind == Kind::Affine1 ? affine.type : adjacent_of(affine.type);
    const Int dim_g = lie_dimension(x.family, x.rank);
    ConformalData out;
    out.k = k;
    out.m = affine.form(lr, lr) / (2 * t) - affine.form(rho, rho) / (2 * Rational(affine.hdual));
    out.h = affine.form(l2r, lambda) / (2 * t);
    out.c = Rational(k * dim_g) / t;
    return out;
}

template <class Real>
struct Complex {
    Real re{0}, im{0};

    Complex() = default;
    Complex(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        const Real n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    Complex conj() const { return {re, -im}; }
    Real norm2() const { return re * re + im * im; }
    Real abs() const {
        using std::sqrt;
        return sqrt(norm2());
    }

    /// Multiply by i^q exactly.
    Complex quarter_turn(int q) const {
        switch (((q % 4) + 4) % 4) {
        case 1: return {-im, re};
        case 2: return {-re, -im};
        case 3: return {im, -re};
        default: return *this;
        }
    }
};

enum class Provenance { UntwistedS, TwistedA, TwistedSectorS, OrbifoldBlock };

inline std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::UntwistedS: return "untwisted-S";
    case Provenance::TwistedA: return "twisted-a";
    case Provenance::TwistedSectorS: return "twisted-sector-S";
    case Provenance::OrbifoldBlock: return "orbifold-block";
    }
    return "unknown";
}

template <class Real = double>
struct ModularMatrix {
    std::vector<Labels> rows, cols;
    std::vector<Complex<Real>> entries; // row-major
    Provenance provenance = Provenance::UntwistedS;
    std::string label; // algebra or block description
    int precision_bits = 53;

    ModularMatrix() = default;
    ModularMatrix(std::vector<Labels> r, std::vector<Labels> c, Provenance p, std::string lab)
        : rows(std::move(r)), cols(std::move(c)), entries(rows.size() * cols.size()), provenance(p), label(std::move(lab)) {}

    std::size_t nrows() const { return rows.size(); }
    std::size_t ncols() const { return cols.size(); }
    Complex<Real>& operator()(std::size_t i, std::size_t j) { return entries[i * cols.size() + j]; }
    const Complex<Real>& operator()(std::size_t i, std::size_t j) const { return entries[i * cols.size() + j]; }

    std::size_t row_of(const Labels& w) const { return index_in(rows, w, "row"); }
    std::size_t col_of(const Labels& w) const { return index_in(cols, w, "column"); }

    ModularMatrix<double> to_double() const {
        ModularMatrix<double> out(rows, cols, provenance, label);
        out.precision_bits = precision_bits;
        for (std::size_t i = 0; i < entries.size(); ++i)
            out.entries[i] = {static_cast<double>(entries[i].re), static_cast<double>(entries[i].im)};
        return out;
    }

private:
    static std::size_t index_in(const std::vector<Labels>& v, const Labels& w, const char* what) {
        auto it = std::find(v.begin(), v.end(), w);
        if (it == v.end()) throw Error(ErrorCode::InvalidArgument, std::string("weight is not a ") + what + " label");
        return static_cast<std::size_t>(it - v.begin());
    }
};

/// Max row sum of |entries|.
template <class Real>
Real inf_norm(const std::vector<Complex<Real>>& m, std::size_t rows, std::size_t cols) {
    Real best(0);
    for (std::size_t i = 0; i < rows; ++i) {
        Real s(0);
        for (std::size_t j = 0; j < cols; ++j) s += m[i * cols + j].abs();
        if (s > best) best = s;
    }
    return best;
}

/// ||S - S^T||_inf
template <class Real>
Real symmetry_residual(const ModularMatrix<Real>& s) {
    if (s.nrows() != s.ncols()) throw Error(ErrorCode::InvalidArgument, "symmetry of a non-square matrix");
    const std::size_t n = s.nrows();
    std::vector<Complex<Real>> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = s(i, j) - s(j, i);
    return inf_norm(d, n, n);
}

/// ||S S^H - I||_inf
template <class Real>
Real unitarity_residual(const ModularMatrix<Real>& s) {
    if (s.nrows() != s.ncols()) throw Error(ErrorCode::InvalidArgument, "unitarity of a non-square matrix");
    const std::size_t n = s.nrows();
    std::vector<Complex<Real>> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex<Real> acc;
            for (std::size_t r = 0; r < n; ++r) acc += s(i, r) * s(j, r).conj();
            if (i == j) acc.re -= Real(1);
            d[i * n + j] = acc;
        }
    return inf_norm(d, n, n);
}

struct SOptions {
    unsigned threads = 1;
    WeylOptions weyl;
    int precision_bits = 53;
};

namespace detail {

/// exp(-2 pi i j / N) for j in [0, N).
template <class Real>
class PhaseTable {
public:
    explicit PhaseTable(Int n) : n_(n), e_(n) {
        using std::cos;
        using std::sin;
        const Real step = boost::math::constants::two_pi<Real>() / Real(n);
        for (Int j = 0; j < n; ++j) {
            // evaluate on the shortest arc for accuracy
            const Int jj = j <= n / 2 ? j : j - n;
            const Real a = step * Real(jj);
            e_[j] = {cos(a), -sin(a)};
        }
    }
    const Complex<Real>& operator()(Int x) const {
        Int j = x % n_;
        if (j < 0) j += n_;
        return e_[j];
    }
    Int modulus() const { return n_; }

private:
    Int n_;
    std::vector<Complex<Real>> e_;
};

inline Int gram_denominator(const QMatrix& g) {
    Int den = 1;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) den = std::lcm(den, g(i, j).denominator());
    return den;
}

inline Int exact_positive_integer(const Rational& q, const char* what) {
    if (!is_integer(q) || q < 1) throw Error(ErrorCode::NotSublattice, std::string(what) + " is not a positive integer: " + to_string(q));
    return q.numerator();
}

/// Sum over the Weyl group W of `fin`: eps(w) exp(-2 pi i (w x_r, y_c) / t), with y_c given as integer
/// vectors already multiplied by the scaled gram. Result[r][c] before normalization.
template <class Real>
std::vector<Complex<Real>> weyl_phase_sums(const CartanDatum& fin, const std::vector<Labels>& xs,
                                           const std::vector<Labels>& ys, Int modulus, const SOptions& opt) {
    const auto W = weyl_group(fin, opt.weyl);
    const PhaseTable<Real> table(modulus);
    const std::size_t nr = xs.size(), nc = ys.size(), order = W->order();
    const int l = fin.l;
    std::vector<Complex<Real>> out(nr * nc);
    parallel_for(nr, opt.threads, [&](std::size_t r) {
        std::vector<Int> images(order * l);
        for (std::size_t e = 0; e < order; ++e) {
            const auto img = W->apply(e, xs[r]);
            std::copy(img.begin(), img.end(), images.begin() + e * l);
        }
        for (std::size_t c = 0; c < nc; ++c) {
            Complex<Real> pos, neg;
            for (std::size_t e = 0; e < order; ++e) {
                Int n = 0;
                for (int i = 0; i < l; ++i) n += images[e * l + i] * ys[c][i];
                if (W->signs[e] > 0) pos += table(n);
                else neg += table(n);
            }
            out[r * nc + c] = pos - neg;
        }
    });
    return out;
}

inline Labels scaled_gram_times(const QMatrix& g, Int scale, const QVector& y) {
    Labels out(g.rows());
    for (std::size_t i = 0; i < g.rows(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < g.cols(); ++j) s += g(i, j) * y[j];
        s *= scale;
        if (!is_integer(s)) throw Error(ErrorCode::InvalidArgument, "phase numerator is not integral");
        out[i] = s.numerator();
    }
    return out;
}

} // namespace detail

/// |M^* / (k + h^vee) M| for the lattice M of an affine datum.
inline Int s_lattice_index(const CartanDatum& affine, Int k) {
    const auto& m = affine.M_basis;
    const auto& g = affine.finite_part().gram_weights;
    return detail::exact_positive_integer(lattice_index(dual_lattice(m, g), scaled(m, Rational(k + affine.hdual))), "|M*/tM|");
}

/// Kac-Peterson S-matrix of an untwisted affine datum at level k, rows and columns over P~+_k(A).
template <class Real = double>
ModularMatrix<Real> untwisted_S(const CartanDatum& affine, Int k, const SOptions& opt = {}) {
    using std::sqrt;
    if (affine.type.kind != Kind::Affine1) throw Error(ErrorCode::InvalidArgument, "untwisted_S needs an untwisted affine datum");
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "level must be at least 1");
    const auto& fin = affine.finite_part();
    const auto weights = level_weights(affine, k);
    const Int t = k + affine.hdual;
    const Int den = detail::gram_denominator(fin.gram_weights);

    std::vector<Labels> xs, ys;
    for (const auto& w : weights) {
        xs.push_back(detail::add(w, fin.rhobar));
        ys.push_back(detail::scaled_gram_times(fin.gram_weights, den, to_rational(xs.back())));
    }
    // force the Weyl group check before any O(n^2) work
    weyl_group(fin, opt.weyl);
    auto sums = detail::weyl_phase_sums<Real>(fin, xs, ys, den * t, opt);

    const Real norm = Real(1) / sqrt(Real(s_lattice_index(affine, k)));
    ModularMatrix<Real> s(weights, weights, Provenance::UntwistedS, affine.id);
    s.precision_bits = opt.precision_bits;
    for (std::size_t i = 0; i < sums.size(); ++i) s.entries[i] = (norm * sums[i]).quarter_turn(fin.npos);
    return s;
}

/// |phi(M') / M^dag|, the index of the twisted lattice in the phi-image of the adjacent one.
inline Int adjacent_lattice_index(const FoldingData& f) {
    LatticeBasis image;
    for (const auto& v : f.adjacent->M_basis.basis) image.basis.push_back(f.phi * v);
    return detail::exact_positive_integer(lattice_index(image, f.twisted->M_basis), "|M'/M^dag|");
}

/// Kac-Peterson a-matrix: rows over P~+_k(A^dag), columns over P~+_k(A').
template <class Real = double>
ModularMatrix<Real> twisted_a(const FoldingData& f, Int k, const SOptions& opt = {}) {
    using std::sqrt;
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "level must be at least 1");
    const auto& tw = *f.twisted;
    const auto& fin = tw.finite_part();
    const auto rows = level_weights(tw, k);
    const auto cols = level_weights(*f.adjacent, k);
    if (rows.size() != cols.size())
        throw Error(ErrorCode::UnrecognizedFoldedType, "twisted and adjacent weight sets differ in size");
    const Int t = k + tw.hdual;
    const Int den = detail::gram_denominator(fin.gram_weights);

    std::vector<QVector> images;
    Int phi_den = 1;
    for (const auto& w : cols) {
        images.push_back(f.apply_phi(detail::add(w, Labels(f.adjacent->l, 1))));
        phi_den = std::lcm(phi_den, lcm_denominators(images.back()));
    }
    std::vector<Labels> xs, ys;
    for (const auto& w : rows) xs.push_back(detail::add(w, fin.rhobar));
    for (const auto& y : images) ys.push_back(detail::scaled_gram_times(fin.gram_weights, den * phi_den, y));
    weyl_group(fin, opt.weyl);
    // rows of xs are acted on by W, matching (w(lambda + rho), phi(lambda' + rho'))
    auto sums = detail::weyl_phase_sums<Real>(fin, xs, ys, den * phi_den * t, opt);

    const Real norm = sqrt(Real(adjacent_lattice_index(f)) / Real(s_lattice_index(tw, k)));
    ModularMatrix<Real> a(rows, cols, Provenance::TwistedA, tw.id + " x " + f.adjacent->id);
    a.precision_bits = opt.precision_bits;
    for (std::size_t i = 0; i < sums.size(); ++i) a.entries[i] = (norm * sums[i]).quarter_turn(fin.npos);
    return a;
}

/// The a-matrix with columns relabeled by P_sigma^*: S_{M, W} for M a sigma-twisted module
/// (rows over P~+_k(A^dag)) and W a sigma-stable untwisted module (columns = symmetric weights).
template <class Real = double>
ModularMatrix<Real> twisted_sector_S(const FoldingData& f, Int k, const SOptions& opt = {}) {
    auto a = twisted_a<Real>(f, k, opt);
    a.cols = symmetric_weights(f, k);
    a.provenance = Provenance::TwistedSectorS;
    a.label = f.name();
    return a;
}

/// Keeps the listed columns, in the given order.
template <class Real>
ModularMatrix<Real> select_columns(const ModularMatrix<Real>& s, const std::vector<Labels>& cols) {
    ModularMatrix<Real> out(s.rows, cols, s.provenance, s.label);
    out.precision_bits = s.precision_bits;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const std::size_t src = s.col_of(cols[c]);
        for (std::size_t r = 0; r < s.nrows(); ++r) out(r, c) = s(r, src);
    }
    return out;
}

} // namespace twistfuse
