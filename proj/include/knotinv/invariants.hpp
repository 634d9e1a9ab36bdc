#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "seifert.hpp"

namespace knotinv {

// ---------------------------------------------------------------------------
// Exact eigenvalue counting for hermitian matrices
//
// The characteristic polynomial of a hermitian matrix is real-rooted, so the
// number of positive roots equals the number of sign variations of its
// coefficient sequence (Descartes' bound is exact there), and the nullity is
// the number of trailing zero coefficients.

namespace detail {

/// Faddeev-LeVerrier over any commutative Q-algebra with the needed ops.
template <typename Mat, typename Scalar>
std::vector<Scalar> char_poly_fl(const Mat& A, int n, Scalar zero, Scalar one) {
    std::vector<Scalar> c(n + 1, zero);
    c[n] = one;
    if (n == 0) return c;
    Mat M = Mat::identity_like(A);
    for (int k = 1; k <= n; ++k) {
        Mat AM = Mat::mul(A, M);
        Scalar tr = AM.trace();
        c[n - k] = Scalar::divide_int(Scalar::negate(tr), k);
        M = AM;
        M.add_diag(c[n - k]);
    }
    return c;
}

struct GaussMatAdapter {
    std::vector<GaussianRational> a;
    int n;

    static GaussMatAdapter identity_like(const GaussMatAdapter& m) {
        GaussMatAdapter r{std::vector<GaussianRational>(m.a.size()), m.n};
        for (int i = 0; i < m.n; ++i) r.a[i * m.n + i] = {Rational(1), Rational(0)};
        return r;
    }
    static GaussMatAdapter mul(const GaussMatAdapter& x, const GaussMatAdapter& y) {
        GaussMatAdapter r{std::vector<GaussianRational>(x.a.size()), x.n};
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.n; ++k) {
                const GaussianRational& e = x.a[i * x.n + k];
                if (sgn(e.re) == 0 && sgn(e.im) == 0) continue;
                for (int j = 0; j < x.n; ++j) r.a[i * x.n + j] = r.a[i * x.n + j] + e * y.a[k * x.n + j];
            }
        return r;
    }
    struct Scalar {
        GaussianRational v;
        static Scalar divide_int(Scalar s, int k) {
            return {{s.v.re / k, s.v.im / k}};
        }
        static Scalar negate(Scalar s) { return {{-s.v.re, -s.v.im}}; }
    };
    Scalar trace() const {
        GaussianRational t;
        for (int i = 0; i < n; ++i) t = t + a[i * n + i];
        return {t};
    }
    void add_diag(const Scalar& s) {
        for (int i = 0; i < n; ++i) a[i * n + i] = a[i * n + i] + s.v;
    }
};

struct LaurentMatAdapter {
    LMat m;

    static LaurentMatAdapter identity_like(const LaurentMatAdapter& x) {
        return {LMat::identity(x.m.rows())};
    }
    static LaurentMatAdapter mul(const LaurentMatAdapter& x, const LaurentMatAdapter& y) {
        return {x.m * y.m};
    }
    struct Scalar {
        LaurentPoly v;
        static Scalar divide_int(Scalar s, int k) { return {s.v * Rational(1, k)}; }
        static Scalar negate(Scalar s) { return {-s.v}; }
    };
    Scalar trace() const {
        LaurentPoly t;
        for (int i = 0; i < m.rows(); ++i) t += m.at(i, i);
        return {t};
    }
    void add_diag(const Scalar& s) {
        for (int i = 0; i < m.rows(); ++i) m.at(i, i) += s.v;
    }
};

}  // namespace detail

/// Ascending coefficients of det(xI - A(z)) at an exact circle point; all
/// real (rational) because the evaluated matrix is hermitian.
inline std::vector<Rational> char_poly_at(const LMat& A, const GaussianRational& z) {
    int n = A.rows();
    detail::GaussMatAdapter M{std::vector<GaussianRational>(static_cast<size_t>(n) * n), n};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M.a[i * static_cast<size_t>(n) + j] = eval_circle(A.at(i, j), z);
    auto c = detail::char_poly_fl(
        M, n, detail::GaussMatAdapter::Scalar{{Rational(0), Rational(0)}},
        detail::GaussMatAdapter::Scalar{{Rational(1), Rational(0)}});
    std::vector<Rational> out(n + 1);
    for (int i = 0; i <= n; ++i) {
        if (sgn(c[i].v.im) != 0) throw Error("internal: non-real characteristic coefficient");
        out[i] = c[i].v.re;
    }
    return out;
}

/// Symbolic characteristic coefficients of a hermitian Laurent matrix; each
/// is exactly palindromic (sums of principal minors of a hermitian matrix).
inline std::vector<LaurentPoly> char_poly_symbolic(const LMat& A) {
    detail::LaurentMatAdapter M{A};
    auto c = detail::char_poly_fl(M, A.rows(), detail::LaurentMatAdapter::Scalar{LaurentPoly::zero()},
                                  detail::LaurentMatAdapter::Scalar{LaurentPoly::one()});
    std::vector<LaurentPoly> out(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        out[i] = c[i].v;
        if (!out[i].is_palindromic()) throw Error("internal: characteristic coefficient not palindromic");
    }
    return out;
}

struct PointSignature {
    int sigma = 0;  // relative: sign(A(z)) - sign(A(1))
    int eta = 0;    // nullity of A(z)
    int raw = 0;    // sign(A(z)) counting nonzero eigenvalues only
};

namespace detail {

/// Exact (signature, nullity) from the coefficient signs of a real-rooted
/// monic polynomial, ascending order.
inline std::pair<int, int> count_from_signs(const std::vector<int>& signs) {
    size_t eta = 0;
    while (eta < signs.size() && signs[eta] == 0) ++eta;
    if (eta == signs.size()) throw Error("zero characteristic polynomial");
    int pos = 0, prev = 0;
    for (size_t i = eta; i < signs.size(); ++i) {
        int s = signs[i];
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++pos;
        prev = s;
    }
    int neg = 0;
    prev = 0;
    for (size_t i = eta; i < signs.size(); ++i) {
        int s = signs[i];
        if (s == 0) continue;
        if ((i - eta) % 2) s = -s;
        if (prev != 0 && s != prev) ++neg;
        prev = s;
    }
    return {pos - neg, static_cast<int>(eta)};
}

}  // namespace detail

/// sign(A(1)) of a hermitian Laurent matrix (a real symmetric matrix).
inline int sign_at_one(const HermitianLaurentMatrix& A) {
    auto coeffs = char_poly_at(A.mat(), GaussianRational{Rational(1), Rational(0)});
    std::vector<int> signs(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) signs[i] = sgn(coeffs[i]);
    return detail::count_from_signs(signs).first;
}

/// Exact signature and nullity of A(z) at a rational circle point.
inline PointSignature signature_at_rational_point(const HermitianLaurentMatrix& A,
                                                  const GaussianRational& z) {
    auto coeffs = char_poly_at(A.mat(), z);
    std::vector<int> signs(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) signs[i] = sgn(coeffs[i]);
    auto [raw, eta] = detail::count_from_signs(signs);
    return {raw - sign_at_one(A), eta, raw};
}

/// Exact signature and nullity of A at an algebraic circle point, decided by
/// sign evaluation of the palindromic characteristic coefficients at the
/// root's abscissa. Requires the point to be a root of det A.
inline PointSignature signature_at_root(const HermitianLaurentMatrix& A, const CircleRoot& r) {
    auto coeffs = char_poly_symbolic(A.mat());
    std::vector<int> signs(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) signs[i] = sign_at(to_symmetric(coeffs[i]), r.abscissa);
    if (A.size() > 0 && signs[0] != 0) throw NotARoot();
    auto [raw, eta] = detail::count_from_signs(signs);
    return {raw - sign_at_one(A), eta, raw};
}

// ---------------------------------------------------------------------------
// Signature profiles

/// The piecewise data of z -> (sigma, eta) on the upper unit circle: roots of
/// det A ordered by increasing arc parameter, one signature per open arc
/// (nullity vanishes there), and the values at the roots.
struct SignatureProfile {
    int n = 0;             // matrix size
    int sign_at_one = 0;   // baseline subtracted from every signature
    std::vector<CircleRoot> roots;
    std::vector<int> arc_sigma;                    // roots.size() + 1 entries
    std::vector<PointSignature> at_root;           // aligned with roots

    bool same_values(const SignatureProfile& o, std::string* why = nullptr) const {
        auto fail = [&](const std::string& msg) {
            if (why) *why = msg;
            return false;
        };
        if (roots.size() != o.roots.size())
            return fail("different number of circle roots");
        for (size_t i = 0; i < roots.size(); ++i) {
            if (compare_alg(roots[i].abscissa, o.roots[i].abscissa) != 0)
                return fail("root " + std::to_string(i) + " differs");
            if (roots[i].multiplicity != o.roots[i].multiplicity)
                return fail("multiplicity at root " + std::to_string(i) + " differs");
        }
        for (size_t i = 0; i < arc_sigma.size(); ++i)
            if (arc_sigma[i] != o.arc_sigma[i])
                return fail("arc signature " + std::to_string(i) + ": " +
                            std::to_string(arc_sigma[i]) + " vs " + std::to_string(o.arc_sigma[i]));
        for (size_t i = 0; i < at_root.size(); ++i) {
            if (at_root[i].sigma != o.at_root[i].sigma)
                return fail("signature at root " + std::to_string(i) + " differs");
            if (at_root[i].eta != o.at_root[i].eta)
                return fail("nullity at root " + std::to_string(i) + " differs");
        }
        return true;
    }
};

/// Full exact profile of a hermitian Laurent matrix with det A(1), det A(-1)
/// nonzero: root isolation of det A, one exact sample per open arc, and the
/// at-root values.
inline SignatureProfile profile(const HermitianLaurentMatrix& A) {
    SignatureProfile p;
    p.n = A.size();
    if (p.n == 0) {
        p.arc_sigma = {0};
        return p;
    }
    LaurentPoly d = A.determinant();
    if (d.is_zero()) throw SingularMatrix();
    if (sgn(d.value_at_one()) == 0 || sgn(d.value_at_minus_one()) == 0) throw RootAtPlusMinusOne();
    p.sign_at_one = sign_at_one(A);
    p.roots = circle_roots(d);
    std::vector<ArcEndpoint> ends;
    ends.push_back(ArcEndpoint::one());
    for (const auto& r : p.roots) ends.push_back(ArcEndpoint::at(r));
    ends.push_back(ArcEndpoint::minus_one());
    for (size_t i = 0; i + 1 < ends.size(); ++i) {
        GaussianRational z = rational_point_on_arc(ends[i], ends[i + 1]);
        PointSignature s = signature_at_rational_point(A, z);
        if (s.eta != 0) throw Error("internal: nullity off the root set");
        p.arc_sigma.push_back(s.sigma);
    }
    if (p.arc_sigma.front() != 0) throw Error("internal: nonzero signature adjacent to z = 1");
    for (const auto& r : p.roots) p.at_root.push_back(signature_at_root(A, r));
    return p;
}

// ---------------------------------------------------------------------------
// The numerical invariants

/// mu from the at-root values: half the sum of the maxima of eta + sigma and
/// eta - sigma over the roots, with the baseline z = 1 contributing 0.
inline int mu_from_profile(const SignatureProfile& p) {
    int tplus = 0, tminus = 0;
    for (const auto& s : p.at_root) {
        tplus = std::max(tplus, s.eta + s.sigma);
        tminus = std::max(tminus, s.eta - s.sigma);
    }
    return (tplus + tminus) / 2;
}

inline int mu(const HermitianLaurentMatrix& A) { return mu_from_profile(profile(A)); }

/// Maximal nullity over the punctured plane: the number of non-unit invariant
/// factors of A over the polynomial ring.
inline int eta(const HermitianLaurentMatrix& A) { return nonunit_factor_count(A.mat()); }

inline int n_r(const HermitianLaurentMatrix& A) { return std::max(mu(A), eta(A)); }

struct InvariantSummary {
    int mu = 0;
    int eta = 0;
    int n_r = 0;
    int unknotting_lower_bound = 0;
};

/// Report of an invariant comparison between two matrices.
struct InvariantComparison {
    bool equal = true;
    std::string first_difference;
};

/// Compares the full signature/nullity profiles and the Smith factor
/// multisets of two hermitian Laurent matrices.
inline InvariantComparison check_same_invariants(const HermitianLaurentMatrix& A,
                                                 const HermitianLaurentMatrix& B) {
    InvariantComparison rep;
    SignatureProfile pa = profile(A), pb = profile(B);
    std::string why;
    if (!pa.same_values(pb, &why)) {
        rep.equal = false;
        rep.first_difference = why;
        return rep;
    }
    auto factors = [](const HermitianLaurentMatrix& m) {
        auto s = smith_normal_form(m.mat());
        std::vector<std::string> out;
        for (const auto& f : s.factors) out.push_back(f.str());
        std::sort(out.begin(), out.end());
        return out;
    };
    auto fa = factors(A), fb = factors(B);
    if (fa != fb) {
        rep.equal = false;
        rep.first_difference = "invariant factor multisets differ";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Knot-level pipeline

struct KnotAnalysis {
    std::string name;
    int genus = 0;
    AlexanderPolynomial alexander;
    SeifertMatrix normalized;
    HermitianLaurentMatrix blanchfield;
    SignatureProfile prof;
    InvariantSummary summary;
    std::vector<std::string> warnings;
};

/// Levine-Tristram matrix (1-t)V + (1-t^-1)V^t of the knot itself; hermitian,
/// with determinant vanishing at t = 1.
inline HermitianLaurentMatrix levine_tristram_matrix(const SeifertMatrix& V) {
    int n = V.size();
    LaurentPoly u = LaurentPoly::one() - LaurentPoly::t(1);
    LaurentPoly ubar = LaurentPoly::one() - LaurentPoly::t(-1);
    LMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = u * V.v[i][j] + ubar * V.v[j][i];
    return HermitianLaurentMatrix(std::move(m));
}

/// Full pipeline: validate, normalize, build the linking matrix, compute the
/// profile and the invariants, and cross-check the matrix-level signatures
/// against the knot-level Levine-Tristram form.
inline KnotAnalysis knot_summary(const SeifertMatrix& V) {
    KnotAnalysis out;
    out.name = V.name;
    auto norm = validate_and_normalize(V);
    out.normalized = norm.normalized;
    out.genus = V.genus();
    out.alexander = alexander(V);
    out.blanchfield = blanchfield_matrix(out.normalized);
    out.prof = profile(out.blanchfield);
    out.summary.mu = mu_from_profile(out.prof);
    out.summary.eta = V.size() == 0 ? 0 : nonunit_factor_count(out.blanchfield.mat());
    out.summary.n_r = std::max(out.summary.mu, out.summary.eta);
    out.summary.unknotting_lower_bound = out.summary.n_r;

    if (V.size() > 0) {
        // Knot-level cross-check at arc samples and at the roots.
        HermitianLaurentMatrix M = levine_tristram_matrix(out.normalized);
        std::vector<ArcEndpoint> ends;
        ends.push_back(ArcEndpoint::one());
        for (const auto& r : out.prof.roots) ends.push_back(ArcEndpoint::at(r));
        ends.push_back(ArcEndpoint::minus_one());
        for (size_t i = 0; i + 1 < ends.size(); ++i) {
            GaussianRational z = rational_point_on_arc(ends[i], ends[i + 1]);
            auto knot_level = char_poly_at(M.mat(), z);
            std::vector<int> signs(knot_level.size());
            for (size_t k = 0; k < knot_level.size(); ++k) signs[k] = sgn(knot_level[k]);
            auto [raw, nullity] = detail::count_from_signs(signs);
            if (raw != out.prof.arc_sigma[i] || nullity != 0)
                throw Error("internal: knot-level and matrix-level signatures disagree on an arc");
        }
        auto coeffs = char_poly_symbolic(M.mat());
        std::vector<SymmetricPoly> lifted(coeffs.size());
        for (size_t k = 0; k < coeffs.size(); ++k) lifted[k] = to_symmetric(coeffs[k]);
        for (size_t i = 0; i < out.prof.roots.size(); ++i) {
            std::vector<int> signs(lifted.size());
            for (size_t k = 0; k < lifted.size(); ++k)
                signs[k] = sign_at(lifted[k], out.prof.roots[i].abscissa);
            auto [raw, nullity] = detail::count_from_signs(signs);
            if (raw != out.prof.at_root[i].sigma || nullity != out.prof.at_root[i].eta)
                throw Error("internal: knot-level and matrix-level signatures disagree at a root");
        }
    }

    // The eta-weighted definition of mu can exceed half the signature span;
    // flag it, since tables often quote the span.
    int smax = 0, smin = 0;
    for (int s : out.prof.arc_sigma) {
        smax = std::max(smax, s);
        smin = std::min(smin, s);
    }
    if (2 * out.summary.mu != smax - smin)
        out.warnings.push_back("mu differs from half the signature span (nullity-weighted maxima)");
    return out;
}

}  // namespace knotinv
