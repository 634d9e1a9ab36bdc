#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "laurent.hpp"

namespace knotinv {

// ---------------------------------------------------------------------------
// Exact points on the unit circle

/// Complex number with rational real and imaginary parts. Circle points
/// satisfy re^2 + im^2 = 1 exactly, so conjugation inverts them.
struct GaussianRational {
    Rational re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }

    GaussianRational conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }
    bool on_circle() const { return norm2() == 1; }

    GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
    GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational operator*(const Rational& r) const { return {re * r, im * r}; }

    std::string str() const { return "(" + rat_str(re) + ", " + rat_str(im) + ")"; }
};

/// Exact value of a Laurent polynomial at a rational point of the unit
/// circle. Negative powers use z^-1 = conj(z). For palindromic p the result
/// is real and equals the symmetric lift evaluated at z + conj(z).
inline GaussianRational eval_circle(const LaurentPoly& p, const GaussianRational& z) {
    if (!z.on_circle()) throw NotOnCircle("|z|^2 = " + rat_str(z.norm2()));
    if (p.is_zero()) return {};
    GaussianRational acc(p.coeff(p.hi()), Rational(0));
    for (int k = p.hi() - 1; k >= p.lo(); --k) {
        acc = acc * z + GaussianRational(p.coeff(k), Rational(0));
    }
    // acc now holds p(z) * z^-lo; shift back by z^lo
    GaussianRational zpow(Rational(1), Rational(0));
    GaussianRational base = p.lo() >= 0 ? z : z.conj();
    for (int i = 0; i < std::abs(p.lo()); ++i) zpow = zpow * base;
    return acc * zpow;
}

// ---------------------------------------------------------------------------
// Squarefree decomposition (Yun) over Q[s]

struct SquarefreeFactor {
    SymmetricPoly factor;  // squarefree, primitive
    int multiplicity;
};

/// Yun's algorithm: q = c * prod factor_i ^ multiplicity_i with the factors
/// squarefree and pairwise coprime.
inline std::vector<SquarefreeFactor> squarefree_decomposition(const SymmetricPoly& q) {
    std::vector<SquarefreeFactor> out;
    if (q.is_zero() || q.degree() == 0) return out;
    SymmetricPoly f = q.primitive();
    SymmetricPoly df = f.derivative();
    SymmetricPoly g = sym_gcd(f, df);
    if (g.degree() == 0) {
        out.push_back({f, 1});
        return out;
    }
    SymmetricPoly w = f.divmod(g).first;
    SymmetricPoly y = df.divmod(g).first;
    SymmetricPoly z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        SymmetricPoly gi = sym_gcd(w, z);
        if (gi.degree() > 0) out.push_back({gi.primitive(), i});
        w = w.divmod(gi).first;
        y = z.divmod(gi).first;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

inline SymmetricPoly squarefree_part(const SymmetricPoly& q) {
    SymmetricPoly r(1);
    for (const auto& f : squarefree_decomposition(q)) r = r * f.factor;
    return r.primitive();
}

// ---------------------------------------------------------------------------
// Sturm sequences

/// Sturm chain of a squarefree-or-not polynomial; sign-positive scaling only,
/// which preserves the variation counts.
inline std::vector<SymmetricPoly> sturm_chain(const SymmetricPoly& q) {
    std::vector<SymmetricPoly> chain;
    if (q.is_zero()) return chain;
    chain.push_back(q);
    SymmetricPoly d = q.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    while (true) {
        const SymmetricPoly& a = chain[chain.size() - 2];
        const SymmetricPoly& b = chain.back();
        SymmetricPoly r = a.divmod(b).second;
        if (r.is_zero()) break;
        r = -r;
        Rational c = r.content();
        if (sgn(c) < 0) c = -c;
        chain.push_back(r * (Rational(1) / c));
    }
    return chain;
}

inline int sturm_variations(const std::vector<SymmetricPoly>& chain, const Rational& x) {
    int v = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sgn(p.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

/// Number of distinct real roots of q in the open interval (a, b).
/// Requires q(a) != 0 and q(b) != 0.
inline int sturm_count(const std::vector<SymmetricPoly>& chain, const Rational& a, const Rational& b) {
    return sturm_variations(chain, a) - sturm_variations(chain, b);
}

// ---------------------------------------------------------------------------
// Real algebraic numbers

/// A real algebraic number: the unique root of a squarefree defining
/// polynomial inside an open rational interval whose endpoints are not roots.
struct IsolatingInterval {
    Rational lo, hi;
    SymmetricPoly defpoly;

    /// Returns a copy with the interval halved around the root.
    IsolatingInterval refined() const {
        IsolatingInterval r = *this;
        r.refine_in_place();
        return r;
    }

    void refine_in_place() {
        Rational m = (lo + hi) / 2;
        int sm = sgn(defpoly.eval(m));
        if (sm == 0) {
            // The root is exactly the rational m; shrink symmetrically.
            lo = (lo + m) / 2;
            hi = (m + hi) / 2;
            return;
        }
        if (sgn(defpoly.eval(lo)) * sm < 0)
            hi = m;
        else
            lo = m;
    }

    Rational mid() const { return (lo + hi) / 2; }
    Rational width() const { return hi - lo; }

    double approx(double tol = 1e-12) const {
        IsolatingInterval r = *this;
        while (to_double(r.width()) > tol) r.refine_in_place();
        return to_double(r.mid());
    }

    std::string str() const { return "(" + rat_str(lo) + ", " + rat_str(hi) + ")"; }
};

/// Exact sign of q at the algebraic number x. Zero is decided by a gcd root
/// count, never numerically; nonzero signs by demand-driven refinement.
inline int sign_at(const SymmetricPoly& q, const IsolatingInterval& x) {
    if (q.is_zero()) return 0;
    if (q.degree() == 0) return sgn(q.lc());
    SymmetricPoly g = sym_gcd(q, x.defpoly);
    if (g.degree() > 0) {
        // g is squarefree (it divides the defining polynomial), so a sign
        // change over the interval detects the shared root exactly.
        int sl = sgn(g.eval(x.lo)), sh = sgn(g.eval(x.hi));
        if (sl == 0 || sh == 0) throw Error("isolating interval endpoint is a root");
        if (sl * sh < 0) return 0;
    }
    // q(root) != 0: refine until q has no root inside, then sample.
    IsolatingInterval iv = x;
    std::vector<SymmetricPoly> chain = sturm_chain(squarefree_part(q));
    while (true) {
        if (sgn(q.eval(iv.lo)) != 0 && sgn(q.eval(iv.hi)) != 0 && sturm_count(chain, iv.lo, iv.hi) == 0) {
            int s = sgn(q.eval(iv.mid()));
            if (s != 0) return s;
        }
        iv.refine_in_place();
    }
}

/// Three-way order of two real algebraic numbers; detects equality exactly.
inline int compare_alg(const IsolatingInterval& a, const IsolatingInterval& b) {
    IsolatingInterval x = a, y = b;
    SymmetricPoly g = sym_gcd(x.defpoly, y.defpoly);
    while (true) {
        if (x.hi <= y.lo) return -1;
        if (y.hi <= x.lo) return 1;
        if (g.degree() > 0) {
            Rational ilo = std::max(x.lo, y.lo), ihi = std::min(x.hi, y.hi);
            int sl = sgn(g.eval(ilo)), sh = sgn(g.eval(ihi));
            if (sl != 0 && sh != 0 && sl * sh < 0) return 0;
        }
        x.refine_in_place();
        y.refine_in_place();
    }
}

/// Convenience: order of an algebraic number against a rational.
inline int compare_alg_rational(const IsolatingInterval& a, const Rational& r) {
    IsolatingInterval x = a;
    while (true) {
        if (x.hi <= r) return -1;
        if (r <= x.lo) return 1;
        // r inside (lo, hi): it is the root exactly when defpoly vanishes.
        if (sgn(x.defpoly.eval(r)) == 0) return 0;
        x.refine_in_place();
    }
}

struct IsolatedRoot {
    IsolatingInterval interval;
    int multiplicity;
};

namespace detail {

/// A rational point of (a, b) that is not a root of f; used to keep
/// bisection endpoints off the root set.
inline Rational nonroot_point(const SymmetricPoly& f, const Rational& a, const Rational& b) {
    for (long d = 2;; ++d) {
        for (long k = 1; k < d; ++k) {
            Rational m = a + (b - a) * rat(k, d);
            if (sgn(f.eval(m)) != 0) return m;
        }
    }
}

inline void isolate_rec(const SymmetricPoly& f, const std::vector<SymmetricPoly>& chain,
                        const Rational& a, const Rational& b, std::vector<IsolatingInterval>& out) {
    int n = sturm_count(chain, a, b);
    if (n == 0) return;
    if (n == 1) {
        out.push_back({a, b, f});
        return;
    }
    Rational m = nonroot_point(f, a, b);
    isolate_rec(f, chain, a, m, out);
    isolate_rec(f, chain, m, b, out);
}

}  // namespace detail

/// Isolating intervals for the distinct real roots of q in (lo, hi), in
/// increasing order, with multiplicities from the squarefree decomposition.
inline std::vector<IsolatedRoot> sturm_isolate(const SymmetricPoly& q, const Rational& lo, const Rational& hi) {
    if (q.is_zero()) throw Error("sturm_isolate of zero polynomial");
    std::vector<IsolatedRoot> roots;
    for (const auto& [factor, mult] : squarefree_decomposition(q)) {
        SymmetricPoly f = factor;
        // Shed roots sitting exactly on the window endpoints: they are
        // excluded from the open interval anyway.
        for (const Rational& e : {lo, hi}) {
            if (sgn(f.eval(e)) == 0) {
                SymmetricPoly lin = SymmetricPoly::s() - SymmetricPoly(e);
                f = f.divmod(lin).first;
            }
        }
        if (f.degree() < 1) continue;
        auto chain = sturm_chain(f);
        std::vector<IsolatingInterval> ivs;
        detail::isolate_rec(f, chain, lo, hi, ivs);
        for (auto& iv : ivs) roots.push_back({std::move(iv), mult});
    }
    // Distinct Yun factors are coprime, so refinement separates their roots.
    bool again = true;
    while (again) {
        again = false;
        for (size_t i = 0; i < roots.size(); ++i)
            for (size_t j = i + 1; j < roots.size(); ++j) {
                auto& x = roots[i].interval;
                auto& y = roots[j].interval;
                if (x.hi > y.lo && y.hi > x.lo) {
                    x.refine_in_place();
                    y.refine_in_place();
                    again = true;
                }
            }
    }
    std::sort(roots.begin(), roots.end(),
              [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.interval.lo < b.interval.lo; });
    return roots;
}

// ---------------------------------------------------------------------------
// Roots of palindromic polynomials on the upper unit circle

/// A point z0 = e^{i theta} of the open upper circle, encoded by its
/// abscissa s0 = z0 + 1/z0 in (-2, 2). Roots are ordered by increasing theta,
/// which is decreasing abscissa.
struct CircleRoot {
    IsolatingInterval abscissa;
    int multiplicity = 1;

    double theta_over_2pi() const {
        double s = abscissa.approx();
        return std::acos(std::clamp(s / 2.0, -1.0, 1.0)) / (2.0 * std::acos(-1.0));
    }
};

/// All roots of the palindromic p on the open upper circle, with
/// multiplicities, ordered by increasing arc parameter (decreasing abscissa).
/// Requires p(1) != 0 and p(-1) != 0.
inline std::vector<CircleRoot> circle_roots(const LaurentPoly& p) {
    if (p.is_zero()) throw Error("circle_roots of zero polynomial");
    if (!p.is_palindromic()) throw NotPalindromic();
    if (sgn(p.value_at_one()) == 0 || sgn(p.value_at_minus_one()) == 0)
        throw RootAtPlusMinusOne();
    SymmetricPoly q = to_symmetric(p);
    if (q.degree() < 1) return {};
    std::vector<CircleRoot> out;
    for (auto& r : sturm_isolate(q, Rational(-2), Rational(2))) {
        // Interval endpoints strictly inside (-2, 2); the roots are interior
        // because p does not vanish at t = 1 or t = -1.
        while (r.interval.lo <= -2 || r.interval.hi >= 2) r.interval.refine_in_place();
        out.push_back({std::move(r.interval), r.multiplicity});
    }
    std::reverse(out.begin(), out.end());  // decreasing abscissa
    return out;
}

// ---------------------------------------------------------------------------
// Rational sample points on circle arcs

/// Endpoint of an arc of the upper circle: z = 1, z = -1, or a circle root.
struct ArcEndpoint {
    enum Kind { AtOne, AtMinusOne, Root } kind = AtOne;
    std::optional<IsolatingInterval> root;

    static ArcEndpoint one() { return {AtOne, std::nullopt}; }
    static ArcEndpoint minus_one() { return {AtMinusOne, std::nullopt}; }
    static ArcEndpoint at(const CircleRoot& r) { return {Root, r.abscissa}; }
    static ArcEndpoint at(const IsolatingInterval& iv) { return {Root, iv}; }
};

/// A rational circle point strictly inside the arc from a to b (theta
/// increasing), via the Pythagorean parametrization
/// z = ((1 - u^2) + 2u i) / (1 + u^2). Interior membership is decided by
/// exact comparison of the abscissa 2 Re z against the endpoint roots.
inline GaussianRational rational_point_on_arc(const ArcEndpoint& a, const ArcEndpoint& b) {
    if (a.kind == ArcEndpoint::AtMinusOne || b.kind == ArcEndpoint::AtOne)
        throw EmptyArc("endpoints out of order");
    if (a.kind == ArcEndpoint::AtOne && b.kind == ArcEndpoint::AtMinusOne)
        return {Rational(0), Rational(1)};  // z = i on the full arc
    if (a.kind == ArcEndpoint::Root && b.kind == ArcEndpoint::Root) {
        int c = compare_alg(*b.root, *a.root);
        if (c == 0) throw EmptyArc("coincident arc endpoints");
        if (c > 0) throw EmptyArc("endpoints out of order");
    }
    // Interior abscissae lie strictly between b's abscissa and a's.
    auto too_high = [&](const Rational& s) {
        if (a.kind == ArcEndpoint::AtOne) return s >= 2;
        return compare_alg_rational(*a.root, s) <= 0;  // root_a <= s
    };
    auto too_low = [&](const Rational& s) {
        if (b.kind == ArcEndpoint::AtMinusOne) return s <= -2;
        return compare_alg_rational(*b.root, s) >= 0;  // root_b >= s
    };
    auto s_of = [](const Rational& u) -> Rational { return Rational(2) * (1 - u * u) / (1 + u * u); };
    auto point = [](const Rational& u) -> GaussianRational {
        Rational den = 1 + u * u;
        Rational re = (1 - u * u) / den;
        Rational im = 2 * u / den;
        return {re, im};
    };
    // s(u) decreases from 2 (u = 0) toward -2.
    Rational u_lo = 0, u_hi = 1;
    while (too_high(s_of(u_hi))) u_hi *= 2;
    if (!too_low(s_of(u_hi))) return point(u_hi);
    while (true) {
        Rational m = (u_lo + u_hi) / 2;
        Rational s = s_of(m);
        if (too_high(s))
            u_lo = m;
        else if (too_low(s))
            u_hi = m;
        else
            return point(m);
    }
}

namespace detail {

/// Formats an abscissa with the display precision used in reports.
inline std::string approx_str(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace detail

}  // namespace knotinv
