#pragma once

#include <climits>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "invariants.hpp"

namespace knotinv {

// ===========================================================================
// Approximate Laurent polynomials (witness material only; every decision in
// this module is made exactly)

struct ApproxLaurent {
    int lo = 0;
    std::vector<double> c;

    static ApproxLaurent from_exact(const LaurentPoly& p) {
        ApproxLaurent a;
        a.lo = p.lo();
        for (const auto& x : p.coeffs()) a.c.push_back(to_double(x));
        return a;
    }
    static ApproxLaurent constant(double v) { return {0, {v}}; }

    bool empty() const { return c.empty(); }

    std::complex<double> eval(const std::complex<double>& z) const {
        std::complex<double> acc = 0.0;
        for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
        return acc * std::pow(z, lo);
    }

    ApproxLaurent conj() const {  // p(t) -> p(1/t); real coefficients
        ApproxLaurent a;
        a.lo = -(lo + static_cast<int>(c.size()) - 1);
        a.c.assign(c.rbegin(), c.rend());
        return a;
    }

    ApproxLaurent operator*(const ApproxLaurent& o) const {
        if (empty() || o.empty()) return {};
        ApproxLaurent r;
        r.lo = lo + o.lo;
        r.c.assign(c.size() + o.c.size() - 1, 0.0);
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
        return r;
    }
    ApproxLaurent operator*(double s) const {
        ApproxLaurent r = *this;
        for (auto& x : r.c) x *= s;
        return r;
    }
    ApproxLaurent operator-() const { return *this * -1.0; }
};

// ===========================================================================
// Elementary factors and diagonal forms
//
// A diagonal form is a list of 1x1 entries, each a sign times a product of
// elementary pieces. Pieces are tracked symbolically: a Q-irreducible
// defining polynomial in s together with either one selected real root or
// the whole complex-root block, so entries may represent real polynomials
// that are not expressible over Q. Exact sign arithmetic keeps every
// decision rigorous regardless.

enum class RootClass { OnCircle, RealOffCircle, ComplexBlock };

struct ElementaryFactor {
    SymmetricPoly m;                        // primitive, positive lead, Q-irreducible
    std::optional<IsolatingInterval> root;  // one real root; nullopt = complex block
    int multiplicity = 1;
    RootClass location = RootClass::ComplexBlock;

    bool is_circle() const { return location == RootClass::OnCircle; }
};

/// Structural identity of the underlying real-irreducible piece: the
/// defining polynomial plus the ordinal of the selected root among its real
/// roots (descending abscissa), or -1 for the complex block.
struct FactorKey {
    std::string m_str;
    int ordinal = -1;

    bool operator==(const FactorKey& o) const { return m_str == o.m_str && ordinal == o.ordinal; }
    bool operator<(const FactorKey& o) const {
        return m_str != o.m_str ? m_str < o.m_str : ordinal < o.ordinal;
    }
};

/// Real roots of m in descending order plus circle classification.
struct FactorRoots {
    std::vector<IsolatingInterval> real_roots;  // descending abscissa
    std::vector<RootClass> classes;             // aligned; OnCircle or RealOffCircle
    bool has_complex = false;
};

inline FactorRoots analyze_factor(const SymmetricPoly& m) {
    FactorRoots out;
    // Cauchy bound for the real roots
    Rational bound = 1;
    for (int i = 0; i < m.degree(); ++i) {
        Rational a = abs(m.coeff(i) / m.lc());
        if (a > bound) bound = a;
    }
    bound += 1;
    auto roots = sturm_isolate(m, -bound, bound);
    for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
        IsolatingInterval iv = it->interval;
        int against_two = compare_alg_rational(iv, Rational(2));
        int against_minus_two = compare_alg_rational(iv, Rational(-2));
        if (against_two == 0 || against_minus_two == 0)
            throw DegenerateAtUnitPoints("factor vanishes at t = 1 or t = -1");
        bool on_circle = against_two < 0 && against_minus_two > 0;
        if (on_circle)
            while (iv.lo <= -2 || iv.hi >= 2) iv.refine_in_place();
        out.real_roots.push_back(iv);
        out.classes.push_back(on_circle ? RootClass::OnCircle : RootClass::RealOffCircle);
    }
    out.has_complex = static_cast<size_t>(m.degree()) > out.real_roots.size();
    return out;
}

inline FactorKey key_of(const ElementaryFactor& f) {
    if (!f.root) return {f.m.str(), -1};
    FactorRoots fr = analyze_factor(f.m);
    for (size_t j = 0; j < fr.real_roots.size(); ++j)
        if (compare_alg(fr.real_roots[j], *f.root) == 0) return {f.m.str(), static_cast<int>(j)};
    throw Error("factor root does not belong to its defining polynomial");
}

struct DiagonalEntry {
    int sign = 1;
    std::vector<ElementaryFactor> factors;
    std::optional<LaurentPoly> expanded;  // rational expansion when all of m is covered uniformly
};

struct DiagonalForm {
    std::vector<DiagonalEntry> entries;

    int size() const { return static_cast<int>(entries.size()); }
};

namespace detail {

/// Sign of a single factor at an algebraic abscissa (0 when it vanishes).
inline int factor_sign_at(const ElementaryFactor& f, const IsolatingInterval& x) {
    if (!f.root) return 1;  // complex block is positive on the reals
    int cmp = compare_alg(x, *f.root);
    if (cmp == 0) return 0;
    int sigma = compare_alg_rational(*f.root, Rational(2)) < 0 ? 1 : -1;  // sign(2 - s0)
    return f.multiplicity % 2 == 0 ? 1 : sigma * cmp;
}

inline int factor_sign_at_rational(const ElementaryFactor& f, const Rational& x) {
    if (!f.root) return 1;
    int cmp = -compare_alg_rational(*f.root, x);  // sign(x - root)
    if (cmp == 0) return 0;
    int sigma = compare_alg_rational(*f.root, Rational(2)) < 0 ? 1 : -1;
    int s = sigma * cmp;
    return f.multiplicity % 2 == 0 ? 1 : s;
}

}  // namespace detail

/// Sign of the entry value at an algebraic circle abscissa; 0 when the entry
/// vanishes there. The entry value at t = 1 always has sign `sign` (factors
/// are normalized positive at 1).
inline int entry_sign_at(const DiagonalEntry& e, const IsolatingInterval& x) {
    int s = e.sign;
    for (const auto& f : e.factors) {
        int fs = detail::factor_sign_at(f, x);
        if (fs == 0) return 0;
        s *= fs;
    }
    return s;
}

inline int entry_sign_at_rational(const DiagonalEntry& e, const Rational& x) {
    int s = e.sign;
    for (const auto& f : e.factors) {
        int fs = detail::factor_sign_at_rational(f, x);
        if (fs == 0) return 0;
        s *= fs;
    }
    return s;
}

inline int entry_multiplicity_at(const DiagonalEntry& e, const IsolatingInterval& x) {
    int m = 0;
    for (const auto& f : e.factors)
        if (f.root && compare_alg(*f.root, x) == 0) m += f.multiplicity;
    return m;
}

/// Builds the factor list of a palindromic Laurent polynomial; requires no
/// roots at t = 1 or t = -1. The positive rational constant is dropped; the
/// overall sign lands in the returned sign.
inline std::pair<int, std::vector<ElementaryFactor>> factor_palindromic(const LaurentPoly& p) {
    if (!p.is_palindromic()) throw NotPalindromic();
    if (p.is_zero()) throw Error("zero entry");
    if (sgn(p.value_at_one()) == 0 || sgn(p.value_at_minus_one()) == 0)
        throw DegenerateAtUnitPoints();
    std::vector<ElementaryFactor> factors;
    SymmetricPoly q = to_symmetric(p);
    // Every factor piece is positive at t = 1, so the entry sign is the sign
    // of the value there.
    int sign = sgn(p.value_at_one());
    for (auto& [m, mult] : factor_symmetric(q)) {
        FactorRoots fr = analyze_factor(m);
        for (size_t j = 0; j < fr.real_roots.size(); ++j)
            factors.push_back({m, fr.real_roots[j], mult, fr.classes[j]});
        if (fr.has_complex) factors.push_back({m, std::nullopt, mult, RootClass::ComplexBlock});
    }
    return {sign, std::move(factors)};
}

/// Rational expansion of an entry when each defining polynomial appears with
/// all of its selectors at one common multiplicity.
inline std::optional<LaurentPoly> try_expand(int sign, const std::vector<ElementaryFactor>& factors) {
    std::map<std::string, std::pair<SymmetricPoly, std::vector<const ElementaryFactor*>>> by_m;
    for (const auto& f : factors) by_m[f.m.str()].first = f.m, by_m[f.m.str()].second.push_back(&f);
    SymmetricPoly prod(Rational(1));
    int norm_sign = 1;
    for (auto& [str, data] : by_m) {
        auto& [m, fs] = data;
        FactorRoots fr = analyze_factor(m);
        size_t want = fr.real_roots.size() + (fr.has_complex ? 1 : 0);
        if (fs.size() != want) return std::nullopt;
        int mult = fs.front()->multiplicity;
        for (const auto* f : fs)
            if (f->multiplicity != mult) return std::nullopt;
        // all selectors present uniformly: the product of the normalized
        // pieces is (prod of sign(2 - s_j)) * m^mult up to a positive factor
        int sigma = 1;
        for (const auto& iv : fr.real_roots)
            if (compare_alg_rational(iv, Rational(2)) > 0) sigma = -sigma;
        prod = prod * m.pow(mult);
        if (mult % 2) norm_sign *= sigma;
    }
    LaurentPoly out = from_symmetric(prod) * Rational(sign * norm_sign);
    return out;
}

inline DiagonalEntry make_entry(int sign, std::vector<ElementaryFactor> factors) {
    DiagonalEntry e;
    e.sign = sign;
    // combine equal keys
    std::map<FactorKey, size_t> seen;
    for (auto& f : factors) {
        FactorKey k = key_of(f);
        auto it = seen.find(k);
        if (it == seen.end()) {
            seen[k] = e.factors.size();
            e.factors.push_back(std::move(f));
        } else {
            e.factors[it->second].multiplicity += f.multiplicity;
        }
    }
    e.expanded = try_expand(e.sign, e.factors);
    return e;
}

inline DiagonalEntry entry_from_poly(const LaurentPoly& p) {
    auto [sign, factors] = factor_palindromic(p);
    return make_entry(sign, std::move(factors));
}

// ===========================================================================
// Profiles, mu, and eta of diagonal forms

/// Distinct circle roots across the entries, ordered by decreasing abscissa,
/// with total multiplicities (the roots of the determinant of the form).
inline std::vector<CircleRoot> form_circle_roots(const DiagonalForm& d) {
    std::vector<CircleRoot> roots;
    for (const auto& e : d.entries)
        for (const auto& f : e.factors) {
            if (!f.is_circle()) continue;
            bool found = false;
            for (auto& r : roots)
                if (compare_alg(r.abscissa, *f.root) == 0) {
                    r.multiplicity += f.multiplicity;
                    found = true;
                    break;
                }
            if (!found) roots.push_back({*f.root, f.multiplicity});
        }
    std::sort(roots.begin(), roots.end(), [](const CircleRoot& a, const CircleRoot& b) {
        return compare_alg(a.abscissa, b.abscissa) > 0;
    });
    return roots;
}

/// Exact signature profile of the form, in the same shape as the matrix
/// profile so the two can be compared directly.
inline SignatureProfile form_profile(const DiagonalForm& d) {
    SignatureProfile p;
    p.n = d.size();
    p.roots = form_circle_roots(d);
    for (const auto& e : d.entries) p.sign_at_one += e.sign;
    // arc samples: rational abscissae strictly between consecutive roots
    std::vector<Rational> samples;
    {
        std::vector<IsolatingInterval> ivs;
        for (const auto& r : p.roots) ivs.push_back(r.abscissa);
        for (size_t i = 0; i + 1 < ivs.size(); ++i)
            while (!(ivs[i + 1].hi < ivs[i].lo)) {
                ivs[i].refine_in_place();
                ivs[i + 1].refine_in_place();
            }
        for (auto& iv : ivs)
            while (iv.lo <= -2 || iv.hi >= 2) iv.refine_in_place();
        Rational prev_lo = 2;
        for (size_t i = 0; i < ivs.size(); ++i) {
            samples.push_back((ivs[i].hi + prev_lo) / 2);
            prev_lo = ivs[i].lo;
        }
        samples.push_back((prev_lo + -2) / 2);
    }
    for (const auto& s : samples) {
        int sigma = 0;
        for (const auto& e : d.entries) {
            int es = entry_sign_at_rational(e, s);
            if (es == 0) throw Error("internal: entry vanishes at an arc sample");
            sigma += es - e.sign;
        }
        p.arc_sigma.push_back(sigma);
    }
    for (const auto& r : p.roots) {
        PointSignature ps;
        for (const auto& e : d.entries) {
            int es = entry_sign_at(e, r.abscissa);
            if (es == 0) ++ps.eta;
            ps.sigma += es - e.sign;
            ps.raw += es;
        }
        p.at_root.push_back(ps);
    }
    return p;
}

inline int form_mu(const DiagonalForm& d) { return mu_from_profile(form_profile(d)); }

/// Maximal nullity: the largest number of entries sharing one elementary
/// piece (vanishing locus), over all selectors including off-circle ones.
inline int form_eta(const DiagonalForm& d) {
    std::map<FactorKey, int> counts;
    for (const auto& e : d.entries)
        for (const auto& f : e.factors) ++counts[key_of(f)];
    int best = 0;
    for (const auto& [k, c] : counts) best = std::max(best, c);
    return best;
}

/// Per-selector exponent multisets; two forms represent modules with the
/// same invariant factors exactly when these agree.
inline std::map<FactorKey, std::vector<int>> form_factor_exponents(const DiagonalForm& d) {
    std::map<FactorKey, std::vector<int>> out;
    for (const auto& e : d.entries)
        for (const auto& f : e.factors) out[key_of(f)].push_back(f.multiplicity);
    for (auto& [k, v] : out) std::sort(v.begin(), v.end());
    return out;
}

/// The same exponent data read off a hermitian matrix through its Smith
/// form: invariant factors are factored over Q[t], self-conjugate factors
/// expand to all their selectors, conjugate pairs to the selectors of their
/// norm.
inline std::map<FactorKey, std::vector<int>> matrix_factor_exponents(const HermitianLaurentMatrix& A);

/// Profile and factor-content comparison of a symbolic form against a
/// hermitian matrix.
inline bool form_matches_matrix(const DiagonalForm& d, const HermitianLaurentMatrix& A,
                                std::string* why = nullptr);

// ===========================================================================
// Nonnegativity and norm factorization

/// Exact decision whether the palindromic P is >= 0 on the whole unit
/// circle: no sign change across any root of the lift in [-2, 2].
inline bool nonneg_on_circle(const LaurentPoly& P) {
    if (!P.is_palindromic()) throw NotPalindromic();
    if (P.is_zero()) return true;
    SymmetricPoly q = to_symmetric(P);
    if (q.degree() < 1) return sgn(q.coeff(0)) >= 0;
    std::vector<Rational> samples = {Rational(-2), Rational(2)};
    auto roots = sturm_isolate(q, Rational(-2), Rational(2));
    std::vector<IsolatingInterval> ivs;
    for (auto& r : roots) ivs.push_back(r.interval);
    for (size_t i = 0; i + 1 < ivs.size(); ++i)
        while (!(ivs[i].hi < ivs[i + 1].lo)) {
            ivs[i].refine_in_place();
            ivs[i + 1].refine_in_place();
        }
    Rational prev(-2);
    for (auto& iv : ivs) {
        while (iv.lo <= -2 || iv.hi >= 2) iv.refine_in_place();
        samples.push_back((prev + iv.lo) / 2);
        prev = iv.hi;
    }
    samples.push_back((prev + 2) / 2);
    for (const auto& s : samples)
        if (sgn(q.eval(s)) < 0) return false;
    return true;
}

/// Strict positivity on the whole circle: no roots of the lift in [-2, 2]
/// and a positive value.
inline bool positive_on_circle(const LaurentPoly& P) {
    if (!P.is_palindromic()) throw NotPalindromic();
    if (P.is_zero()) return false;
    SymmetricPoly q = to_symmetric(P);
    if (sgn(q.eval(Rational(2))) <= 0 || sgn(q.eval(Rational(-2))) <= 0 ||
        sgn(q.eval(Rational(0))) <= 0)
        return false;
    if (q.degree() < 1) return true;
    auto chain = sturm_chain(squarefree_part(q));
    return sturm_count(chain, Rational(-2), Rational(2)) == 0;
}

struct NormFactorResult {
    bool exact = false;
    LaurentPoly exact_u;     // set when exact
    ApproxLaurent approx_u;  // always usable
    double residual = 0.0;   // sup |P - U Ubar| on the verification grid
};

namespace detail {

/// Durand-Kerner roots of a real polynomial given by rational coefficients.
inline std::vector<std::complex<double>> dk_roots(const SymmetricPoly& m) {
    int d = m.degree();
    std::vector<std::complex<double>> c(d + 1);
    for (int i = 0; i <= d; ++i) c[i] = to_double(m.coeff(i) / m.lc());
    std::vector<std::complex<double>> r(d);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc = 1.0;
    for (int i = 0; i < d; ++i) {
        acc *= seed;
        r[i] = acc;
    }
    for (int iter = 0; iter < 400; ++iter) {
        double moved = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<double> num = c[d];
            for (int k = d - 1; k >= 0; --k) num = num * r[i] + c[k];
            std::complex<double> den = 1.0;
            for (int j = 0; j < d; ++j)
                if (j != i) den *= r[i] - r[j];
            std::complex<double> delta = num / den;
            r[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    return r;
}

/// Numeric norm split of the lift of m (no roots of m in [-2, 2]): finds U
/// with U(t) U(1/t) = sign * lift(m), roots taken inside the unit disk.
inline ApproxLaurent numeric_norm_half(const SymmetricPoly& m) {
    auto sroots = dk_roots(m);
    // polynomial in t built from the disk-interior roots of t^2 - s t + 1
    std::vector<std::complex<double>> troots;
    for (const auto& s : sroots) {
        if (std::imag(s) < -1e-12) continue;  // conjugates handled together
        std::complex<double> disc = std::sqrt(s * s - 4.0);
        std::complex<double> t1 = (s + disc) / 2.0, t2 = (s - disc) / 2.0;
        std::complex<double> inside = std::abs(t1) < std::abs(t2) ? t1 : t2;
        if (std::abs(std::imag(s)) < 1e-12) {
            troots.push_back(std::complex<double>(std::real(inside), 0.0));
        } else {
            troots.push_back(inside);
            troots.push_back(std::conj(inside));
        }
    }
    std::vector<std::complex<double>> coef = {1.0};
    for (const auto& r : troots) {
        coef.push_back(0.0);
        for (size_t i = coef.size() - 1; i > 0; --i) coef[i] = coef[i - 1] - r * coef[i];
        coef[0] = coef[0] * -r;
        // note: multiply (x - r) with ascending storage; rebuilt below
    }
    // rebuild cleanly: prod (t - r) ascending coefficients
    coef.assign(1, 1.0);
    for (const auto& r : troots) {
        std::vector<std::complex<double>> next(coef.size() + 1, 0.0);
        for (size_t i = 0; i < coef.size(); ++i) {
            next[i + 1] += coef[i];
            next[i] -= r * coef[i];
        }
        coef = std::move(next);
    }
    ApproxLaurent u;
    u.lo = 0;
    for (const auto& x : coef) u.c.push_back(std::real(x));
    // scale so that U(1)^2 = |m(2)|
    double at_one = 0;
    for (double x : u.c) at_one += x;
    double target = std::sqrt(std::abs(to_double(m.eval(Rational(2)))));
    double scale = target / at_one;
    for (auto& x : u.c) x *= scale;
    return u;
}

inline double grid_sup_norm(const LaurentPoly& p, int samples = 1024) {
    double best = 0;
    ApproxLaurent a = ApproxLaurent::from_exact(p);
    for (int i = 0; i < samples; ++i) {
        double th = 2 * M_PI * i / samples;
        best = std::max(best, std::abs(a.eval(std::polar(1.0, th))));
    }
    return best;
}

}  // namespace detail

/// Norm factorization P = U * involute(U) of a circle-nonnegative
/// palindromic polynomial. Exact whenever each root group splits over Q;
/// otherwise U carries floating coefficients with a verified residual.
inline NormFactorResult norm_factor(const LaurentPoly& P) {
    if (!nonneg_on_circle(P)) throw NegativeSomewhere();
    NormFactorResult out;
    if (P.is_zero()) {
        out.exact = true;
        out.exact_u = LaurentPoly::zero();
        return out;
    }
    SymmetricPoly q = to_symmetric(P);
    LaurentPoly exact_part = LaurentPoly::one();
    std::vector<SymmetricPoly> numeric_parts;  // odd leftover groups, no rational split
    Rational c_total = q.degree() < 1 ? q.coeff(0) : Rational(1);
    if (q.degree() >= 1) {
        auto factors = factor_symmetric(q);
        SymmetricPoly assembled(Rational(1));
        for (auto& [m, e] : factors) assembled = assembled * m.pow(e);
        c_total = q.lc() / assembled.lc();
        for (auto& [m, e] : factors) {
            // roots strictly inside (-2, 2); roots at the endpoints (t = 1 or
            // t = -1) behave like off-circle groups and split rationally
            int circle = static_cast<int>(sturm_isolate(m, Rational(-2), Rational(2)).size());
            LaurentPoly lift = from_symmetric(m);
            if (circle > 0 || e % 2 == 0) {
                if (e % 2 != 0)
                    throw Error("internal: odd multiplicity at a circle root of a nonnegative polynomial");
                exact_part *= lift.pow(e / 2);
                continue;
            }
            // odd multiplicity, no circle roots: try the rational half
            exact_part *= lift.pow((e - 1) / 2);
            std::optional<LaurentPoly> half;
            for (auto& [h, hm] : factor_laurent(lift)) {
                if (2 * h.span() != lift.span()) continue;
                LaurentPoly prod = h * h.involute();
                auto [quot, rem] = laurent_divmod(lift, prod);
                if (rem.is_zero() && quot.is_unit()) {
                    half = h;
                    c_total *= quot.coeff(quot.lo());
                    // the t-power part of the unit is norm-trivial
                    break;
                }
            }
            if (half) {
                exact_part *= *half;
            } else {
                // the group itself is negative on the circle exactly when its
                // constant sign there is negative
                int circ_sign = sgn(m.eval(Rational(0)));
                c_total *= circ_sign;
                numeric_parts.push_back(m);
            }
        }
    }
    if (sgn(c_total) < 0) throw Error("internal: negative leftover constant in norm factorization");
    Rational root;
    bool const_exact = rat_sqrt(c_total, root);
    if (const_exact && numeric_parts.empty()) {
        out.exact = true;
        out.exact_u = exact_part * root;
        out.approx_u = ApproxLaurent::from_exact(out.exact_u);
    } else {
        ApproxLaurent u = ApproxLaurent::from_exact(exact_part) * std::sqrt(to_double(c_total));
        for (const auto& m : numeric_parts) u = u * detail::numeric_norm_half(m);
        out.exact = false;
        out.approx_u = u;
    }
    // residual on the verification grid
    double pnorm = detail::grid_sup_norm(P);
    double worst = 0;
    ApproxLaurent ubar = out.approx_u.conj();
    ApproxLaurent pa = ApproxLaurent::from_exact(P);
    for (int i = 0; i < 1024; ++i) {
        std::complex<double> z = std::polar(1.0, 2 * M_PI * i / 1024);
        worst = std::max(worst, std::abs(pa.eval(z) - out.approx_u.eval(z) * ubar.eval(z)));
    }
    out.residual = worst;
    if (!(worst <= 1e-8 * std::max(pnorm, 1.0)))
        throw Error("norm factor residual too large: " + std::to_string(worst));
    return out;
}

// ===========================================================================
// The sign hypothesis and positive Bezout pairs

/// Exact check that for every z on the (closed) upper circle, A(z) > 0 or
/// B(z) > 0; returns a printable witness location on failure.
inline std::optional<std::string> sign_hypothesis_witness(const LaurentPoly& A, const LaurentPoly& B) {
    SymmetricPoly a = to_symmetric(A), b = to_symmetric(B);
    auto positive_at = [&](const Rational& x) {
        return sgn(a.eval(x)) > 0 || sgn(b.eval(x)) > 0;
    };
    if (!positive_at(Rational(2))) return "2 (z = 1)";
    if (!positive_at(Rational(-2))) return "-2 (z = -1)";
    SymmetricPoly prod = a * b;
    if (prod.is_zero()) prod = a.is_zero() ? b : a;
    if (prod.degree() < 1) {
        if (!positive_at(Rational(0))) return "0";
        return std::nullopt;
    }
    auto roots = sturm_isolate(prod, Rational(-2), Rational(2));
    std::vector<IsolatingInterval> ivs;
    for (auto& r : roots) ivs.push_back(r.interval);
    for (size_t i = 0; i + 1 < ivs.size(); ++i)
        while (!(ivs[i].hi < ivs[i + 1].lo)) {
            ivs[i].refine_in_place();
            ivs[i + 1].refine_in_place();
        }
    for (auto& iv : ivs)
        while (iv.lo <= -2 || iv.hi >= 2) iv.refine_in_place();
    // at every root of a*b, one of the two must be strictly positive
    for (const auto& iv : ivs) {
        if (sign_at(a, iv) > 0 || sign_at(b, iv) > 0) continue;
        return iv.str();
    }
    // and on every open piece between roots
    Rational prev(-2);
    std::vector<Rational> samples;
    for (const auto& iv : ivs) {
        samples.push_back((prev + iv.lo) / 2);
        prev = iv.hi;
    }
    samples.push_back((prev + 2) / 2);
    for (const auto& s : samples)
        if (!positive_at(s)) return rat_str(s);
    return std::nullopt;
}

struct PositivityCertificate {
    bool exact = true;          // positivity decided by exact root counting
    int grid = 256;             // evidence grid size
    double min_p = 0, min_q = 0;            // smallest grid values
    double deriv_bound_p = 0, deriv_bound_q = 0;  // sup |d/dtheta| bounds
    double bezout_residual = 0; // exact identity: 0 by construction
};

struct PositiveBezout {
    LaurentPoly p, q;  // palindromic, positive on the circle, p*A + q*B = 1
    LaurentPoly gamma; // the shift used
    PositivityCertificate certificate;
};

namespace detail {

inline double circle_derivative_bound(const LaurentPoly& p) {
    // |d/dtheta p(e^{i theta})| <= sum |k c_k|
    double b = 0;
    for (int k = p.lo(); k <= p.hi(); ++k) b += std::abs(k) * std::abs(to_double(p.coeff(k)));
    return b;
}

inline double circle_grid_min(const LaurentPoly& p, int grid) {
    ApproxLaurent a = ApproxLaurent::from_exact(p);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i)
        best = std::min(best, std::real(a.eval(std::polar(1.0, 2 * M_PI * i / grid))));
    return best;
}

}  // namespace detail

/// Palindromic positive cofactors: p*A + q*B = 1 exactly with p, q > 0 on
/// the whole circle. Requires A, B palindromic and coprime with the sign
/// hypothesis; the gamma shift is fitted numerically but every positivity
/// and identity claim is exact (gamma has rational coefficients).
inline PositiveBezout positive_bezout(const LaurentPoly& A, const LaurentPoly& B) {
    if (!A.is_palindromic() || !B.is_palindromic()) throw NotPalindromic();
    auto bz = bezout(A, B);
    if (!bz.g.is_unit()) throw NotCoprime();
    if (auto w = sign_hypothesis_witness(A, B)) throw SignHypothesisFails(*w);
    Rational g0 = bz.g.coeff(bz.g.lo());
    LaurentPoly ptilde = symmetrize(bz.x * (Rational(1) / g0));
    LaurentPoly qtilde = symmetrize(bz.y * (Rational(1) / g0));
    // exactness: symmetrizing keeps the identity because A and B are palindromic
    if (ptilde * A + qtilde * B != LaurentPoly::one())
        throw Error("internal: symmetrized cofactor identity failed");

    SymmetricPoly As = to_symmetric(A), Bs = to_symmetric(B);
    SymmetricPoly Ps = to_symmetric(ptilde), Qs = to_symmetric(qtilde);

    auto finish = [&](const LaurentPoly& gamma, const LaurentPoly& p, const LaurentPoly& q) {
        PositiveBezout out;
        out.p = p;
        out.q = q;
        out.gamma = gamma;
        out.certificate.exact = true;
        out.certificate.grid = 256;
        out.certificate.min_p = detail::circle_grid_min(p, 256);
        out.certificate.min_q = detail::circle_grid_min(q, 256);
        out.certificate.deriv_bound_p = detail::circle_derivative_bound(p);
        out.certificate.deriv_bound_q = detail::circle_derivative_bound(q);
        out.certificate.bezout_residual = 0.0;
        return out;
    };

    if (positive_on_circle(ptilde) && positive_on_circle(qtilde))
        return finish(LaurentPoly::zero(), ptilde, qtilde);

    // gamma sandwich: fit a symmetric polynomial between gamma_min and
    // gamma_max through the arctan device, verify positivity exactly,
    // densify until it passes
    for (int k = 2; k <= 7; ++k) {
        int nodes = 1 << k;
        std::vector<double> xs(nodes), target(nodes);
        bool degenerate = false;
        for (int i = 0; i < nodes; ++i) {
            double angle = M_PI * (2 * i + 1) / (2.0 * nodes);
            // rationalized Chebyshev abscissa in [-2, 2]
            Rational x = rat(static_cast<long>(std::llround(std::cos(angle) * (1 << 20))), 1L << 19);
            xs[i] = to_double(x);
            Rational av = As.eval(x), bv = Bs.eval(x);
            double gmax = sgn(bv) > 0 ? to_double(Ps.eval(x) / bv) : std::numeric_limits<double>::infinity();
            double gmin = sgn(av) > 0 ? to_double(-Qs.eval(x) / av) : -std::numeric_limits<double>::infinity();
            if (!(gmin < gmax)) {
                degenerate = true;
                break;
            }
            double lo = std::atan(gmin), hi = std::atan(gmax);
            target[i] = std::tan((lo + hi) / 2);
        }
        if (degenerate) continue;
        int degree = std::min(nodes - 1, 24);
        // least squares in the Chebyshev basis of [-2, 2]
        std::vector<std::vector<double>> basis(nodes, std::vector<double>(degree + 1));
        for (int i = 0; i < nodes; ++i) {
            double u = xs[i] / 2;
            basis[i][0] = 1;
            if (degree >= 1) basis[i][1] = u;
            for (int j = 2; j <= degree; ++j) basis[i][j] = 2 * u * basis[i][j - 1] - basis[i][j - 2];
        }
        // normal equations (small, adequately conditioned in this basis)
        int n = degree + 1;
        std::vector<std::vector<double>> ata(n, std::vector<double>(n, 0));
        std::vector<double> atb(n, 0);
        for (int i = 0; i < nodes; ++i)
            for (int r = 0; r < n; ++r) {
                atb[r] += basis[i][r] * target[i];
                for (int c = 0; c < n; ++c) ata[r][c] += basis[i][r] * basis[i][c];
            }
        // Gaussian elimination with partial pivoting
        std::vector<double> coef(n, 0);
        {
            for (int col = 0; col < n; ++col) {
                int piv = col;
                for (int r = col + 1; r < n; ++r)
                    if (std::abs(ata[r][col]) > std::abs(ata[piv][col])) piv = r;
                std::swap(ata[col], ata[piv]);
                std::swap(atb[col], atb[piv]);
                if (std::abs(ata[col][col]) < 1e-13) continue;
                for (int r = col + 1; r < n; ++r) {
                    double f = ata[r][col] / ata[col][col];
                    for (int c = col; c < n; ++c) ata[r][c] -= f * ata[col][c];
                    atb[r] -= f * atb[col];
                }
            }
            for (int r = n - 1; r >= 0; --r) {
                double acc = atb[r];
                for (int c = r + 1; c < n; ++c) acc -= ata[r][c] * coef[c];
                coef[r] = std::abs(ata[r][r]) < 1e-13 ? 0.0 : acc / ata[r][r];
            }
        }
        // back to the monomial basis in s with dyadic rational coefficients
        SymmetricPoly gamma_s;
        {
            SymmetricPoly tprev(Rational(1));
            SymmetricPoly tcur = SymmetricPoly::s() * Rational(1, 2);
            for (int j = 0; j <= degree; ++j) {
                const SymmetricPoly& tj = (j == 0) ? tprev : tcur;
                double cd = coef[j];
                Rational cr = rat(static_cast<long>(std::llround(cd * (1 << 20))), 1L << 20);
                gamma_s = gamma_s + tj * cr;
                if (j >= 1) {
                    SymmetricPoly tnext = SymmetricPoly::s() * tcur - tprev;
                    tprev = tcur;
                    tcur = tnext;
                }
            }
        }
        LaurentPoly gamma = from_symmetric(gamma_s);
        LaurentPoly p = ptilde - gamma * B;
        LaurentPoly q = qtilde + gamma * A;
        if (p * A + q * B != LaurentPoly::one())
            throw Error("internal: shifted cofactor identity failed");
        if (positive_on_circle(p) && positive_on_circle(q)) return finish(gamma, p, q);
    }
    throw Error("positivity shift did not converge; inputs may be near the hypothesis boundary");
}

// ===========================================================================
// The decomposition (glue) operation

struct GlueWitness {
    ApproxLaurent u, v;       // norm halves of the positive cofactors
    ApproxLaurent n[2][2];    // the congruence witness [[vbar*B, -ubar*A], [u, v]]
    double residual = 0.0;    // sup over samples of |N diag(A,B) conj(N)^t - diag(eps A B, eps)|
};

struct GlueResult {
    int epsilon = 1;
    LaurentPoly merged;  // epsilon * A * B
    GlueWitness witness;
};

/// Replaces diag(A, B) by the single entry eps*A*B when the pointwise sign
/// hypothesis holds for eps; the witness is the explicit congruence, with
/// numeric coefficients and a reported residual.
inline GlueResult glue(const LaurentPoly& A, const LaurentPoly& B) {
    if (!A.is_palindromic() || !B.is_palindromic()) throw NotPalindromic();
    if (!bezout(A, B).g.is_unit()) throw NotCoprime();
    int eps = 0;
    std::optional<std::string> wit_plus = sign_hypothesis_witness(A, B);
    if (!wit_plus) {
        eps = 1;
    } else if (!sign_hypothesis_witness(-A, -B)) {
        eps = -1;
    } else {
        throw SignHypothesisFails(*wit_plus);
    }
    LaurentPoly As = A * Rational(eps), Bs = B * Rational(eps);
    PositiveBezout pb = positive_bezout(As, Bs);
    auto U = norm_factor(pb.p), V = norm_factor(pb.q);

    GlueResult out;
    out.epsilon = eps;
    out.merged = A * B * Rational(eps);
    out.witness.u = U.approx_u;
    out.witness.v = V.approx_u;
    ApproxLaurent a = ApproxLaurent::from_exact(A), b = ApproxLaurent::from_exact(B);
    out.witness.n[0][0] = V.approx_u.conj() * b;
    out.witness.n[0][1] = -(U.approx_u.conj() * a);
    out.witness.n[1][0] = U.approx_u;
    out.witness.n[1][1] = V.approx_u;
    // residual of N diag(A,B) conj(N)^t = diag(eps A B, eps) at circle samples
    ApproxLaurent ab = a * b;
    double worst = 0;
    for (int i = 0; i < 512; ++i) {
        std::complex<double> z = std::polar(1.0, 2 * M_PI * i / 512);
        std::complex<double> av = a.eval(z), bv = b.eval(z);
        std::complex<double> N[2][2];
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) N[r][c] = out.witness.n[r][c].eval(z);
        // conj transpose under the bar involution is evaluation at conj(z)
        std::complex<double> Nb[2][2];
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) Nb[r][c] = out.witness.n[c][r].eval(std::conj(z));
        std::complex<double> target[2][2] = {{double(eps) * ab.eval(z), 0.0}, {0.0, double(eps)}};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                std::complex<double> acc = 0.0;
                acc += N[r][0] * av * Nb[0][c];
                acc += N[r][1] * bv * Nb[1][c];
                worst = std::max(worst, std::abs(acc - target[r][c]));
            }
    }
    out.witness.residual = worst;

    // invariant check whenever the merged entry admits a profile
    if (sgn(out.merged.value_at_one()) != 0 && sgn(out.merged.value_at_minus_one()) != 0) {
        auto lhs = HermitianLaurentMatrix::diagonal({A, B});
        auto rhs = HermitianLaurentMatrix::diagonal({out.merged});
        auto rep = check_same_invariants(lhs, rhs);
        if (!rep.equal) throw Error("internal: glue changed the invariants: " + rep.first_difference);
    }
    return out;
}

// ===========================================================================
// Diagonalization of the linking form

namespace detail {

inline std::vector<LaurentPoly> lmat_column(const LMat& m, int j) {
    std::vector<LaurentPoly> col(m.rows());
    for (int i = 0; i < m.rows(); ++i) col[i] = m.at(i, j);
    return col;
}

inline std::vector<LaurentPoly> lmat_apply(const LMat& m, const std::vector<LaurentPoly>& v) {
    std::vector<LaurentPoly> out(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero() && !v[j].is_zero()) out[i] += m.at(i, j) * v[j];
    return out;
}

inline std::vector<LaurentPoly> vec_scale(const std::vector<LaurentPoly>& v, const LaurentPoly& c) {
    std::vector<LaurentPoly> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * c;
    return out;
}

inline std::vector<LaurentPoly> vec_sub(const std::vector<LaurentPoly>& a,
                                        const std::vector<LaurentPoly>& b) {
    std::vector<LaurentPoly> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}
inline std::vector<LaurentPoly> vec_add(const std::vector<LaurentPoly>& a,
                                        const std::vector<LaurentPoly>& b) {
    std::vector<LaurentPoly> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline int valuation(const LaurentPoly& x, const LaurentPoly& pi) {
    if (x.is_zero()) return INT_MAX / 4;
    int v = 0;
    LaurentPoly cur = x;
    while (divides(pi, cur)) {
        cur = div_exact(cur, pi);
        ++v;
    }
    return v;
}

/// Laurent representative of pi^l * f for a fraction whose class lies in the
/// pi-primary part (so the reduced denominator is a power of pi).
inline LaurentPoly primary_rep(const RationalFunction& f, const LaurentPoly& pi, int l) {
    if (f.is_zero()) return LaurentPoly::zero();
    int v = valuation(f.den(), pi);
    if (v > l) throw Error("internal: fraction order exceeds the cyclic level");
    LaurentPoly unit = div_exact(f.den(), pi.pow(v));
    if (!unit.is_unit()) throw Error("internal: fraction is not pi-primary");
    LaurentPoly inv_unit = LaurentPoly::monomial(Rational(1) / unit.coeff(unit.lo()), -unit.lo());
    return f.num() * pi.pow(l - v) * inv_unit;
}

/// Order of the class of f in the pi-adic filtration: the pi-valuation of
/// the reduced denominator.
inline int primary_order(const RationalFunction& f, const LaurentPoly& pi) {
    if (f.is_zero() || f.is_laurent()) return 0;
    return valuation(f.den(), pi);
}

/// Inverse of x modulo pi^l (x coprime to pi).
inline LaurentPoly inverse_mod(const LaurentPoly& x, const LaurentPoly& pi, int l) {
    LaurentPoly mod = pi.pow(l);
    auto bz = bezout(x, mod);
    if (!bz.g.is_unit()) throw Error("internal: element not invertible modulo pi^l");
    Rational g0 = bz.g.coeff(bz.g.lo());
    return laurent_divmod(bz.x * (Rational(1) / g0), mod).second;
}

/// Raw linking value conj(u)^t A^-1 v.
inline RationalFunction lambda_raw(const LMat& A, const std::vector<LaurentPoly>& u,
                                   const std::vector<LaurentPoly>& v) {
    auto x = solve_cramer(A, v);
    RationalFunction acc;
    for (size_t i = 0; i < u.size(); ++i)
        if (!u[i].is_zero()) acc = acc + RationalFunction(u[i].involute()) * x[i];
    return acc;
}

/// Centered palindromic representative of a self-conjugate irreducible,
/// signed positive at t = 1.
inline LaurentPoly palindromic_rep(const LaurentPoly& p) {
    if ((p.lo() + p.hi()) % 2 != 0)
        throw Error("internal: self-conjugate factor with odd span");
    LaurentPoly c = p.shifted(-(p.lo() + p.hi()) / 2);
    if (!c.is_palindromic()) throw Error("internal: self-conjugate factor failed to center");
    if (sgn(c.value_at_one()) < 0) c = -c;
    return c;
}

}  // namespace detail

/// Diagonal form of the linking form of A over the real Laurent ring, with
/// the same signature/nullity profile and the same invariant factor content.
/// Cyclic pieces are split off by hermitian orthogonalization of the primary
/// parts of the presented module; self-conjugate irreducible groups emit one
/// symbolic entry per real root (signs fixed by exact evaluation at the
/// root), conjugate pairs emit their norm product.
inline DiagonalForm diagonalize(const HermitianLaurentMatrix& A) {
    DiagonalForm form;
    int n = A.size();
    if (n == 0) return form;
    LaurentPoly dt = A.determinant();
    if (dt.is_zero()) throw SingularMatrix();
    if (sgn(dt.value_at_one()) == 0 || sgn(dt.value_at_minus_one()) == 0)
        throw DegenerateAtUnitPoints();
    auto snf = smith_normal_form(A.mat());

    struct PalGroup {
        LaurentPoly pi;                          // palindromic representative
        std::vector<std::pair<int, int>> parts;  // (cyclic index, multiplicity)
    };
    struct PairGroup {
        LaurentPoly p;
        std::vector<std::pair<int, int>> parts;
        std::vector<std::pair<int, int>> bar_parts;
    };
    std::map<std::string, PalGroup> pals;
    std::map<std::string, PairGroup> pairs;
    for (int i = 0; i < n; ++i) {
        const LaurentPoly& di = snf.diagonal[i];
        if (di.is_unit()) continue;
        for (auto& [p, mult] : factor_laurent(di)) {
            LaurentPoly pbar = p.involute().canonical();
            if (pbar == p) {
                LaurentPoly rep = detail::palindromic_rep(p);
                auto& g = pals[rep.str()];
                g.pi = rep;
                g.parts.emplace_back(i, mult);
            } else {
                std::string k = std::min(p.str(), pbar.str());
                auto& g = pairs[k];
                if (p.str() == k) {
                    g.p = p;
                    g.parts.emplace_back(i, mult);
                } else {
                    g.bar_parts.emplace_back(i, mult);
                }
            }
        }
    }
    for (auto& [k, g] : pairs)
        if (g.parts != g.bar_parts)
            throw Error("internal: asymmetric conjugate-pair multiplicities");

    // --- conjugate pairs: one rational entry (p pbar)^m per cyclic piece
    for (auto& [k, g] : pairs) {
        LaurentPoly norm = g.p * g.p.involute();
        for (auto& [idx, mult] : g.parts) {
            auto [sign, factors] = factor_palindromic(norm);
            for (auto& f : factors) f.multiplicity *= mult;
            if (sign != 1) throw Error("internal: norm product not positive at 1");
            form.entries.push_back(make_entry(1, std::move(factors)));
        }
    }

    // --- palindromic groups: hermitian Gram-Schmidt on the primary part
    for (auto& [kstr, g] : pals) {
        const LaurentPoly& pi = g.pi;
        SymmetricPoly ps = to_symmetric(pi);
        SymmetricPoly ps_deriv = ps.derivative();
        SymmetricPoly m_prim = ps.primitive();
        FactorRoots fr = analyze_factor(m_prim);

        // generators of the primary part, one per cyclic piece
        std::vector<std::vector<LaurentPoly>> gens;
        std::vector<LaurentPoly> piece_cofactor(n);  // d_i / pi^{m_i}
        std::vector<int> piece_level(n, 0);
        for (auto& [idx, mult] : g.parts) {
            piece_level[idx] = mult;
            piece_cofactor[idx] = div_exact(snf.diagonal[idx], pi.pow(mult));
            gens.push_back(
                detail::vec_scale(detail::lmat_column(snf.Uinv, idx), piece_cofactor[idx]));
        }

        auto level_of = [&](const std::vector<LaurentPoly>& h) {
            auto coords = detail::lmat_apply(snf.U, h);
            int l = 0;
            for (auto& [idx, mult] : g.parts) {
                if (coords[idx].is_zero()) continue;
                LaurentPoly w = div_exact(coords[idx], piece_cofactor[idx]);
                int li = mult - detail::valuation(w, pi);
                l = std::max(l, li);
            }
            return l;
        };

        size_t emitted = 0, cap = gens.size() + 2;
        while (!gens.empty()) {
            if (++emitted > cap) throw Error("internal: orthogonalization did not terminate");
            int l = 0;
            size_t vi = 0;
            std::vector<int> levels(gens.size());
            for (size_t j = 0; j < gens.size(); ++j) {
                levels[j] = level_of(gens[j]);
                if (levels[j] > l) {
                    l = levels[j];
                    vi = j;
                }
            }
            if (l == 0) break;
            std::vector<LaurentPoly> v = gens[vi];
            RationalFunction fvv = detail::lambda_raw(A.mat(), v, v);
            if (detail::primary_order(fvv, pi) < l) {
                // dual partner with full order exists by non-singularity
                size_t wi = gens.size();
                RationalFunction fw;
                for (size_t j = 0; j < gens.size(); ++j) {
                    fw = detail::lambda_raw(A.mat(), gens[j], v);
                    if (detail::primary_order(fw, pi) == l) {
                        wi = j;
                        break;
                    }
                }
                if (wi == gens.size()) throw Error("internal: no dual generator of full order");
                LaurentPoly c = detail::primary_rep(detail::lambda_raw(A.mat(), gens[wi], v), pi, l);
                LaurentPoly y = detail::inverse_mod(c, pi, l).involute();
                std::vector<LaurentPoly> w = detail::vec_scale(gens[wi], y);
                RationalFunction fww = detail::lambda_raw(A.mat(), w, w);
                if (detail::primary_order(fww, pi) == l)
                    v = std::move(w);
                else
                    v = detail::vec_add(v, w);
                fvv = detail::lambda_raw(A.mat(), v, v);
                if (detail::primary_order(fvv, pi) != l)
                    throw Error("internal: self-pairing order off after correction");
            }
            LaurentPoly x = detail::primary_rep(fvv, pi, l);
            x = laurent_divmod(x, pi.pow(l)).second;
            x = symmetrize(x);
            if (!laurent_gcd(x, pi).is_one()) throw Error("internal: degenerate cyclic multiplier");

            // per-root entries of the cyclic piece (pi^l, x pi^-l)
            SymmetricPoly xs = to_symmetric(x);
            for (size_t j = 0; j < fr.real_roots.size(); ++j) {
                int eps = 1;
                if (fr.classes[j] == RootClass::OnCircle) {
                    int sx = sign_at(xs, fr.real_roots[j]);
                    int sd = sign_at(ps_deriv, fr.real_roots[j]);
                    if (sx == 0 || sd == 0) throw Error("internal: vanishing sign data at a root");
                    eps = sx * (l % 2 ? sd : 1);
                }
                form.entries.push_back(
                    make_entry(eps, {{m_prim, fr.real_roots[j], l, fr.classes[j]}}));
            }
            if (fr.has_complex)
                form.entries.push_back(
                    make_entry(1, {{m_prim, std::nullopt, l, RootClass::ComplexBlock}}));

            // orthogonalize the remaining generators against v
            LaurentPoly y = detail::inverse_mod(x, pi, l);
            std::vector<std::vector<LaurentPoly>> next;
            for (size_t j = 0; j < gens.size(); ++j) {
                LaurentPoly cj =
                    detail::primary_rep(detail::lambda_raw(A.mat(), v, gens[j]), pi, l);
                LaurentPoly a = laurent_divmod(y * cj, pi.pow(l)).second;
                std::vector<LaurentPoly> w = detail::vec_sub(gens[j], detail::vec_scale(v, a));
                if (level_of(w) > 0) next.push_back(std::move(w));
            }
            gens = std::move(next);
        }
    }
    return form;
}

// ===========================================================================
// Elementary and minimal diagonal forms

/// Splits every entry into single-piece entries: off-circle pieces come off
/// first (they are positive on the whole circle), then circle pieces by the
/// smallest arc parameter, with the alternating sign rule. Unit entries are
/// destabilized away.
inline DiagonalForm elementary_diagonal(const DiagonalForm& D) {
    DiagonalForm out;
    for (const auto& e : D.entries) {
        if (e.factors.empty()) continue;
        std::vector<ElementaryFactor> circle;
        for (const auto& f : e.factors) {
            if (f.is_circle())
                circle.push_back(f);
            else
                out.entries.push_back(make_entry(1, {f}));
        }
        if (circle.empty()) continue;  // leftover unit sign entry: destabilized
        std::sort(circle.begin(), circle.end(), [](const ElementaryFactor& a, const ElementaryFactor& b) {
            return compare_alg(*a.root, *b.root) > 0;  // descending abscissa = ascending theta
        });
        int sign = e.sign;
        for (const auto& f : circle) {
            out.entries.push_back(make_entry(sign, {f}));
            if (f.multiplicity % 2) sign = -sign;
        }
    }
    return out;
}

struct MinimalDiagonalResult {
    DiagonalForm form;
    int mu = 0, eta = 0, target = 0;
    bool achieved = true;
    std::string binding;  // which bound is binding: "eta-bound" or "mu-bound"
};

/// Packs an elementary diagonal form into max(mu, eta) entries: a greedy
/// sign-matched merge of the circle entries in arc order, a distinct-root
/// packing of the off-circle entries, and a final pairing of the two lists.
inline MinimalDiagonalResult minimal_diagonal(const DiagonalForm& E) {
    for (const auto& e : E.entries)
        if (e.factors.size() > 1) throw Error("input is not an elementary diagonal form");
    MinimalDiagonalResult res;
    res.mu = form_mu(E);
    res.eta = form_eta(E);
    res.target = std::max(res.mu, res.eta);
    res.binding = res.eta >= res.mu ? "eta-bound" : "mu-bound";

    std::vector<DiagonalEntry> circle, off;
    for (const auto& e : E.entries) {
        if (e.factors.empty()) continue;
        (e.factors[0].is_circle() ? circle : off).push_back(e);
    }
    std::sort(circle.begin(), circle.end(), [](const DiagonalEntry& a, const DiagonalEntry& b) {
        return compare_alg(*a.factors[0].root, *b.factors[0].root) > 0;
    });

    // greedy merge in arc order: attach to the first class with a matching
    // sign at the root, else open a new class
    std::vector<DiagonalEntry> classes;
    for (const auto& e : circle) {
        const IsolatingInterval& root = *e.factors[0].root;
        bool placed = false;
        for (auto& a : classes) {
            if (entry_multiplicity_at(a, root) > 0) continue;
            if (entry_sign_at(a, root) != e.sign) continue;
            std::vector<ElementaryFactor> merged = a.factors;
            merged.insert(merged.end(), e.factors.begin(), e.factors.end());
            a = make_entry(a.sign, std::move(merged));
            placed = true;
            break;
        }
        if (!placed) classes.push_back(e);
    }

    // off-circle packing: the k-th entry sharing a piece goes to class k
    std::map<FactorKey, std::vector<size_t>> by_key;
    for (size_t i = 0; i < off.size(); ++i) by_key[key_of(off[i].factors[0])].push_back(i);
    size_t max_count = 0;
    for (auto& [k, v] : by_key) max_count = std::max(max_count, v.size());
    std::vector<DiagonalEntry> off_classes(max_count);
    std::vector<bool> off_used(max_count, false);
    for (auto& [k, v] : by_key)
        for (size_t copy = 0; copy < v.size(); ++copy) {
            const DiagonalEntry& e = off[v[copy]];
            if (!off_used[copy]) {
                off_classes[copy] = e;
                off_used[copy] = true;
            } else {
                std::vector<ElementaryFactor> merged = off_classes[copy].factors;
                merged.insert(merged.end(), e.factors.begin(), e.factors.end());
                // the glue sign for two circle-free pieces is the sign of the
                // absorbed class, so the new entry keeps the incoming sign
                off_classes[copy] = make_entry(e.sign, std::move(merged));
            }
        }

    // pair circle classes with off classes
    size_t paired = std::min(classes.size(), off_classes.size());
    DiagonalForm out;
    for (size_t i = 0; i < paired; ++i) {
        std::vector<ElementaryFactor> merged = classes[i].factors;
        merged.insert(merged.end(), off_classes[i].factors.begin(), off_classes[i].factors.end());
        out.entries.push_back(make_entry(classes[i].sign, std::move(merged)));
    }
    for (size_t i = paired; i < classes.size(); ++i) out.entries.push_back(classes[i]);
    for (size_t i = paired; i < off_classes.size(); ++i) out.entries.push_back(off_classes[i]);

    res.form = std::move(out);
    if (res.form.size() < res.target)
        throw Error("internal: packed below the invariant lower bound");
    res.achieved = res.form.size() == res.target;
    return res;
}

inline std::map<FactorKey, std::vector<int>> matrix_factor_exponents(const HermitianLaurentMatrix& A) {
    std::map<FactorKey, std::vector<int>> out;
    auto snf = smith_normal_form(A.mat());
    auto add_selectors = [&](const SymmetricPoly& m_raw, int mult) {
        SymmetricPoly m = m_raw.primitive();
        FactorRoots fr = analyze_factor(m);
        for (size_t j = 0; j < fr.real_roots.size(); ++j)
            out[{m.str(), static_cast<int>(j)}].push_back(mult);
        if (fr.has_complex) out[{m.str(), -1}].push_back(mult);
    };
    for (const auto& d : snf.factors) {
        for (auto& [p, mult] : factor_laurent(d)) {
            LaurentPoly pbar = p.involute().canonical();
            if (pbar == p) {
                add_selectors(to_symmetric(detail::palindromic_rep(p)), mult);
            } else if (p.str() < pbar.str()) {
                SymmetricPoly norm = to_symmetric(p * p.involute());
                for (auto& [m, mu] : factor_symmetric(norm)) {
                    if (mu != 1) throw Error("internal: conjugate-pair norm is not squarefree");
                    add_selectors(m, mult);
                }
            }
        }
    }
    for (auto& [k, v] : out) std::sort(v.begin(), v.end());
    return out;
}

inline bool form_matches_matrix(const DiagonalForm& d, const HermitianLaurentMatrix& A,
                                std::string* why) {
    SignatureProfile pm = profile(A);
    SignatureProfile pf = form_profile(d);
    if (!pf.same_values(pm, why)) return false;
    if (form_factor_exponents(d) != matrix_factor_exponents(A)) {
        if (why) *why = "factor exponent data differs";
        return false;
    }
    return true;
}

}  // namespace knotinv
