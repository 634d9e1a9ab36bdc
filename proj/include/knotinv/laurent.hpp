#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace knotinv {

namespace detail {

/// Plain dense polynomial division over Q[x] on coefficient vectors
/// (index = exponent). Returns {quotient, remainder}.
inline std::pair<std::vector<Rational>, std::vector<Rational>> poly_divmod(
    std::vector<Rational> num, const std::vector<Rational>& den) {
    while (!num.empty() && sgn(num.back()) == 0) num.pop_back();
    std::vector<Rational> d = den;
    while (!d.empty() && sgn(d.back()) == 0) d.pop_back();
    if (d.empty()) throw Error("division by zero polynomial");
    if (num.size() < d.size()) return {{}, std::move(num)};
    std::vector<Rational> q(num.size() - d.size() + 1);
    for (size_t qi = q.size(); qi-- > 0;) {
        Rational f = num[qi + d.size() - 1] / d.back();
        q[qi] = f;
        if (sgn(f) != 0) {
            for (size_t j = 0; j < d.size(); ++j) num[qi + j] -= f * d[j];
        }
    }
    while (!num.empty() && sgn(num.back()) == 0) num.pop_back();
    return {std::move(q), std::move(num)};
}

}  // namespace detail

/// Laurent polynomial over the exact rationals: an element of Q[t, t^-1].
/// Stored as the lowest exponent plus a dense coefficient run whose first and
/// last entries are nonzero; the zero polynomial is the empty run.
class LaurentPoly {
   public:
    LaurentPoly() = default;
    LaurentPoly(const Rational& c) {
        if (sgn(c) != 0) c_ = {c};
    }
    LaurentPoly(long c) : LaurentPoly(Rational(c)) {}

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return LaurentPoly(Rational(1)); }
    static LaurentPoly t(int k = 1) { return monomial(Rational(1), k); }
    static LaurentPoly monomial(const Rational& c, int k) {
        LaurentPoly p;
        if (sgn(c) != 0) {
            p.lo_ = k;
            p.c_ = {c};
        }
        return p;
    }
    static LaurentPoly from_coeffs(int lo, std::vector<Rational> coeffs) {
        LaurentPoly p;
        p.lo_ = lo;
        p.c_ = std::move(coeffs);
        p.trim();
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
    /// Exponent span hi - lo; 0 for constants and for the zero polynomial.
    int span() const { return c_.empty() ? 0 : hi() - lo(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational coeff(int k) const {
        if (c_.empty() || k < lo_ || k > hi()) return Rational(0);
        return c_[k - lo_];
    }

    bool operator==(const LaurentPoly& o) const { return lo_ == o.lo_ && c_ == o.c_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly operator-() const {
        LaurentPoly p = *this;
        for (auto& c : p.c_) c = -c;
        return p;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) return *this = o;
        int nlo = std::min(lo_, o.lo_), nhi = std::max(hi(), o.hi());
        std::vector<Rational> nc(nhi - nlo + 1);
        for (int k = lo_; k <= hi(); ++k) nc[k - nlo] = c_[k - lo_];
        for (int k = o.lo_; k <= o.hi(); ++k) nc[k - nlo] += o.c_[k - o.lo_];
        lo_ = nlo;
        c_ = std::move(nc);
        trim();
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }

    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly p = *this;
        return p += o;
    }
    LaurentPoly operator-(const LaurentPoly& o) const {
        LaurentPoly p = *this;
        return p -= o;
    }

    LaurentPoly operator*(const LaurentPoly& o) const {
        if (is_zero() || o.is_zero()) return zero();
        LaurentPoly p;
        p.lo_ = lo_ + o.lo_;
        p.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (sgn(c_[i]) == 0) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) p.c_[i + j] += c_[i] * o.c_[j];
        }
        p.trim();
        return p;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly operator*(const Rational& r) const {
        if (sgn(r) == 0) return zero();
        LaurentPoly p = *this;
        for (auto& c : p.c_) c *= r;
        return p;
    }

    LaurentPoly pow(unsigned e) const {
        LaurentPoly r = one(), b = *this;
        unsigned k = e;
        while (k) {
            if (k & 1) r *= b;
            if (k >>= 1) b *= b;
        }
        return r;
    }

    /// Multiplication by the unit t^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly p = *this;
        if (!p.c_.empty()) p.lo_ += k;
        return p;
    }

    /// The bar involution p(t) -> p(t^-1).
    LaurentPoly involute() const {
        if (is_zero()) return *this;
        LaurentPoly p;
        p.lo_ = -hi();
        p.c_.assign(c_.rbegin(), c_.rend());
        return p;
    }

    bool is_palindromic() const { return *this == involute(); }

    /// Formal derivative d/dt.
    LaurentPoly derivative() const {
        if (is_zero()) return zero();
        std::vector<Rational> nc(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) nc[i] = c_[i] * Rational(lo_ + static_cast<int>(i));
        return from_coeffs(lo_ - 1, std::move(nc));
    }

    /// Exact evaluation at a nonzero rational point.
    Rational eval(const Rational& x) const {
        if (sgn(x) == 0) throw Error("Laurent polynomial evaluated at 0");
        Rational acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        if (lo_ > 0)
            acc *= rat_pow(x, lo_);
        else if (lo_ < 0)
            acc /= rat_pow(x, -lo_);
        return acc;
    }

    Rational value_at_one() const {
        Rational acc = 0;
        for (const auto& c : c_) acc += c;
        return acc;
    }
    Rational value_at_minus_one() const {
        Rational acc = 0;
        for (size_t i = 0; i < c_.size(); ++i) {
            if ((lo_ + static_cast<int>(i)) % 2 == 0)
                acc += c_[i];
            else
                acc -= c_[i];
        }
        return acc;
    }

    /// Nonzero with exponent span 0: the units r*t^k of the Laurent ring.
    bool is_unit() const { return c_.size() == 1; }
    bool is_one() const { return c_.size() == 1 && lo_ == 0 && c_[0] == 1; }

    /// gcd of all coefficient numerators over lcm of denominators, signed by
    /// the leading (highest-exponent) coefficient.
    Rational content() const {
        if (is_zero()) return Rational(0);
        Integer g = 0, l = 1;
        for (const auto& c : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        }
        Rational r(g, l);
        r.canonicalize();
        if (sgn(c_.back()) < 0) r = -r;
        return r;
    }

    /// Canonical associate: lowest exponent 0, primitive integer coefficients,
    /// positive leading coefficient. Returns {canonical, unit (r, k)} with
    /// *this == canonical * r * t^k.
    std::pair<LaurentPoly, std::pair<Rational, int>> unit_normalize() const {
        if (is_zero()) return {zero(), {Rational(1), 0}};
        Rational c = content();
        LaurentPoly p;
        p.lo_ = 0;
        p.c_.reserve(c_.size());
        for (const auto& x : c_) p.c_.push_back(x / c);
        return {p, {c, lo_}};
    }
    LaurentPoly canonical() const { return unit_normalize().first; }

    std::string str() const;

   private:
    void trim() {
        size_t b = 0, e = c_.size();
        while (e > b && sgn(c_[e - 1]) == 0) --e;
        while (b < e && sgn(c_[b]) == 0) ++b;
        if (b == e) {
            c_.clear();
            lo_ = 0;
            return;
        }
        lo_ += static_cast<int>(b);
        c_ = std::vector<Rational>(c_.begin() + b, c_.begin() + e);
    }

    int lo_ = 0;
    std::vector<Rational> c_;
};

inline LaurentPoly operator*(const Rational& r, const LaurentPoly& p) { return p * r; }

/// Division with remainder in the Euclidean structure of Q[t, t^-1]: the span
/// of the remainder is smaller than the span of d. Exponent units are pushed
/// into the quotient.
inline std::pair<LaurentPoly, LaurentPoly> laurent_divmod(const LaurentPoly& n, const LaurentPoly& d) {
    if (d.is_zero()) throw Error("division by zero");
    if (n.is_zero()) return {LaurentPoly::zero(), LaurentPoly::zero()};
    auto [q, r] = detail::poly_divmod(n.shifted(-n.lo()).coeffs(), d.shifted(-d.lo()).coeffs());
    LaurentPoly Q = LaurentPoly::from_coeffs(0, std::move(q)).shifted(n.lo() - d.lo());
    LaurentPoly R = LaurentPoly::from_coeffs(0, std::move(r)).shifted(n.lo());
    return {Q, R};
}

inline bool divides(const LaurentPoly& d, const LaurentPoly& n) {
    if (d.is_zero()) return n.is_zero();
    return laurent_divmod(n, d).second.is_zero();
}

/// Exact division; throws if d does not divide n in Q[t, t^-1].
inline LaurentPoly div_exact(const LaurentPoly& n, const LaurentPoly& d) {
    auto [q, r] = laurent_divmod(n, d);
    if (!r.is_zero()) throw Error("inexact division");
    return q;
}

/// gcd, canonically normalized (valuation 0, primitive, positive lead).
inline LaurentPoly laurent_gcd(LaurentPoly a, LaurentPoly b) {
    while (!b.is_zero()) {
        LaurentPoly r = laurent_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.canonical();
}

struct BezoutResult {
    LaurentPoly g, x, y;  // x*a + y*b == g
};

/// Extended Euclid in Q[t, t^-1]. g is the gcd up to a unit; the cofactor
/// identity x*a + y*b = g holds exactly.
inline BezoutResult bezout(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() && b.is_zero()) throw Error("bezout(0, 0)");
    if (b.is_zero()) return {a, LaurentPoly::one(), LaurentPoly::zero()};
    if (a.is_zero()) return {b, LaurentPoly::zero(), LaurentPoly::one()};
    LaurentPoly r0 = a, r1 = b;
    LaurentPoly s0 = LaurentPoly::one(), s1 = LaurentPoly::zero();
    LaurentPoly t0 = LaurentPoly::zero(), t1 = LaurentPoly::one();
    while (!r1.is_zero()) {
        auto [q, r] = laurent_divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        LaurentPoly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        LaurentPoly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    auto [g, unit] = r0.unit_normalize();
    LaurentPoly inv_unit = LaurentPoly::monomial(Rational(1) / unit.first, -unit.second);
    return {g, s0 * inv_unit, t0 * inv_unit};
}

/// Ordinary polynomial in the symmetric variable s = t + t^-1. Palindromic
/// Laurent polynomials lift to these; points of the unit circle correspond to
/// s in [-2, 2].
class SymmetricPoly {
   public:
    SymmetricPoly() = default;
    SymmetricPoly(const Rational& c) {
        if (sgn(c) != 0) c_ = {c};
    }
    SymmetricPoly(long c) : SymmetricPoly(Rational(c)) {}
    static SymmetricPoly s() { return from_coeffs({Rational(0), Rational(1)}); }
    static SymmetricPoly from_coeffs(std::vector<Rational> c) {
        SymmetricPoly p;
        p.c_ = std::move(c);
        p.trim();
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
        return c_[k];
    }
    Rational lc() const { return c_.empty() ? Rational(0) : c_.back(); }

    bool operator==(const SymmetricPoly& o) const { return c_ == o.c_; }
    bool operator!=(const SymmetricPoly& o) const { return !(*this == o); }

    SymmetricPoly operator-() const {
        SymmetricPoly p = *this;
        for (auto& c : p.c_) c = -c;
        return p;
    }
    SymmetricPoly operator+(const SymmetricPoly& o) const {
        std::vector<Rational> nc(std::max(c_.size(), o.c_.size()));
        for (size_t i = 0; i < c_.size(); ++i) nc[i] = c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) nc[i] += o.c_[i];
        return from_coeffs(std::move(nc));
    }
    SymmetricPoly operator-(const SymmetricPoly& o) const { return *this + (-o); }
    SymmetricPoly operator*(const SymmetricPoly& o) const {
        if (is_zero() || o.is_zero()) return SymmetricPoly();
        std::vector<Rational> nc(c_.size() + o.c_.size() - 1);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (sgn(c_[i]) == 0) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) nc[i + j] += c_[i] * o.c_[j];
        }
        return from_coeffs(std::move(nc));
    }
    SymmetricPoly operator*(const Rational& r) const {
        if (sgn(r) == 0) return SymmetricPoly();
        SymmetricPoly p = *this;
        for (auto& c : p.c_) c *= r;
        return p;
    }
    SymmetricPoly pow(unsigned e) const {
        SymmetricPoly r(1), b = *this;
        unsigned k = e;
        while (k) {
            if (k & 1) r = r * b;
            if (k >>= 1) b = b * b;
        }
        return r;
    }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    SymmetricPoly derivative() const {
        if (c_.size() <= 1) return SymmetricPoly();
        std::vector<Rational> nc(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) nc[i - 1] = c_[i] * Rational(static_cast<long>(i));
        return from_coeffs(std::move(nc));
    }

    std::pair<SymmetricPoly, SymmetricPoly> divmod(const SymmetricPoly& d) const {
        auto [q, r] = detail::poly_divmod(c_, d.c_);
        return {from_coeffs(std::move(q)), from_coeffs(std::move(r))};
    }

    Rational content() const {
        if (is_zero()) return Rational(0);
        Integer g = 0, l = 1;
        for (const auto& c : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        }
        Rational r(g, l);
        r.canonicalize();
        if (sgn(c_.back()) < 0) r = -r;
        return r;
    }
    /// Primitive integer coefficients with positive leading coefficient.
    SymmetricPoly primitive() const {
        if (is_zero()) return *this;
        return *this * (Rational(1) / content());
    }

    std::string str() const;

   private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline SymmetricPoly operator*(const Rational& r, const SymmetricPoly& p) { return p * r; }

inline SymmetricPoly sym_gcd(SymmetricPoly a, SymmetricPoly b) {
    while (!b.is_zero()) {
        SymmetricPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.primitive();
}

/// (p + involute(p)) / 2 — the palindromic part of p.
inline LaurentPoly symmetrize(const LaurentPoly& p) {
    return (p + p.involute()) * Rational(1, 2);
}

inline LaurentPoly involute(const LaurentPoly& p) { return p.involute(); }
inline bool is_palindromic(const LaurentPoly& p) { return p.is_palindromic(); }

/// Lift of a palindromic Laurent polynomial to a polynomial in s = t + t^-1.
/// Throws NotPalindromic when the precondition fails.
inline SymmetricPoly to_symmetric(const LaurentPoly& p) {
    if (!p.is_palindromic()) throw NotPalindromic();
    if (p.is_zero()) return SymmetricPoly();
    int m = p.hi();
    // v[k] = t^k + t^-k written in s: v0 = 2, v1 = s, v(k+1) = s*v(k) - v(k-1)
    SymmetricPoly q(p.coeff(0));
    SymmetricPoly vprev(2), vcur = SymmetricPoly::s();
    for (int k = 1; k <= m; ++k) {
        q = q + vcur * p.coeff(k);
        SymmetricPoly vnext = SymmetricPoly::s() * vcur - vprev;
        vprev = std::move(vcur);
        vcur = std::move(vnext);
    }
    return q;
}

/// Substitutes s = t + t^-1; inverse of to_symmetric on palindromic input.
inline LaurentPoly from_symmetric(const SymmetricPoly& q) {
    LaurentPoly s = LaurentPoly::t(1) + LaurentPoly::t(-1);
    LaurentPoly acc;
    for (int i = q.degree(); i >= 0; --i) acc = acc * s + LaurentPoly(q.coeff(i));
    return acc;
}

// ---------------------------------------------------------------------------
// Rational functions

/// Element of Q(t) as a reduced fraction of Laurent polynomials. The
/// denominator is canonical (valuation 0, primitive, positive lead).
class RationalFunction {
   public:
    RationalFunction() : num_(LaurentPoly::zero()), den_(LaurentPoly::one()) {}
    RationalFunction(const LaurentPoly& p) : num_(p), den_(LaurentPoly::one()) {}

    static RationalFunction make(LaurentPoly num, LaurentPoly den) {
        if (den.is_zero()) throw Error("rational function with zero denominator");
        RationalFunction f;
        if (num.is_zero()) return f;
        LaurentPoly g = laurent_gcd(num, den);
        if (!g.is_one()) {
            num = div_exact(num, g);
            den = div_exact(den, g);
        }
        auto [dcanon, unit] = den.unit_normalize();
        f.den_ = dcanon;
        f.num_ = num * LaurentPoly::monomial(Rational(1) / unit.first, -unit.second);
        return f;
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent() const { return den_.is_one(); }

    bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    RationalFunction operator+(const RationalFunction& o) const {
        return make(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RationalFunction operator-() const {
        RationalFunction f = *this;
        f.num_ = -f.num_;
        return f;
    }
    RationalFunction operator-(const RationalFunction& o) const { return *this + (-o); }
    RationalFunction operator*(const RationalFunction& o) const {
        return make(num_ * o.num_, den_ * o.den_);
    }
    RationalFunction operator/(const RationalFunction& o) const {
        if (o.is_zero()) throw Error("division by zero rational function");
        return make(num_ * o.den_, den_ * o.num_);
    }

    RationalFunction involute() const { return make(num_.involute(), den_.involute()); }

    std::string str() const;

   private:
    LaurentPoly num_, den_;
};

// ---------------------------------------------------------------------------
// Text syntax: terms `c*t^k` joined by +/-, rational coefficients `p/q`.

namespace detail {

inline std::string format_poly(const std::vector<std::pair<int, Rational>>& terms, char var) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms) {
        Rational a = c;
        if (first) {
            if (sgn(a) < 0) {
                out += "-";
                a = -a;
            }
            first = false;
        } else {
            out += sgn(a) < 0 ? " - " : " + ";
            if (sgn(a) < 0) a = -a;
        }
        if (k == 0) {
            out += rat_str(a);
        } else {
            if (a != 1) {
                out += rat_str(a);
                out += "*";
            }
            out += var;
            if (k != 1) {
                out += "^";
                out += std::to_string(k);
            }
        }
    }
    return out;
}

/// Parses `c*v^k` term syntax for variable v; whitespace-insensitive.
inline std::vector<std::pair<int, Rational>> parse_poly(const std::string& text, char var) {
    std::vector<std::pair<int, Rational>> terms;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw ParseError("empty polynomial");
    bool expect_term = true;
    int pending_sign = 1;
    while (i < text.size()) {
        skip_ws();
        if (i == text.size()) break;
        char ch = text[i];
        if (ch == '+' || ch == '-') {
            if (expect_term && ch == '-')
                pending_sign = -pending_sign;
            else if (expect_term && ch == '+') {
                // no-op, leading plus
            } else {
                pending_sign = (ch == '-') ? -1 : 1;
                expect_term = true;
            }
            ++i;
            continue;
        }
        if (!expect_term) throw ParseError("unexpected '" + std::string(1, ch) + "' in polynomial");
        // coefficient (optional)
        Rational coef = 1;
        bool saw_coef = false;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
            coef = parse_rational(text.substr(i, j - i));
            i = j;
            saw_coef = true;
            skip_ws();
        }
        // optional '*'
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip_ws();
        }
        int expo = 0;
        if (i < text.size() && text[i] == var) {
            ++i;
            expo = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                size_t j = i;
                if (j < text.size() && (text[j] == '-' || text[j] == '+')) ++j;
                size_t k = j;
                while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                if (k == j) throw ParseError("missing exponent after '^'");
                expo = std::atoi(text.substr(i, k - i).c_str());
                i = k;
            }
        } else if (!saw_coef) {
            throw ParseError("expected coefficient or '" + std::string(1, var) + "'");
        }
        terms.emplace_back(expo, coef * pending_sign);
        pending_sign = 1;
        expect_term = false;
    }
    if (expect_term) throw ParseError("dangling sign");
    return terms;
}

}  // namespace detail

inline std::string LaurentPoly::str() const {
    std::vector<std::pair<int, Rational>> terms;
    for (int k = lo(); k <= hi(); ++k)
        if (sgn(coeff(k)) != 0) terms.emplace_back(k, coeff(k));
    return detail::format_poly(terms, 't');
}

inline std::string SymmetricPoly::str() const {
    std::vector<std::pair<int, Rational>> terms;
    for (int k = 0; k <= degree(); ++k)
        if (sgn(coeff(k)) != 0) terms.emplace_back(k, coeff(k));
    return detail::format_poly(terms, 's');
}

inline std::string RationalFunction::str() const {
    if (is_laurent()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

inline LaurentPoly parse_laurent(const std::string& text) {
    LaurentPoly p;
    for (const auto& [k, c] : detail::parse_poly(text, 't')) p += LaurentPoly::monomial(c, k);
    return p;
}

inline SymmetricPoly parse_symmetric(const std::string& text) {
    SymmetricPoly p;
    for (const auto& [k, c] : detail::parse_poly(text, 's')) {
        if (k < 0) throw ParseError("negative exponent in symmetric polynomial");
        std::vector<Rational> mono(k + 1);
        mono[k] = c;
        p = p + SymmetricPoly::from_coeffs(std::move(mono));
    }
    return p;
}

}  // namespace knotinv
