#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "realalg.hpp"

namespace knotinv {

// Factorization over Q of dense univariate polynomials, via Berlekamp mod a
// small prime, Hensel lifting, and subset recombination. Inputs at desk scale
// (degree <= ~40) keep every stage cheap.

namespace qfac {

using ZPoly = std::vector<Integer>;  // dense, index = exponent, trimmed

inline void trim(ZPoly& f) {
    while (!f.empty() && sgn(f.back()) == 0) f.pop_back();
}
inline int deg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    trim(c);
    return c;
}

/// Exact division by a monic divisor over Z; returns false when the division
/// leaves a remainder.
inline bool div_monic(const ZPoly& num, const ZPoly& den, ZPoly& quot) {
    if (den.empty() || den.back() != 1) throw Error("div_monic needs a monic divisor");
    ZPoly r = num;
    trim(r);
    if (r.size() < den.size()) {
        quot.clear();
        return r.empty();
    }
    quot.assign(r.size() - den.size() + 1, Integer(0));
    for (size_t qi = quot.size(); qi-- > 0;) {
        Integer f = r[qi + den.size() - 1];
        quot[qi] = f;
        if (sgn(f) != 0)
            for (size_t j = 0; j < den.size(); ++j) r[qi + j] -= f * den[j];
    }
    trim(r);
    return r.empty();
}

inline Integer content(const ZPoly& f) {
    Integer g = 0;
    for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

inline ZPoly primitive(ZPoly f) {
    trim(f);
    if (f.empty()) return f;
    Integer c = content(f);
    if (sgn(f.back()) < 0) c = -c;
    for (auto& x : f) x /= c;
    return f;
}

// --- arithmetic mod a small prime -----------------------------------------

using MPoly = std::vector<int64_t>;  // coefficients in [0, p)

inline void mtrim(MPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline MPoly mreduce(const ZPoly& f, int64_t p) {
    MPoly g(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        Integer m = f[i] % p;
        if (sgn(m) < 0) m += p;
        g[i] = m.get_si();
    }
    mtrim(g);
    return g;
}

inline int64_t minv(int64_t a, int64_t p) {
    int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    return ((t % p) + p) % p;
}

inline MPoly mmul(const MPoly& a, const MPoly& b, int64_t p) {
    if (a.empty() || b.empty()) return {};
    MPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    mtrim(c);
    return c;
}

inline MPoly mrem(MPoly r, const MPoly& d, int64_t p) {
    mtrim(r);
    int64_t inv = minv(d.back(), p);
    while (r.size() >= d.size()) {
        int64_t f = r.back() * inv % p;
        size_t off = r.size() - d.size();
        for (size_t j = 0; j < d.size(); ++j) r[off + j] = ((r[off + j] - f * d[j]) % p + p) % p;
        mtrim(r);
        if (r.empty()) break;
    }
    return r;
}

inline MPoly mgcd(MPoly a, MPoly b, int64_t p) {
    mtrim(a);
    mtrim(b);
    while (!b.empty()) {
        MPoly r = mrem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        int64_t inv = minv(a.back(), p);
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

inline MPoly mderiv(const MPoly& f, int64_t p) {
    MPoly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<int64_t>(i % p) % p);
    mtrim(d);
    return d;
}

inline MPoly mpowx(int64_t e, const MPoly& f, int64_t p) {
    // x^e mod f by square and multiply
    MPoly base = mrem({0, 1}, f, p);
    MPoly acc = {1};
    while (e) {
        if (e & 1) acc = mrem(mmul(acc, base, p), f, p);
        e >>= 1;
        if (e) base = mrem(mmul(base, base, p), f, p);
    }
    return acc;
}

/// Berlekamp: monic squarefree f mod p. Returns the Frobenius fixed-space
/// basis; its dimension equals the number of irreducible factors mod p.
inline std::vector<MPoly> berlekamp_basis(const MPoly& f, int64_t p) {
    int n = static_cast<int>(f.size()) - 1;
    // columns of M: x^{jp} mod f
    std::vector<MPoly> cols(n);
    MPoly xp = mpowx(p, f, p);
    MPoly cur = {1};
    for (int j = 0; j < n; ++j) {
        cols[j] = cur;
        cols[j].resize(n, 0);
        cur = mrem(mmul(cur, xp, p), f, p);
    }
    // rows of A = M - I, stored row-major for elimination
    std::vector<std::vector<int64_t>> A(n, std::vector<int64_t>(n, 0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) A[i][j] = cols[j][i];
    for (int i = 0; i < n; ++i) A[i][i] = (A[i][i] - 1 + p) % p;
    // Gaussian elimination; record pivot column per row
    std::vector<int> pivot_col(n, -1);
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int sel = -1;
        for (int row = rank; row < n; ++row)
            if (A[row][col] != 0) {
                sel = row;
                break;
            }
        if (sel < 0) continue;
        std::swap(A[rank], A[sel]);
        int64_t inv = minv(A[rank][col], p);
        for (int j = 0; j < n; ++j) A[rank][j] = A[rank][j] * inv % p;
        for (int row = 0; row < n; ++row) {
            if (row == rank || A[row][col] == 0) continue;
            int64_t f2 = A[row][col];
            for (int j = 0; j < n; ++j) A[row][j] = ((A[row][j] - f2 * A[rank][j]) % p + p) % p;
        }
        pivot_col[rank] = col;
        ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
    std::vector<MPoly> basis;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        MPoly v(n, 0);
        v[col] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = (p - A[r][col]) % p;
        mtrim(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Full Berlekamp factorization of a monic squarefree polynomial mod p.
inline std::vector<MPoly> berlekamp_factor(const MPoly& f, int64_t p) {
    auto basis = berlekamp_basis(f, p);
    size_t r = basis.size();
    std::vector<MPoly> factors = {f};
    if (r == 1) return factors;
    for (const auto& v : basis) {
        if (factors.size() == r) break;
        if (v.size() <= 1) continue;  // constants split nothing
        for (int64_t s = 0; s < p && factors.size() < r; ++s) {
            MPoly vs = v;
            vs.resize(std::max<size_t>(vs.size(), 1));
            vs[0] = (vs[0] + p - s) % p;
            mtrim(vs);
            std::vector<MPoly> next;
            for (auto& g : factors) {
                MPoly d = mgcd(g, vs, p);
                if (d.size() > 1 && d.size() < g.size()) {
                    MPoly q = g;
                    // q = g / d mod p
                    MPoly quot;
                    {
                        MPoly rem = g;
                        int64_t inv = minv(d.back(), p);
                        quot.assign(rem.size() - d.size() + 1, 0);
                        for (size_t qi = quot.size(); qi-- > 0;) {
                            int64_t c = rem[qi + d.size() - 1] * inv % p;
                            quot[qi] = c;
                            for (size_t j = 0; j < d.size(); ++j)
                                rem[qi + j] = ((rem[qi + j] - c * d[j]) % p + p) % p;
                        }
                        mtrim(quot);
                    }
                    next.push_back(std::move(d));
                    next.push_back(std::move(quot));
                } else {
                    next.push_back(std::move(g));
                }
            }
            factors = std::move(next);
        }
    }
    return factors;
}

// --- Hensel lifting ---------------------------------------------------------

inline ZPoly zmod(const ZPoly& f, const Integer& m) {
    ZPoly g(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        g[i] = f[i] % m;
        if (sgn(g[i]) < 0) g[i] += m;
    }
    trim(g);
    return g;
}

inline ZPoly zmul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) { return zmod(mul(a, b), m); }

inline ZPoly zsub_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
    ZPoly c = a;
    c.resize(std::max(a.size(), b.size()));
    for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return zmod(c, m);
}
inline ZPoly zadd_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
    ZPoly c = a;
    c.resize(std::max(a.size(), b.size()));
    for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return zmod(c, m);
}

/// quotrem by a monic divisor with coefficients mod m.
inline std::pair<ZPoly, ZPoly> zdivmod_monic_mod(const ZPoly& num, const ZPoly& den, const Integer& m) {
    ZPoly r = zmod(num, m);
    if (den.empty() || den.back() != 1) throw Error("monic divisor required");
    if (r.size() < den.size()) return {{}, r};
    ZPoly q(r.size() - den.size() + 1);
    for (size_t qi = q.size(); qi-- > 0;) {
        Integer f = r[qi + den.size() - 1] % m;
        if (sgn(f) < 0) f += m;
        q[qi] = f;
        if (sgn(f) != 0)
            for (size_t j = 0; j < den.size(); ++j) r[qi + j] = (r[qi + j] - f * den[j]);
    }
    return {zmod(q, m), zmod(r, m)};
}

struct HenselPair {
    ZPoly g, h;  // f = g*h mod m^2 after step
    ZPoly s, t;  // s*g + t*h = 1 mod m^2
};

/// One quadratic Hensel step: from f = g h (mod m), s g + t h = 1 (mod m),
/// with g, h monic, to the same data mod m^2.
inline HenselPair hensel_step(const ZPoly& f, const ZPoly& g, const ZPoly& h, const ZPoly& s,
                              const ZPoly& t, const Integer& m) {
    Integer m2 = m * m;
    ZPoly e = zsub_mod(f, mul(g, h), m2);
    auto [q, r] = zdivmod_monic_mod(zmul_mod(s, e, m2), h, m2);
    ZPoly gstar = zadd_mod(zadd_mod(g, zmul_mod(t, e, m2), m2), zmul_mod(q, g, m2), m2);
    ZPoly hstar = zadd_mod(h, r, m2);
    // lift the Bezout pair
    ZPoly b = zsub_mod(zadd_mod(zmul_mod(s, gstar, m2), zmul_mod(t, hstar, m2), m2), {Integer(1)}, m2);
    auto [c, d] = zdivmod_monic_mod(zmul_mod(s, b, m2), hstar, m2);
    ZPoly sstar = zsub_mod(s, d, m2);
    ZPoly tstar = zsub_mod(zsub_mod(t, zmul_mod(t, b, m2), m2), zmul_mod(c, gstar, m2), m2);
    return {gstar, hstar, sstar, tstar};
}

/// Recursive multifactor Hensel lift: factors of f mod p (monic, pairwise
/// coprime) lifted to factors mod P (a power of p reached by squaring).
inline void hensel_tree(const ZPoly& f, std::vector<MPoly>::const_iterator begin,
                        std::vector<MPoly>::const_iterator end, int64_t p, const Integer& target,
                        std::vector<ZPoly>& out) {
    size_t count = static_cast<size_t>(end - begin);
    if (count == 1) {
        out.push_back(zmod(f, target));
        return;
    }
    size_t half = count / 2;
    MPoly gm = {1}, hm = {1};
    for (auto it = begin; it != begin + half; ++it) gm = mmul(gm, *it, p);
    for (auto it = begin + half; it != end; ++it) hm = mmul(hm, *it, p);
    // Bezout mod p
    MPoly r0 = gm, r1 = hm, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
        // quot of r0 by r1 mod p
        MPoly rem = r0, quot;
        int64_t inv = minv(r1.back(), p);
        if (rem.size() >= r1.size()) {
            quot.assign(rem.size() - r1.size() + 1, 0);
            for (size_t qi = quot.size(); qi-- > 0;) {
                int64_t c = rem[qi + r1.size() - 1] % p * inv % p;
                quot[qi] = c;
                for (size_t j = 0; j < r1.size(); ++j)
                    rem[qi + j] = ((rem[qi + j] - c * r1[j]) % p + p) % p;
            }
            mtrim(quot);
            mtrim(rem);
        }
        auto comb = [&](MPoly a, const MPoly& b) {
            MPoly qb = mmul(quot, b, p);
            a.resize(std::max(a.size(), qb.size()), 0);
            for (size_t i = 0; i < qb.size(); ++i) a[i] = ((a[i] - qb[i]) % p + p) % p;
            mtrim(a);
            return a;
        };
        MPoly s2 = comb(s0, s1), t2 = comb(t0, t1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // normalize gcd (a unit) to 1
    int64_t inv = minv(r0.empty() ? 1 : r0[0], p);
    for (auto& c : s0) c = c * inv % p;
    for (auto& c : t0) c = c * inv % p;

    auto tostar = [&](const MPoly& a) {
        ZPoly z(a.size());
        for (size_t i = 0; i < a.size(); ++i) z[i] = Integer(static_cast<long>(a[i]));
        return z;
    };
    ZPoly G = tostar(gm), H = tostar(hm), S = tostar(s0), T = tostar(t0);
    Integer m(p);
    while (m < target) {
        auto step = hensel_step(zmod(f, m * m), G, H, S, T, m);
        G = step.g;
        H = step.h;
        S = step.s;
        T = step.t;
        m = m * m;
    }
    hensel_tree(G, begin, begin + half, p, target, out);
    hensel_tree(H, begin + half, end, p, target, out);
}

// --- top level ---------------------------------------------------------------

inline Integer mignotte_bound(const ZPoly& f) {
    // 2^deg * l2norm(f): coarse but safe for monic factor coefficients.
    Integer sq = 0;
    for (const auto& c : f) sq += c * c;
    Integer root;
    mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
    root += 1;
    Integer b = root;
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), deg(f) + 1);
    return b;
}

/// Factorization of a monic squarefree integer polynomial into monic
/// irreducible integer factors.
inline std::vector<ZPoly> factor_monic_squarefree(const ZPoly& F) {
    std::vector<ZPoly> result;
    if (deg(F) <= 1) {
        result.push_back(F);
        return result;
    }
    static const std::array<int64_t, 30> primes = {3,  5,  7,  11, 13, 17, 19, 23, 29,  31,
                                                   37, 41, 43, 47, 53, 59, 61, 67, 71,  73,
                                                   79, 83, 89, 97, 101, 103, 107, 109, 113, 127};
    int64_t best_p = 0;
    size_t best_count = SIZE_MAX;
    MPoly best_f;
    int tried = 0;
    for (int64_t p : primes) {
        MPoly fp = mreduce(F, p);
        if (static_cast<int>(fp.size()) - 1 != deg(F)) continue;  // lc vanished (cannot happen: monic)
        MPoly g = mgcd(fp, mderiv(fp, p), p);
        if (g.size() > 1) continue;  // not squarefree mod p
        size_t r = berlekamp_basis(fp, p).size();
        if (r < best_count) {
            best_count = r;
            best_p = p;
            best_f = fp;
        }
        if (++tried >= 4 || best_count == 1) break;
    }
    if (best_p == 0) throw Error("no usable prime for factorization");
    if (best_count == 1) {
        result.push_back(F);
        return result;
    }
    auto modular = berlekamp_factor(best_f, best_p);
    // Lift to a modulus beyond twice the factor-coefficient bound.
    Integer bound = mignotte_bound(F) * 2 + 1;
    Integer target(best_p);
    while (target < bound) target = target * target;
    std::vector<ZPoly> lifted;
    hensel_tree(zmod(F, target), modular.begin(), modular.end(), best_p, target, lifted);

    auto balanced = [&](ZPoly g) {
        for (auto& c : g)
            if (c * 2 > target) c -= target;
        trim(g);
        return g;
    };

    // Subset recombination.
    ZPoly rem = F;
    std::vector<ZPoly> pool = lifted;
    size_t take = 1;
    while (2 * take <= pool.size()) {
        bool found = false;
        std::vector<size_t> idx(take);
        for (size_t i = 0; i < take; ++i) idx[i] = i;
        while (true) {
            ZPoly cand = {Integer(1)};
            for (size_t i : idx) cand = zmod(mul(cand, pool[i]), target);
            cand = balanced(cand);
            ZPoly quot;
            if (div_monic(rem, cand, quot)) {
                result.push_back(cand);
                rem = quot;
                std::vector<ZPoly> np;
                for (size_t i = 0, j = 0; i < pool.size(); ++i) {
                    if (j < idx.size() && idx[j] == i) {
                        ++j;
                        continue;
                    }
                    np.push_back(pool[i]);
                }
                pool = std::move(np);
                found = true;
                break;
            }
            // next combination
            size_t i = take;
            while (i-- > 0) {
                if (idx[i] + (take - i) < pool.size()) {
                    ++idx[i];
                    for (size_t j = i + 1; j < take; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) {
                    i = SIZE_MAX;
                    break;
                }
            }
            if (i == SIZE_MAX) break;
        }
        if (!found) ++take;
    }
    if (deg(rem) >= 1) result.push_back(rem);
    return result;
}

/// Factorization of a primitive squarefree integer polynomial (any leading
/// coefficient) into primitive irreducible integer factors.
inline std::vector<ZPoly> factor_primitive_squarefree(const ZPoly& f) {
    if (deg(f) <= 1) return {f};
    Integer lc = f.back();
    if (lc == 1) return factor_monic_squarefree(f);
    // Monicize: F(x) = lc^(d-1) * f(x / lc), factor, then substitute back.
    int d = deg(f);
    ZPoly F(f.size());
    F[d] = 1;
    Integer pw = 1;
    for (int i = d - 1; i >= 0; --i) {
        F[i] = f[i] * pw;
        pw *= lc;
    }
    auto monic_factors = factor_monic_squarefree(F);
    std::vector<ZPoly> out;
    for (const auto& H : monic_factors) {
        ZPoly h(H.size());
        Integer pw = 1;
        for (size_t i = 0; i < H.size(); ++i) {
            h[i] = H[i] * pw;
            pw *= lc;
        }
        out.push_back(primitive(h));
    }
    return out;
}

}  // namespace qfac

/// Irreducible factor with multiplicity; factors are primitive with positive
/// leading coefficient, the rational unit is dropped.
struct SymFactor {
    SymmetricPoly factor;
    int multiplicity;
};

inline std::vector<SymFactor> factor_symmetric(const SymmetricPoly& q) {
    std::vector<SymFactor> out;
    for (const auto& [sf, mult] : squarefree_decomposition(q)) {
        qfac::ZPoly z;
        SymmetricPoly prim = sf.primitive();
        for (int i = 0; i <= prim.degree(); ++i) {
            Rational c = prim.coeff(i);
            if (c.get_den() != 1) throw Error("primitive part not integral");
            z.push_back(c.get_num());
        }
        for (auto& g : qfac::factor_primitive_squarefree(z)) {
            std::vector<Rational> rs(g.size());
            for (size_t i = 0; i < g.size(); ++i) rs[i] = Rational(g[i]);
            SymmetricPoly fac = SymmetricPoly::from_coeffs(std::move(rs));
            if (sgn(fac.lc()) < 0) fac = -fac;
            out.push_back({fac, mult});
        }
    }
    return out;
}

/// Irreducible factors of a Laurent polynomial over Q[t, t^-1], canonically
/// normalized (valuation 0, primitive, positive lead); units dropped.
struct LaurentFactor {
    LaurentPoly factor;
    int multiplicity;
};

inline std::vector<LaurentFactor> factor_laurent(const LaurentPoly& p) {
    if (p.is_zero()) throw Error("factor of zero");
    LaurentPoly canon = p.canonical();
    // Dense rationals of the valuation-0 representative, reusing the same
    // engine through the SymmetricPoly container.
    SymmetricPoly q = SymmetricPoly::from_coeffs(canon.coeffs());
    std::vector<LaurentFactor> out;
    for (auto& [fac, mult] : factor_symmetric(q)) {
        LaurentPoly lf = LaurentPoly::from_coeffs(0, fac.coeffs());
        // drop pure powers of t (units)
        if (lf.is_unit()) continue;
        out.push_back({lf.canonical(), mult});
    }
    return out;
}

}  // namespace knotinv
