#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hermat.hpp"

namespace knotinv {

using QMat = std::vector<std::vector<Rational>>;

inline int qmat_size(const QMat& m) { return static_cast<int>(m.size()); }

inline Rational qmat_det(QMat m) {
    int n = qmat_size(m);
    Rational d = 1;
    for (int k = 0; k < n; ++k) {
        int sel = -1;
        for (int i = k; i < n; ++i)
            if (sgn(m[i][k]) != 0) {
                sel = i;
                break;
            }
        if (sel < 0) return Rational(0);
        if (sel != k) {
            std::swap(m[sel], m[k]);
            d = -d;
        }
        d *= m[k][k];
        for (int i = k + 1; i < n; ++i) {
            if (sgn(m[i][k]) == 0) continue;
            Rational f = m[i][k] / m[k][k];
            for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return d;
}

inline QMat qmat_mul(const QMat& a, const QMat& b) {
    int n = qmat_size(a), m = b.empty() ? 0 : static_cast<int>(b[0].size());
    int inner = qmat_size(b);
    QMat r(n, std::vector<Rational>(m, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < inner; ++k) {
            if (sgn(a[i][k]) == 0) continue;
            for (int j = 0; j < m; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

inline QMat qmat_transpose(const QMat& a) {
    int n = qmat_size(a), m = a.empty() ? 0 : static_cast<int>(a[0].size());
    QMat r(m, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) r[j][i] = a[i][j];
    return r;
}

inline QMat qmat_identity(int n) {
    QMat r(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) r[i][i] = 1;
    return r;
}

/// Seifert matrix of a knot: linking numbers V[i][j] = lk(a_i, a_j^+) for a
/// basis of curves on a Seifert surface, so V - V^t is unimodular skew.
struct SeifertMatrix {
    QMat v;
    std::string name;

    int size() const { return qmat_size(v); }
    int genus() const { return size() / 2; }

    bool is_integral() const {
        for (const auto& row : v)
            for (const auto& e : row)
                if (e.get_den() != 1) return false;
        return true;
    }
};

inline QMat seifert_skew_part(const SeifertMatrix& V) {
    int n = V.size();
    QMat j(n, std::vector<Rational>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) j[r][c] = V.v[r][c] - V.v[c][r];
    return j;
}

/// V - V^t equals the standard symplectic matrix (0 I; -I 0).
inline bool is_normalized(const SeifertMatrix& V) {
    int n = V.size(), g = n / 2;
    if (n % 2) return false;
    QMat j = seifert_skew_part(V);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Rational want = 0;
            if (r < g && c == r + g) want = 1;
            if (r >= g && c == r - g) want = -1;
            if (j[r][c] != want) return false;
        }
    return true;
}

inline void validate_seifert(const SeifertMatrix& V) {
    int n = V.size();
    for (const auto& row : V.v)
        if (static_cast<int>(row.size()) != n) throw NotSeifert("matrix is not square");
    if (n % 2) throw NotSeifert("odd size cannot carry a unimodular skew form");
    Rational d = qmat_det(seifert_skew_part(V));
    if (d != 1 && d != -1) throw NotSeifert("det(V - V^t) = " + rat_str(d) + ", want a unit");
}

namespace detail {

/// Integer congruence reduction of a unimodular skew form to adjacent
/// hyperbolic blocks (0 1; -1 0); returns the basis-change rows in P.
inline void skew_reduce_integer(QMat& j, QMat& p) {
    int n = qmat_size(j);
    auto swap_basis = [&](int a, int b) {
        if (a == b) return;
        std::swap(j[a], j[b]);
        for (int r = 0; r < n; ++r) std::swap(j[r][a], j[r][b]);
        std::swap(p[a], p[b]);
    };
    // basis op e_a += c * e_b
    auto add_basis = [&](int a, int b, const Rational& c) {
        if (sgn(c) == 0) return;
        for (int col = 0; col < n; ++col) j[a][col] += c * j[b][col];
        for (int r = 0; r < n; ++r) j[r][a] += c * j[r][b];
        for (int col = 0; col < n; ++col) p[a][col] += c * p[b][col];
    };
    for (int base = 0; base < n; base += 2) {
        // move the entry of smallest absolute value to (base, base+1)
        while (true) {
            int bi = -1, bj = -1;
            Rational best;
            for (int r = base; r < n; ++r)
                for (int c = base; c < n; ++c) {
                    if (sgn(j[r][c]) == 0) continue;
                    Rational a = abs(j[r][c]);
                    if (bi < 0 || a < best) {
                        best = a;
                        bi = r;
                        bj = c;
                    }
                }
            if (bi < 0) throw NotSeifert("degenerate skew form");
            swap_basis(bi, base);
            if (bj == base) bj = bi;  // entry moved along with the swap
            swap_basis(bj, base + 1);
            Rational a = j[base][base + 1];
            bool restart = false;
            // clear the two pivot rows by Euclidean steps
            for (int c = base + 2; c < n && !restart; ++c) {
                for (int row = base; row <= base + 1 && !restart; ++row) {
                    Rational e = j[row][c];
                    if (sgn(e) == 0) continue;
                    Rational piv = j[row][base + (row == base ? 1 : 0)];
                    // reduce e modulo piv: e_c += q * e_partner
                    Integer q;
                    Rational ratio = e / piv;
                    Integer num = ratio.get_num(), den = ratio.get_den();
                    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                    int partner = base + (row == base ? 1 : 0);
                    // j[row][c] changes by -q * j[row][partner] when e_c -= q e_partner
                    add_basis(c, partner, Rational(-q));
                    if (sgn(j[row][c]) != 0) {
                        // strictly smaller remainder: bring it into pivot position
                        restart = true;
                    }
                }
            }
            if (restart) continue;
            a = j[base][base + 1];
            if (a == -1) swap_basis(base, base + 1);
            a = j[base][base + 1];
            if (a != 1) throw NotSeifert("skew form is not unimodular over the integers");
            break;
        }
    }
}

/// Symplectic Gram-Schmidt over the rationals (used for non-integral input).
inline void skew_reduce_rational(QMat& j, QMat& p) {
    int n = qmat_size(j);
    auto swap_basis = [&](int a, int b) {
        if (a == b) return;
        std::swap(j[a], j[b]);
        for (int r = 0; r < n; ++r) std::swap(j[r][a], j[r][b]);
        std::swap(p[a], p[b]);
    };
    auto add_basis = [&](int a, int b, const Rational& c) {
        if (sgn(c) == 0) return;
        for (int col = 0; col < n; ++col) j[a][col] += c * j[b][col];
        for (int r = 0; r < n; ++r) j[r][a] += c * j[r][b];
        for (int col = 0; col < n; ++col) p[a][col] += c * p[b][col];
    };
    auto scale_basis = [&](int a, const Rational& c) {
        for (int col = 0; col < n; ++col) j[a][col] *= c;
        for (int r = 0; r < n; ++r) j[r][a] *= c;
        for (int col = 0; col < n; ++col) p[a][col] *= c;
    };
    for (int base = 0; base < n; base += 2) {
        int bi = -1, bj = -1;
        for (int r = base; r < n && bi < 0; ++r)
            for (int c = base; c < n; ++c)
                if (sgn(j[r][c]) != 0) {
                    bi = r;
                    bj = c;
                    break;
                }
        if (bi < 0) throw NotSeifert("degenerate skew form");
        swap_basis(bi, base);
        if (bj == base) bj = bi;
        swap_basis(bj, base + 1);
        scale_basis(base + 1, 1 / j[base][base + 1]);
        // u' = u - J(u, f) v + J(u, v) f kills both pairings with the block
        for (int c = base + 2; c < n; ++c) {
            add_basis(c, base, -j[c][base + 1]);
            add_basis(c, base + 1, j[c][base]);
        }
    }
}

}  // namespace detail

struct NormalizedSeifert {
    QMat p;  // change of basis: normalized = p * V * p^t
    SeifertMatrix normalized;
};

/// Change of basis bringing V - V^t to the standard symplectic form; the
/// transform is integral whenever V is.
inline NormalizedSeifert validate_and_normalize(const SeifertMatrix& V) {
    validate_seifert(V);
    int n = V.size(), g = n / 2;
    QMat j = seifert_skew_part(V);
    QMat p = qmat_identity(n);
    if (n > 0) {
        if (V.is_integral())
            detail::skew_reduce_integer(j, p);
        else
            detail::skew_reduce_rational(j, p);
    }
    // interleaved pairs (e1, f1, e2, f2, ...) -> (e1, ..., eg, f1, ..., fg)
    QMat perm(n, std::vector<Rational>(n, Rational(0)));
    for (int k = 0; k < g; ++k) {
        perm[k] = p[2 * k];
        perm[g + k] = p[2 * k + 1];
    }
    SeifertMatrix out;
    out.name = V.name;
    out.v = qmat_mul(qmat_mul(perm, V.v), qmat_transpose(perm));
    if (!is_normalized(out)) throw Error("internal: symplectic reduction failed");
    return {perm, out};
}

/// Alexander polynomial det(tV - V^t), normalized to the palindromic
/// representative with positive value at t = 1.
struct AlexanderPolynomial {
    LaurentPoly poly;

    bool operator==(const AlexanderPolynomial& o) const { return poly == o.poly; }
};

inline AlexanderPolynomial alexander(const SeifertMatrix& V) {
    validate_seifert(V);
    int n = V.size();
    if (n == 0) return {LaurentPoly::one()};
    LMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = LaurentPoly::monomial(V.v[i][j], 1) - LaurentPoly(V.v[j][i]);
    LaurentPoly d = det(m);
    if (d.is_zero()) throw NotAKnot("Alexander polynomial vanishes");
    if ((d.lo() + d.hi()) % 2 != 0) throw NotAKnot("Alexander polynomial has odd span");
    LaurentPoly c = d.shifted(-(d.lo() + d.hi()) / 2);
    if (!c.is_palindromic()) throw NotAKnot("Alexander polynomial is not symmetric");
    Rational at_one = c.value_at_one();
    if (at_one != 1 && at_one != -1) throw NotAKnot("Alexander value at 1 is " + rat_str(at_one));
    if (sgn(at_one) < 0) c = -c;
    if (sgn(c.value_at_minus_one()) == 0) throw NotAKnot("Alexander polynomial vanishes at -1");
    return {c};
}

/// The hermitian Laurent matrix presenting the linking form of the knot,
/// assembled from a normalized Seifert matrix. The apparent (1-t)^-1
/// denominators cancel; failure to cancel would falsify hermitian-ness and
/// is treated as an internal error.
inline HermitianLaurentMatrix blanchfield_matrix(const SeifertMatrix& V) {
    if (!is_normalized(V)) throw NotNormalized();
    int n = V.size(), g = n / 2;
    if (n == 0) return HermitianLaurentMatrix(LMat(0, 0));
    using RF = RationalFunction;
    RF one(LaurentPoly::one());
    RF u(LaurentPoly::one() - LaurentPoly::t(1));        // 1 - t
    RF ubar(LaurentPoly::one() - LaurentPoly::t(-1));    // 1 - t^-1
    RF ubar_inv = one / ubar, u_inv = one / u;
    auto dia = [&](int i, const RF& top, const RF& bottom) { return i < g ? top : bottom; };
    std::vector<std::vector<RF>> acc(n, std::vector<RF>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RF vij(LaurentPoly(V.v[i][j]));
            RF vji(LaurentPoly(V.v[j][i]));
            acc[i][j] = dia(i, ubar_inv, one) * vij * dia(j, one, u) +
                        dia(i, one, ubar) * vji * dia(j, u_inv, one);
        }
    LMat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!acc[i][j].is_laurent())
                throw Error("internal: denominators failed to cancel in the linking matrix");
            out.at(i, j) = acc[i][j].num();
        }
    return HermitianLaurentMatrix(std::move(out));
}

inline SeifertMatrix connected_sum(const SeifertMatrix& a, const SeifertMatrix& b) {
    SeifertMatrix r;
    int n = a.size(), m = b.size();
    r.v.assign(n + m, std::vector<Rational>(n + m, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.v[i][j] = a.v[i][j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r.v[n + i][n + j] = b.v[i][j];
    r.name = a.name.empty() || b.name.empty() ? a.name + b.name : a.name + " # " + b.name;
    return r;
}

/// Reversed-orientation mirror image: negates every signature, fixes the
/// Alexander polynomial.
inline SeifertMatrix mirror_reverse(const SeifertMatrix& a) {
    SeifertMatrix r = a;
    for (auto& row : r.v)
        for (auto& e : row) e = -e;
    if (!r.name.empty()) r.name = "-" + r.name;
    return r;
}

// Common test inputs.

/// Genus-k Seifert matrix of the (2, 2k+1) torus knot: -1 diagonal, +1 first
/// superdiagonal.
inline SeifertMatrix torus_knot_seifert(int k) {
    SeifertMatrix V;
    int n = 2 * k;
    V.v.assign(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) {
        V.v[i][i] = -1;
        if (i + 1 < n) V.v[i][i + 1] = 1;
    }
    V.name = "T(2," + std::to_string(2 * k + 1) + ")";
    return V;
}

inline SeifertMatrix trefoil_seifert() { return torus_knot_seifert(1); }

inline SeifertMatrix figure_eight_seifert() {
    SeifertMatrix V;
    V.v = {{Rational(1), Rational(1)}, {Rational(0), Rational(-1)}};
    V.name = "4_1";
    return V;
}

}  // namespace knotinv
