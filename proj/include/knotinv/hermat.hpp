#pragma once

#include <functional>
#include <string>
#include <vector>

#include "factor.hpp"

namespace knotinv {

/// Dense matrix over the Laurent ring.
class LMat {
   public:
    LMat() = default;
    LMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static LMat identity(int n) {
        LMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    LaurentPoly& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const LaurentPoly& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const LMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const LMat& o) const { return !(*this == o); }

    LMat operator*(const LMat& o) const {
        if (cols_ != o.rows_) throw Error("matrix dimension mismatch");
        LMat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
            }
        return r;
    }
    LMat operator+(const LMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix dimension mismatch");
        LMat r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }
    LMat operator-() const {
        LMat r = *this;
        for (auto& e : r.a_) e = -e;
        return r;
    }

    LMat transpose() const {
        LMat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    /// Conjugate transpose under the bar involution t -> t^-1.
    LMat conj_transpose() const {
        LMat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).involute();
        return r;
    }

    bool is_hermitian() const { return rows_ == cols_ && *this == conj_transpose(); }

    static LMat block_diag(const LMat& a, const LMat& b) {
        LMat r(a.rows() + b.rows(), a.cols() + b.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) r.at(a.rows() + i, a.cols() + j) = b.at(i, j);
        return r;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < rows_; ++i) {
            s += i ? "; " : "";
            for (int j = 0; j < cols_; ++j) s += (j ? ", " : "[") + at(i, j).str();
            s += "]";
        }
        return s + "]";
    }

   private:
    int rows_ = 0, cols_ = 0;
    std::vector<LaurentPoly> a_;
};

/// Fraction-free determinant (Bareiss) over the Laurent ring; the interior
/// divisions are exact in any integral domain.
inline LaurentPoly det(LMat m) {
    int n = m.rows();
    if (n != m.cols()) throw Error("determinant of non-square matrix");
    if (n == 0) return LaurentPoly::one();
    LaurentPoly prev = LaurentPoly::one();
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m.at(k, k).is_zero()) {
            int sel = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m.at(i, k).is_zero()) {
                    sel = i;
                    break;
                }
            if (sel < 0) return LaurentPoly::zero();
            for (int j = k; j < n; ++j) std::swap(m.at(k, j), m.at(sel, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = div_exact(m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j), prev);
            m.at(i, k) = LaurentPoly::zero();
        }
        prev = m.at(k, k);
    }
    return sign < 0 ? -m.at(n - 1, n - 1) : m.at(n - 1, n - 1);
}

inline bool is_unit_det(const LMat& m) {
    LaurentPoly d = det(m);
    return d.is_unit();
}

/// Hermitian matrix over the Laurent ring: A equals its conjugate transpose.
class HermitianLaurentMatrix {
   public:
    HermitianLaurentMatrix() = default;
    explicit HermitianLaurentMatrix(LMat m) : m_(std::move(m)) {
        if (!m_.is_hermitian()) throw Error("matrix is not hermitian");
    }
    static HermitianLaurentMatrix diagonal(const std::vector<LaurentPoly>& entries) {
        LMat m(static_cast<int>(entries.size()), static_cast<int>(entries.size()));
        for (size_t i = 0; i < entries.size(); ++i) {
            if (!entries[i].is_palindromic()) throw Error("diagonal entry is not palindromic");
            m.at(static_cast<int>(i), static_cast<int>(i)) = entries[i];
        }
        return HermitianLaurentMatrix(std::move(m));
    }

    int size() const { return m_.rows(); }
    const LMat& mat() const { return m_; }
    const LaurentPoly& at(int i, int j) const { return m_.at(i, j); }

    bool operator==(const HermitianLaurentMatrix& o) const { return m_ == o.m_; }

    LaurentPoly determinant() const { return det(m_); }

    /// Symmetric rational matrix A(1).
    std::vector<std::vector<Rational>> at_one() const {
        std::vector<std::vector<Rational>> r(size(), std::vector<Rational>(size()));
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j) r[i][j] = m_.at(i, j).value_at_one();
        return r;
    }

   private:
    LMat m_;
};

// ---------------------------------------------------------------------------
// Pairing values in Q(t)/Lambda

namespace detail {

/// Strict Q[t] remainder: both arguments ordinary polynomials (lo >= 0), the
/// divisor with valuation 0. Unlike the Laurent division, t is not a unit.
inline LaurentPoly qpoly_mod(const LaurentPoly& a, const LaurentPoly& den) {
    if (a.is_zero()) return a;
    if (a.lo() < 0 || den.lo() != 0) throw Error("qpoly_mod needs ordinary polynomials");
    std::vector<Rational> ac(static_cast<size_t>(a.hi()) + 1);
    for (int k = a.lo(); k <= a.hi(); ++k) ac[k] = a.coeff(k);
    auto pr = poly_divmod(std::move(ac), den.coeffs());
    return LaurentPoly::from_coeffs(0, std::move(pr.second));
}

}  // namespace detail

/// Class of a rational function modulo the Laurent ring, in canonical form:
/// the denominator is an ordinary polynomial with nonzero constant term
/// (primitive, positive lead) and the numerator is reduced modulo it with
/// degree strictly smaller. Equality of classes is equality of fields.
class PairingValue {
   public:
    PairingValue() : num_(LaurentPoly::zero()), den_(LaurentPoly::one()) {}

    static PairingValue from_fraction(const RationalFunction& f) {
        PairingValue v;
        if (f.is_zero() || f.is_laurent()) return v;  // integral values are the zero class
        const LaurentPoly& den = f.den();             // canonical: valuation 0, den(0) != 0
        LaurentPoly num = f.num();
        int val = num.lo();
        LaurentPoly red = detail::qpoly_mod(num.shifted(-val), den);
        if (val > 0) {
            LaurentPoly tpow = detail::qpoly_mod(LaurentPoly::t(1).pow(val), den);
            red = detail::qpoly_mod(red * tpow, den);
        } else if (val < 0) {
            // t^-1 = (c0 - den) / (c0 t) mod den, an ordinary polynomial
            Rational c0 = den.coeff(0);
            LaurentPoly tinv = (LaurentPoly(c0) - den).shifted(-1) * (Rational(1) / c0);
            for (int i = 0; i < -val; ++i) red = detail::qpoly_mod(red * tinv, den);
        }
        if (red.is_zero()) return v;
        v.num_ = red;
        v.den_ = den;
        return v;
    }

    bool is_zero() const { return num_.is_zero(); }
    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool operator==(const PairingValue& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const PairingValue& o) const { return !(*this == o); }

    PairingValue involute() const {
        return from_fraction(RationalFunction::make(num_.involute(), den_.involute()));
    }

    std::string str() const {
        if (is_zero()) return "0";
        return "(" + num_.str() + ") / (" + den_.str() + ") mod Laurent";
    }

   private:
    LaurentPoly num_, den_;
};

/// Solves A x = b over Q(t) by Cramer determinants.
inline std::vector<RationalFunction> solve_cramer(const LMat& A, const std::vector<LaurentPoly>& b) {
    int n = A.rows();
    LaurentPoly d = det(A);
    if (d.is_zero()) throw SingularMatrix();
    std::vector<RationalFunction> x(n);
    for (int j = 0; j < n; ++j) {
        LMat Aj = A;
        for (int i = 0; i < n; ++i) Aj.at(i, j) = b[i];
        x[j] = RationalFunction::make(det(Aj), d);
    }
    return x;
}

/// The linking pairing of the quotient module: class of conj(a)^t A^-1 b.
inline PairingValue pair(const HermitianLaurentMatrix& A, const std::vector<LaurentPoly>& a,
                         const std::vector<LaurentPoly>& b) {
    int n = A.size();
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
        throw Error("pairing vector length mismatch");
    auto x = solve_cramer(A.mat(), b);
    RationalFunction acc;
    for (int i = 0; i < n; ++i) acc = acc + RationalFunction(a[i].involute()) * x[i];
    return PairingValue::from_fraction(acc);
}

// ---------------------------------------------------------------------------
// Congruence moves

inline HermitianLaurentMatrix move_congruence(const HermitianLaurentMatrix& A, const LMat& P) {
    if (P.rows() != A.size() || P.cols() != A.size()) throw Error("congruence dimension mismatch");
    if (!is_unit_det(P)) throw NotUnimodular();
    return HermitianLaurentMatrix(P * A.mat() * P.conj_transpose());
}

inline HermitianLaurentMatrix move_stabilize(const HermitianLaurentMatrix& A,
                                             const HermitianLaurentMatrix& D) {
    if (!det(D.mat()).is_unit()) throw NotUnitBlock();
    return HermitianLaurentMatrix(LMat::block_diag(A.mat(), D.mat()));
}

/// Removes the principal block [start, start+len) when it is an orthogonal
/// unit-determinant summand; the inverse of stabilization.
inline HermitianLaurentMatrix move_destabilize(const HermitianLaurentMatrix& A, int start, int len) {
    int n = A.size();
    if (start < 0 || len <= 0 || start + len > n) throw Error("destabilize block out of range");
    LMat block(len, len);
    for (int i = 0; i < len; ++i)
        for (int j = 0; j < len; ++j) block.at(i, j) = A.at(start + i, start + j);
    if (!det(block).is_unit()) throw NotUnitBlock();
    for (int i = 0; i < n; ++i) {
        if (i >= start && i < start + len) continue;
        for (int j = start; j < start + len; ++j)
            if (!A.at(i, j).is_zero()) throw NotUnitBlock("block is coupled to the rest");
    }
    LMat rest(n - len, n - len);
    auto map = [&](int i) { return i < start ? i : i + len; };
    for (int i = 0; i < n - len; ++i)
        for (int j = 0; j < n - len; ++j) rest.at(i, j) = A.at(map(i), map(j));
    return HermitianLaurentMatrix(std::move(rest));
}

// ---------------------------------------------------------------------------
// Smith normal form over the Laurent ring

struct SmithForm {
    std::vector<LaurentPoly> diagonal;  // full diagonal, canonical, units first
    std::vector<LaurentPoly> factors;   // non-unit invariant factors, divisibility chain
    int rank = 0;
    LMat U, Uinv, V, Vinv;  // U * M * V = diag; U, V unimodular
};

namespace detail {

struct SnfWorker {
    LMat m, U, Uinv, V, Vinv;

    explicit SnfWorker(const LMat& input)
        : m(input),
          U(LMat::identity(input.rows())),
          Uinv(LMat::identity(input.rows())),
          V(LMat::identity(input.cols())),
          Vinv(LMat::identity(input.cols())) {}

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
        for (int c = 0; c < U.cols(); ++c) std::swap(U.at(i, c), U.at(j, c));
        for (int r = 0; r < Uinv.rows(); ++r) std::swap(Uinv.at(r, i), Uinv.at(r, j));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < m.rows(); ++r) std::swap(m.at(r, i), m.at(r, j));
        for (int r = 0; r < V.rows(); ++r) std::swap(V.at(r, i), V.at(r, j));
        for (int c = 0; c < Vinv.cols(); ++c) std::swap(Vinv.at(i, c), Vinv.at(j, c));
    }
    // row i -= q * row k
    void add_row(int i, int k, const LaurentPoly& q) {
        if (q.is_zero()) return;
        for (int c = 0; c < m.cols(); ++c) m.at(i, c) -= q * m.at(k, c);
        for (int c = 0; c < U.cols(); ++c) U.at(i, c) -= q * U.at(k, c);
        for (int r = 0; r < Uinv.rows(); ++r) Uinv.at(r, k) += q * Uinv.at(r, i);
    }
    // col j -= q * col k
    void add_col(int j, int k, const LaurentPoly& q) {
        if (q.is_zero()) return;
        for (int r = 0; r < m.rows(); ++r) m.at(r, j) -= q * m.at(r, k);
        for (int r = 0; r < V.rows(); ++r) V.at(r, j) -= q * V.at(r, k);
        for (int c = 0; c < Vinv.cols(); ++c) Vinv.at(k, c) += q * Vinv.at(j, c);
    }
    // row i *= u (unit)
    void scale_row(int i, const LaurentPoly& u) {
        LaurentPoly uin = LaurentPoly::monomial(Rational(1) / u.coeff(u.lo()), -u.lo());
        for (int c = 0; c < m.cols(); ++c) m.at(i, c) *= u;
        for (int c = 0; c < U.cols(); ++c) U.at(i, c) *= u;
        for (int r = 0; r < Uinv.rows(); ++r) Uinv.at(r, i) *= uin;
    }

    // span-minimal nonzero entry of the trailing submatrix
    bool find_pivot(int k, int& pi, int& pj) const {
        pi = pj = -1;
        int best = -1;
        for (int i = k; i < m.rows(); ++i)
            for (int j = k; j < m.cols(); ++j) {
                const LaurentPoly& e = m.at(i, j);
                if (e.is_zero()) continue;
                if (best < 0 || e.span() < best) {
                    best = e.span();
                    pi = i;
                    pj = j;
                }
            }
        return pi >= 0;
    }

    void reduce_at(int k) {
        while (true) {
            int pi, pj;
            if (!find_pivot(k, pi, pj)) return;
            swap_rows(k, pi);
            swap_cols(k, pj);
            bool dirty = false;
            for (int i = k + 1; i < m.rows(); ++i) {
                if (m.at(i, k).is_zero()) continue;
                auto [q, r] = laurent_divmod(m.at(i, k), m.at(k, k));
                add_row(i, k, q);
                if (!r.is_zero()) dirty = true;
            }
            for (int j = k + 1; j < m.cols(); ++j) {
                if (m.at(k, j).is_zero()) continue;
                auto [q, r] = laurent_divmod(m.at(k, j), m.at(k, k));
                add_col(j, k, q);
                if (!r.is_zero()) dirty = true;
            }
            if (dirty) continue;
            // pivot divides its row and column remainders of zero; check the
            // interior for the divisibility chain
            bool fixed = false;
            for (int i = k + 1; i < m.rows() && !fixed; ++i)
                for (int j = k + 1; j < m.cols() && !fixed; ++j) {
                    if (m.at(i, j).is_zero()) continue;
                    if (!divides(m.at(k, k), m.at(i, j))) {
                        add_row(k, i, LaurentPoly(Rational(-1)));  // row k += row i
                        fixed = true;
                    }
                }
            if (!fixed) return;
        }
    }
};

}  // namespace detail

/// Smith normal form with unimodular transforms: U * M * V is diagonal with a
/// divisibility chain; diagonal entries are canonical, units first.
inline SmithForm smith_normal_form(const LMat& M) {
    detail::SnfWorker w(M);
    int steps = std::min(M.rows(), M.cols());
    for (int k = 0; k < steps; ++k) w.reduce_at(k);
    SmithForm out;
    // canonicalize the diagonal by unit row scalings
    for (int k = 0; k < steps; ++k) {
        const LaurentPoly& d = w.m.at(k, k);
        if (d.is_zero()) continue;
        auto [canon, unit] = d.unit_normalize();
        if (unit.first != 1 || unit.second != 0) {
            LaurentPoly u = LaurentPoly::monomial(Rational(1) / unit.first, -unit.second);
            w.scale_row(k, u);
        }
    }
    // The span-minimal pivot plus the interior divisibility fix already put
    // the diagonal in chain order: units, then proper factors, then zeros.
    for (int k = 0; k < steps; ++k) {
        const LaurentPoly& d = w.m.at(k, k);
        out.diagonal.push_back(d);
        if (d.is_zero()) continue;
        ++out.rank;
        if (!d.is_unit()) out.factors.push_back(d);
    }
    out.U = w.U;
    out.Uinv = w.Uinv;
    out.V = w.V;
    out.Vinv = w.Vinv;
    return out;
}

/// The cokernel rank of a square polynomial matrix: the number of non-unit
/// invariant factors (zero determinant contributes its kernel dimension too).
inline int nonunit_factor_count(const LMat& M) {
    SmithForm s = smith_normal_form(M);
    int zero_count = std::min(M.rows(), M.cols()) - s.rank;
    return static_cast<int>(s.factors.size()) + zero_count;
}

}  // namespace knotinv
