#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sympc/poly.hpp"

namespace sympc {

/// Dense row-major matrix over a shared Field. Vectors are single-column
/// matrices unless a raw coefficient vector is more convenient.
class Matrix {
public:
    Matrix() : F_(nullptr), rows_(0), cols_(0) {}

    Matrix(FieldPtr F, int rows, int cols)
        : F_(std::move(F)), rows_(rows), cols_(cols),
          a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {
        require(rows >= 0 && cols >= 0, "BadParameters", "negative matrix dimension");
    }

    static Matrix identity(const FieldPtr& F, int n) {
        Matrix m(F, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    const FieldPtr& field() const { return F_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    felem& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    felem at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_ && F_->same(*o.F_);
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const {
        Matrix t(F_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    const std::vector<felem>& data() const { return a_; }

private:
    FieldPtr F_;
    int rows_, cols_;
    std::vector<felem> a_;
};

inline Matrix mat_add(const Matrix& a, const Matrix& b) {
    require_same_field(*a.field(), *b.field());
    require(a.rows() == b.rows() && a.cols() == b.cols(), "DimensionMismatch", "matrix add");
    Matrix c(a.field(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.field()->add(a.at(i, j), b.at(i, j));
    return c;
}

inline Matrix mat_neg(const Matrix& a) {
    Matrix c(a.field(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.field()->neg(a.at(i, j));
    return c;
}

inline Matrix mat_sub(const Matrix& a, const Matrix& b) { return mat_add(a, mat_neg(b)); }

inline Matrix mat_scale(const Matrix& a, felem s) {
    Matrix c(a.field(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.field()->mul(a.at(i, j), s);
    return c;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    require_same_field(*a.field(), *b.field());
    require(a.cols() == b.rows(), "DimensionMismatch", "matrix multiply");
    const auto& F = a.field();
    Matrix c(F, a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            felem v = a.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < b.cols(); ++j)
                c.at(i, j) = F->add(c.at(i, j), F->mul(v, b.at(k, j)));
        }
    return c;
}

inline std::vector<felem> mat_apply(const Matrix& a, const std::vector<felem>& x) {
    require(a.cols() == static_cast<int>(x.size()), "DimensionMismatch", "matrix apply");
    const auto& F = a.field();
    std::vector<felem> y(static_cast<std::size_t>(a.rows()), 0);
    for (int i = 0; i < a.rows(); ++i) {
        felem s = 0;
        for (int j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != 0) s = F->add(s, F->mul(a.at(i, j), x[static_cast<std::size_t>(j)]));
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

inline Matrix mat_pow(const Matrix& a, std::int64_t e) {
    require(a.rows() == a.cols(), "NotSquare", "matrix power");
    require(e >= 0, "BadParameters", "negative matrix power");
    Matrix r = Matrix::identity(a.field(), a.rows());
    Matrix b = a;
    while (e > 0) {
        if (e & 1) r = mat_mul(r, b);
        b = mat_mul(b, b);
        e >>= 1;
    }
    return r;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows(), "DimensionMismatch", "hstack");
    Matrix c(a.field(), a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
    }
    return c;
}

inline Matrix columns(const Matrix& a, const std::vector<int>& idx) {
    Matrix c(a.field(), a.rows(), static_cast<int>(idx.size()));
    for (int i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) c.at(i, static_cast<int>(j)) = a.at(i, idx[j]);
    return c;
}

inline std::vector<felem> column_vec(const Matrix& a, int j) {
    std::vector<felem> v(static_cast<std::size_t>(a.rows()));
    for (int i = 0; i < a.rows(); ++i) v[static_cast<std::size_t>(i)] = a.at(i, j);
    return v;
}

struct Echelon {
    Matrix rref;
    std::vector<int> pivot_cols;
    int rank = 0;
};

/// Row reduction with the first-nonzero pivot rule (deterministic).
inline Echelon echelon(Matrix a) {
    const auto& F = a.field();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < a.rows(); ++i)
            if (a.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(r, j));
        felem inv = F->inv(a.at(r, c));
        for (int j = c; j < a.cols(); ++j) a.at(r, j) = F->mul(a.at(r, j), inv);
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, c) == 0) continue;
            felem s = a.at(i, c);
            for (int j = c; j < a.cols(); ++j)
                a.at(i, j) = F->sub(a.at(i, j), F->mul(s, a.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots), r};
}

inline int rank(const Matrix& a) { return echelon(a).rank; }

/// Columns form a basis of the null space; free variables taken in
/// increasing column order, each set to one in its own basis vector.
inline Matrix kernel_basis(const Matrix& a) {
    Echelon e = echelon(a);
    std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
    for (int c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    const auto& F = a.field();
    Matrix k(F, a.cols(), a.cols() - e.rank);
    int out = 0;
    for (int c = 0; c < a.cols(); ++c) {
        if (is_pivot[static_cast<std::size_t>(c)]) continue;
        k.at(c, out) = 1;
        for (int r = 0; r < e.rank; ++r)
            k.at(e.pivot_cols[static_cast<std::size_t>(r)], out) = F->neg(e.rref.at(r, c));
        ++out;
    }
    return k;
}

/// First solution of A X = B under lexicographic free-variable assignment
/// (free variables zero); nullopt when inconsistent.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows(), "DimensionMismatch", "solve");
    Echelon e = echelon(hstack(a, b));
    Matrix x(a.field(), a.cols(), b.cols());
    for (int r = 0; r < e.rank; ++r) {
        int pc = e.pivot_cols[static_cast<std::size_t>(r)];
        if (pc >= a.cols()) return std::nullopt; // pivot in the augmented part
        for (int j = 0; j < b.cols(); ++j) x.at(pc, j) = e.rref.at(r, a.cols() + j);
    }
    return x;
}

inline Matrix inverse(const Matrix& a) {
    require(a.rows() == a.cols(), "NotSquare", "inverse");
    auto x = solve(a, Matrix::identity(a.field(), a.rows()));
    require(x.has_value() && rank(a) == a.rows(), "SingularSystem", "matrix not invertible");
    return *x;
}

/// Indices of columns of C whose images extend a basis of col(W) to a basis
/// of col([W C]), chosen greedily in column order.
inline std::vector<int> extend_basis_columns(const Matrix& w, const Matrix& c) {
    Echelon e = echelon(hstack(w, c));
    std::vector<int> chosen;
    for (int pc : e.pivot_cols)
        if (pc >= w.cols()) chosen.push_back(pc - w.cols());
    return chosen;
}

inline Matrix evaluate_at(const Poly& f, const Matrix& u) {
    require(u.rows() == u.cols(), "NotSquare", "polynomial evaluation at a matrix");
    require_same_field(*f.field(), *u.field());
    const auto& F = u.field();
    Matrix r(F, u.rows(), u.rows());
    for (int i = f.deg(); i >= 0; --i) {
        r = mat_mul(r, u);
        felem c = f.at(i);
        if (c != 0)
            for (int d = 0; d < u.rows(); ++d) r.at(d, d) = F->add(r.at(d, d), c);
    }
    return r;
}

/// Least-degree monic annihilator, as the lcm of per-vector annihilators
/// found from Krylov chains on the standard basis.
inline Poly minimal_polynomial(const Matrix& u) {
    require(u.rows() == u.cols(), "NotSquare", "minimal polynomial");
    const auto& F = u.field();
    const int n = u.rows();
    Poly m = Poly::constant(F, 1);
    for (int s = 0; s < n; ++s) {
        if (m.deg() == n) break;
        std::vector<felem> v(static_cast<std::size_t>(n), 0);
        v[static_cast<std::size_t>(s)] = 1;
        // Krylov chain v, uv, u^2 v, ... until dependent
        Matrix chain(F, n, 0);
        std::vector<felem> cur = v;
        for (int k = 0;; ++k) {
            Matrix ext(F, n, k + 1);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < k; ++j) ext.at(i, j) = chain.at(i, j);
                ext.at(i, k) = cur[static_cast<std::size_t>(i)];
            }
            if (rank(ext) <= k) {
                // cur depends on the chain: solve for the annihilator
                Matrix rhs(F, n, 1);
                for (int i = 0; i < n; ++i) rhs.at(i, 0) = cur[static_cast<std::size_t>(i)];
                auto x = solve(chain, rhs);
                require(x.has_value(), "Internal", "Krylov dependence without solution");
                std::vector<felem> ann(static_cast<std::size_t>(k + 1), 0);
                for (int j = 0; j < k; ++j) ann[static_cast<std::size_t>(j)] = F->neg(x->at(j, 0));
                ann[static_cast<std::size_t>(k)] = 1;
                m = lcm(m, Poly(F, std::move(ann)));
                break;
            }
            chain = ext;
            cur = mat_apply(u, cur);
        }
    }
    Matrix z = evaluate_at(m, u);
    require(z == Matrix(F, n, n), "Internal", "minimal polynomial does not annihilate");
    return m;
}

/// Multiplicities a_i of cyclic summands with exact annihilator p^i in the
/// p-primary part, from the kernel dimension jumps of p(u)^i.
inline std::vector<int> gl_multiplicities(const Matrix& u, const Poly& p, int k) {
    const int g = p.deg();
    require(g >= 1 && k >= 1, "BadParameters", "gl_multiplicities");
    std::vector<int> d(static_cast<std::size_t>(k + 2), 0);
    Matrix pu = evaluate_at(p, u);
    Matrix pw = Matrix::identity(u.field(), u.rows());
    for (int i = 1; i <= k + 1; ++i) {
        pw = mat_mul(pw, pu);
        d[static_cast<std::size_t>(i)] = u.rows() - rank(pw);
    }
    require(d[static_cast<std::size_t>(k + 1)] == d[static_cast<std::size_t>(k)],
            "NonIntegralMultiplicity", "p^k does not annihilate the p-primary part");
    std::vector<int> a(static_cast<std::size_t>(k), 0);
    for (int i = 1; i <= k; ++i) {
        int num = 2 * d[static_cast<std::size_t>(i)] - d[static_cast<std::size_t>(i - 1)] -
                  d[static_cast<std::size_t>(i + 1)];
        require(num >= 0 && num % g == 0, "NonIntegralMultiplicity",
                "kernel jumps not divisible by deg p");
        a[static_cast<std::size_t>(i - 1)] = num / g;
    }
    require(a.back() > 0, "NonIntegralMultiplicity", "a_k vanishes; k is not the exact exponent");
    return a;
}

struct GlFactorData {
    Poly p;
    int k = 0;
    std::vector<int> a;
};

/// Full elementary-divisor data of u: for each irreducible factor p^k of the
/// minimal polynomial, the multiplicity vector a_1..a_k.
inline std::vector<GlFactorData> gl_invariant(const Matrix& u) {
    std::vector<GlFactorData> out;
    for (const auto& [p, k] : factor(minimal_polynomial(u)))
        out.push_back({p, k, gl_multiplicities(u, p, k)});
    return out;
}

} // namespace sympc
