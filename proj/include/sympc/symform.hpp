#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "sympc/linalg.hpp"

namespace sympc {

/// Standard alternating form J0 = [[0, I_t], [-I_t, 0]], n = 2t.
inline Matrix standard_form(const FieldPtr& F, int n) {
    require(n >= 2 && n % 2 == 0, "OddDimension", "standard form needs even dimension");
    Matrix j(F, n, n);
    const int t = n / 2;
    for (int i = 0; i < t; ++i) {
        j.at(i, t + i) = F->one();
        j.at(t + i, i) = F->neg_one();
    }
    return j;
}

inline bool is_skew(const Matrix& j) {
    if (j.rows() != j.cols()) return false;
    for (int i = 0; i < j.rows(); ++i)
        for (int k = 0; k < j.cols(); ++k)
            if (j.at(i, k) != j.field()->neg(j.at(k, i))) return false;
    return true;
}

inline void validate_skew(const Matrix& j) {
    require(is_skew(j), "BadParameters", "gram matrix is not skew-symmetric");
}

/// Pairing (x, y) = x^T J y.
inline felem pairing(const Matrix& j, const std::vector<felem>& x, const std::vector<felem>& y) {
    const auto& F = j.field();
    std::vector<felem> jy = mat_apply(j, y);
    felem s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s = F->add(s, F->mul(x[i], jy[i]));
    return s;
}

inline bool is_symplectic(const Matrix& u, const Matrix& j) {
    require(u.rows() == u.cols() && u.rows() == j.rows() && j.rows() == j.cols(),
            "DimensionMismatch", "symplectic membership test");
    require_same_field(*u.field(), *j.field());
    return mat_mul(u.transpose(), mat_mul(j, u)) == j;
}

struct SymplecticElement {
    Matrix u;
    Matrix form;
};

inline SymplecticElement make_symplectic(Matrix u, Matrix form) {
    validate_skew(form);
    require(is_symplectic(u, form), "NotSymplectic", "u does not preserve the form");
    return {std::move(u), std::move(form)};
}

/// Change of basis T with T^T J T = J0, by hyperbolic-pair completion.
inline Matrix symplectic_basis(const Matrix& j) {
    require(j.rows() == j.cols(), "DimensionMismatch", "symplectic basis");
    validate_skew(j);
    const int n = j.rows();
    require(n % 2 == 0 && n >= 2, "OddDimension", "nondegenerate alternating forms have even rank");
    const auto& F = j.field();
    std::vector<std::vector<felem>> xs, ys;

    auto reduce = [&](std::vector<felem> v) {
        // make v orthogonal to all chosen pairs
        for (std::size_t i = 0; i < xs.size(); ++i) {
            felem cy = pairing(j, v, ys[i]); // (v, y_i) -> coefficient of x_i
            felem cx = pairing(j, v, xs[i]); // (v, x_i) -> coefficient of y_i
            for (std::size_t r = 0; r < v.size(); ++r) {
                v[r] = F->sub(v[r], F->mul(cy, xs[i][r]));
                v[r] = F->add(v[r], F->mul(cx, ys[i][r]));
            }
        }
        return v;
    };
    auto is_zero = [](const std::vector<felem>& v) {
        for (felem c : v)
            if (c != 0) return false;
        return true;
    };

    for (int c = 0; c < n; ++c) {
        if (2 * static_cast<int>(xs.size()) == n) break;
        std::vector<felem> e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(c)] = 1;
        std::vector<felem> v = reduce(std::move(e));
        if (is_zero(v)) continue;
        int partner = -1;
        felem s = 0;
        for (int d = 0; d < n; ++d) {
            std::vector<felem> f(static_cast<std::size_t>(n), 0);
            f[static_cast<std::size_t>(d)] = 1;
            s = pairing(j, v, f);
            if (s != 0) { partner = d; break; }
        }
        require(partner >= 0, "Degenerate", "vector in the radical of the form");
        std::vector<felem> f(static_cast<std::size_t>(n), 0);
        f[static_cast<std::size_t>(partner)] = 1;
        std::vector<felem> w = reduce(std::move(f));
        felem scale_inv = F->inv(pairing(j, v, w)); // equals the unreduced pairing
        for (auto& cw : w) cw = F->mul(cw, scale_inv);
        xs.push_back(std::move(v));
        ys.push_back(std::move(w));
    }
    require(2 * static_cast<int>(xs.size()) == n, "Degenerate", "form has a nontrivial radical");

    Matrix t(F, n, n);
    const int half = n / 2;
    for (int i = 0; i < half; ++i)
        for (int r = 0; r < n; ++r) {
            t.at(r, i) = xs[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
            t.at(r, half + i) = ys[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
        }
    require(mat_mul(t.transpose(), mat_mul(j, t)) == standard_form(F, n), "Internal",
            "hyperbolic completion failed to standardize the form");
    return t;
}

/// Transvection x -> x + lambda (x, a) a; preserves every alternating form
/// under which it is built.
inline Matrix transvection(const Matrix& j, const std::vector<felem>& a, felem lambda) {
    const auto& F = j.field();
    const int n = j.rows();
    std::vector<felem> ja = mat_apply(j, a);
    Matrix t = Matrix::identity(F, n);
    for (int r = 0; r < n; ++r) {
        if (a[static_cast<std::size_t>(r)] == 0) continue;
        felem la = F->mul(lambda, a[static_cast<std::size_t>(r)]);
        for (int c = 0; c < n; ++c)
            t.at(r, c) = F->add(t.at(r, c), F->mul(la, ja[static_cast<std::size_t>(c)]));
    }
    return t;
}

/// Seeded random product of 4n^2 transvections on the standard form.
inline SymplecticElement random_symplectic(int n, const FieldPtr& F, std::uint64_t seed) {
    require(n >= 2 && n % 2 == 0, "OddDimension", "random symplectic element");
    Matrix j0 = standard_form(F, n);
    std::mt19937_64 rng(seed);
    Matrix u = Matrix::identity(F, n);
    const int words = 4 * n * n;
    for (int w = 0; w < words; ++w) {
        std::vector<felem> a(static_cast<std::size_t>(n), 0);
        bool nonzero = false;
        while (!nonzero) {
            for (auto& c : a) {
                c = F->sample(rng);
                if (c != 0) nonzero = true;
            }
        }
        felem lambda = 0;
        while (lambda == 0) lambda = F->sample(rng);
        u = mat_mul(u, transvection(j0, a, lambda));
    }
    require(is_symplectic(u, j0), "Internal", "transvection word left the group");
    return {std::move(u), std::move(j0)};
}

} // namespace sympc
