#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "sympc/symform.hpp"

namespace sympc {

/// R = K[X]/(q^m) for a monic self-reciprocal irreducible q of degree h,
/// with the involution determined by xi -> xi^{-1}. Elements are canonical
/// Poly residues of degree < h*m. The uniformizer is pi = class of q; for
/// even h the normalized uniformizer pi_1 = xi^{-h/2} pi is involution-fixed,
/// while for h = 1 the relation pi + bar(pi) = 0 mod pi^2 holds instead.
class LocalRing {
public:
    LocalRing(FieldPtr K, Poly q, int m)
        : K_(std::move(K)), q_(std::move(q)), m_(m) {
        require(m_ >= 1, "BadParameters", "exponent m must be positive");
        require_same_field(*K_, *q_.field());
        require(q_.deg() >= 1 && q_.lead() == K_->one(), "NotIrreducible",
                "q must be monic of positive degree");
        require(q_.at(0) != 0, "NotSelfBar", "q = X admits no reciprocal involution");
        require(is_self_reciprocal(q_), "NotSelfBar", "q must equal its monic reciprocal");
        require(is_irreducible(q_), "NotIrreducible", "q must be irreducible");
        h_ = q_.deg();
        qm_ = poly_pow(q_, m_);
        dim_ = h_ * m_;

        // xi^{-1} from q^m(xi) = 0: with q^m = c_0 + X g(X), xi g(xi) = -c_0.
        std::vector<felem> g(static_cast<std::size_t>(qm_.deg()), 0);
        for (int i = 1; i <= qm_.deg(); ++i) g[static_cast<std::size_t>(i - 1)] = qm_.at(i);
        felem c0inv = K_->inv(qm_.at(0));
        xi_inv_ = reduce(scale(Poly(K_, std::move(g)), K_->neg(c0inv)));

        xi_pows_.reserve(static_cast<std::size_t>(2 * dim_));
        Poly acc = Poly::constant(K_, 1);
        for (int t = 0; t < 2 * dim_; ++t) {
            xi_pows_.push_back(acc);
            acc = reduce(mul(acc, Poly::x(K_)));
        }
        bar_pows_.reserve(static_cast<std::size_t>(dim_));
        acc = Poly::constant(K_, 1);
        for (int t = 0; t < dim_; ++t) {
            bar_pows_.push_back(acc);
            acc = reduce(mul(acc, xi_inv_));
        }

        require(bar(bar(Poly::x(K_))) == xi_pows_[1], "Internal", "involution is not involutory");
        require(reduce(mul(xi_inv_, Poly::x(K_))) == xi_pows_[0], "Internal",
                "xi^{-1} is not inverse to xi");
        if (h_ >= 2) {
            require(h_ % 2 == 0, "NotSelfBar", "self-reciprocal irreducible has even degree");
            Poly p1 = pi1();
            require(bar(p1) == p1, "Internal", "normalized uniformizer is not involution-fixed");
        } else {
            Poly s = add(pi(), bar(pi()));
            require(m_ == 1 ? s.is_zero() : pmod(s, poly_pow(q_, 2)).is_zero(), "Internal",
                    "pi + bar(pi) must vanish mod pi^2");
        }
    }

    const FieldPtr& field() const { return K_; }
    const Poly& q() const { return q_; }
    const Poly& modulus() const { return qm_; }
    int h() const { return h_; }
    int m() const { return m_; }
    int dim() const { return dim_; }

    Poly reduce(const Poly& a) const { return pmod(a, qm_); }
    Poly radd(const Poly& a, const Poly& b) const { return add(a, b); }
    Poly rsub(const Poly& a, const Poly& b) const { return sub(a, b); }
    Poly rmul(const Poly& a, const Poly& b) const { return reduce(mul(a, b)); }

    const Poly& xi_pow(int t) const { return xi_pows_[static_cast<std::size_t>(t)]; }

    Poly pi() const { return reduce(q_); }

    Poly pi1() const {
        require(h_ % 2 == 0 && h_ >= 2, "BadParameters", "pi_1 requires even degree");
        Poly r = reduce(q_);
        for (int t = 0; t < h_ / 2; ++t) r = rmul(r, xi_inv_);
        return r;
    }

    /// Involution: substitute the residue inverse of xi, precomputed on the basis.
    Poly bar(const Poly& a) const {
        Poly red = a.deg() < dim_ ? a : reduce(a);
        Poly r = Poly::zero(K_);
        for (int t = 0; t <= red.deg(); ++t)
            if (red.at(t) != 0) r = add(r, scale(bar_pows_[static_cast<std::size_t>(t)], red.at(t)));
        return r;
    }

    int eps() const { return (h_ >= 2 || m_ % 2 == 0) ? -1 : +1; }

    // residue field R_1 = K[X]/(q) helpers (entries of induced forms live there)
    Poly r1_reduce(const Poly& a) const { return pmod(a, q_); }
    Poly r1_bar(const Poly& a) const { return r1_reduce(bar(r1_reduce(a))); }
    Poly r1_mul(const Poly& a, const Poly& b) const { return pmod(mul(a, b), q_); }
    Poly r1_inv(const Poly& a) const {
        Poly r = r1_reduce(a);
        require(!r.is_zero(), "DivisionByZero", "inverse of zero in the residue field");
        // Fermat: |R_1| = |K|^h, so a^{|R_1|-2} inverts. Sizes here are tiny.
        std::int64_t size = 1;
        for (int i = 0; i < h_; ++i) size *= K_->size();
        Poly acc = Poly::constant(K_, 1);
        Poly base = r;
        std::int64_t e = size - 2;
        while (e > 0) {
            if (e & 1) acc = r1_mul(acc, base);
            base = r1_mul(base, base);
            e >>= 1;
        }
        return acc;
    }

private:
    FieldPtr K_;
    Poly q_;
    int m_;
    int h_ = 0;
    int dim_ = 0;
    Poly qm_ = Poly(K_);
    Poly xi_inv_ = Poly(K_);
    std::vector<Poly> xi_pows_;
    std::vector<Poly> bar_pows_;
};

inline LocalRing ring_make(const FieldPtr& K, const Poly& q, int m) { return LocalRing(K, q, m); }

/// Nondegenerate functional l on R with l(bar(rho)) = eps * l(rho),
/// deterministic per (K, q, m). Carries the inverse of the moment matrix
/// T[t][s] = l(xi^{t+s}), which solves l(xi^t w) = c_t for w.
struct FrobeniusForm {
    std::vector<felem> coeffs; // values on the basis 1, xi, ..., xi^{hm-1}
    int eps = -1;
    Matrix tinv;

    felem eval(const Poly& rho_reduced) const {
        felem s = 0;
        const auto& F = tinv.field();
        for (int t = 0; t <= rho_reduced.deg(); ++t)
            if (rho_reduced.at(t) != 0)
                s = F->add(s, F->mul(coeffs[static_cast<std::size_t>(t)], rho_reduced.at(t)));
        return s;
    }
};

inline FrobeniusForm frobenius_form(const LocalRing& R) {
    const auto& K = R.field();
    const int D = R.dim();
    const int eps = R.eps();

    // matrix of the involution on the monomial basis
    Matrix B(K, D, D);
    for (int nu = 0; nu < D; ++nu) {
        Poly img = R.bar(R.xi_pow(nu));
        for (int t = 0; t < D; ++t) B.at(t, nu) = img.at(t);
    }
    Matrix I = Matrix::identity(K, D);
    // constraint space: l kills S = ker(B - I) when eps = -1, else A = ker(B + I)
    Matrix constraint_basis = kernel_basis(eps == -1 ? mat_sub(B, I) : mat_add(B, I));

    // anchor z in the minimal ideal, outside the constraint space
    Poly base = Poly::constant(K, 1);
    {
        Poly u = R.h() >= 2 ? R.pi1() : R.pi();
        for (int t = 0; t < R.m() - 1; ++t) base = R.rmul(base, u);
    }
    Poly z = base;
    if (eps == -1) {
        int nu = 0;
        while (R.bar(z) == z) {
            ++nu;
            require(nu < D, "ConstructionFailed", "minimal ideal is involution-fixed");
            z = R.rmul(base, R.xi_pow(nu));
        }
    }

    const int rows = constraint_basis.cols() + 1;
    Matrix sys(K, rows, D);
    Matrix rhs(K, rows, 1);
    for (int r = 0; r + 1 < rows; ++r)
        for (int c = 0; c < D; ++c) sys.at(r, c) = constraint_basis.at(c, r);
    for (int c = 0; c < D; ++c) sys.at(rows - 1, c) = z.at(c);
    rhs.at(rows - 1, 0) = 1;
    auto sol = solve(sys, rhs);
    require(sol.has_value(), "ConstructionFailed", "no functional satisfies the constraints");

    FrobeniusForm l;
    l.eps = eps;
    l.coeffs.resize(static_cast<std::size_t>(D));
    for (int c = 0; c < D; ++c) l.coeffs[static_cast<std::size_t>(c)] = sol->at(c, 0);
    l.tinv = Matrix(K, D, D);

    // verify the twist identity on the full basis
    for (int nu = 0; nu < D; ++nu) {
        felem lhs = l.eval(R.bar(R.xi_pow(nu)));
        felem rhsv = l.eval(R.xi_pow(nu));
        rhsv = eps == -1 ? K->neg(rhsv) : rhsv;
        require(lhs == rhsv, "ConstructionFailed", "functional fails the involution twist");
    }

    Matrix T(K, D, D);
    for (int t = 0; t < D; ++t)
        for (int s = 0; s < D; ++s) T.at(t, s) = l.eval(R.xi_pow(t + s));
    require(rank(T) == D, "ConstructionFailed", "functional is degenerate");
    l.tinv = inverse(T);
    return l;
}

enum class Symmetry { HermitianSym, Symmetric, Skew };

/// Gram matrix of the level-i form on the stored V_i representatives,
/// entries in the residue field R_1.
struct InducedForm {
    int level = 0;
    std::vector<std::vector<Poly>> gram;
    Symmetry sym = Symmetry::Symmetric;
};

/// One primary block as an R-module: the restricted symplectic action and
/// form, multiplicities b_i, adapted bases of the kernel filtration
/// N_i = ker q(u)^i, level representatives, and the Gram table of the
/// Hermitian companion form f on the standard block basis.
struct PrimaryModule {
    Matrix u;
    Matrix gram;
    LocalRing R;
    FrobeniusForm l;
    std::vector<int> b;
    std::vector<int> kernel_dims;     // d_1..d_m
    std::vector<Matrix> n_basis;      // bases of N_1..N_m
    std::vector<Matrix> w_basis;      // bases of N_{i-1} + (N_i cap q(u)E)
    std::vector<Matrix> v_reps;       // per level: b_i columns, R_1-independent mod W_i
    std::vector<std::vector<Poly>> f; // f(e_i, e_j) on the standard block basis
};

/// f(x, y) from the defining system l(xi^t f(x,y)) = (u^t x, y), t < hm.
inline Poly herm_form(const PrimaryModule& M, const FrobeniusForm& l,
                      const std::vector<felem>& x, const std::vector<felem>& y) {
    const auto& K = M.R.field();
    const int D = M.R.dim();
    std::vector<felem> jy = mat_apply(M.gram, y);
    std::vector<felem> rhs(static_cast<std::size_t>(D), 0);
    std::vector<felem> ux = x;
    for (int t = 0; t < D; ++t) {
        felem s = 0;
        for (std::size_t r = 0; r < ux.size(); ++r) s = K->add(s, K->mul(ux[r], jy[r]));
        rhs[static_cast<std::size_t>(t)] = s;
        if (t + 1 < D) ux = mat_apply(M.u, ux);
    }
    std::vector<felem> c(static_cast<std::size_t>(D), 0);
    for (int t = 0; t < D; ++t) {
        felem s = 0;
        for (int s2 = 0; s2 < D; ++s2)
            s = K->add(s, K->mul(l.tinv.at(t, s2), rhs[static_cast<std::size_t>(s2)]));
        c[static_cast<std::size_t>(t)] = s;
    }
    return Poly(K, std::move(c));
}

/// f on arbitrary block vectors through the stored Gram table
/// (f is K-bilinear since K is involution-fixed).
inline Poly herm_value(const PrimaryModule& M, const std::vector<felem>& x,
                       const std::vector<felem>& y) {
    const auto& K = M.R.field();
    Poly acc = Poly::zero(K);
    const int n = M.u.rows();
    for (int i = 0; i < n; ++i) {
        if (x[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (y[static_cast<std::size_t>(j)] == 0) continue;
            felem c = K->mul(x[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(j)]);
            acc = add(acc, scale(M.f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], c));
        }
    }
    return acc;
}

/// rho * x where rho acts through u.
inline std::vector<felem> module_scale(const PrimaryModule& M, const Poly& rho,
                                       const std::vector<felem>& x) {
    const auto& K = M.R.field();
    std::vector<felem> res(x.size(), 0);
    for (int t = rho.deg(); t >= 0; --t) {
        res = mat_apply(M.u, res);
        felem c = rho.at(t);
        if (c != 0)
            for (std::size_t r = 0; r < x.size(); ++r) res[r] = K->add(res[r], K->mul(c, x[r]));
    }
    return res;
}

inline PrimaryModule module_filtration(const Matrix& u, const Matrix& J, const LocalRing& R,
                                       std::mt19937_64* randomize = nullptr) {
    const auto& K = R.field();
    require_same_field(*u.field(), *K);
    const int n = u.rows();
    require(u.cols() == n && J.rows() == n && J.cols() == n, "DimensionMismatch",
            "module filtration");
    require(minimal_polynomial(u) == R.modulus(), "WrongMinimalPolynomial",
            "minimal polynomial must be q^m");
    require(is_symplectic(u, J), "NotSymplectic", "block action must preserve the block form");
    const int h = R.h(), m = R.m();

    Matrix Q = evaluate_at(R.q(), u);
    std::vector<Matrix> kernels; // N_1..N_m
    std::vector<int> d(static_cast<std::size_t>(m + 2), 0);
    Matrix qp = Matrix::identity(K, n);
    for (int i = 1; i <= m; ++i) {
        qp = mat_mul(qp, Q);
        kernels.push_back(kernel_basis(qp));
        d[static_cast<std::size_t>(i)] = kernels.back().cols();
    }
    require(d[static_cast<std::size_t>(m)] == n, "WrongMinimalPolynomial",
            "q^m does not annihilate the block");
    d[static_cast<std::size_t>(m + 1)] = n;

    std::vector<int> b(static_cast<std::size_t>(m), 0);
    int weighted = 0;
    for (int i = 1; i <= m; ++i) {
        int num = 2 * d[static_cast<std::size_t>(i)] - d[static_cast<std::size_t>(i - 1)] -
                  d[static_cast<std::size_t>(i + 1)];
        require(num >= 0 && num % h == 0, "NonIntegralMultiplicity",
                "kernel jumps not divisible by h");
        b[static_cast<std::size_t>(i - 1)] = num / h;
        weighted += i * (num / h);
    }
    require(b.back() > 0 && h * weighted == n, "NonIntegralMultiplicity",
            "multiplicities do not account for the block dimension");

    PrimaryModule M{u, J, R, frobenius_form(R), b, {}, {}, {}, {}, {}};
    for (int i = 1; i <= m; ++i)
        M.kernel_dims.push_back(d[static_cast<std::size_t>(i)]);

    if (h == 1) {
        // odd-level multiplicities are even for linear blocks
        for (int i = 1; i <= m; i += 2)
            require(b[static_cast<std::size_t>(i - 1)] % 2 == 0, "Internal",
                    "odd-level multiplicity must be even for linear blocks");
    }

    // level data
    for (int i = 1; i <= m; ++i) {
        Matrix Ni = kernels[static_cast<std::size_t>(i - 1)];
        if (randomize) {
            // replace the kernel basis by a random column-equivalent one
            const int k = Ni.cols();
            Matrix G(K, k, k);
            do {
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < k; ++c) G.at(r, c) = K->sample(*randomize);
            } while (rank(G) < k);
            Ni = mat_mul(Ni, G);
        }
        Matrix prev = i >= 2 ? kernels[static_cast<std::size_t>(i - 2)] : Matrix(K, n, 0);
        Matrix qn = i < m ? mat_mul(Q, kernels[static_cast<std::size_t>(i)]) : Q;
        Matrix W = hstack(prev, qn);
        // select R_1-independent representatives: each candidate spans
        // {x, ux, ..., u^{h-1}x} over W and earlier picks
        Matrix cur = W;
        std::vector<int> picked;
        int curRank = rank(cur);
        for (int c = 0; c < Ni.cols(); ++c) {
            if (static_cast<int>(picked.size()) == b[static_cast<std::size_t>(i - 1)]) break;
            std::vector<felem> v = column_vec(Ni, c);
            Matrix ext(K, n, h);
            std::vector<felem> w = v;
            for (int t = 0; t < h; ++t) {
                for (int r = 0; r < n; ++r) ext.at(r, t) = w[static_cast<std::size_t>(r)];
                if (t + 1 < h) w = mat_apply(M.u, w);
            }
            Matrix trial = hstack(cur, ext);
            int newRank = rank(trial);
            if (newRank > curRank) {
                require(newRank == curRank + h, "Internal",
                        "level representative spans a defective xi-orbit");
                picked.push_back(c);
                cur = trial;
                curRank = newRank;
            }
        }
        require(static_cast<int>(picked.size()) == b[static_cast<std::size_t>(i - 1)], "Internal",
                "level representative count does not match b_i");
        M.n_basis.push_back(Ni);
        M.w_basis.push_back(W);
        M.v_reps.push_back(columns(Ni, picked));
    }

    // Gram table of f on the standard block basis: rhs entries (u^t)^T J
    const int D = R.dim();
    std::vector<Matrix> moments;
    moments.reserve(static_cast<std::size_t>(D));
    Matrix upow = Matrix::identity(K, n);
    for (int t = 0; t < D; ++t) {
        moments.push_back(mat_mul(upow.transpose(), J));
        if (t + 1 < D) upow = mat_mul(upow, u);
    }
    M.f.assign(static_cast<std::size_t>(n), std::vector<Poly>(static_cast<std::size_t>(n), Poly::zero(K)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<felem> c(static_cast<std::size_t>(D), 0);
            for (int t = 0; t < D; ++t) {
                felem s = 0;
                for (int s2 = 0; s2 < D; ++s2)
                    s = K->add(s, K->mul(M.l.tinv.at(t, s2),
                                         moments[static_cast<std::size_t>(s2)].at(i, j)));
                c[static_cast<std::size_t>(t)] = s;
            }
            M.f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Poly(K, std::move(c));
        }
    return M;
}

/// Extract the level-i form: f(v_r, v_s) = pi_1^{m-i} rho (or pi^{m-i} rho
/// when h = 1); the Gram entry is rho mod pi in R_1.
inline InducedForm induced_form(const PrimaryModule& M, const FrobeniusForm& l, int i) {
    const LocalRing& R = M.R;
    const auto& K = R.field();
    const int h = R.h(), m = R.m();
    require(i >= 1 && i <= m, "BadParameters", "level out of range");
    const bool default_l = l.coeffs == M.l.coeffs;
    const Matrix& reps = M.v_reps[static_cast<std::size_t>(i - 1)];
    const int bi = reps.cols();

    InducedForm out;
    out.level = i;
    if (h >= 2)
        out.sym = Symmetry::HermitianSym;
    else {
        int sign = -l.eps * ((m - i) % 2 == 0 ? 1 : -1);
        out.sym = sign == 1 ? Symmetry::Symmetric : Symmetry::Skew;
    }

    Poly divisor = poly_pow(R.q(), m - i);
    out.gram.assign(static_cast<std::size_t>(bi),
                    std::vector<Poly>(static_cast<std::size_t>(bi), Poly::zero(K)));
    for (int r = 0; r < bi; ++r)
        for (int s = 0; s < bi; ++s) {
            std::vector<felem> x = column_vec(reps, r), y = column_vec(reps, s);
            Poly v = default_l ? herm_value(M, x, y) : herm_form(M, l, x, y);
            if (h >= 2 && m - i > 0) v = R.rmul(v, R.xi_pow(h * (m - i) / 2));
            auto [quot, rem] = divmod(v, divisor);
            require(rem.is_zero(), "ExtractionFailed",
                    "level value not divisible by the uniformizer power");
            out.gram[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] =
                R.r1_reduce(quot);
        }

    // structural symmetry of the Gram
    for (int r = 0; r < bi; ++r)
        for (int s = 0; s < bi; ++s) {
            const Poly& a = out.gram[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
            const Poly& bb = out.gram[static_cast<std::size_t>(s)][static_cast<std::size_t>(r)];
            Poly expect = out.sym == Symmetry::HermitianSym
                              ? R.r1_bar(bb)
                              : (out.sym == Symmetry::Symmetric ? bb : neg(bb));
            require(a == expect, "Internal", "level Gram violates its symmetry tag");
        }

    // nondegeneracy over R_1 by elimination
    {
        auto g = out.gram;
        int rnk = 0;
        for (int c = 0; c < bi && rnk < bi; ++c) {
            int piv = -1;
            for (int r = rnk; r < bi; ++r)
                if (!g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            std::swap(g[static_cast<std::size_t>(piv)], g[static_cast<std::size_t>(rnk)]);
            Poly inv = R.r1_inv(g[static_cast<std::size_t>(rnk)][static_cast<std::size_t>(c)]);
            for (auto& e : g[static_cast<std::size_t>(rnk)]) e = R.r1_mul(e, inv);
            for (int r = 0; r < bi; ++r) {
                if (r == rnk) continue;
                Poly fac = g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                if (fac.is_zero()) continue;
                for (int c2 = 0; c2 < bi; ++c2)
                    g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c2)] = R.r1_reduce(
                        sub(g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c2)],
                            R.r1_mul(fac, g[static_cast<std::size_t>(rnk)][static_cast<std::size_t>(c2)])));
            }
            ++rnk;
        }
        require(rnk == bi, "Internal", "level form is degenerate");
    }
    return out;
}

/// Determinant square class of a symmetric level Gram over the prime-side
/// field K (h = 1 levels only).
inline SquareClass gram_det_square_class(const InducedForm& form, const FieldPtr& K) {
    const int n = static_cast<int>(form.gram.size());
    require(n > 0, "BadParameters", "square class of an empty Gram");
    Matrix g(K, n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const Poly& e = form.gram[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            require(e.deg() <= 0, "BadParameters", "Gram entry not a scalar");
            g.at(r, c) = e.at(0);
        }
    // elimination determinant
    felem det = K->one();
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (g.at(r, c) != 0) { piv = r; break; }
        require(piv >= 0, "ZeroInput", "singular Gram has no square class");
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(g.at(piv, j), g.at(c, j));
            det = K->neg(det);
        }
        det = K->mul(det, g.at(c, c));
        felem inv = K->inv(g.at(c, c));
        for (int r = c + 1; r < n; ++r) {
            felem fct = K->mul(g.at(r, c), inv);
            if (fct == 0) continue;
            for (int j = c; j < n; ++j) g.at(r, j) = K->sub(g.at(r, j), K->mul(fct, g.at(c, j)));
        }
    }
    return K->square_class(det);
}

/// Structural checks used by the verification suite: Hermitian axioms on
/// random triples, the defining identity against l, nondegeneracy of f as an
/// R-valued pairing, and every level form (which asserts its own symmetry,
/// parity, and nondegeneracy on construction).
struct ModuleCheckStats {
    std::uint64_t blocks = 0;
    std::uint64_t triples = 0;
};

inline void check_module_structure(const PrimaryModule& M, int triples, std::uint64_t seed,
                                   ModuleCheckStats* stats = nullptr) {
    const auto& K = M.R.field();
    const int n = M.u.rows();
    const int D = M.R.dim();
    std::mt19937_64 rng(seed);

    auto rand_vec = [&] {
        std::vector<felem> v(static_cast<std::size_t>(n), 0);
        for (auto& c : v) c = K->sample(rng);
        return v;
    };
    auto rand_ring = [&] {
        std::vector<felem> c(static_cast<std::size_t>(D), 0);
        for (auto& e : c) e = K->sample(rng);
        return Poly(K, std::move(c));
    };
    auto add_vec = [&](const std::vector<felem>& a, const std::vector<felem>& b) {
        std::vector<felem> r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = K->add(a[i], b[i]);
        return r;
    };

    for (int t = 0; t < triples; ++t) {
        std::vector<felem> x = rand_vec(), x2 = rand_vec(), y = rand_vec();
        Poly rho = rand_ring();
        Poly fxy = herm_value(M, x, y);
        require(herm_form(M, M.l, x, y) == fxy, "Internal",
                "Gram table disagrees with the defining solve");
        // additivity
        require(herm_value(M, add_vec(x, x2), y) == add(fxy, herm_value(M, x2, y)), "Internal",
                "f is not additive");
        // rho-linearity in the first slot
        require(herm_value(M, module_scale(M, rho, x), y) == M.R.rmul(rho, fxy), "Internal",
                "f is not R-linear in x");
        // twisted symmetry f(x,y) = -eps bar(f(y,x))
        Poly sym = M.R.bar(herm_value(M, y, x));
        if (M.l.eps == 1) sym = neg(sym);
        require(fxy == M.R.reduce(sym), "Internal", "f violates the twisted symmetry");
        // defining identity against l
        felem lhs = M.l.eval(M.R.rmul(rho, fxy));
        std::vector<felem> rx = module_scale(M, rho, x);
        felem rhs = pairing(M.gram, rx, y);
        require(lhs == rhs, "Internal", "f fails the defining identity");
        if (stats) ++stats->triples;
    }

    // f nondegenerate as an R-valued pairing: the flattened Gram has full rank
    Matrix flat(K, n * D, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int t = 0; t < D; ++t)
                flat.at(j * D + t, i) = M.f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].at(t);
    require(rank(flat) == n, "Internal", "f is degenerate on the block");

    for (int i = 1; i <= M.R.m(); ++i) induced_form(M, M.l, i);
    if (stats) ++stats->blocks;
}

} // namespace sympc
