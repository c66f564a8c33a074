#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "helpers.hpp"
#include "sympc/symform.hpp"

using namespace sympc;

namespace {

Matrix M(const FieldPtr& F, int n, std::vector<std::int64_t> entries) {
    Matrix m(F, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = F->from_int(entries[static_cast<std::size_t>(i * n + j)]);
    return m;
}

std::vector<felem> random_vec(const FieldPtr& F, int n, std::mt19937_64& rng) {
    std::vector<felem> v(static_cast<std::size_t>(n));
    for (auto& c : v) c = F->sample(rng);
    return v;
}

} // namespace

TEST_CASE("standard form and membership", "[symform]") {
    auto F3 = Field::prime(3);
    Matrix j0 = standard_form(F3, 4);
    CHECK(j0.at(0, 2) == F3->one());
    CHECK(j0.at(2, 0) == F3->neg_one());
    CHECK(j0.at(0, 1) == 0);
    CHECK(is_skew(j0));
    CHECK(rank(j0) == 4);

    CHECK(is_symplectic(Matrix::identity(F3, 4), j0));
    CHECK(is_symplectic(M(F3, 2, {1, 1, 0, 1}), standard_form(F3, 2)));
    // 2I = -I lies in the group; an unbalanced scaling does not.
    CHECK(is_symplectic(mat_scale(Matrix::identity(F3, 2), F3->from_int(2)),
                        standard_form(F3, 2)));
    CHECK_FALSE(is_symplectic(M(F3, 2, {2, 0, 0, 1}), standard_form(F3, 2)));

    CHECK(testutil::error_kind([&] { standard_form(F3, 3); }) == "OddDimension");
    CHECK(testutil::error_kind([&] {
              make_symplectic(M(F3, 2, {2, 0, 0, 1}), standard_form(F3, 2));
          }) == "NotSymplectic");
    CHECK(testutil::error_kind([&] {
              make_symplectic(Matrix::identity(F3, 2), Matrix::identity(F3, 2));
          }) == "BadParameters"); // the form must be skew
}

TEST_CASE("pairing is the matrix of the form", "[symform]") {
    auto F5 = Field::prime(5);
    Matrix j0 = standard_form(F5, 4);
    std::mt19937_64 rng(61);
    for (int t = 0; t < 20; ++t) {
        auto x = random_vec(F5, 4, rng);
        auto y = random_vec(F5, 4, rng);
        // Alternating and bilinear.
        REQUIRE(pairing(j0, x, x) == 0);
        REQUIRE(pairing(j0, x, y) == F5->neg(pairing(j0, y, x)));
        auto xy = x;
        for (std::size_t i = 0; i < 4; ++i) xy[i] = F5->add(x[i], y[i]);
        auto z = random_vec(F5, 4, rng);
        REQUIRE(pairing(j0, xy, z) ==
                F5->add(pairing(j0, x, z), pairing(j0, y, z)));
    }
    std::vector<felem> e0 = {F5->one(), 0, 0, 0};
    std::vector<felem> e2 = {0, 0, F5->one(), 0};
    CHECK(pairing(j0, e0, e2) == F5->one());
}

TEST_CASE("symplectic basis from a nondegenerate alternating form", "[symform]") {
    auto F3 = Field::prime(3);
    Matrix j0 = standard_form(F3, 4);

    // Already standard: the returned basis must still standardize it.
    Matrix t = symplectic_basis(j0);
    CHECK(mat_mul(t.transpose(), mat_mul(j0, t)) == j0);

    Matrix j = M(F3, 2, {0, -1, 1, 0});
    t = symplectic_basis(j);
    CHECK(mat_mul(t.transpose(), mat_mul(j, t)) == standard_form(F3, 2));

    CHECK(testutil::error_kind([&] { symplectic_basis(Matrix(F3, 2, 2)); }) ==
          "Degenerate");
    CHECK(testutil::error_kind([&] { symplectic_basis(Matrix(F3, 3, 3)); }) ==
          "OddDimension");

    // Random congruent copies S^T J0 S are standardized for every size.
    std::mt19937_64 rng(62);
    for (std::int64_t p : {3, 5}) {
        auto F = Field::prime(p);
        for (int n : {2, 4, 6}) {
            Matrix jn = standard_form(F, n);
            for (int trial = 0; trial < 6; ++trial) {
                Matrix s(F, n, n);
                do {
                    for (int i = 0; i < n; ++i)
                        for (int c = 0; c < n; ++c) s.at(i, c) = F->sample(rng);
                } while (rank(s) < n);
                Matrix jc = mat_mul(s.transpose(), mat_mul(jn, s));
                Matrix tc = symplectic_basis(jc);
                REQUIRE(mat_mul(tc.transpose(), mat_mul(jc, tc)) == jn);
            }
        }
    }
}

TEST_CASE("transvections", "[symform]") {
    auto F3 = Field::prime(3);
    Matrix j0 = standard_form(F3, 2);
    std::vector<felem> a = {F3->one(), 0};
    Matrix tv = transvection(j0, a, F3->one());
    CHECK(is_symplectic(tv, j0));
    CHECK(tv == M(F3, 2, {1, 2, 0, 1}));
    CHECK(transvection(j0, a, F3->neg_one()) == M(F3, 2, {1, 1, 0, 1}));

    std::mt19937_64 rng(63);
    auto F5 = Field::prime(5);
    Matrix j4 = standard_form(F5, 4);
    for (int t = 0; t < 20; ++t) {
        auto dir = random_vec(F5, 4, rng);
        bool nonzero = false;
        for (auto c : dir) nonzero = nonzero || c != 0;
        if (!nonzero) continue;
        felem lam = F5->sample(rng);
        Matrix tr = transvection(j4, dir, lam);
        REQUIRE(is_symplectic(tr, j4));
        // x -> x + lambda (x, a) a fixes the hyperplane a-perp pointwise.
        REQUIRE(mat_apply(tr, dir) == dir);
    }
}

TEST_CASE("random symplectic elements", "[symform]") {
    for (std::int64_t p : {3, 5}) {
        auto F = Field::prime(p);
        for (int n : {2, 4, 6}) {
            auto el = random_symplectic(n, F, 1000 + static_cast<std::uint64_t>(10 * n + p));
            REQUIRE(is_symplectic(el.u, el.form));
            REQUIRE(el.form == standard_form(F, n));
            // Group closure: products and inverses stay symplectic.
            auto el2 = random_symplectic(n, F, 77);
            REQUIRE(is_symplectic(mat_mul(el.u, el2.u), el.form));
            REQUIRE(is_symplectic(inverse(el.u), el.form));
        }
    }

    auto F3 = Field::prime(3);
    auto a = random_symplectic(4, F3, 12345);
    auto b = random_symplectic(4, F3, 12345);
    CHECK(a.u == b.u); // deterministic in the seed
    auto c = random_symplectic(4, F3, 12346);
    CHECK(a.u != c.u);
}

TEST_CASE("adjoint identity for polynomials in u", "[symform]") {
    // (f(u) x, y) = (x, f(u^{-1}) y) for symplectic u: u is J-unitary, so the
    // J-adjoint of u is u^{-1} and the identity extends linearly to any f.
    std::mt19937_64 rng(64);
    for (std::int64_t p : {3, 5}) {
        auto F = Field::prime(p);
        for (int n : {2, 4}) {
            auto el = random_symplectic(n, F, 900 + static_cast<std::uint64_t>(n + p));
            Matrix uinv = inverse(el.u);
            for (int t = 0; t < 10; ++t) {
                std::vector<felem> c(4);
                for (auto& v : c) v = F->sample(rng);
                Poly f(F, c);
                Matrix fu = evaluate_at(f, el.u);
                Matrix fuinv = evaluate_at(f, uinv);
                auto x = random_vec(F, n, rng);
                auto y = random_vec(F, n, rng);
                REQUIRE(pairing(el.form, mat_apply(fu, x), y) ==
                        pairing(el.form, x, mat_apply(fuinv, y)));
            }
        }
    }
}
