#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "sympc/classify.hpp"

using namespace sympc;

namespace {

Matrix M(const FieldPtr& F, int n, std::vector<std::int64_t> entries) {
    Matrix m(F, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = F->from_int(entries[static_cast<std::size_t>(i * n + j)]);
    return m;
}

SymplecticElement std_element(const Matrix& u) {
    return make_symplectic(u, standard_form(u.field(), u.rows()));
}

// Transvection fixing e1 and mapping e3 -> e3 - e1, with -1 on the (e2, e4)
// hyperbolic pair.
Matrix transvection_plus_minus(const FieldPtr& F) {
    Matrix u = Matrix::identity(F, 4);
    u.at(1, 1) = F->neg_one();
    u.at(3, 3) = F->neg_one();
    u.at(0, 2) = F->neg_one();
    return u;
}

} // namespace

TEST_CASE("primary decomposition", "[classify]") {
    auto F3 = Field::prime(3);
    auto F5 = Field::prime(5);

    // Split pair: eigenvalues 2 and 3 = 2^{-1} over F_5.
    auto blocks = primary_decompose(std_element(M(F5, 2, {2, 0, 0, 3})));
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].kind == BlockKind::SplitPair);
    CHECK(blocks[0].poly == Poly::from_ints(F5, {2, 1}));
    CHECK(blocks[0].exponent == 1);
    CHECK(blocks[0].basis.cols() == 2);

    blocks = primary_decompose(std_element(Matrix::identity(F3, 2)));
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].kind == BlockKind::LinMinus);
    CHECK(blocks[0].poly == Poly::from_ints(F3, {-1, 1}));

    blocks = primary_decompose(std_element(M(F3, 2, {0, -1, 1, 0})));
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].kind == BlockKind::SelfBar);
    CHECK(blocks[0].poly == Poly::from_ints(F3, {1, 0, 1}));

    // Mixed element: a unipotent pair plus -1 on a complementary pair.
    blocks = primary_decompose(std_element(transvection_plus_minus(F3)));
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].kind == BlockKind::LinMinus);
    CHECK(blocks[0].exponent == 2);
    CHECK(blocks[0].basis.cols() == 2);
    CHECK(blocks[1].kind == BlockKind::LinPlus);
    CHECK(blocks[1].exponent == 1);
    CHECK(blocks[1].basis.cols() == 2);

    CHECK(testutil::error_kind([&] {
              primary_decompose({M(F3, 2, {2, 0, 0, 1}), standard_form(F3, 2)});
          }) == "NotSymplectic");
}

TEST_CASE("split-pair invariants", "[classify]") {
    auto F5 = Field::prime(5);

    auto blocks = primary_decompose(std_element(M(F5, 2, {2, 0, 0, 3})));
    SplitEntry e = case1_invariants(blocks[0]);
    CHECK(e.pair == Poly::from_ints(F5, {2, 1}));
    CHECK(e.k == 1);
    CHECK(e.a == std::vector<int>{1});

    blocks = primary_decompose(std_element(M(F5, 4, {2, 0, 0, 0,
                                                     0, 2, 0, 0,
                                                     0, 0, 3, 0,
                                                     0, 0, 0, 3})));
    e = case1_invariants(blocks[0]);
    CHECK(e.a == std::vector<int>{2});

    // g -> diag(g, (g^T)^{-1}) embeds GL_2 with g a Jordan block at 2.
    blocks = primary_decompose(std_element(M(F5, 4, {2, 1, 0, 0,
                                                     0, 2, 0, 0,
                                                     0, 0, 3, 0,
                                                     0, 0, 1, 3})));
    REQUIRE(blocks.size() == 1);
    e = case1_invariants(blocks[0]);
    CHECK(e.pair == Poly::from_ints(F5, {2, 1}));
    CHECK(e.k == 2);
    CHECK(e.a == std::vector<int>{0, 1});
}

TEST_CASE("full invariant on fixed elements", "[classify]") {
    auto F3 = Field::prime(3);
    auto F5 = Field::prime(5);

    ClassDescriptor d = invariant(std_element(M(F3, 2, {1, 1, 0, 1})));
    REQUIRE(d.linear.size() == 1);
    CHECK(d.linear[0].plus_one);
    CHECK(d.linear[0].b == std::vector<int>{0, 1});
    REQUIRE(d.linear[0].disc.count(2) == 1);
    CHECK(d.linear[0].disc.at(2) == SquareClass::Square);
    CHECK(d.label() ==
          R"({"linear":[{"b":[0,1],"disc":{"2":"sq"},"sign":"+"}],"n":2,"p":3,"selfbar":[],"split":[]})");

    d = invariant(std_element(M(F3, 2, {1, 2, 0, 1})));
    CHECK(d.linear[0].disc.at(2) == SquareClass::NonSquare);

    d = invariant(std_element(Matrix::identity(F3, 4)));
    REQUIRE(d.linear.size() == 1);
    CHECK(d.linear[0].plus_one);
    CHECK(d.linear[0].b == std::vector<int>{4});
    CHECK(d.linear[0].disc.empty());

    d = invariant(std_element(mat_neg(Matrix::identity(F5, 2))));
    REQUIRE(d.linear.size() == 1);
    CHECK_FALSE(d.linear[0].plus_one);
    CHECK(d.linear[0].b == std::vector<int>{2});

    d = invariant(std_element(M(F5, 2, {2, 0, 0, 3})));
    REQUIRE(d.split.size() == 1);
    CHECK(d.split[0].pair.text() == "2,1");
    CHECK(d.split[0].a == std::vector<int>{1});
    CHECK(d.selfbar.empty());
    CHECK(d.linear.empty());

    d = invariant(std_element(M(F3, 2, {0, -1, 1, 0})));
    REQUIRE(d.selfbar.size() == 1);
    CHECK(d.selfbar[0].q.text() == "1,0,1");
    CHECK(d.selfbar[0].b == std::vector<int>{1});

    // Mixed element gets one entry per primary block.
    d = invariant(std_element(transvection_plus_minus(F3)));
    REQUIRE(d.linear.size() == 2);
    CHECK(d.linear[0].plus_one);
    CHECK(d.linear[0].b == std::vector<int>{0, 1});
    CHECK_FALSE(d.linear[1].plus_one);
    CHECK(d.linear[1].b == std::vector<int>{2});
}

TEST_CASE("labels are stable under basis randomization", "[classify]") {
    auto F3 = Field::prime(3);
    auto el = std_element(transvection_plus_minus(F3));
    std::string ref = invariant(el).label();
    for (std::uint64_t s = 1; s <= 5; ++s) {
        std::mt19937_64 rng(s);
        ClassifyOptions opt;
        opt.randomize_bases = &rng;
        CHECK(invariant(el, opt).label() == ref);
    }
}

TEST_CASE("structure checks run during classification", "[classify]") {
    auto F3 = Field::prime(3);
    ClassifyStats stats;
    ClassifyOptions opt;
    opt.herm_check_triples = 25;
    opt.stats = &stats;
    invariant(std_element(transvection_plus_minus(F3)), opt);
    CHECK(stats.blocks == 2);
    CHECK(stats.triples >= 50);
}

TEST_CASE("conjugacy decisions", "[classify]") {
    auto F3 = Field::prime(3);
    auto F5 = Field::prime(5);

    // Random conjugates are conjugate.
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto el = random_symplectic(4, F3, 8000 + s);
        auto g = random_symplectic(4, F3, 9000 + s);
        SymplecticElement conj = {mat_mul(mat_mul(g.u, el.u), inverse(g.u)), el.form};
        REQUIRE(conjugate_in_sp(el, conj));
    }

    // The two transvection classes differ over F_3 and over F_5.
    auto t1 = std_element(M(F3, 2, {1, 1, 0, 1}));
    auto t2 = std_element(M(F3, 2, {1, 2, 0, 1}));
    CHECK_FALSE(conjugate_in_sp(t1, t2));
    auto s1 = std_element(M(F5, 2, {1, 1, 0, 1}));
    auto s2 = std_element(M(F5, 2, {1, 2, 0, 1}));
    CHECK_FALSE(conjugate_in_sp(s1, s2));
    // lambda = 4 = 2^2 is a square times lambda = 1.
    auto s4 = std_element(M(F5, 2, {1, 4, 0, 1}));
    CHECK(conjugate_in_sp(s1, s4));

    CHECK(testutil::error_kind([&] { conjugate_in_sp(t1, s1); }) == "FormMismatch");
    auto big = std_element(Matrix::identity(F3, 4));
    CHECK(testutil::error_kind([&] { conjugate_in_sp(t1, big); }) == "FormMismatch");
}

TEST_CASE("conjugacy across non-standard forms", "[classify]") {
    // The same abstract class presented on a scaled form is still recognized.
    auto F3 = Field::prime(3);
    Matrix j0 = standard_form(F3, 2);
    Matrix j2 = mat_scale(j0, F3->from_int(2));
    Matrix u = M(F3, 2, {1, 1, 0, 1});
    REQUIRE(is_symplectic(u, j2));
    SymplecticElement a = make_symplectic(u, j2);

    // Rescaling the form rescales the top Gram by the same unit: lambda = 1
    // on 2*J matches lambda = 2 on J.
    CHECK(conjugate_in_sp(a, std_element(M(F3, 2, {1, 2, 0, 1}))));
    CHECK_FALSE(conjugate_in_sp(a, std_element(u)));
}

TEST_CASE("class enumeration", "[classify]") {
    auto F3 = Field::prime(3);
    auto F5 = Field::prime(5);

    auto c23 = enumerate_classes(2, F3);
    CHECK(c23.size() == 7);
    auto c25 = enumerate_classes(2, F5);
    CHECK(c25.size() == 9);
    auto c43 = enumerate_classes(4, F3);
    CHECK(c43.size() == 34);

    for (const auto* set : {&c23, &c25, &c43}) {
        std::set<std::string> labels;
        for (const auto& d : *set) {
            d.validate();
            labels.insert(d.label());
        }
        REQUIRE(labels.size() == set->size());
    }

    // Labels are sorted and the list contains the known fixed classes.
    std::set<std::string> l23;
    for (const auto& d : c23) l23.insert(d.label());
    CHECK(l23.count(invariant(std_element(Matrix::identity(F3, 2))).label()) == 1);
    CHECK(l23.count(invariant(std_element(M(F3, 2, {1, 1, 0, 1}))).label()) == 1);
    CHECK(l23.count(invariant(std_element(M(F3, 2, {0, -1, 1, 0}))).label()) == 1);

    CHECK(testutil::error_kind([&] { enumerate_classes(3, F3); }) == "BadParameters");
    CHECK(testutil::error_kind([&] { enumerate_classes(10, F3); }) == "BoundExceeded");
    CHECK(testutil::error_kind([&] {
              enumerate_classes(2, Field::extension(3, {1, 0, 1}));
          }) == "BadParameters");
}

TEST_CASE("labels are conjugation invariant", "[classify]") {
    for (std::int64_t p : {3, 5}) {
        auto F = Field::prime(p);
        for (int n : {2, 4}) {
            for (std::uint64_t s = 0; s < 8; ++s) {
                auto el = random_symplectic(n, F, 3000 + 17 * s);
                auto g = random_symplectic(n, F, 4000 + 17 * s);
                SymplecticElement conj = {mat_mul(mat_mul(g.u, el.u), inverse(g.u)),
                                          el.form};
                REQUIRE(invariant(conj).label() == invariant(el).label());
            }
        }
    }
}

TEST_CASE("descriptor agrees with the GL invariant", "[classify]") {
    // Every symplectic entry refines the underlying elementary-divisor data:
    // split pairs carry a on both factors, self-reciprocal and linear blocks
    // carry b as the GL multiplicities of their own factor.
    auto F3 = Field::prime(3);
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto el = random_symplectic(4, F3, 5000 + s);
        ClassDescriptor d = invariant(el);
        auto gl = gl_invariant(el.u);
        auto find = [&](const Poly& p) -> const GlFactorData* {
            for (const auto& fac : gl)
                if (fac.p == p) return &fac;
            return nullptr;
        };
        for (const auto& e : d.split) {
            const auto* f1 = find(e.pair);
            const auto* f2 = find(reciprocal(e.pair).monic);
            REQUIRE(f1 != nullptr);
            REQUIRE(f2 != nullptr);
            REQUIRE(f1->a == e.a);
            REQUIRE(f2->a == e.a);
        }
        for (const auto& e : d.selfbar) {
            const auto* f = find(e.q);
            REQUIRE(f != nullptr);
            REQUIRE(f->a == e.b);
        }
        for (const auto& e : d.linear) {
            Poly p = Poly::from_ints(F3, {e.plus_one ? -1 : 1, 1});
            const auto* f = find(p);
            REQUIRE(f != nullptr);
            REQUIRE(f->a == e.b);
        }
    }
}

TEST_CASE("random elements cover every class of Sp_2(F_3)", "[classify]") {
    auto F3 = Field::prime(3);
    std::set<std::string> expected;
    for (const auto& d : enumerate_classes(2, F3)) expected.insert(d.label());
    std::set<std::string> seen;
    for (std::uint64_t s = 0; s < 500 && seen != expected; ++s)
        seen.insert(invariant(random_symplectic(2, F3, s)).label());
    CHECK(seen == expected);
}
