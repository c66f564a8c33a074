#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "helpers.hpp"
#include "sympc/centralizer.hpp"
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

CentralizerReport report_for(const Matrix& u) {
    auto el = make_symplectic(u, standard_form(u.field(), u.rows()));
    return centralizer_order(invariant(el));
}

} // namespace

TEST_CASE("classical group orders", "[centralizer]") {
    CHECK(classical_order(ClassicalKind::GL, 1, 5) == 4);
    CHECK(classical_order(ClassicalKind::GL, 2, 3) == 48);
    CHECK(classical_order(ClassicalKind::SP, 2, 3) == 24);
    CHECK(classical_order(ClassicalKind::SP, 2, 5) == 120);
    CHECK(classical_order(ClassicalKind::SP, 4, 3) == 51840);
    CHECK(classical_order(ClassicalKind::U, 1, 9) == 4);
    CHECK(classical_order(ClassicalKind::U, 2, 9) == 96);
    CHECK(classical_order(ClassicalKind::U, 1, 25) == 6);
    CHECK(classical_order(ClassicalKind::O_odd, 1, 3) == 2);
    CHECK(classical_order(ClassicalKind::O_odd, 3, 3) == 48);
    CHECK(classical_order(ClassicalKind::O_even_plus, 2, 3) == 4);
    CHECK(classical_order(ClassicalKind::O_even_minus, 2, 3) == 8);

    for (auto kind : {ClassicalKind::GL, ClassicalKind::SP, ClassicalKind::U,
                      ClassicalKind::O_odd, ClassicalKind::O_even_plus,
                      ClassicalKind::O_even_minus})
        CHECK(classical_order(kind, 0, 3) == 1);
}

TEST_CASE("classical order rejections", "[centralizer]") {
    CHECK(testutil::error_kind([] { classical_order(ClassicalKind::SP, 3, 3); }) ==
          "BadParameters");
    CHECK(testutil::error_kind([] { classical_order(ClassicalKind::U, 1, 3); }) ==
          "BadParameters");
    CHECK(testutil::error_kind([] { classical_order(ClassicalKind::GL, 1, 6); }) ==
          "BadParameters");
    CHECK(testutil::error_kind([] { classical_order(ClassicalKind::GL, -1, 3); }) ==
          "BadParameters");
    CHECK(testutil::error_kind([] { classical_order(ClassicalKind::O_odd, 2, 3); }) ==
          "BadParameters");
    CHECK(testutil::error_kind([] { classical_order(ClassicalKind::O_even_plus, 3, 3); }) ==
          "BadParameters");
}

TEST_CASE("centralizer orders of fixed classes", "[centralizer]") {
    auto F3 = Field::prime(3);
    auto F5 = Field::prime(5);

    CHECK(report_for(Matrix::identity(F3, 2)).total == 24);
    CHECK(report_for(mat_neg(Matrix::identity(F5, 2))).total == 120);

    auto rep = report_for(M(F3, 2, {1, 1, 0, 1}));
    CHECK(rep.total == 6);
    REQUIRE(rep.factors.size() == 2);
    CHECK(rep.factors[0].symbol == "O(1,3)");
    CHECK(rep.factors[0].value == 2);
    CHECK(rep.factors[1].symbol == "q^1");
    CHECK(rep.factors[1].value == 3);
    // Both transvection classes share the same centralizer order.
    CHECK(report_for(M(F3, 2, {1, 2, 0, 1})).total == 6);

    rep = report_for(M(F3, 2, {0, -1, 1, 0}));
    CHECK(rep.total == 4);
    REQUIRE(rep.factors.size() == 1);
    CHECK(rep.factors[0].symbol == "U(1,9)");

    rep = report_for(M(F5, 2, {2, 0, 0, 3}));
    CHECK(rep.total == 4);
    REQUIRE(rep.factors.size() == 1);
    CHECK(rep.factors[0].symbol == "GL(1,5)");

    // Transvection on one hyperbolic pair, -1 on the other: the centralizer
    // factors over the primary blocks, 6 * 24.
    Matrix u = Matrix::identity(F3, 4);
    u.at(1, 1) = F3->neg_one();
    u.at(3, 3) = F3->neg_one();
    u.at(0, 2) = F3->neg_one();
    CHECK(report_for(u).total == 144);
}

TEST_CASE("class equation from formulas alone", "[centralizer]") {
    // Summing [Sp : C(u)] over the enumerated classes must give |Sp| exactly.
    for (auto [n, p] : std::vector<std::pair<int, std::int64_t>>{{2, 3}, {2, 5}, {4, 3}}) {
        auto K = Field::prime(p);
        bigint group = classical_order(ClassicalKind::SP, n, p);
        bigint covered = 0;
        for (const auto& d : enumerate_classes(n, K)) {
            bigint c = centralizer_order(d).total;
            REQUIRE(group % c == 0);
            covered += group / c;
        }
        REQUIRE(covered == group);
    }
}

TEST_CASE("report totals multiply out", "[centralizer]") {
    auto F3 = Field::prime(3);
    for (const auto& d : enumerate_classes(4, F3)) {
        auto rep = centralizer_order(d);
        bigint prod = 1;
        for (const auto& f : rep.factors) prod *= f.value;
        REQUIRE(prod == rep.total);
        REQUIRE(rep.total >= 1);
    }
}
