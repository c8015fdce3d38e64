#include "ces/product.hpp"

#include "ces/constructions.hpp"
#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ces;
using namespace ces::testing;
using Catch::Approx;

namespace {

TensorVector bell(const SystemShape& s) {
    TensorVector v = TensorVector::zero(s);
    IndexTuple lo(s.parts(), 0), hi(s.parts(), 0);
    for (int j = 0; j < s.parts(); ++j) hi[j] = 1;
    v.at(lo) = 1.0;
    v.at(hi) = 1.0;
    return v;
}

}  // namespace

TEST_CASE("mode unfolding shapes and entries") {
    SystemShape s({2, 3});
    std::mt19937_64 rng(3);
    TensorVector v = random_tensor(s, rng);

    MatrixXcd M0 = mode_unfolding(v, 0);
    REQUIRE(M0.rows() == 2);
    REQUIRE(M0.cols() == 3);
    CHECK(M0(0, 0) == v.at({0, 0}));
    CHECK(M0(1, 2) == v.at({1, 2}));

    MatrixXcd M1 = mode_unfolding(v, 1);
    REQUIRE(M1.rows() == 3);
    REQUIRE(M1.cols() == 2);
    CHECK(M1(2, 1) == v.at({1, 2}));

    // unfolding preserves the Frobenius norm
    CHECK(M0.norm() == Approx(v.norm()));
}

TEST_CASE("cut unfolding") {
    SystemShape s({2, 2, 2});
    std::mt19937_64 rng(5);
    TensorVector v = random_tensor(s, rng);

    MatrixXcd M = cut_unfolding(v, {0, 2});
    REQUIRE(M.rows() == 4);
    REQUIRE(M.cols() == 2);
    // row index (i_1 i_3), column index i_2
    CHECK(M(2 * 1 + 0, 1) == v.at({1, 1, 0}));
    CHECK(M.norm() == Approx(v.norm()));

    CHECK_THROWS_AS(cut_unfolding(v, {3}), std::out_of_range);
}

TEST_CASE("product detection on exact products") {
    std::mt19937_64 rng(7);
    for (auto dims : std::vector<std::vector<int>>{{3, 3}, {2, 2, 2}, {2, 5}}) {
        SystemShape s(dims);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<VectorXcd> fs;
            for (int j = 0; j < s.parts(); ++j) fs.push_back(random_factor(s.dim(j), rng));
            TensorVector v = kron(s, fs);
            auto p = is_product(v);
            REQUIRE(p.has_value());
            CHECK((p->to_tensor().amp - v.amp).norm() < 1e-9 * v.norm());
        }
    }
}

TEST_CASE("product detection rejects entangled vectors") {
    SystemShape s2({2, 2});
    CHECK(!is_product(bell(s2)).has_value());

    SystemShape s3({2, 2, 2});
    CHECK(!is_product(bell(s3)).has_value());  // GHZ

    CHECK_THROWS_AS(is_product(TensorVector::zero(s2)), std::invalid_argument);
}

TEST_CASE("product across a cut") {
    SystemShape s({2, 2, 2});
    // Bell pair on parts 1,2 tensored with |0> on part 3
    TensorVector v = TensorVector::zero(s);
    v.at({0, 0, 0}) = 1.0;
    v.at({1, 1, 0}) = 1.0;
    CHECK(is_product_across_cut(v, {2}));
    CHECK(!is_product_across_cut(v, {0}));
    CHECK(!is_product_across_cut(v, {1}));
    CHECK(!is_product(v).has_value());

    // GHZ fails every cut
    TensorVector g = bell(s);
    for (auto cut : std::vector<std::vector<int>>{{0}, {1}, {2}}) CHECK(!is_product_across_cut(g, cut));
}

TEST_CASE("neat form") {
    SystemShape s({3, 3});
    ProductVector p(s, {vec3(0.0, 2.0, 4.0), vec3(cd(0, 2), 2.0, 0.0)});
    ProductVector n = neat_form(p);
    CHECK(n.factors[0](0) == cd(0, 0));
    CHECK(n.factors[0](1) == cd(1, 0));
    CHECK(n.factors[0](2) == cd(2, 0));
    CHECK(n.factors[1](0) == cd(1, 0));
    CHECK(std::abs(n.factors[1](1) - cd(0, -1)) < 1e-12);

    // neat form preserves the ray
    CHECK(ray_equal(p.to_tensor(), n.to_tensor()));
    // idempotent
    ProductVector nn = neat_form(n);
    for (int j = 0; j < 2; ++j) CHECK((nn.factors[j] - n.factors[j]).norm() < 1e-12);
}

TEST_CASE("ray equality") {
    SystemShape s({3, 3});
    TensorVector chi = tiles_chi().to_tensor();
    TensorVector scaled(s, cd(0.3, -0.4) * chi.amp);
    CHECK(ray_equal(chi, scaled));

    TensorVector other = tiles_upb()[0].to_tensor();
    CHECK(!ray_equal(chi, other));

    CHECK_THROWS_AS(ray_equal(chi, TensorVector::zero(s)), std::invalid_argument);
}

TEST_CASE("product vector construction guards") {
    SystemShape s({3, 3});
    CHECK_THROWS_AS(ProductVector(s, {vec3(1, 0, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(ProductVector(s, {vec3(1, 0, 0), vec3(0, 0, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(ProductVector(s, {vec2(1, 0), vec3(1, 0, 0)}), std::invalid_argument);
}
