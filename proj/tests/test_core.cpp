#include "ces/core.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ces;
using Catch::Approx;

TEST_CASE("shape derived quantities") {
    SystemShape s({3, 3});
    CHECK(s.parts() == 2);
    CHECK(s.total_dim() == 9);
    CHECK(s.N() == 5);
    CHECK(s.Nprime() == 4);

    SystemShape q({2, 2, 2});
    CHECK(q.total_dim() == 8);
    CHECK(q.N() == 4);

    CHECK_THROWS_AS(SystemShape({}), std::invalid_argument);
    CHECK_THROWS_AS(SystemShape({3, 0}), std::invalid_argument);
}

TEST_CASE("flat index round trip is lexicographic") {
    SystemShape s({2, 3});
    long f = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b) {
            CHECK(s.flat_index({a, b}) == f);
            CHECK(s.tuple_of(f) == IndexTuple{a, b});
            ++f;
        }
}

TEST_CASE("enumerate_level examples") {
    SystemShape s({3, 3});
    auto lvl2 = enumerate_level(s, 2);
    REQUIRE(lvl2.size() == 3);
    CHECK(lvl2[0] == IndexTuple{0, 2});
    CHECK(lvl2[1] == IndexTuple{1, 1});
    CHECK(lvl2[2] == IndexTuple{2, 0});

    SystemShape q({2, 2, 2});
    CHECK(enumerate_level(q, 1).size() == 3);  // C(3,1)

    SystemShape b({2, 2});
    auto lvl0 = enumerate_level(b, 0);
    REQUIRE(lvl0.size() == 1);
    CHECK(lvl0[0] == IndexTuple{0, 0});

    CHECK_THROWS_AS(enumerate_level(s, 5), std::out_of_range);
    CHECK_THROWS_AS(enumerate_level(s, -1), std::out_of_range);
}

TEST_CASE("level cardinalities sum to D") {
    for (auto dims : std::vector<std::vector<int>>{{3, 3}, {2, 2, 2}, {2, 5}, {3, 4, 2}}) {
        SystemShape s(dims);
        long total = 0;
        for (int n = 0; n <= s.Nprime(); ++n) total += enumerate_level(s, n).size();
        CHECK(total == s.total_dim());
    }
}

TEST_CASE("level cardinality formula for (d,d)") {
    for (int d = 2; d <= 6; ++d) {
        SystemShape s({d, d});
        for (int n = 1; n <= d - 1; ++n)
            CHECK(enumerate_level(s, n).size() == static_cast<size_t>(n + 1));
        for (int n = d; n <= 2 * d - 3; ++n)
            CHECK(enumerate_level(s, n).size() == static_cast<size_t>(2 * d - n - 1));
    }
}

TEST_CASE("kron basics") {
    SystemShape s2({2, 2});
    VectorXcd e0(2);
    e0 << 1, 0;
    TensorVector v = kron(s2, {e0, e0});
    CHECK(v.amp(0) == cd(1, 0));
    CHECK(v.amp.tail(3).norm() == 0.0);

    SystemShape s3({3, 3});
    VectorXcd ones(3);
    ones << 1, 1, 1;
    TensorVector z1 = kron(s3, {ones, ones});
    for (long f = 0; f < 9; ++f) CHECK(z1.amp(f) == cd(1, 0));

    // TILES sixth product vector
    VectorXcd chi(3);
    chi << 2, -1, 2;
    TensorVector c = kron(s3, {chi / 9.0, chi});
    CHECK(c.norm() == Approx(1.0).margin(1e-12));
    CHECK(c.at({0, 0}).real() == Approx(4.0 / 9.0));
    CHECK(c.at({0, 1}).real() == Approx(-2.0 / 9.0));
    CHECK(c.at({1, 1}).real() == Approx(1.0 / 9.0));

    VectorXcd bad(2);
    bad << 1, 0;
    CHECK_THROWS_AS(kron(s3, {bad, ones}), std::invalid_argument);
}

TEST_CASE("kron multilinearity") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    SystemShape s({2, 3, 2});
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<VectorXcd> fs;
        for (int j = 0; j < 3; ++j) {
            VectorXcd f(s.dim(j));
            for (long t = 0; t < f.size(); ++t) f(t) = cd(g(rng), g(rng));
            fs.push_back(f);
        }
        cd scale(g(rng), g(rng));
        int j = trial % 3;
        auto scaled = fs;
        scaled[j] *= scale;
        CHECK((kron(s, scaled).amp - scale * kron(s, fs).amp).norm() <
              1e-12 * kron(s, fs).norm() * std::abs(scale) + 1e-14);
    }
}

TEST_CASE("inner product") {
    SystemShape s({2, 2});
    TensorVector e00 = TensorVector::basis(s, {0, 0});
    TensorVector e11 = TensorVector::basis(s, {1, 1});
    CHECK(inner(e00, e00) == cd(1, 0));
    CHECK(inner(e00, e11) == cd(0, 0));

    VectorXcd ones(2);
    ones << 1, 1;
    TensorVector z1 = kron(s, {ones, ones});
    // sum of |amplitude|^2 over the four all-ones entries
    CHECK(inner(z1, z1).real() == Approx(4.0));

    // conjugate-linear in the first argument
    TensorVector iv(s, cd(0, 1) * e00.amp);
    CHECK(inner(iv, e00) == cd(0, -1));

    SystemShape other({4});
    CHECK_THROWS_AS(inner(e00, TensorVector::zero(other)), std::invalid_argument);
}

TEST_CASE("normalize") {
    SystemShape s({2, 2});
    VectorXcd a(4);
    a << 3, 0, 4, 0;
    TensorVector v(s, a);
    CHECK(v.norm() == Approx(5.0));
    CHECK(v.normalized().norm() == Approx(1.0));
    CHECK_THROWS_AS(TensorVector::zero(s).normalized(), std::invalid_argument);
}

TEST_CASE("tolerances validation") {
    Tolerances t;
    CHECK_NOTHROW(t.validate());
    t.tol_rank = 2.0;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    t = Tolerances{};
    t.tol_zero = 0.0;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}
