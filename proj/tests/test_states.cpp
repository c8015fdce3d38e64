#include "ces/states.hpp"

#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ces;
using namespace ces::testing;
using Catch::Approx;

namespace {

DensityOperator random_state(const SystemShape& shape, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    const long D = shape.total_dim();
    MatrixXcd G(D, D);
    for (long r = 0; r < D; ++r)
        for (long c = 0; c < D; ++c) G(r, c) = cd(g(rng), g(rng));
    MatrixXcd rho = G * G.adjoint();
    rho /= rho.trace().real();
    return DensityOperator(shape, std::move(rho));
}

}  // namespace

TEST_CASE("UPB complement state") {
    DensityOperator rho = upb_complement_state(tiles_upb());
    CHECK_NOTHROW(rho.validate());
    CHECK(rho.matrix.trace().real() == Approx(1.0));

    // rank D - d = 4, eigenvalues 0 (x5) and 1/4 (x4)
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho.matrix, Eigen::EigenvaluesOnly);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(es.eigenvalues()(i)) < 1e-10);
    for (int i = 5; i < 9; ++i) CHECK(es.eigenvalues()(i) == Approx(0.25));

    // the UPB vectors are annihilated
    for (const auto& p : tiles_upb())
        CHECK((rho.matrix * p.to_tensor().amp).norm() < 1e-10);

    // non-orthonormal input is rejected
    std::vector<ProductVector> bad = tiles_upb();
    bad.push_back(tiles_chi());
    CHECK_THROWS_AS(upb_complement_state(bad), std::invalid_argument);
}

TEST_CASE("partial transpose basics") {
    SystemShape s({2, 2});
    std::mt19937_64 rng(13);
    DensityOperator rho = random_state(s, rng);

    MatrixXcd pt = partial_transpose(rho, {0});
    // entry check: <ij|rho^PT|kl> = <kj|rho|il>
    CHECK(pt(s.flat_index({0, 1}), s.flat_index({1, 0})) ==
          rho.matrix(s.flat_index({1, 1}), s.flat_index({0, 0})));

    CHECK_THROWS_AS(partial_transpose(rho, {}), std::invalid_argument);
    CHECK_THROWS_AS(partial_transpose(rho, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(partial_transpose(rho, {5}), std::out_of_range);
}

TEST_CASE("partial transpose is an involution and preserves the trace") {
    std::mt19937_64 rng(19);
    for (auto dims : std::vector<std::vector<int>>{{2, 2}, {3, 3}, {2, 2, 2}}) {
        SystemShape s(dims);
        for (int trial = 0; trial < 30; ++trial) {
            DensityOperator rho = random_state(s, rng);
            std::vector<int> parts = {0};
            if (s.parts() == 3 && trial % 2) parts = {0, 2};
            MatrixXcd pt = partial_transpose(rho, parts);
            CHECK(std::abs(pt.trace() - rho.matrix.trace()) < 1e-12);
            CHECK((pt - pt.adjoint()).norm() < 1e-12);  // Hermiticity preserved
            MatrixXcd back = partial_transpose(DensityOperator(s, pt), parts);
            CHECK((back - rho.matrix).norm() < 1e-12);
        }
    }
}

TEST_CASE("entangled Bell state is NPT") {
    SystemShape s({2, 2});
    VectorXcd amp = VectorXcd::Zero(4);
    amp(s.flat_index({0, 0})) = 1.0 / std::sqrt(2.0);
    amp(s.flat_index({1, 1})) = 1.0 / std::sqrt(2.0);
    DensityOperator rho(s, amp * amp.adjoint());
    PptReport report = is_ppt(rho);
    REQUIRE(report.cuts.size() == 1);
    CHECK(!report.ppt_all);
    CHECK(report.cuts[0].min_eig == Approx(-0.5));
}

TEST_CASE("TILES complement state is PPT but entangled") {
    DensityOperator rho = upb_complement_state(tiles_upb());
    PptReport report = is_ppt(rho);
    REQUIRE(report.cuts.size() == 1);
    CHECK(report.ppt_all);
    CHECK(report.cuts[0].min_eig >= -1e-10);

    RangeCertificate cert = certify_entangled_by_range(rho);
    CHECK(cert.range_dim == 4);
    CHECK(cert.entangled);
    CHECK(cert.conclusive);
    CHECK(cert.enumeration.tau() == 0);
}

TEST_CASE("3-qubit UPB complement state is PPT across all cuts but entangled") {
    DensityOperator rho = upb_complement_state(shifts3q_upb());
    CHECK_NOTHROW(rho.validate());
    PptReport report = is_ppt(rho);
    REQUIRE(report.cuts.size() == 3);  // 2^{3-1} - 1 bipartitions
    CHECK(report.ppt_all);
    for (const auto& cut : report.cuts) CHECK(cut.min_eig >= -1e-10);

    RangeCertificate cert = certify_entangled_by_range(rho);
    CHECK(cert.range_dim == 4);
    CHECK(cert.entangled);
}

TEST_CASE("separable states leave the range criterion inconclusive") {
    SystemShape s({2, 2});
    // maximally mixed state: range is everything, full of product vectors
    DensityOperator rho(s, MatrixXcd::Identity(4, 4) / 4.0);
    RangeCertificate cert = certify_entangled_by_range(rho);
    CHECK(!cert.entangled);
    CHECK(!cert.conclusive);
}

TEST_CASE("density operator validation") {
    SystemShape s({2, 2});
    MatrixXcd m = MatrixXcd::Identity(4, 4) / 4.0;
    CHECK_NOTHROW(DensityOperator(s, m).validate());

    MatrixXcd bad = m;
    bad(0, 1) = cd(1.0, 0.0);  // not Hermitian
    CHECK_THROWS_AS(DensityOperator(s, bad).validate(), std::invalid_argument);

    CHECK_THROWS_AS(DensityOperator(s, 2.0 * m).validate(), std::invalid_argument);

    MatrixXcd neg = m;
    neg(0, 0) = -0.25;
    neg(1, 1) = 0.75;
    CHECK_THROWS_AS(DensityOperator(s, neg).validate(), std::invalid_argument);

    CHECK_THROWS_AS(DensityOperator(s, MatrixXcd::Identity(3, 3)), std::invalid_argument);
}
