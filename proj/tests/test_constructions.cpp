#include "ces/constructions.hpp"

#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ces;
using namespace ces::testing;
using Catch::Approx;

TEST_CASE("TILES UPB vectors") {
    auto tiles = tiles_upb();
    REQUIRE(tiles.size() == 5);

    // psi_0 = (1/sqrt 2) |0> (|0> - |1>)
    TensorVector psi0 = tiles[0].to_tensor();
    CHECK(psi0.at({0, 0}).real() == Approx(1 / std::sqrt(2.0)));
    CHECK(psi0.at({0, 1}).real() == Approx(-1 / std::sqrt(2.0)));

    // exact orthonormality
    for (size_t a = 0; a < 5; ++a)
        for (size_t b = 0; b < 5; ++b) {
            cd ip = inner(tiles[a].to_tensor(), tiles[b].to_tensor());
            CHECK(std::abs(ip - (a == b ? cd(1) : cd(0))) < 1e-12);
        }

    std::vector<TensorVector> vs;
    for (const auto& p : tiles) vs.push_back(p.to_tensor());
    CHECK(span(vs).dim() == 5);
}

TEST_CASE("TILES chi") {
    auto tiles = tiles_upb();
    TensorVector chi = tiles_chi().to_tensor();
    CHECK(chi.norm() == Approx(1.0));

    // expansion over the UPB: magnitude sqrt2/3 on each psi_0..3, 1/3 on psi_4
    const double s23 = std::sqrt(2.0) / 3.0;
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(inner(tiles[i].to_tensor(), chi)) == Approx(s23));
    CHECK(inner(tiles[4].to_tensor(), chi).real() == Approx(1.0 / 3.0));

    std::vector<TensorVector> vs;
    for (const auto& p : tiles) vs.push_back(p.to_tensor());
    CHECK(contains(span(vs), chi));
}

TEST_CASE("3-qubit UPB") {
    auto upb = shifts3q_upb();
    REQUIRE(upb.size() == 4);

    // phi_4 = |-,-,->
    TensorVector phi4 = upb[3].to_tensor();
    const double c = 1.0 / (2.0 * std::sqrt(2.0));
    CHECK(phi4.at({0, 0, 0}).real() == Approx(c));
    CHECK(phi4.at({1, 1, 1}).real() == Approx(-c));
    CHECK(phi4.at({1, 1, 0}).real() == Approx(c));

    for (size_t a = 0; a < 4; ++a)
        for (size_t b = 0; b < 4; ++b)
            CHECK(std::abs(inner(upb[a].to_tensor(), upb[b].to_tensor()) -
                           (a == b ? cd(1) : cd(0))) < 1e-12);

    std::vector<TensorVector> vs;
    for (const auto& p : upb) vs.push_back(p.to_tensor());
    CHECK(span(vs).dim() == 4);
}

TEST_CASE("van der Monde vectors") {
    SystemShape s({3, 3});
    TensorVector z0 = vdm_vector(s, VdMParameter::finite(0.0)).to_tensor();
    CHECK((z0.amp - TensorVector::basis(s, {0, 0}).amp).norm() == 0.0);

    TensorVector zinf = vdm_vector(s, VdMParameter::inf()).to_tensor();
    CHECK((zinf.amp - TensorVector::basis(s, {2, 2}).amp).norm() == 0.0);

    SystemShape b({2, 2});
    TensorVector z1 = vdm_vector(b, VdMParameter::finite(1.0)).to_tensor();
    for (long f = 0; f < 4; ++f) CHECK(z1.amp(f) == cd(1));
}

TEST_CASE("F span dimensions and membership") {
    SystemShape s({3, 3});
    Subspace F = f_span(s);
    CHECK(F.dim() == 5);
    for (auto p : {VdMParameter::finite(0.0), VdMParameter::finite(1.0),
                   VdMParameter::finite(cd(0, 1)), VdMParameter::inf()})
        CHECK(contains(F, vdm_vector(s, p).to_tensor()));

    CHECK(f_span(SystemShape({2, 2, 2})).dim() == 4);

    CHECK_THROWS_AS(f_span(SystemShape({3})), std::invalid_argument);
    CHECK_THROWS_AS(f_span(SystemShape({1, 3})), std::invalid_argument);
}

TEST_CASE("Parthasarathy space") {
    SystemShape s({3, 3});
    Subspace SP = parthasarathy_space(s);
    CHECK(SP.dim() == 4);
    CHECK(parthasarathy_space(SystemShape({2, 2, 2})).dim() == 4);

    // every van der Monde vector is orthogonal to every basis vector
    for (auto p : {VdMParameter::finite(0.0), VdMParameter::finite(1.0),
                   VdMParameter::finite(2.0), VdMParameter::inf()}) {
        TensorVector z = vdm_vector(s, p).to_tensor();
        for (int i = 0; i < SP.dim(); ++i)
            CHECK(std::abs(inner(z, SP.basis_vector(i))) < 1e-12);
    }

    CHECK(subspace_equal(f_span(s), complement(parthasarathy_space(s))));
    SystemShape q({2, 2, 2});
    CHECK(subspace_equal(f_span(q), complement(parthasarathy_space(q))));
}

TEST_CASE("Vandermonde independence") {
    for (auto dims : std::vector<std::vector<int>>{{3, 3}, {2, 2, 2}, {2, 5}}) {
        SystemShape s(dims);
        std::vector<TensorVector> zs;
        for (int i = 0; i < s.N(); ++i)
            zs.push_back(vdm_vector(s, VdMParameter::finite(cd(1.0 + 0.5 * i, 0.25 * i)))
                             .to_tensor());
        CHECK(span(zs).dim() == s.N());
        CHECK(row_reduction_rank(zs) == s.N());
    }
}

TEST_CASE("named spaces") {
    CHECK(named_space(parse_named_space("U")).dim() == 5);
    CHECK(named_space(parse_named_space("SU")).dim() == 4);
    CHECK(named_space(parse_named_space("SU+0")).dim() == 5);
    CHECK(named_space(parse_named_space("SU+4")).dim() == 5);
    CHECK(named_space(parse_named_space("SU+0+1")).dim() == 6);
    CHECK(named_space(parse_named_space("SV+1")).dim() == 5);
    CHECK(named_space(parse_named_space("SP", {3, 3})).dim() == 4);
    CHECK(named_space(parse_named_space("SP+z(0)+z(inf)", {3, 3})).dim() == 6);
    CHECK(named_space(parse_named_space("SP+z(inf)", {2, 2})).dim() == 2);
    CHECK(named_space(parse_named_space("SU+chi")).dim() == 5);

    CHECK_THROWS_AS(parse_named_space("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(parse_named_space("SP"), std::invalid_argument);  // needs dims
    CHECK_THROWS_AS(named_space(parse_named_space("SU+7")), std::invalid_argument);
    CHECK_THROWS_AS(named_space(parse_named_space("SV+0")), std::invalid_argument);
    CHECK_THROWS_AS(named_space(parse_named_space("SU+z(2)")), std::invalid_argument);
}

TEST_CASE("S_{V,4} coincides with span(S_V, |000>) and span(S_V, |111>)") {
    SystemShape q({2, 2, 2});
    Subspace sv4 = named_space(parse_named_space("SV+4"));
    Subspace sv = named_space(parse_named_space("SV"));
    Subspace with000 = perturb(sv, TensorVector::basis(q, {0, 0, 0}));
    Subspace with111 = perturb(sv, TensorVector::basis(q, {1, 1, 1}));
    CHECK(subspace_equal(sv4, with000));
    CHECK(subspace_equal(sv4, with111));
}

TEST_CASE("complex literal parsing") {
    CHECK(parse_complex("2") == cd(2, 0));
    CHECK(parse_complex("-1.5") == cd(-1.5, 0));
    CHECK(parse_complex("i") == cd(0, 1));
    CHECK(parse_complex("-i") == cd(0, -1));
    CHECK(parse_complex("3i") == cd(0, 3));
    CHECK(parse_complex("1+2i") == cd(1, 2));
    CHECK(parse_complex("2-i") == cd(2, -1));
    CHECK(parse_vdm_parameter("inf").infinite);
    CHECK(parse_vdm_parameter("1+1i") == VdMParameter::finite(cd(1, 1)));
    CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
}
