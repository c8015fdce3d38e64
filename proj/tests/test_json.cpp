#include "ces/json_io.hpp"

#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ces;
using namespace ces::testing;

TEST_CASE("tensor vector JSON round trip") {
    std::mt19937_64 rng(41);
    SystemShape s({2, 3});
    TensorVector v = random_tensor(s, rng);
    json j = to_json(v);
    CHECK(j.at("dims") == std::vector<int>({2, 3}));
    CHECK(j.at("re").size() == 6);
    TensorVector back = tensor_from_json(j);
    CHECK(back.shape == v.shape);
    CHECK((back.amp - v.amp).norm() == 0.0);

    json bad = j;
    bad["re"].erase(0);
    CHECK_THROWS_AS(tensor_from_json(bad), std::invalid_argument);
}

TEST_CASE("subspace JSON round trip") {
    Subspace SU = named_space(parse_named_space("SU"));
    json j = to_json(SU);
    CHECK(j.at("basis").size() == 4);
    Subspace back = subspace_from_json(j);
    CHECK(subspace_equal(SU, back));
}

TEST_CASE("product vector JSON round trip") {
    ProductVector chi = tiles_chi();
    json j = to_json(chi);
    REQUIRE(j.at("factors").size() == 2);
    ProductVector back = product_from_json(j);
    CHECK((back.to_tensor().amp - chi.to_tensor().amp).norm() == 0.0);
}

TEST_CASE("enumeration result JSON") {
    EnumerationResult finite = solve_3x3(1.0);
    finite.restarts_used = 0;
    json jf = to_json(finite, "SP+z(1)");
    CHECK(jf.at("space") == "SP+z(1)");
    CHECK(jf.at("tau") == 3);
    CHECK(jf.at("rays").size() == 3);
    CHECK(jf.at("residuals").size() == 3);
    CHECK(!jf.contains("likely_infinite"));

    Family fam{FamilyName::SU04};
    EnumerationResult inf = certify_infinite(family_space(fam), fam, 3);
    json ji = to_json(inf, "SU+0+4");
    CHECK(ji.at("tau") == "infinite");
    CHECK(ji.at("family_samples").size() == 3);
}

TEST_CASE("PPT report JSON uses one-based part labels") {
    DensityOperator rho = upb_complement_state(shifts3q_upb());
    json j = to_json(is_ppt(rho));
    REQUIRE(j.at("cuts").size() == 3);
    CHECK(j.at("ppt_all") == true);
    for (const auto& cut : j.at("cuts")) {
        CHECK(cut.at("parts")[0] == 1);
        CHECK(cut.at("ppt") == true);
    }
}

TEST_CASE("space_name round trips through the parser") {
    for (std::string name : {"U", "SU+0", "SU+chi", "SV+1+2", "SP+z(1)+z(inf)", "F+z(2)"}) {
        std::vector<int> dims = {3, 3};
        NamedSpace spec = parse_named_space(name, dims);
        CHECK(space_name(spec) == name);
    }
}
