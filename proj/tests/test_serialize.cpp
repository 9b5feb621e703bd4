#include "shape/errors.hpp"
#include "shape/serialize.hpp"

#include <doctest.h>

using namespace shape;

TEST_CASE("matrix json") {
    IntMatrix m{{2, -1}, {-1, 2}};
    Json j = matrix_to_json(m);
    CHECK(j.dump() == R"([["2","-1"],["-1","2"]])");
    CHECK(matrix_from_json(j) == m);
    CHECK(matrix_from_json(Json::parse("[[2,-1],[-1,2]]")) == m);
    IntMatrix big(1, 1);
    big(0, 0) = Int("123456789012345678901234567890");
    CHECK(matrix_from_json(matrix_to_json(big)) == big);
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"([["1","2"],["3"]])")), ShapeError);
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"([["1x"]])")), ShapeError);
    CHECK_THROWS_AS(gram_from_json(Json::parse(R"([["1","2"],["3","4"]])")), ShapeError);
}

TEST_CASE("quad form and cyclotomic json") {
    QuadForm q = QuadForm::from_doubled_gram(GramMatrix(IntMatrix{{4, -1, -1}, {-1, 4, -1}, {-1, -1, 4}}));
    CHECK(quad_form_from_json(to_json(q)).doubled_gram() == q.doubled_gram());
    CycElem x = CycElem::zeta_power(7, 3) * Rat(2, 3) + CycElem::one(7);
    CHECK(cyc_elem_from_json(to_json(x)) == x);
    FieldSpec s = make_field_spec(3, 91, fields_with_conductor(3, 91)[1].subgroup);
    CHECK(field_spec_from_json(to_json(s)) == s);
}

TEST_CASE("report round trip") {
    std::vector<FieldSpec> specs;
    for (auto [ell, f] : std::vector<std::pair<int, std::int64_t>>{{3, 7}, {3, 9}, {5, 25}, {5, 275}, {7, 29}})
        for (auto &s : fields_with_conductor(ell, f)) specs.push_back(s);
    for (const auto &s : specs) {
        CAPTURE(s.conductor);
        ShapeReport r = verify_main_theorem(s);
        Json j = to_json(r);
        ShapeReport back = report_from_json(Json::parse(j.dump()));
        CHECK(back == r);
        CHECK(to_json(back).dump() == j.dump());
        CHECK(j.at("disc").is_string());
        CHECK(j.at("witnesses").at("embedding_index").is_string());
    }
    ShapeReport plain = shape_of(specs.front());
    CHECK(report_from_json(to_json(plain)) == plain);
    CHECK(to_json(plain).at("verdicts").at("embedding_ok").is_null());
}

TEST_CASE("csv and pretty") {
    ShapeReport r = verify_main_theorem(make_field_spec(3, 7, {1, 6}));
    CHECK(csv_header().find("ell,conductor") == 0);
    CHECK(csv_row(r) == "3,7,\"1 6\",false,49,7,3,true,true,true,true,true,true,1");
    const std::string p = pretty(r);
    CHECK(p.find("x^2 - x*y + y^2") != std::string::npos);
    CHECK(p.find("(tame)") != std::string::npos);
}
