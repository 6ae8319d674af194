#include "opnlab/serialize.hpp"

#include <doctest.h>

#include <sstream>

using namespace opnlab;

TEST_SUITE("serialize") {

TEST_CASE("rationals and big integers are strings") {
    Rational r = make_rational(Integer("123456789012345678901234567891"), 10);
    Json j = to_json(r);
    CHECK(j["exact"] == "123456789012345678901234567891/10");
    CHECK(j["approx_nonauthoritative"].is_string());
    CHECK(rational_from_json(j) == r);
    CHECK(rational_from_json(Json("3/4")) == make_rational(3, 4));
    CHECK(to_json(Rational(5))["exact"] == "5");
}

TEST_CASE("bound expressions round-trip") {
    BoundExpr e = BoundExpr(make_rational(5, 4)) + BoundExpr::sqrt(make_rational(8, 5)) - BoundExpr::sqrt(10) +
                  BoundExpr::radical(2, make_rational(8, 5), 4);
    Json j = to_json(e);
    CHECK(j["terms"].size() == 4);
    CHECK(bound_expr_from_json(j) == e);
    CHECK(bound_expr_from_json(Json::parse(j.dump())) == e);
    CHECK(bound_expr_from_json(to_json(BoundExpr(7))) == BoundExpr(7));
}

TEST_CASE("factorizations round-trip") {
    Factorization f = factor(Natural("360000000000000000000000000"));
    Json j = to_json(f);
    CHECK(j[0][0] == "2");
    CHECK(factorization_from_json(j) == f);
    CHECK(to_json(factor(1)).empty());
}

TEST_CASE("inequality reports round-trip") {
    auto c = validate(5, Integer(5), 6561);
    InequalityReport report = lemma_sums(c).checks;
    Json j = Json::parse(to_json(report).dump());
    InequalityReport back = inequality_report_from_json(j);
    REQUIRE(back.checks.size() == report.checks.size());
    for (std::size_t i = 0; i < back.checks.size(); ++i) {
        const auto& a = report.checks[i];
        const auto& b = back.checks[i];
        CHECK(a.id == b.id);
        CHECK(a.lhs == b.lhs);
        CHECK(a.rhs == b.rhs);
        CHECK(a.verdict == b.verdict);
        CHECK(a.claimed == b.claimed);
        CHECK(a.applicable == b.applicable);
        CHECK(a.unconditional == b.unconditional);
    }
}

TEST_CASE("audit report layout") {
    auto a = audit(validate(5, Integer(1), 9));
    Json j = to_json(a);
    CHECK(j["candidate"]["q"] == "5");
    CHECK(j["candidate"]["N"] == "405");
    CHECK(j["theorem1"]["conditions"] == Json::array({true, true, true, true}));
    CHECK(j["theorem1"]["consistent"] == true);
    CHECK(j["case"]["theorem2_case"] == 1);
    CHECK(j["conjecture1"]["consistent"] == true);
    CHECK(j["lemma_values"]["s1"]["exact"] == "49/15");
    CHECK(j["summary"]["broken_invariants"] == 0);
    CHECK(j.dump() == to_json(audit(validate(5, Integer(1), 9))).dump());

    std::ostringstream csv;
    write_audit_csv(csv, a);
    std::string text = csv.str();
    CHECK(text.find("5,1,9,theorem1,qk_vs_n,5,9,less,<,true,true,true\n") != std::string::npos);
    std::size_t rows = std::count(text.begin(), text.end(), '\n');
    CHECK(rows == a.theorem1->checks.checks.size() + a.chains->checks.size() + a.cases->chain_checks.checks.size() +
                       a.corollaries->bounds.checks.size() + a.lemmas->checks.checks.size());
}

TEST_CASE("scan records") {
    EquationSolution s{9, 37, 15, 468, 468, DeficiencyClass::Deficient};
    CHECK(to_json(s).dump() == R"({"n":"9","q":"37","parameter":15,"lhs":"468","rhs":"468","n_class":"deficient"})");
    std::ostringstream csv;
    write_solution_csv_row(csv, s);
    CHECK(csv.str() == "9,37,15,468,468,deficient\n");
    Checkpoint cp{3, 65536};
    Checkpoint back = checkpoint_from_json(Json::parse(to_json(cp).dump()));
    CHECK(back.shard == 3);
    CHECK(back.n_done == 65536);
}

TEST_CASE("chain events") {
    auto root = sigma_chain(13, 1, 1, Natural(1000000));
    std::ostringstream out;
    write_chain_events(out, root);
    std::istringstream in(out.str());
    std::vector<Json> events;
    for (std::string line; std::getline(in, line);) events.push_back(Json::parse(line));
    REQUIRE(events.size() == 3);
    CHECK(events[0]["depth"] == 0);
    CHECK(events[1]["path"] == Json::array({"13^1", "7^2"}));
    CHECK(events[2]["status"] == "closed-by-depth");
}

TEST_CASE("theorem6 rendering") {
    Json j = to_json(theorem6_admissible(5));
    CHECK(j["s_values"].empty());
    CHECK(j["bracket"][0]["exact"] == "2");
    CHECK(j["bracket"][1]["exact"] == "1");
    CHECK(j["message"] == "q = 5 excluded under Theorem 6 hypothesis");
    CHECK_FALSE(to_json(theorem6_admissible(13)).contains("message"));
}

}
