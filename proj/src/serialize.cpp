#include "opnlab/serialize.hpp"

namespace opnlab {

namespace {

std::string approx(const BoundExpr& e) {
    if (auto r = e.as_rational()) return decimal_preview(*r, 12);
    RationalInterval box = enclose(e, make_rational(1, Integer("100000000000000")));
    return decimal_preview(box.lo, 12);
}

Json string_array(const std::vector<std::string>& values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(v);
    return out;
}

Ordering ordering_from(std::string_view s) {
    if (s == "less") return Ordering::Less;
    if (s == "equal") return Ordering::Equal;
    if (s == "greater") return Ordering::Greater;
    throw std::invalid_argument("bad ordering '" + std::string(s) + "'");
}

Relation relation_from(std::string_view s) {
    for (Relation r : {Relation::Less, Relation::LessEqual, Relation::Greater, Relation::GreaterEqual,
                       Relation::Equal, Relation::NotEqual}) {
        if (to_string(r) == s) return r;
    }
    throw std::invalid_argument("bad relation '" + std::string(s) + "'");
}

Json optional_rational(const std::optional<Rational>& r) { return r ? to_json(*r) : Json(nullptr); }

Json optional_natural(const std::optional<Natural>& n) { return n ? Json(to_string(*n)) : Json(nullptr); }

}  // namespace

Json to_json(const Rational& r) {
    return Json{{"exact", to_string(r)}, {"approx_nonauthoritative", decimal_preview(r, 12)}};
}

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    return parse_rational(j.at("exact").get<std::string>());
}

Json to_json(const BoundExpr& e) {
    if (auto r = e.as_rational()) return to_json(*r);
    Json terms = Json::array();
    for (const auto& t : e.terms()) {
        terms.push_back({{"coeff", to_string(t.coefficient)}, {"base", to_string(t.base)}, {"root", t.root_index}});
    }
    return Json{{"terms", std::move(terms)}, {"approx_nonauthoritative", approx(e)}};
}

BoundExpr bound_expr_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("terms")) return BoundExpr(rational_from_json(j));
    std::vector<RadicalTerm> terms;
    for (const auto& t : j.at("terms")) {
        terms.push_back({parse_rational(t.at("coeff").get<std::string>()),
                         parse_rational(t.at("base").get<std::string>()), t.at("root").get<unsigned>()});
    }
    return BoundExpr(std::move(terms));
}

Json to_json(const Factorization& f) {
    Json out = Json::array();
    for (const auto& [p, e] : f) out.push_back(Json::array({to_string(p), e}));
    return out;
}

Factorization factorization_from_json(const Json& j) {
    std::vector<PrimePower> factors;
    for (const auto& pair : j) {
        factors.push_back({parse_natural(pair.at(0).get<std::string>()), pair.at(1).get<unsigned long>()});
    }
    return Factorization::from_factors(std::move(factors));
}

Json to_json(const InequalityCheck& c) {
    return Json{{"id", c.id},
                {"lhs", to_json(c.lhs)},
                {"rhs", to_json(c.rhs)},
                {"verdict", std::string(to_string(c.verdict))},
                {"claimed", std::string(to_string(c.claimed))},
                {"holds", c.holds()},
                {"applicable", c.applicable},
                {"unconditional", c.unconditional}};
}

InequalityCheck inequality_check_from_json(const Json& j) {
    InequalityCheck c;
    c.id = j.at("id").get<std::string>();
    c.lhs = bound_expr_from_json(j.at("lhs"));
    c.rhs = bound_expr_from_json(j.at("rhs"));
    c.verdict = ordering_from(j.at("verdict").get<std::string>());
    c.claimed = relation_from(j.at("claimed").get<std::string>());
    c.applicable = j.at("applicable").get<bool>();
    c.unconditional = j.at("unconditional").get<bool>();
    return c;
}

Json to_json(const InequalityReport& r) {
    Json out = Json::array();
    for (const auto& c : r.checks) out.push_back(to_json(c));
    return out;
}

InequalityReport inequality_report_from_json(const Json& j) {
    InequalityReport r;
    for (const auto& c : j) r.checks.push_back(inequality_check_from_json(c));
    return r;
}

Json to_json(const AuditReport& a) {
    const auto& c = a.candidate;
    Json out;
    out["candidate"] = Json{{"q", to_string(c.q())},
                            {"k", std::to_string(c.k())},
                            {"n", to_string(c.n())},
                            {"N", to_string(c.value())},
                            {"n_factorization", to_json(c.n_factorization())},
                            {"sigma_qk", to_string(c.sigma_euler())},
                            {"sigma_n", to_string(c.sigma_n())},
                            {"abundancy_qk", to_json(c.abundancy_euler())},
                            {"abundancy_n", to_json(c.abundancy_n())},
                            {"size_order", std::string(to_string(c.size_order()))}};
    if (a.theorem1) {
        out["theorem1"] = Json{{"conditions", a.theorem1->conditions},
                               {"hypothesis", a.theorem1->hypothesis},
                               {"consistent", a.theorem1->consistent},
                               {"checks", to_json(a.theorem1->checks)}};
    }
    if (a.chains) out["chains"] = to_json(*a.chains);
    if (a.cases) {
        out["case"] = Json{{"sorli_k_equals_1", a.cases->sorli_k_equals_1},
                           {"size_order", std::string(to_string(a.cases->size_order))},
                           {"theorem2_case", a.cases->theorem2_case},
                           {"chain_checks", to_json(a.cases->chain_checks)},
                           {"magnitude_flags", string_array(a.cases->magnitude_flags)}};
    }
    if (a.corollaries) {
        out["corollaries"] = to_json(a.corollaries->bounds);
        const auto& o = a.corollaries->conjecture1;
        out["conjecture1"] = Json{{"q_below_n_case", o.q_below_n_case},
                                  {"q_divides_sigma_n", o.q_divides_sigma_n},
                                  {"sigma_n_over_q", optional_natural(o.sigma_n_over_q)},
                                  {"quotient_in_two_three", o.quotient_in_two_three},
                                  {"n_below_q_case", o.n_below_q_case},
                                  {"n_divides_sigma_q", o.n_divides_sigma_q},
                                  {"sigma_q_over_n", optional_natural(o.sigma_q_over_n)},
                                  {"quotient_is_two", o.quotient_is_two},
                                  {"consistent", o.conjecture_consistent}};
    }
    if (a.lemmas) {
        out["lemmas"] = to_json(a.lemmas->checks);
        out["lemma_values"] = Json{{"s1", to_json(a.lemmas->s1)},
                                   {"s2", to_json(a.lemmas->s2)},
                                   {"geometric_mean", to_json(a.lemmas->geometric_mean)}};
    }
    out["flags"] = string_array(c.flags());
    out["summary"] = Json{{"violations", a.violation_count()}, {"broken_invariants", a.broken_invariant_count()}};
    return out;
}

Json to_json(const PrintedConstant& c, const ConstantCheck& check) {
    Json terms = Json::array();
    for (const auto& t : c.expr.terms()) {
        terms.push_back({{"coeff", to_string(t.coefficient)}, {"base", to_string(t.base)}, {"root", t.root_index}});
    }
    return Json{{"name", c.name},
                {"terms", std::move(terms)},
                {"printed", c.printed},
                {"enclosure", Json::array({to_string(check.enclosure.lo), to_string(check.enclosure.hi)})},
                {"eps", to_string(check.eps)},
                {"convention", "true value within half a unit of the last printed digit"},
                {"verified", check.verified}};
}

Json to_json(const Lemma3Bracket& b) {
    return Json{{"Q", to_string(b.Q)},
                {"euler_prime_lower", to_json(b.euler_prime_lower)},
                {"euler_factor_upper", to_json(b.euler_factor_upper)},
                {"n_lower", to_json(b.n_lower)},
                {"n_upper", to_json(b.n_upper)},
                {"n_upper_infimum", to_json(b.n_upper_infimum)},
                {"anchors_ordered", b.anchors_ordered},
                {"endpoints_ok", b.endpoints_ok}};
}

Json to_json(const Theorem5Table& t) {
    Json primes = Json::array();
    for (const auto& p : t.case_a_primes) primes.push_back(to_string(p));
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"q", to_string(r.anchors.q)},
                        {"case_a", to_json(r.anchors.case_a)},
                        {"case_b", to_json(r.anchors.case_b)},
                        {"case_c", to_json(r.anchors.case_c)},
                        {"case_d", to_json(r.anchors.case_d)},
                        {"case_a_within_cap", r.case_a_within_cap},
                        {"case_b_vs_upper_bracket", std::string(to_string(r.case_b_vs_upper_bracket))},
                        {"case_c_within_cap", r.case_c_within_cap},
                        {"case_d_within_range", r.case_d_within_range}});
    }
    return Json{{"Q", t.Q ? Json(to_string(*t.Q)) : Json(nullptr)},
                {"case_a",
                 {{"cap", to_json(t.case_a_cap)},
                  {"euler_floor", to_json(t.case_a_euler_floor)},
                  {"prime_limit", to_string(t.case_a_prime_limit)},
                  {"primes", std::move(primes)},
                  {"upper_branch_floor", optional_rational(t.case_a_upper_branch_floor)}}},
                {"case_b",
                 {{"cap", optional_rational(t.case_b_cap)},
                  {"upper_branch_contradictory", t.case_b_upper_branch_contradictory}}},
                {"case_c",
                 {{"cap", to_json(t.case_c_cap)}, {"upper_branch_floor", optional_rational(t.case_c_upper_branch_floor)}}},
                {"case_d", {{"cap", to_json(t.case_d_cap)}, {"floor", to_json(t.case_d_floor)}}},
                {"rows", std::move(rows)}};
}

Json to_json(const Theorem6Admissible& t) {
    Json out{{"q", to_string(t.q)},
             {"s_values", t.s_values},
             {"bracket", Json::array({to_json(t.lower), to_json(t.upper)})},
             {"contradiction", t.contradiction}};
    if (t.contradiction) out["message"] = "q = " + to_string(t.q) + " excluded under Theorem 6 hypothesis";
    return out;
}

Json to_json(const EquationSolution& s) {
    return Json{{"n", std::to_string(s.n)},
                {"q", std::to_string(s.q)},
                {"parameter", s.parameter},
                {"lhs", std::to_string(s.lhs)},
                {"rhs", std::to_string(s.rhs)},
                {"n_class", std::string(to_string(s.n_class))}};
}

Json to_json(const SieveResult& r) {
    Json perfect = Json::array();
    for (auto p : r.perfect) perfect.push_back(std::to_string(p));
    Json mismatches = Json::array();
    for (auto m : r.cross_check_mismatches) mismatches.push_back(std::to_string(m));
    return Json{{"bound", std::to_string(r.bound)},
                {"perfect", std::move(perfect)},
                {"odd_perfect_count", r.odd_perfect_count},
                {"census",
                 {{"deficient", r.census.deficient}, {"perfect", r.census.perfect}, {"abundant", r.census.abundant}}},
                {"cross_checked", r.cross_checked},
                {"cross_check_mismatches", std::move(mismatches)}};
}

Json to_json(const SigmaChainNode& node) {
    Json children = Json::array();
    for (const auto& c : node.children) children.push_back(to_json(c));
    return Json{{"prime", to_string(node.prime)},
                {"exponent", node.exponent},
                {"sigma", to_string(node.sigma_value)},
                {"path_abundancy", to_json(node.path_abundancy)},
                {"status", std::string(to_string(node.status))},
                {"children", std::move(children)}};
}

namespace {

void chain_events(std::ostream& out, const SigmaChainNode& node, std::vector<std::string>& path) {
    path.push_back(to_string(node.prime) + "^" + std::to_string(node.exponent));
    Json event{{"event", "chain-node"},
               {"depth", path.size() - 1},
               {"path", path},
               {"prime", to_string(node.prime)},
               {"exponent", node.exponent},
               {"sigma", to_string(node.sigma_value)},
               {"path_abundancy", to_string(node.path_abundancy)},
               {"status", std::string(to_string(node.status))}};
    out << event.dump() << '\n';
    for (const auto& c : node.children) chain_events(out, c, path);
    path.pop_back();
}

std::string csv_field(const BoundExpr& e) {
    if (auto r = e.as_rational()) return to_string(*r);
    std::string s = e.to_string();
    return "\"" + s + "\"";
}

}  // namespace

void write_chain_events(std::ostream& out, const SigmaChainNode& root) {
    std::vector<std::string> path;
    chain_events(out, root, path);
}

void write_audit_csv(std::ostream& out, const AuditReport& a) {
    const auto& c = a.candidate;
    std::string prefix = to_string(c.q()) + "," + std::to_string(c.k()) + "," + to_string(c.n()) + ",";
    auto section = [&](std::string_view name, const InequalityReport& r) {
        for (const auto& ch : r.checks) {
            out << prefix << name << "," << ch.id << "," << csv_field(ch.lhs) << "," << csv_field(ch.rhs) << ","
                << to_string(ch.verdict) << "," << to_string(ch.claimed) << "," << (ch.holds() ? "true" : "false")
                << "," << (ch.applicable ? "true" : "false") << "," << (ch.unconditional ? "true" : "false") << '\n';
        }
    };
    if (a.theorem1) section("theorem1", a.theorem1->checks);
    if (a.chains) section("chains", *a.chains);
    if (a.cases) section("case", a.cases->chain_checks);
    if (a.corollaries) section("corollaries", a.corollaries->bounds);
    if (a.lemmas) section("lemmas", a.lemmas->checks);
}

void write_solution_csv_row(std::ostream& out, const EquationSolution& s) {
    out << s.n << ',' << s.q << ',' << s.parameter << ',' << s.lhs << ',' << s.rhs << ',' << to_string(s.n_class)
        << '\n';
}

Json to_json(const Checkpoint& c) { return Json{{"shard", c.shard}, {"n_done", c.n_done}}; }

Checkpoint checkpoint_from_json(const Json& j) {
    return Checkpoint{j.at("shard").get<std::uint64_t>(), j.at("n_done").get<std::uint64_t>()};
}

}  // namespace opnlab
