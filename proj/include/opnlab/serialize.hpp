// JSON and CSV renderings. Integers are decimal strings and rationals are
// "a/b" strings so that no value passes through a floating-point number;
// fields named approx_nonauthoritative are display previews only.
#pragma once

#include "opnlab/eulerian.hpp"
#include "opnlab/radicals.hpp"
#include "opnlab/search.hpp"

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>

namespace opnlab {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const BoundExpr& e);
BoundExpr bound_expr_from_json(const Json& j);

/// [["2", 3], ["3", 2], ["5", 1]]
Json to_json(const Factorization& f);
Factorization factorization_from_json(const Json& j);

Json to_json(const InequalityCheck& c);
InequalityCheck inequality_check_from_json(const Json& j);
Json to_json(const InequalityReport& r);
InequalityReport inequality_report_from_json(const Json& j);

Json to_json(const AuditReport& a);

Json to_json(const PrintedConstant& c, const ConstantCheck& check);
Json to_json(const Lemma3Bracket& b);
Json to_json(const Theorem5Table& t);
Json to_json(const Theorem6Admissible& t);

Json to_json(const EquationSolution& s);
Json to_json(const SieveResult& r);
Json to_json(const SigmaChainNode& node);

/// One JSON object per node in depth-first order, with its depth and the
/// prime path from the root.
void write_chain_events(std::ostream& out, const SigmaChainNode& root);

inline constexpr const char* kAuditCsvHeader =
    "q,k,n,section,id,lhs,rhs,verdict,claimed,holds,applicable,unconditional";
/// One row per (candidate, check).
void write_audit_csv(std::ostream& out, const AuditReport& a);

inline constexpr const char* kSolutionCsvHeader = "n,q,parameter,lhs,rhs,n_class";
void write_solution_csv_row(std::ostream& out, const EquationSolution& s);

/// Checkpoint file contents: {"shard": i, "n_done": m}.
struct Checkpoint {
    std::uint64_t shard = 0;
    std::uint64_t n_done = 0;
};
Json to_json(const Checkpoint& c);
Checkpoint checkpoint_from_json(const Json& j);

}  // namespace opnlab
