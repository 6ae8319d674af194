#include "opnlab/cli.hpp"

#include "opnlab/eulerian.hpp"
#include "opnlab/radicals.hpp"
#include "opnlab/search.hpp"
#include "opnlab/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace opnlab::cli {

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Format { Json, Jsonl, Csv, Table };

struct Globals {
    std::string format = "table";
    bool strict = false;
    std::string effort;

    Format fmt() const {
        if (format == "json") return Format::Json;
        if (format == "jsonl") return Format::Jsonl;
        if (format == "csv") return Format::Csv;
        return Format::Table;
    }

    FactorOptions factoring() const;
};

bool is_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::uint64_t parse_u64(std::string_view flag, const std::string& text) {
    if (!is_digits(text)) {
        throw UsageError(std::string(flag) + ": expected a decimal integer, got '" + text + "'");
    }
    Natural v(text);
    if (!v.fits_ulong_p()) throw UsageError(std::string(flag) + ": " + text + " does not fit in 64 bits");
    return v.get_ui();
}

Natural parse_natural_flag(std::string_view flag, const std::string& text) {
    if (!is_digits(text)) {
        throw UsageError(std::string(flag) + ": expected a decimal integer, got '" + text + "'");
    }
    return Natural(text);
}

Integer parse_integer_flag(std::string_view flag, const std::string& text) {
    std::string digits = !text.empty() && text[0] == '-' ? text.substr(1) : text;
    if (!is_digits(digits)) {
        throw UsageError(std::string(flag) + ": expected a decimal integer, got '" + text + "'");
    }
    return Integer(text);
}

Rational parse_rational_flag(std::string_view flag, const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string(flag) + ": expected an exact rational such as 13/9 or 0.001, got '" + text +
                         "'");
    }
}

FactorOptions Globals::factoring() const {
    FactorOptions options = factor_options_from_env();
    if (!effort.empty()) options.effort = parse_u64("--effort", effort);
    return options;
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// Flattened key/value rendering used as the table and CSV form of
// single-record results.
void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
    } else if (j.is_array()) {
        if (j.empty()) rows.emplace_back(prefix, "[]");
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows);
    } else if (j.is_string()) {
        rows.emplace_back(prefix, j.get<std::string>());
    } else if (j.is_null()) {
        rows.emplace_back(prefix, "-");
    } else {
        rows.emplace_back(prefix, j.dump());
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void print_record(std::ostream& out, Format fmt, const Json& j) {
    switch (fmt) {
        case Format::Json: print_json(out, j); return;
        case Format::Jsonl: out << j.dump() << '\n'; return;
        case Format::Csv:
        case Format::Table: {
            std::vector<std::pair<std::string, std::string>> rows;
            flatten(j, "", rows);
            if (fmt == Format::Csv) {
                out << "key,value\n";
                for (const auto& [k, v] : rows) out << csv_escape(k) << ',' << csv_escape(v) << '\n';
                return;
            }
            std::size_t width = 0;
            for (const auto& row : rows) width = std::max(width, row.first.size());
            for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width + 2)) << k << v << '\n';
            return;
        }
    }
}

// audit

struct AuditArgs {
    std::string q, k, n;
    std::vector<std::string> only;
};

int run_audit(const Globals& g, const AuditArgs& a, std::ostream& out, std::ostream& err) {
    ValidateOptions options;
    options.factoring = g.factoring();
    EulerianCandidate c = validate(parse_natural_flag("q", a.q), parse_integer_flag("k", a.k),
                                   parse_natural_flag("n", a.n), options);
    AuditSelection sel;
    if (!a.only.empty()) {
        sel = AuditSelection{false, false, false, false, false};
        for (const auto& s : a.only) {
            if (s == "theorem1") sel.theorem1 = true;
            if (s == "chains") sel.chains = true;
            if (s == "case") sel.cases = true;
            if (s == "corollaries") sel.corollaries = true;
            if (s == "lemmas") sel.lemmas = true;
        }
    }
    AuditReport report = audit(c, sel);

    switch (g.fmt()) {
        case Format::Json: print_json(out, to_json(report)); break;
        case Format::Csv:
            out << kAuditCsvHeader << '\n';
            write_audit_csv(out, report);
            break;
        case Format::Jsonl: {
            auto emit = [&](std::string_view section, const InequalityReport& r) {
                for (const auto& check : r.checks) {
                    Json line{{"q", to_string(c.q())}, {"k", std::to_string(c.k())}, {"n", to_string(c.n())},
                              {"section", std::string(section)}};
                    Json fields = to_json(check);
                    for (const auto& [key, value] : fields.items()) line[key] = value;
                    out << line.dump() << '\n';
                }
            };
            if (report.theorem1) emit("theorem1", report.theorem1->checks);
            if (report.chains) emit("chains", *report.chains);
            if (report.cases) emit("case", report.cases->chain_checks);
            if (report.corollaries) emit("corollaries", report.corollaries->bounds);
            if (report.lemmas) emit("lemmas", report.lemmas->checks);
            break;
        }
        case Format::Table: {
            out << "candidate  q=" << to_string(c.q()) << " k=" << c.k() << " n=" << to_string(c.n())
                << " N=" << to_string(c.value()) << " order=" << to_string(c.size_order()) << '\n';
            if (report.theorem1) {
                out << "theorem1   conditions=";
                for (bool b : report.theorem1->conditions) out << (b ? 'T' : 'F');
                out << " hypothesis=" << (report.theorem1->hypothesis ? "true" : "false")
                    << " consistent=" << (report.theorem1->consistent ? "true" : "false") << '\n';
            }
            if (report.cases) out << "case       " << report.cases->theorem2_case << '\n';
            auto rows = [&](std::string_view section, const InequalityReport& r) {
                for (const auto& check : r.checks) {
                    out << std::left << std::setw(12) << section << std::setw(40) << check.id << std::setw(8)
                        << to_string(check.verdict) << std::setw(4) << to_string(check.claimed)
                        << (check.holds() ? "holds " : "FAILS ") << (check.applicable ? "" : "(n/a) ")
                        << check.lhs.to_string() << "  vs  " << check.rhs.to_string() << '\n';
                }
            };
            if (report.theorem1) rows("theorem1", report.theorem1->checks);
            if (report.chains) rows("chains", *report.chains);
            if (report.cases) rows("case", report.cases->chain_checks);
            if (report.corollaries) rows("corollaries", report.corollaries->bounds);
            if (report.lemmas) rows("lemmas", report.lemmas->checks);
            out << "summary    violations=" << report.violation_count()
                << " broken_invariants=" << report.broken_invariant_count() << '\n';
            break;
        }
    }

    if (report.broken_invariant_count() > 0) {
        err << "audit: " << report.broken_invariant_count() << " unconditional checks fail\n";
        return kViolations;
    }
    if (g.strict) {
        std::size_t flags = std::count_if(c.flags().begin(), c.flags().end(),
                                          [](const std::string& f) { return f != kFlagNIsOne; });
        if (report.violation_count() > 0 || flags > 0) {
            err << "audit: " << report.violation_count() << " violations, " << flags << " magnitude flags\n";
            return kViolations;
        }
    }
    return kCompleted;
}

// constants

struct ConstantsArgs {
    std::vector<std::string> names;
    std::string eps;
};

int run_constants(const Globals& g, const ConstantsArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<const PrintedConstant*> selected;
    if (a.names.empty()) {
        for (const auto& c : printed_constants()) selected.push_back(&c);
    } else {
        for (const auto& name : a.names) {
            try {
                selected.push_back(&printed_constant(name));
            } catch (const std::out_of_range&) {
                throw UsageError("--name: unknown constant '" + name + "'");
            }
        }
    }
    std::optional<Rational> eps;
    if (!a.eps.empty()) {
        eps = parse_rational_flag("--eps", a.eps);
        if (*eps <= 0) throw UsageError("--eps: must be positive");
    }

    Json all = Json::array();
    std::size_t failed = 0;
    for (const auto* c : selected) {
        ConstantCheck check = verify_constant(*c);
        if (!check.verified) ++failed;
        Json row = to_json(*c, check);
        if (eps) {
            RationalInterval box = enclose(c->expr, *eps);
            row["refined"] = {{"eps", to_string(*eps)}, {"enclosure", {to_string(box.lo), to_string(box.hi)}}};
        }
        all.push_back(std::move(row));
    }

    switch (g.fmt()) {
        case Format::Json: print_json(out, all); break;
        case Format::Jsonl:
            for (const auto& row : all) out << row.dump() << '\n';
            break;
        case Format::Csv:
            out << "name,printed,enclosure_lo,enclosure_hi,verified\n";
            for (const auto& row : all) {
                out << row["name"].get<std::string>() << ',' << row["printed"].get<std::string>() << ','
                    << row["enclosure"][0].get<std::string>() << ',' << row["enclosure"][1].get<std::string>() << ','
                    << (row["verified"].get<bool>() ? "true" : "false") << '\n';
            }
            break;
        case Format::Table:
            out << std::left << std::setw(22) << "name" << std::setw(24) << "printed" << std::setw(10) << "verified"
                << "enclosure (preview)\n";
            for (std::size_t i = 0; i < selected.size(); ++i) {
                const auto& row = all[i];
                Rational lo = parse_rational(row["enclosure"][0].get<std::string>());
                Rational hi = parse_rational(row["enclosure"][1].get<std::string>());
                unsigned digits = static_cast<unsigned>(selected[i]->printed.size()) + 3;
                out << std::left << std::setw(22) << selected[i]->name << std::setw(24) << selected[i]->printed
                    << std::setw(10) << (row["verified"].get<bool>() ? "true" : "false") << '['
                    << decimal_preview(lo, digits) << ", " << decimal_preview(hi, digits) << "]\n";
            }
            break;
    }
    if (failed > 0) {
        err << "constants: " << failed << " printed values not confirmed\n";
        return kViolations;
    }
    return kCompleted;
}

// scans

struct ScanArgs {
    std::string n_bound, q_bound;
    std::string parity = "odd";
    bool allow_multiples = false;
    bool include_n1 = false;
    std::string shard;
    std::string threads = "1";
    std::string sieve_limit;
    std::string checkpoint;
    std::string resume;
};

Shard parse_shard(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) throw UsageError("--shard: expected i/m, got '" + text + "'");
    Shard s{parse_u64("--shard", text.substr(0, slash)), parse_u64("--shard", text.substr(slash + 1))};
    if (s.count == 0 || s.index >= s.count) throw UsageError("--shard: index must be below the shard count");
    return s;
}

ScanConfig scan_config(const ScanArgs& a) {
    ScanConfig cfg;
    cfg.n_bound = parse_u64("--n-bound", a.n_bound);
    cfg.q_bound = parse_u64("--q-bound", a.q_bound);
    if (cfg.n_bound < 1) throw UsageError("--n-bound: must be at least 1");
    if (cfg.q_bound < 1) throw UsageError("--q-bound: must be at least 1");
    cfg.parity = a.parity == "all" ? ParityFilter::All : ParityFilter::OddOnly;
    cfg.coprime = !a.allow_multiples;
    cfg.exclude_n_equals_1 = !a.include_n1;
    if (!a.shard.empty()) cfg.shard = parse_shard(a.shard);
    cfg.threads = static_cast<unsigned>(std::max<std::uint64_t>(1, parse_u64("--threads", a.threads)));
    if (!a.sieve_limit.empty()) cfg.sieve_limit = parse_u64("--sieve-limit", a.sieve_limit);
    if (!a.resume.empty()) {
        std::ifstream in(a.resume);
        if (!in) throw UsageError("--resume: cannot read '" + a.resume + "'");
        Checkpoint cp;
        try {
            cp = checkpoint_from_json(Json::parse(in));
        } catch (const Json::exception& e) {
            throw UsageError("--resume: malformed checkpoint: " + std::string(e.what()));
        }
        if (cp.shard != cfg.shard.index) {
            throw UsageError("--resume: checkpoint is for shard " + std::to_string(cp.shard) + ", not " +
                             std::to_string(cfg.shard.index));
        }
        cfg.resume_after = cp.n_done;
    }
    try {
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

Json config_json(const ScanConfig& cfg) {
    return Json{{"n_bound", std::to_string(cfg.n_bound)},
                {"q_bound", std::to_string(cfg.q_bound)},
                {"parity", cfg.parity == ParityFilter::All ? "all" : "odd"},
                {"coprime", cfg.coprime},
                {"exclude_n_equals_1", cfg.exclude_n_equals_1},
                {"shard", std::to_string(cfg.shard.index) + "/" + std::to_string(cfg.shard.count)},
                {"resume_after", std::to_string(cfg.resume_after)}};
}

using ScanFn = std::function<std::vector<EquationSolution>(const ScanConfig&, const ScanSink&)>;

int run_scan(const Globals& g, const ScanArgs& a, std::string_view name, std::string_view parameter,
             const ScanFn& scan, std::ostream& out, std::ostream& err) {
    ScanConfig cfg = scan_config(a);
    const Format fmt = g.fmt();
    ScanSink sink;
    if (fmt == Format::Jsonl || fmt == Format::Csv) {
        if (fmt == Format::Csv) out << kSolutionCsvHeader << '\n';
        sink.on_solutions = [&](const std::vector<EquationSolution>& part) {
            for (const auto& s : part) {
                if (fmt == Format::Csv) {
                    write_solution_csv_row(out, s);
                } else {
                    out << to_json(s).dump() << '\n';
                }
            }
            out.flush();
        };
    }
    if (!a.checkpoint.empty()) {
        sink.on_progress = [&](std::uint64_t n_done) {
            std::ofstream file(a.checkpoint, std::ios::trunc);
            file << to_json(Checkpoint{cfg.shard.index, n_done}).dump() << '\n';
        };
    }
    std::vector<EquationSolution> solutions = scan(cfg, sink);

    Json summary{{"solutions", solutions.size()}};
    std::size_t failures = 0;
    if (name == "theorem4") {
        bool law_filters = cfg.parity == ParityFilter::OddOnly && cfg.coprime && cfg.exclude_n_equals_1;
        if (law_filters) {
            auto deficient = theorem4_deficient(solutions);
            failures += deficient.size();
            summary["deficient"] = deficient.size();
        }
    } else {
        Theorem6Audit t6 = audit_theorem6(solutions);
        failures += t6.residue_violations.size() + t6.bracket_violations.size();
        summary["interior"] = t6.interior;
        summary["residue_violations"] = t6.residue_violations.size();
        summary["bracket_violations"] = t6.bracket_violations.size();
    }

    if (fmt == Format::Json) {
        Json rows = Json::array();
        for (const auto& s : solutions) rows.push_back(to_json(s));
        print_json(out, Json{{"scan", name}, {"config", config_json(cfg)}, {"solutions", rows}, {"summary", summary}});
    } else if (fmt == Format::Table) {
        out << std::left << std::setw(14) << "n" << std::setw(8) << "q" << std::setw(8) << parameter << std::setw(20)
            << "lhs" << std::setw(20) << "rhs" << "class\n";
        for (const auto& s : solutions) {
            out << std::left << std::setw(14) << s.n << std::setw(8) << s.q << std::setw(8) << s.parameter
                << std::setw(20) << s.lhs << std::setw(20) << s.rhs << to_string(s.n_class) << '\n';
        }
        for (const auto& [key, value] : summary.items()) out << key << ' ' << value.dump() << '\n';
    }
    if (failures > 0) {
        err << name << " scan: " << failures << " solutions break the expected law\n";
        return kViolations;
    }
    return kCompleted;
}

struct RatioArgs {
    std::string target, bound;
    std::string parity = "all";
    bool exclude_n1 = false;
};

int run_ratio(const Globals& g, const RatioArgs& a, std::ostream& out) {
    Rational target = parse_rational_flag("--target", a.target);
    if (target <= 0) throw UsageError("--target: must be positive");
    std::uint64_t bound = parse_u64("--bound", a.bound);
    ScanConfig filters;
    filters.parity = a.parity == "odd" ? ParityFilter::OddOnly : ParityFilter::All;
    filters.exclude_n_equals_1 = a.exclude_n1;
    auto found = abundancy_ratio_solutions(target, bound, filters);
    switch (g.fmt()) {
        case Format::Json: {
            Json ns = Json::array();
            for (auto n : found) ns.push_back(std::to_string(n));
            print_json(out, Json{{"target", to_string(target)}, {"bound", std::to_string(bound)}, {"solutions", ns}});
            break;
        }
        case Format::Jsonl:
            for (auto n : found) out << Json{{"n", std::to_string(n)}}.dump() << '\n';
            break;
        case Format::Csv:
            out << "n\n";
            for (auto n : found) out << n << '\n';
            break;
        case Format::Table:
            out << "I(n) = " << to_string(target) << " for n <= " << bound << ": " << found.size() << " solutions\n";
            for (auto n : found) out << n << '\n';
            break;
    }
    return kCompleted;
}

// sieve

struct SieveArgs {
    std::string bound;
    bool allow_large = false;
    std::string samples, seed, segment;
};

int run_sieve(const Globals& g, const SieveArgs& a, std::ostream& out, std::ostream& err) {
    SieveOptions options;
    options.allow_large = a.allow_large;
    if (!a.samples.empty()) options.cross_check_samples = parse_u64("--samples", a.samples);
    if (!a.seed.empty()) options.seed = parse_u64("--seed", a.seed);
    if (!a.segment.empty()) {
        options.segment_size = parse_u64("--segment", a.segment);
        if (options.segment_size == 0) throw UsageError("--segment: must be positive");
    }
    std::uint64_t bound = parse_u64("--bound", a.bound);
    if (bound < 1) throw UsageError("--bound: must be at least 1");
    SieveResult result = sieve_scan(bound, options);
    print_record(out, g.fmt(), to_json(result));
    if (!result.cross_check_mismatches.empty()) {
        err << "sieve: " << result.cross_check_mismatches.size() << " samples disagree with factorization\n";
        return kViolations;
    }
    if (result.odd_perfect_count > 0) {
        err << "sieve: odd perfect number found\n";
        return kViolations;
    }
    return kCompleted;
}

// chain

struct ChainArgs {
    std::string q, k = "1", depth, bound;
    std::string exponents;
};

void chain_table(std::ostream& out, const SigmaChainNode& node, unsigned level) {
    out << std::string(2 * level, ' ') << to_string(node.prime) << '^' << node.exponent
        << "  sigma=" << to_string(node.sigma_value) << "  I=" << to_string(node.path_abundancy) << "  "
        << to_string(node.status) << '\n';
    for (const auto& c : node.children) chain_table(out, c, level + 1);
}

void chain_csv(std::ostream& out, const SigmaChainNode& node, std::vector<std::string>& path) {
    path.push_back(to_string(node.prime) + "^" + std::to_string(node.exponent));
    std::string joined;
    for (const auto& p : path) joined += (joined.empty() ? "" : " ") + p;
    out << path.size() - 1 << ',' << joined << ',' << to_string(node.prime) << ',' << node.exponent << ','
        << to_string(node.sigma_value) << ',' << to_string(node.path_abundancy) << ',' << to_string(node.status)
        << '\n';
    for (const auto& c : node.children) chain_csv(out, c, path);
    path.pop_back();
}

int run_chain(const Globals& g, const ChainArgs& a, std::ostream& out, std::ostream& err) {
    ChainOptions options;
    options.factoring = g.factoring();
    if (!a.exponents.empty()) {
        options.exponents.clear();
        std::stringstream ss(a.exponents);
        for (std::string item; std::getline(ss, item, ',');) {
            std::uint64_t e = parse_u64("--exponents", item);
            if (e == 0 || e % 2 != 0) throw UsageError("--exponents: trial exponents must be positive and even");
            options.exponents.push_back(e);
        }
    }
    Natural q = parse_natural_flag("--q", a.q);
    std::uint64_t k = parse_u64("--k", a.k);
    std::uint64_t depth = parse_u64("--depth", a.depth);
    if (depth > 64) throw UsageError("--depth: at most 64");
    Natural bound = parse_natural_flag("--bound", a.bound);
    SigmaChainNode root = sigma_chain(q, k, static_cast<unsigned>(depth), bound, options);
    std::size_t failures = verify_chain(root);

    switch (g.fmt()) {
        case Format::Json:
            print_json(out, Json{{"tree", to_json(root)}, {"nodes", chain_size(root)}, {"verification_failures", failures}});
            break;
        case Format::Jsonl: write_chain_events(out, root); break;
        case Format::Csv: {
            out << "depth,path,prime,exponent,sigma,path_abundancy,status\n";
            std::vector<std::string> path;
            chain_csv(out, root, path);
            break;
        }
        case Format::Table:
            chain_table(out, root, 0);
            out << "nodes " << chain_size(root) << "  verification_failures " << failures << '\n';
            break;
    }
    if (failures > 0) {
        err << "chain: " << failures << " nodes fail the divisibility re-check\n";
        return kViolations;
    }
    return kCompleted;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact audits and bounded searches for the Eulerian form q^k n^2 of odd perfect numbers", "opnlab"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    Globals g;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"json", "jsonl", "csv", "table"}))
        ->capture_default_str();
    app.add_flag("--strict", g.strict, "Exit 1 on any applicable violation or magnitude flag");
    app.add_option("--effort", g.effort, "Factoring effort budget (overrides OPNLAB_EFFORT)");

    AuditArgs audit_args;
    auto* audit_cmd = app.add_subcommand("audit", "Evaluate every predicate on N = q^k n^2");
    audit_cmd->add_option("q", audit_args.q, "Euler prime")->required();
    audit_cmd->add_option("k", audit_args.k, "Euler exponent")->required();
    audit_cmd->add_option("n", audit_args.n, "Non-Euler part")->required();
    audit_cmd->add_option("--only", audit_args.only, "Restrict to sections")
        ->delimiter(',')
        ->check(CLI::IsMember({"theorem1", "chains", "case", "corollaries", "lemmas"}));

    ConstantsArgs constants_args;
    auto* constants_cmd = app.add_subcommand("constants", "Verify the printed decimal approximations");
    constants_cmd->add_option("--name", constants_args.names, "Only these constants")->delimiter(',');
    constants_cmd->add_option("--eps", constants_args.eps, "Also report an enclosure of this width");

    std::string bracket_q;
    auto* bracket_cmd = app.add_subcommand("bracket", "Abundancy bracket for a lower bound Q on q");
    bracket_cmd->add_option("--Q", bracket_q, "Lower bound on the Euler prime")->required();

    std::string theorem5_q;
    auto* theorem5_cmd = app.add_subcommand("theorem5", "Case analysis with the case A prime set");
    theorem5_cmd->add_option("--Q", theorem5_q, "Lower bound on the Euler prime");

    std::string theorem6_q;
    auto* theorem6_cmd = app.add_subcommand("theorem6", "Admissible s values and bracket for one q");
    theorem6_cmd->add_option("--q", theorem6_q, "Euler prime")->required();

    auto add_scan = [&](const std::string& name, const std::string& help, ScanArgs& s) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("--n-bound", s.n_bound, "Largest n")->required();
        cmd->add_option("--q-bound", s.q_bound, "Largest q")->required();
        cmd->add_option("--parity", s.parity, "n parity filter")->check(CLI::IsMember({"odd", "all"}));
        cmd->add_flag("--allow-multiples", s.allow_multiples, "Keep n divisible by q");
        cmd->add_flag("--include-n1", s.include_n1, "Keep n = 1");
        cmd->add_option("--shard", s.shard, "Shard i/m of the n range");
        cmd->add_option("--threads", s.threads, "Worker threads");
        cmd->add_option("--sieve-limit", s.sieve_limit, "Largest n bound served by the sieve");
        cmd->add_option("--checkpoint", s.checkpoint, "Write {shard, n_done} here after each block");
        cmd->add_option("--resume", s.resume, "Continue after the n_done of this checkpoint");
        return cmd;
    };
    ScanArgs t4_args, t6_args;
    auto* t4_cmd = add_scan("scan-t4", "Solutions of q sigma(n) = (q + r) n, 0 <= r <= q", t4_args);
    auto* t6_cmd = add_scan("scan-t6", "Solutions of (q - 1) sigma(n) = n (q + s), -1 <= s <= q - 2", t6_args);

    RatioArgs ratio_args;
    auto* ratio_cmd = app.add_subcommand("scan-ratio", "All n <= bound with I(n) = target");
    ratio_cmd->add_option("--target", ratio_args.target, "Target abundancy a/b")->required();
    ratio_cmd->add_option("--bound", ratio_args.bound, "Largest n")->required();
    ratio_cmd->add_option("--parity", ratio_args.parity, "n parity filter")->check(CLI::IsMember({"odd", "all"}));
    ratio_cmd->add_flag("--exclude-n1", ratio_args.exclude_n1, "Drop n = 1");

    SieveArgs sieve_args;
    auto* sieve_cmd = app.add_subcommand("sieve", "Deficiency census and perfect numbers up to a bound");
    sieve_cmd->add_option("--bound", sieve_args.bound, "Largest n")->required();
    sieve_cmd->add_flag("--allow-large", sieve_args.allow_large, "Permit bounds above 10^9");
    sieve_cmd->add_option("--samples", sieve_args.samples, "Random factorization cross-checks");
    sieve_cmd->add_option("--seed", sieve_args.seed, "Seed for the cross-check samples");
    sieve_cmd->add_option("--segment", sieve_args.segment, "Sieve segment length");

    ChainArgs chain_args;
    auto* chain_cmd = app.add_subcommand("chain", "Sigma-chain tree rooted at q^k");
    chain_cmd->add_option("--q", chain_args.q, "Root prime")->required();
    chain_cmd->add_option("--k", chain_args.k, "Root exponent");
    chain_cmd->add_option("--depth", chain_args.depth, "Expansion depth")->required();
    chain_cmd->add_option("--bound", chain_args.bound, "Close nodes whose prime power exceeds this")->required();
    chain_cmd->add_option("--exponents", chain_args.exponents, "Trial exponents, comma separated");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kCompleted : kUsage;
    }

    try {
        if (audit_cmd->parsed()) return run_audit(g, audit_args, out, err);
        if (constants_cmd->parsed()) return run_constants(g, constants_args, out, err);
        if (bracket_cmd->parsed()) {
            print_record(out, g.fmt(), to_json(lemma3_bracket(parse_natural_flag("--Q", bracket_q))));
            return kCompleted;
        }
        if (theorem5_cmd->parsed()) {
            std::optional<Natural> Q;
            if (!theorem5_q.empty()) Q = parse_natural_flag("--Q", theorem5_q);
            print_record(out, g.fmt(), to_json(theorem5_analyze(Q)));
            return kCompleted;
        }
        if (theorem6_cmd->parsed()) {
            Theorem6Admissible t6 = theorem6_admissible(parse_natural_flag("--q", theorem6_q));
            print_record(out, g.fmt(), to_json(t6));
            if (t6.contradiction) err << "q = " << to_string(t6.q) << " excluded under Theorem 6 hypothesis\n";
            return kCompleted;
        }
        if (t4_cmd->parsed()) {
            return run_scan(g, t4_args, "theorem4", "r", [](auto& c, auto& s) { return theorem4_scan(c, s); }, out,
                            err);
        }
        if (t6_cmd->parsed()) {
            return run_scan(g, t6_args, "theorem6", "s", [](auto& c, auto& s) { return theorem6_scan(c, s); }, out,
                            err);
        }
        if (ratio_cmd->parsed()) return run_ratio(g, ratio_args, out);
        if (sieve_cmd->parsed()) return run_sieve(g, sieve_args, out, err);
        if (chain_cmd->parsed()) return run_chain(g, chain_args, out, err);
    } catch (const FactoringBudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const PrecisionBudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const SieveBudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace opnlab::cli
