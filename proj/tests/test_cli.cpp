#include "opnlab/cli.hpp"
#include "opnlab/serialize.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = opnlab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("audit 5 1 9 --format json") {
    auto r = run({"audit", "5", "1", "9", "--format", "json"});
    CHECK(r.code == 0);
    auto j = opnlab::Json::parse(r.out);
    CHECK(j["theorem1"]["conditions"] == opnlab::Json::array({true, true, true, true}));
    // Re-parsing yields the same values.
    auto checks = opnlab::inequality_report_from_json(j["theorem1"]["checks"]);
    auto direct = opnlab::theorem1_vector(opnlab::validate(5, opnlab::Integer(1), 9));
    REQUIRE(checks.checks.size() == direct.checks.checks.size());
    for (std::size_t i = 0; i < checks.checks.size(); ++i) {
        CHECK(checks.checks[i].lhs == direct.checks.checks[i].lhs);
        CHECK(checks.checks[i].verdict == direct.checks.checks[i].verdict);
    }
}

TEST_CASE("strict changes only the exit code") {
    auto plain = run({"audit", "5", "1", "9", "--format", "json"});
    auto strict = run({"audit", "5", "1", "9", "--format", "json", "--strict"});
    CHECK(plain.code == 0);
    CHECK(strict.code == 1);
    CHECK(plain.out == strict.out);
}

TEST_CASE("audit formats") {
    auto csv = run({"--format", "csv", "audit", "5", "1", "9"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind(opnlab::kAuditCsvHeader, 0) == 0);
    auto jsonl = run({"audit", "5", "1", "9", "--format", "jsonl", "--only", "theorem1"});
    std::istringstream in(jsonl.out);
    int lines = 0;
    for (std::string line; std::getline(in, line); ++lines) CHECK(opnlab::Json::parse(line)["section"] == "theorem1");
    CHECK(lines == 8);
    auto table = run({"audit", "13", "1", "9"});
    CHECK(table.out.find("conditions=FFFF") != std::string::npos);
}

TEST_CASE("invalid candidates are usage errors") {
    auto r = run({"audit", "5", "1", "15"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("gcd") != std::string::npos);
    CHECK(run({"audit", "13", "2", "9"}).code == 2);
    CHECK(run({"audit", "5", "1", "1"}).code == 2);
    CHECK(run({"audit", "5", "1", "9.0"}).code == 2);
}

TEST_CASE("usage errors name the flag") {
    auto r = run({"scan-t4", "--n-bound", "1e5", "--q-bound", "997"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--n-bound") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"constants", "--format", "xml"}).code == 2);
    CHECK(run({"constants", "--eps", "0.1e-3"}).code == 2);
    CHECK(run({"scan-t6", "--n-bound", "100", "--q-bound", "50", "--shard", "2/2"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("constants") {
    auto r = run({"constants"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    REQUIRE(lines.size() == 12);
    for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].find(" true ") != std::string::npos);

    auto j = opnlab::Json::parse(run({"constants", "--format", "json", "--eps", "1/1000000000000000000000000000000"}).out);
    REQUIRE(j.size() == 11);
    for (const auto& row : j) {
        CHECK(row["verified"] == true);
        CHECK(row.contains("refined"));
    }
}

TEST_CASE("theorem6 --q 5") {
    auto r = run({"theorem6", "--q", "5", "--format", "json"});
    CHECK(r.code == 0);
    auto j = opnlab::Json::parse(r.out);
    CHECK(j["contradiction"] == true);
    CHECK(j["message"] == "q = 5 excluded under Theorem 6 hypothesis");
    CHECK(r.err.find("q = 5 excluded under Theorem 6 hypothesis") != std::string::npos);
    CHECK(run({"theorem6", "--q", "7"}).code == 2);
}

TEST_CASE("bracket and theorem5") {
    auto b = opnlab::Json::parse(run({"bracket", "--Q", "13", "--format", "json"}).out);
    CHECK(b["n_upper"]["exact"] == "13/7");
    CHECK(run({"bracket", "--Q", "3"}).code == 2);
    CHECK(run({"bracket"}).code == 2);
    auto t = opnlab::Json::parse(run({"theorem5", "--format", "json"}).out);
    CHECK(t["case_a"]["primes"] == opnlab::Json::array({"5", "13", "17", "29", "37", "41"}));
    auto csv = run({"theorem5", "--Q", "13", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("key,value\n", 0) == 0);
}

TEST_CASE("scans") {
    auto t4 = run({"scan-t4", "--n-bound", "10000", "--q-bound", "97", "--parity", "all", "--format", "jsonl"});
    CHECK(t4.code == 0);
    CHECK(t4.out.find(R"({"n":"6","q":"5","parameter":5,)") != std::string::npos);

    auto t6 = run({"scan-t6", "--n-bound", "100", "--q-bound", "37", "--format", "json"});
    CHECK(t6.code == 0);
    auto j = opnlab::Json::parse(t6.out);
    CHECK(j["summary"]["residue_violations"] == 0);
    bool found = false;
    for (const auto& s : j["solutions"]) found = found || (s["n"] == "9" && s["q"] == "37" && s["parameter"] == 15);
    CHECK(found);

    auto ratio = run({"scan-ratio", "--target", "2", "--bound", "10000", "--format", "csv"});
    CHECK(ratio.out == "n\n6\n28\n496\n8128\n");
    CHECK(run({"scan-ratio", "--target", "0", "--bound", "10"}).code == 2);
}

TEST_CASE("sharded output concatenates to the unsharded output") {
    std::vector<std::string> base{"scan-t6", "--n-bound", "3000", "--q-bound", "200", "--parity", "all",
                                  "--format", "jsonl"};
    auto whole = run(base).out;
    std::string joined;
    for (int i = 0; i < 3; ++i) {
        auto args = base;
        args.push_back("--shard");
        args.push_back(std::to_string(i) + "/3");
        joined += run(args).out;
    }
    CHECK(joined == whole);
    CHECK(run(base).out == whole);
}

TEST_CASE("checkpoint and resume") {
    auto dir = std::filesystem::temp_directory_path() / "opnlab_cli_test";
    std::filesystem::create_directories(dir);
    auto cp = (dir / "cp.json").string();
    std::vector<std::string> base{"scan-t6", "--n-bound", "140000", "--q-bound", "997",
                                  "--format", "csv"};
    auto args = base;
    args.insert(args.end(), {"--checkpoint", cp});
    auto full = run(args);
    CHECK(full.code == 0);
    auto saved = opnlab::checkpoint_from_json(opnlab::Json::parse(std::ifstream(cp)));
    CHECK(saved.shard == 0);
    CHECK(saved.n_done == 140000);

    {
        std::ofstream(cp) << R"({"shard": 0, "n_done": 65536})";
    }
    auto resumed_args = base;
    resumed_args.insert(resumed_args.end(), {"--resume", cp});
    auto resumed = run(resumed_args);
    CHECK(resumed.code == 0);
    auto rows_after = [](const std::string& text, std::uint64_t cut) {
        std::istringstream in(text);
        std::string line, kept;
        std::getline(in, line);
        while (std::getline(in, line)) {
            if (std::stoull(line.substr(0, line.find(','))) > cut) kept += line + "\n";
        }
        return kept;
    };
    CHECK(rows_after(resumed.out, 0) == rows_after(full.out, 65536));
    CHECK_FALSE(rows_after(full.out, 65536).empty());

    {
        std::ofstream(cp) << R"({"shard": 1, "n_done": 10})";
    }
    CHECK(run(resumed_args).code == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("sieve and chain") {
    auto s = opnlab::Json::parse(run({"sieve", "--bound", "10000", "--format", "json"}).out);
    CHECK(s["perfect"] == opnlab::Json::array({"6", "28", "496", "8128"}));
    CHECK(run({"sieve", "--bound", "2000000000"}).code == 3);

    auto c = run({"chain", "--q", "5", "--depth", "3", "--bound", "1000000000000", "--format", "jsonl"});
    CHECK(c.code == 0);
    CHECK(c.out.find(R"("path":["5^1","3^2","13^2","61^2"])") != std::string::npos);
    CHECK(run({"chain", "--q", "5", "--depth", "3", "--bound", "100", "--exponents", "3"}).code == 2);
}

TEST_CASE("factoring budget exits 3") {
    // n = p * r with two 19-digit primes; a budget of 100 steps cannot split it.
    auto r = run({"audit", "5", "1", "1000000000000000012000000000000000027", "--effort", "100"});
    CHECK(r.code == 3);
    CHECK(r.err.find("budget") != std::string::npos);
}

}
