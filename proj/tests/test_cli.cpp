#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qdpas/model.hpp"

namespace {

struct run_result {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

run_result run_cli(const std::string& args) {
    static int counter = 0;
    const std::string base = "/tmp/qdpas_cli_" + std::to_string(::getpid()) + "_" +
                             std::to_string(counter++);
    const std::string out_path = base + ".out";
    const std::string err_path = base + ".err";
    const std::string cmd =
        std::string(QDPAS_BIN) + " " + args + " >" + out_path + " 2>" + err_path;
    const int raw = std::system(cmd.c_str());
    run_result r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

std::string data(const std::string& name) { return std::string(QDPAS_DATA_DIR) + "/" + name; }

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l))
        if (l == line) return true;
    return false;
}

std::string strip_wall(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string l;
    while (std::getline(in, l))
        if (l.rfind("wall_ms:", 0) != 0) out << l << "\n";
    return out.str();
}

}  // namespace

TEST_CASE("solve: additive methods agree on the two-job sample") {
    for (const std::string method : {"bruteforce", "dpas", "d-dpas", "qddpas", "qddpas3"}) {
        const run_result r = run_cli("solve --in " + data("t2.json") + " --method " + method);
        CAPTURE(method);
        CAPTURE(r.err);
        CHECK(r.code == 0);
        CHECK(has_line(r.out, "kind: Tardiness"));
        CHECK(has_line(r.out, "method: " + method));
        CHECK(has_line(r.out, "value: 4"));
        CHECK(has_line(r.out, "witness: 1 2"));
        if (method[0] == 'q') CHECK(has_line(r.out, "verified: yes"));
    }
}

TEST_CASE("solve: start-time offset and domain validation") {
    const run_result ok = run_cli("solve --in " + data("t2.json") + " --method dpas --t0 2");
    CHECK(ok.code == 0);
    CHECK(has_line(ok.out, "value: 10"));  // (1,2) from t=2: C=(4,6) -> 2*4 + 1*2
    const run_result bad = run_cli("solve --in " + data("t2.json") + " --method dpas --t0 7");
    CHECK(bad.code == 1);
    CHECK(bad.err.find("time domain") != std::string::npos);
}

TEST_CASE("solve: flowshop methods and the approximation") {
    for (const std::string method : {"bruteforce", "dpas", "d-dpas", "qdec"}) {
        const run_result r = run_cli("solve --in " + data("fs2.json") + " --method " + method);
        CAPTURE(method);
        CAPTURE(r.err);
        CHECK(r.code == 0);
        CHECK(has_line(r.out, "value: 8"));
    }
    const run_result lin =
        run_cli("solve --in " + data("fs2.json") + " --method dpas --mode linear");
    CHECK(lin.code == 0);
    CHECK(has_line(lin.out, "value: 8"));

    const run_result ap =
        run_cli("solve --in " + data("fs2.json") + " --method approx --epsilon 1");
    CHECK(ap.code == 0);
    CHECK(has_line(ap.out, "value: 8"));
    CHECK(has_line(ap.out, "epsilon: 1/1"));
    CHECK(has_line(ap.out, "scale_k: 5/4"));
    CHECK(has_line(ap.out, "scaled_value: 7"));
    CHECK(has_line(ap.out, "certified: yes"));
    CHECK(has_line(ap.out, "witness: 1 2"));
}

TEST_CASE("solve: composed minimum exact cost and fixed budgets") {
    const run_result me = run_cli("solve --in " + data("rwu2.json") + " --method dpas");
    CHECK(me.code == 0);
    CHECK(has_line(me.out, "value: 3"));
    CHECK(has_line(me.out, "eps_star: 3"));
    CHECK(has_line(me.out, "makespan: 3"));

    const run_result at3 = run_cli("solve --in " + data("rwu2.json") + " --method dpas --eps0 3");
    CHECK(at3.code == 0);
    CHECK(has_line(at3.out, "value: 3"));  // best makespan at exact cost 3

    const run_result at0 = run_cli("solve --in " + data("rwu2.json") + " --method dpas --eps0 0");
    CHECK(at0.code == 2);  // no zero-cost schedule: +inf
    CHECK(has_line(at0.out, "value: inf"));

    const run_result qr = run_cli("solve --in " + data("rwu2.json") + " --method qddpas");
    CHECK(qr.code == 0);
    CHECK(has_line(qr.out, "eps_star: 3"));
    CHECK(has_line(qr.out, "verified: yes"));

    // objective exceeding the tracked cost range: no feasible budget
    const run_result none = run_cli("solve --in " + data("rwc1.json") + " --method dpas");
    CHECK(none.code == 2);
    CHECK(has_line(none.out, "eps_star: none"));
    CHECK(has_line(none.out, "value: inf"));

    const run_result neg =
        run_cli("solve --in " + data("rwu2.json") + " --method dpas --eps0 -2");
    CHECK(neg.code == 1);
}

TEST_CASE("solve: misuse is rejected") {
    const run_result missing = run_cli("solve --in /nonexistent.json --method dpas");
    CHECK(missing.code == 1);
    const run_result badmethod = run_cli("solve --in " + data("t2.json") + " --method nope");
    CHECK(badmethod.code == 1);
    const run_result mismatch = run_cli("solve --in " + data("t2.json") + " --method qdec");
    CHECK(mismatch.code == 1);
    CHECK(mismatch.err.find("does not apply") != std::string::npos);
    const run_result wrongkind =
        run_cli("solve --in " + data("t2.json") + " --method dpas --kind flowshop3");
    CHECK(wrongkind.code == 1);
    const run_result nosub = run_cli("");
    CHECK(nosub.code == 1);
}

TEST_CASE("solve: deterministic output module wall time") {
    const std::string cmd = "solve --in " + data("t2.json") + " --method qddpas --seed 7";
    const run_result a = run_cli(cmd);
    const run_result b = run_cli(cmd);
    CHECK(a.code == 0);
    CHECK(strip_wall(a.out) == strip_wall(b.out));
}

TEST_CASE("verify: small run passes") {
    const run_result r = run_cli("verify --kind tardiness --n-max 4 --trials 3 --seed 1");
    CAPTURE(r.out);
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "PASS 3/3 checks"));
    const run_result all = run_cli("verify --n-max 3 --p-max 3 --trials 2 --seed 1");
    CAPTURE(all.out);
    CHECK(all.code == 0);
    CHECK(has_line(all.out, "PASS 12/12 checks"));
    const run_result bad = run_cli("verify --kind nope");
    CHECK(bad.code == 1);
}

TEST_CASE("bench: header, rows, and caps") {
    const run_result r = run_cli("bench --n-max 8 --seed 3");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "kind,method,n,T,E,classical_ops,quantum_queries,qram_reads,wall_ms,cap,pass");
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        CHECK(line.substr(line.size() - 2) == ",1");  // every row within its cap
    }
    CHECK(rows >= 10);

    const std::string csv = "/tmp/qdpas_bench_" + std::to_string(::getpid()) + ".csv";
    const run_result w = run_cli("bench --n-max 4 --csv " + csv);
    CHECK(w.code == 0);
    CHECK(w.out.find("wrote ") == 0);
    const std::string content = slurp(csv);
    CHECK(content.find("kind,method,n,T,E,") == 0);
    CHECK(content.find("Tardiness,dpas,4,") != std::string::npos);
    std::remove(csv.c_str());
}

TEST_CASE("audit: JSON report with all bounds satisfied") {
    const run_result r = run_cli("audit --n-max 8 --seed 2");
    REQUIRE(r.code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() > 20);
    bool saw_hybrid = false;
    bool saw_entropy = false;
    for (const auto& row : j) {
        CHECK(row["pass"].get<bool>());
        const std::string phase = row["phase"].get<std::string>();
        if (phase == "quantum-queries") saw_hybrid = true;
        if (phase.rfind("entropy-bound-", 0) == 0) saw_entropy = true;
    }
    CHECK(saw_hybrid);
    CHECK(saw_entropy);

    const std::string csv = "/tmp/qdpas_audit_" + std::to_string(::getpid()) + ".csv";
    const run_result w = run_cli("audit --n-max 4 --csv " + csv);
    CHECK(w.code == 0);
    const std::string content = slurp(csv);
    CHECK(content.find("kind,method,n,T,E,") == 0);
    CHECK(content.find("audit,") != std::string::npos);
    std::remove(csv.c_str());
}

TEST_CASE("generate: emits a parseable instance") {
    using qdpas::parse_instance;
    const run_result r = run_cli("generate --kind release_wu --n-max 3 --seed 5");
    REQUIRE(r.code == 0);
    const auto pi = parse_instance(r.out);
    const auto& inst = std::get<qdpas::instance>(pi);
    CHECK(inst.kind == qdpas::problem_kind::release_wu);
    CHECK(inst.n() == 3);

    const run_result fs = run_cli("generate --kind flowshop3 --n-max 3 --seed 5");
    REQUIRE(fs.code == 0);
    CHECK(std::holds_alternative<qdpas::flowshop_instance>(parse_instance(fs.out)));

    const run_result nk = run_cli("generate --n-max 3");
    CHECK(nk.code == 1);
}
