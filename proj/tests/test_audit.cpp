#include <cmath>
#include <variant>

#include "doctest.h"
#include "json.hpp"
#include "qdpas/audit.hpp"
#include "qdpas/model.hpp"
#include "qdpas/qsim.hpp"

using namespace qdpas;

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.0L) == 0.0L);
    CHECK(binary_entropy(1.0L) == 0.0L);
    CHECK(std::abs(binary_entropy(0.5L) - 1.0L) < 1e-12L);
    CHECK(std::abs(binary_entropy(0.25L) - 0.811278L) < 1e-5L);
}

TEST_CASE("partial binomial sums stay under the entropy cap") {
    const auto rows = entropy_bound_rows(24);
    REQUIRE(!rows.empty());
    for (const audit_row& r : rows) {
        CHECK(r.pass);
        CHECK(r.measured <= r.cap);
    }
    // spot-check one row exactly: n=8, k=2 -> 1 + 8 + 28 = 37, cap 2^(H(1/4)*8)
    bool found = false;
    for (const audit_row& r : rows) {
        if (r.n == 8 && r.phase == "entropy-bound-k2") {
            found = true;
            CHECK(r.measured == 37.0L);
            CHECK(std::abs(r.cap - std::pow(2.0L, binary_entropy(0.25L) * 8)) < 1e-6L);
        }
        if (r.n == 8 && r.phase == "entropy-bound-k0") {
            CHECK(r.measured == 1.0L);  // the empty set alone
        }
    }
    CHECK(found);
}

TEST_CASE("level-product square roots stay under the three-halves cap") {
    const auto rows = sqrt_product_rows(24);
    REQUIRE(!rows.empty());
    for (const audit_row& r : rows) {
        CHECK(r.pass);
        CHECK(r.n % 4 == 0);
    }
    // n=8: sqrt(C(8,4) * C(4,2)) = sqrt(420) ~ 20.5 <= 2^6
    for (const audit_row& r : rows) {
        if (r.n == 8) {
            CHECK(std::abs(r.measured - std::sqrt(420.0L)) < 1e-9L);
            CHECK(r.cap == 64.0L);
        }
    }
}

TEST_CASE("hybrid run audit rows pass on a real run") {
    for (int levels : {2, 3}) {
        const instance inst = std::get<instance>(
            gen_random(problem_kind::tardiness, 8, 5u, gen_config{5, 3, -1}));
        qmf_config cfg;
        cfg.levels = levels;
        query_ledger led;
        if (levels == 2) {
            run_qddpas_additive(inst, 0, cfg, led);
        } else {
            run_qddpas_additive_3level(inst, 0, cfg, led);
        }
        const auto rows = audit_hybrid_run(led, 8, 1.0L, 1.0L, levels);
        REQUIRE(rows.size() == 5);
        CHECK(rows[0].phase == "classical-ops");
        CHECK(rows[1].phase == "quantum-queries");
        CHECK(rows[2].phase == "quantum-binomial-cap");
        CHECK(rows[3].phase == "counterfactual-qmf-in-dpas");
        CHECK(rows[4].phase == "counterfactual-all-quantum");
        for (const audit_row& r : rows) {
            CHECK(r.n == 8);
            CHECK(r.pass);
        }
        CHECK(rows[0].measured == static_cast<long double>(led.classical_ops));
        CHECK(rows[1].measured == static_cast<long double>(led.quantum_queries));
    }
}

TEST_CASE("counterfactual accountings grow like the full power set") {
    const instance inst = std::get<instance>(
        gen_random(problem_kind::tardiness, 8, 5u, gen_config{5, 3, -1}));
    qmf_config cfg;
    query_ledger led;
    run_qddpas_additive(inst, 0, cfg, led);
    const auto rows = audit_hybrid_run(led, 8, 1.0L, 1.0L, 2);
    // sum_k sqrt(k) C(8,k) is far above the hybrid's actual query count
    CHECK(rows[3].measured > rows[1].measured);
    // and both counterfactuals are within their illustrative 2^n cap
    CHECK(rows[3].cap == rows[4].cap);
    CHECK(rows[3].measured <= rows[3].cap);
}

TEST_CASE("audit rows serialize to a JSON array") {
    const auto rows = sqrt_product_rows(8);
    const std::string text = audit_rows_to_json(rows);
    const nlohmann::json j = nlohmann::json::parse(text);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(j[i]["n"].get<int>() == rows[i].n);
        CHECK(j[i]["phase"].get<std::string>() == rows[i].phase);
        CHECK(j[i]["pass"].get<bool>() == rows[i].pass);
        CHECK(j[i].contains("measured"));
        CHECK(j[i].contains("cap"));
    }
}
