#include <variant>

#include "doctest.h"
#include "qdpas/additive.hpp"
#include "qdpas/oracle.hpp"

using namespace qdpas;

namespace {

instance two_job_tardiness() {
    instance inst;
    inst.kind = problem_kind::tardiness;
    inst.jobs = {{2, 2, 0, std::nullopt, std::nullopt}, {2, 1, 4, std::nullopt, std::nullopt}};
    return inst;
}

instance random_additive(problem_kind kind, int n, std::uint64_t seed) {
    gen_config cfg;
    cfg.p_max = 4;
    return std::get<instance>(gen_random(kind, n, seed, cfg));
}

}  // namespace

TEST_CASE("one-job-last recurrence solves the two-job sample") {
    const instance inst = two_job_tardiness();
    const add_adapter ad = make_add_adapter(inst);
    query_ledger led;
    const add_solve_result r = solve_add_dpas(inst, ad, 0, &led);
    CHECK(r.value == dp_value(4));
    CHECK(r.witness == permutation{0, 1});
    CHECK(led.classical_ops == 2 * (1 << 1));  // n * 2^(n-1) = 4
    CHECK(r.table.at(job_set::empty()) == dp_value(0));
    CHECK(r.table.at(job_set::single(0)) == dp_value(2 * 2));
    CHECK(r.table.at(job_set::single(1)) == dp_value(0));
}

TEST_CASE("classical op count is exactly n * 2^(n-1)") {
    for (int n : {1, 3, 5}) {
        const instance inst = random_additive(problem_kind::tardiness, n, 11u + n);
        const add_adapter ad = make_add_adapter(inst);
        query_ledger led;
        solve_add_dpas(inst, ad, 0, &led);
        CHECK(led.classical_ops == static_cast<std::int64_t>(n) << (n - 1));
    }
}

TEST_CASE("table matches brute force on all masks, all kinds") {
    for (problem_kind kind :
         {problem_kind::deadline_wc, problem_kind::tardiness, problem_kind::prec_wc}) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const instance inst = random_additive(kind, 5, seed * 71);
            const add_adapter ad = make_add_adapter(inst);
            const std::int64_t t0 =
                kind == problem_kind::prec_wc ? 0 : static_cast<std::int64_t>(seed % 3);
            const add_solve_result r = solve_add_dpas(inst, ad, t0);
            for (std::uint32_t mask = 0; mask < (1u << 5); ++mask) {
                const job_set s{mask};
                const oracle_result b = brute_force(inst, s, t0);
                CHECK(r.table.at(s) == b.value);
            }
            if (r.value.finite()) {
                CHECK(evaluate_start_at(inst, r.witness, t0) == r.value);
            }
        }
    }
}

TEST_CASE("witness reconstruction is consistent mid-table") {
    const instance inst = random_additive(problem_kind::tardiness, 4, 99);
    const add_adapter ad = make_add_adapter(inst);
    const add_solve_result r = solve_add_dpas(inst, ad, 1);
    for (std::uint32_t mask = 1; mask < 16; ++mask) {
        const job_set s{mask};
        if (!r.table.at(s).finite()) continue;
        const permutation w = reconstruct_add_witness(r.table, s);
        CHECK(evaluate_start_at(inst, w, 1) == r.table.at(s));
    }
}

TEST_CASE("precedence adapter pins the time domain to zero") {
    const instance inst = random_additive(problem_kind::prec_wc, 4, 5);
    const add_adapter ad = make_add_adapter(inst);
    CHECK(ad.domain.lo == 0);
    CHECK(ad.domain.hi == 0);
}

TEST_CASE("dichotomic table equals the linear table at every level subset") {
    for (problem_kind kind :
         {problem_kind::deadline_wc, problem_kind::tardiness, problem_kind::prec_wc}) {
        const instance base = random_additive(kind, 3, 1234);
        const padded_instance pad = pad_to_power_of_two(base);
        const instance& inst = pad.inst;
        const add_adapter ad = make_add_adapter(inst);
        const add_d_result dr = solve_add_d_dpas(inst, ad, nullptr, true);

        // root value equals the plain recurrence from t=0
        const add_solve_result base_r = solve_add_dpas(inst, ad, 0);
        CHECK(dr.value == base_r.value);
        if (dr.value.finite()) {
            CHECK(evaluate_start_at(inst, dr.witness, 0) == dr.value);
        }

        // every stored cell equals brute force at its (subset, t)
        for (int card : dr.table.levels()) {
            for (const job_set s : subsets_of_size(job_set::full(inst.n()), card)) {
                const std::int64_t cap = dr.table.t_cap(s);
                for (std::int64_t t = 0; t <= cap; ++t) {
                    CHECK(dr.table.at(s, t) == brute_force(inst, s, t).value);
                }
            }
        }
    }
}

TEST_CASE("dichotomic witness reconstruction") {
    const instance base = random_additive(problem_kind::tardiness, 4, 321);
    const add_adapter ad = make_add_adapter(base);
    const add_d_result dr = solve_add_d_dpas(base, ad, nullptr, true);
    if (dr.value.finite()) {
        const permutation w = dr.table.witness(job_set::full(4), 0, ad);
        CHECK(evaluate_start_at(base, w, 0) == dr.value);
    }
    // parents disabled -> witness() throws
    const add_d_result np = solve_add_d_dpas(base, ad, nullptr, false);
    CHECK(np.value == dr.value);
    CHECK_THROWS_AS(np.table.witness(job_set::full(4), 0, ad), std::logic_error);
}

TEST_CASE("padding neutrality for the dichotomic solver") {
    const instance base = random_additive(problem_kind::deadline_wc, 3, 777);
    const add_adapter base_ad = make_add_adapter(base);
    const add_solve_result plain = solve_add_dpas(base, base_ad, 0);

    const padded_instance pad = pad_to_power_of_two(base);
    const add_adapter pad_ad = make_add_adapter(pad.inst);
    const add_d_result dr = solve_add_d_dpas(pad.inst, pad_ad, nullptr, true);
    CHECK(dr.value == plain.value);
    if (dr.value.finite()) {
        const permutation projected = project_witness(dr.witness, pad.original_n);
        CHECK(evaluate_start_at(base, projected, 0) == dr.value);
    }
}

TEST_CASE("infeasible deadline instances stay infinite everywhere relevant") {
    instance inst;
    inst.kind = problem_kind::deadline_wc;
    // single job that can never meet its deadline
    inst.jobs = {{5, 1, std::nullopt, std::nullopt, dp_value(2)}};
    const add_adapter ad = make_add_adapter(inst);
    const add_solve_result r = solve_add_dpas(inst, ad, 0);
    CHECK(r.value.is_inf());
    CHECK(r.witness.empty());
}
