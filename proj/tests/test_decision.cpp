#include <algorithm>
#include <variant>

#include "doctest.h"
#include "qdpas/decision.hpp"
#include "qdpas/oracle.hpp"

using namespace qdpas;

namespace {

flowshop_instance two_job_fs() {
    flowshop_instance fs;
    fs.p = {{{1, 5}, {1, 1}, {5, 1}}};  // job 1 = (1,1,5), job 2 = (5,1,1)
    return fs;
}

std::int64_t brute_cmax(const flowshop_instance& fs) {
    permutation perm(fs.n());
    for (int i = 0; i < fs.n(); ++i) perm[i] = i;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    do {
        best = std::min(best, flowshop_simulate(perm, fs).cmax);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

TEST_CASE("single-job cells") {
    const flowshop_instance fs = two_job_fs();
    // job 1 = (1,1,5): e2 = max(1, b2)+1, e3 = max(e2, b3)+5
    CHECK(single_job_decision(fs, 0, {0, 0}, {2, 7}));
    CHECK(!single_job_decision(fs, 0, {0, 0}, {2, 6}));
    CHECK(!single_job_decision(fs, 0, {0, 0}, {1, 7}));
    CHECK(single_job_decision(fs, 0, {3, 0}, {4, 9}));
    CHECK(!single_job_decision(fs, 0, {3, 0}, {3, 9}));
    // beta3 pushes machine 3
    CHECK(single_job_decision(fs, 0, {0, 4}, {2, 9}));
    CHECK(!single_job_decision(fs, 0, {0, 4}, {2, 8}));
}

TEST_CASE("tables match the permutation brute force on every live cell") {
    for (std::uint64_t seed : {3u, 9u}) {
        gen_config cfg;
        cfg.p_max = 2;
        const flowshop_instance fs =
            std::get<flowshop_instance>(gen_random(problem_kind::flowshop3, 3, seed, cfg));
        const dec_solver dec(fs);
        const std::int64_t h = dec.horizon();
        for (std::uint32_t mask = 0; mask < 8; ++mask) {
            const job_set s{mask};
            for (std::int64_t b2 = 0; b2 <= h; ++b2)
                for (std::int64_t b3 = 0; b3 <= h; ++b3)
                    for (std::int64_t e2 = b2; e2 <= h; ++e2)
                        for (std::int64_t e3 = b3; e3 <= h; ++e3) {
                            const bool want =
                                brute_force_decision(fs, s, {b2, b3}, {e2, e3}).yes;
                            CHECK(dec.solve(s, {b2, b3}, {e2, e3}) == want);
                        }
        }
    }
}

TEST_CASE("normalizing queries: negative bounds and clamping") {
    const flowshop_instance fs = two_job_fs();
    const dec_solver dec(fs);
    const job_set all = job_set::full(2);
    // negative end bound -> false
    CHECK(!dec.solve(all, {0, 0}, {-1, 10}));
    CHECK(!dec.solve(all, {0, 0}, {10, -1}));
    // negative begin bound clamps to zero
    CHECK(dec.solve(all, {-5, -5}, {7, 8}) == dec.solve(all, {0, 0}, {7, 8}));
    // empty interval (beta > eps) -> false
    CHECK(!dec.solve(all, {9, 0}, {8, 12}));
}

TEST_CASE("minimum makespan, both search modes, with monotonicity") {
    for (std::uint64_t seed : {1u, 4u, 12u}) {
        gen_config cfg;
        cfg.p_max = 2;
        const flowshop_instance fs =
            std::get<flowshop_instance>(gen_random(problem_kind::flowshop3, 4, seed, cfg));
        const dec_solver dec(fs);
        const std::int64_t h = dec.horizon();
        const job_set all = job_set::full(fs.n());
        const auto decide = [&](std::int64_t c) { return dec.solve(all, {0, 0}, {c, c}); };
        const std::int64_t want = brute_cmax(fs);
        const makespan_result md = min_makespan(h, decide, search_mode::dichotomic);
        const makespan_result ml = min_makespan(h, decide, search_mode::linear);
        CHECK(md.cmax == want);
        CHECK(ml.cmax == want);
        CHECK(md.front == temporal_front{want, want});
        // decide is monotone in c
        bool seen_true = false;
        for (std::int64_t c = 0; c <= h; ++c) {
            const bool v = decide(c);
            if (seen_true) CHECK(v);
            seen_true = seen_true || v;
        }
    }
}

TEST_CASE("two-job sample: known makespans") {
    const flowshop_instance fs = two_job_fs();
    const dec_solver dec(fs);
    const job_set all = job_set::full(2);
    CHECK(dec.horizon() == 14);  // sum of all processing times
    const auto decide = [&](std::int64_t c) { return dec.solve(all, {0, 0}, {c, c}); };
    CHECK(min_makespan(dec.horizon(), decide).cmax == 8);
    CHECK(!decide(7));
    CHECK(decide(8));
}

TEST_CASE("witness reconstruction simulates to a feasible schedule") {
    gen_config cfg;
    cfg.p_max = 2;
    const flowshop_instance fs =
        std::get<flowshop_instance>(gen_random(problem_kind::flowshop3, 4, 21, cfg));
    const dec_solver dec(fs);
    const job_set all = job_set::full(fs.n());
    const std::int64_t cstar = brute_cmax(fs);
    const permutation w = reconstruct_flowshop_witness(dec, all, {0, 0}, {cstar, cstar});
    CHECK(flowshop_simulate(w, fs).cmax == cstar);
}

TEST_CASE("dichotomic tables equal the linear ones at level cardinalities") {
    gen_config cfg;
    cfg.p_max = 2;
    const flowshop_instance base =
        std::get<flowshop_instance>(gen_random(problem_kind::flowshop3, 3, 77, cfg));
    const padded_flowshop pad = pad_to_power_of_two(base);
    const dec_solver dec(pad.fs);
    const dec_d_solver dd(pad.fs);
    CHECK(dd.horizon() == dec.horizon());
    const std::int64_t h = dd.horizon();
    for (int card : dd.levels()) {
        for (const job_set s : subsets_of_size(job_set::full(pad.fs.n()), card)) {
            for (std::int64_t b2 : {std::int64_t{0}, h / 2})
                for (std::int64_t b3 : {std::int64_t{0}, h / 3})
                    for (std::int64_t e2 = 0; e2 <= h; e2 += 2)
                        for (std::int64_t e3 = 0; e3 <= h; e3 += 2) {
                            CHECK(dd.solve(s, {b2, b3}, {e2, e3}) ==
                                  dec.solve(s, {b2, b3}, {e2, e3}));
                        }
        }
    }
    // padding neutrality: the padded optimum equals the original optimum
    const auto decide_pad = [&](std::int64_t c) {
        return dd.solve(job_set::full(pad.fs.n()), {0, 0}, {c, c});
    };
    CHECK(min_makespan(h, decide_pad).cmax == brute_cmax(base));
}

TEST_CASE("querying beyond the filled cardinality throws") {
    const flowshop_instance fs = two_job_fs();
    const dec_solver partial(fs, 1);
    CHECK(partial.filled_card() == 1);
    CHECK_NOTHROW(partial.solve(job_set::single(0), {0, 0}, {7, 8}));
    CHECK_THROWS_AS(partial.solve(job_set::full(2), {0, 0}, {14, 14}), std::logic_error);
}

TEST_CASE("one-shot forms") {
    const flowshop_instance fs = two_job_fs();
    const job_set all = job_set::full(2);
    CHECK(solve_dec_dpas(fs, all, {0, 0}, {8, 8}));
    CHECK(!solve_dec_dpas(fs, all, {0, 0}, {7, 7}));
    CHECK(solve_dec_d_dpas(fs, all, {0, 0}, {8, 8}));
    CHECK(!solve_dec_d_dpas(fs, all, {0, 0}, {7, 7}));
}

TEST_CASE("empty set answers beta <= eps") {
    const flowshop_instance fs = two_job_fs();
    const dec_solver dec(fs);
    CHECK(dec.solve(job_set::empty(), {0, 0}, {0, 0}));
    CHECK(dec.solve(job_set::empty(), {2, 3}, {2, 3}));
    CHECK(!dec.solve(job_set::empty(), {3, 0}, {2, 3}));
}
