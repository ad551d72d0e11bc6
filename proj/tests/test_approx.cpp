#include <algorithm>
#include <variant>

#include "doctest.h"
#include "qdpas/approx.hpp"

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

TEST_CASE("rational parsing and normalization") {
    CHECK(parse_rational("1/4").num == 1);
    CHECK(parse_rational("1/4").den == 4);
    CHECK(parse_rational("2/8").num == 1);
    CHECK(parse_rational("2/8").den == 4);
    CHECK(parse_rational("2").num == 2);
    CHECK(parse_rational("2").den == 1);
    CHECK(parse_rational("0.25").num == 1);
    CHECK(parse_rational("0.25").den == 4);
    CHECK(parse_rational("0.1").den == 10);
    CHECK_THROWS_AS(parse_rational("0"), parse_error);
    CHECK_THROWS_AS(parse_rational("-1/2"), parse_error);
    CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rational("abc"), parse_error);
    CHECK_THROWS_AS(make_rational(1, 0), parse_error);
}

TEST_CASE("frozen scalings of the two-job sample") {
    const flowshop_instance fs = two_job_fs();
    // epsilon = 1: K = P/(n+2) = 5/4; ceil(p*4/5) -> (1,1,4) and (4,1,1)
    const scaled_instance s1 = scale_instance(fs, make_rational(1, 1));
    CHECK(s1.k.num == 5);
    CHECK(s1.k.den == 4);
    CHECK(s1.p_max == 5);
    CHECK(!s1.identity);
    CHECK(s1.scaled.p[0] == std::vector<std::int64_t>{1, 4});
    CHECK(s1.scaled.p[1] == std::vector<std::int64_t>{1, 1});
    CHECK(s1.scaled.p[2] == std::vector<std::int64_t>{4, 1});
    // epsilon = 1/2: K = 5/8; ceil(p*8/5) -> (2,2,8) and (8,2,2)
    const scaled_instance s2 = scale_instance(fs, make_rational(1, 2));
    CHECK(s2.k.num == 5);
    CHECK(s2.k.den == 8);
    CHECK(s2.scaled.p[0] == std::vector<std::int64_t>{2, 8});
    CHECK(s2.scaled.p[1] == std::vector<std::int64_t>{2, 2});
    CHECK(s2.scaled.p[2] == std::vector<std::int64_t>{8, 2});
}

TEST_CASE("scaled totals respect the integer magnitude bound") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        gen_config cfg;
        cfg.p_max = 9;
        const int n = 1 + static_cast<int>(seed % 6);
        const flowshop_instance fs =
            std::get<flowshop_instance>(gen_random(problem_kind::flowshop3, n, seed, cfg));
        for (const rational eps : {make_rational(1, 10), make_rational(1, 4),
                                   make_rational(1, 2), make_rational(1, 1)}) {
            const scaled_instance s = scale_instance(fs, eps);
            std::int64_t total = 0;
            for (const auto& row : s.scaled.p)
                for (std::int64_t v : row) total += v;
            // sum p' <= 3n(n+2)/eps + 3n, checked as a*total <= 3n(n+2)b + 3na
            CHECK(eps.num * total <= 3 * n * (n + 2) * eps.den + 3 * n * eps.num);
        }
    }
}

TEST_CASE("uniform scaling of all processing times scales every makespan") {
    // multiplying all p by a positive integer multiplies C(perm) by the same
    // factor, exactly, for every permutation
    gen_config cfg;
    cfg.p_max = 4;
    const flowshop_instance fs =
        std::get<flowshop_instance>(gen_random(problem_kind::flowshop3, 4, 3, cfg));
    for (std::int64_t alpha : {2, 3}) {
        flowshop_instance scaled = fs;
        for (auto& row : scaled.p)
            for (auto& v : row) v *= alpha;
        permutation perm(fs.n());
        for (int i = 0; i < fs.n(); ++i) perm[i] = i;
        do {
            CHECK(flowshop_simulate(perm, scaled).cmax == alpha * flowshop_simulate(perm, fs).cmax);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("per-operation increases shift makespans by at most beta*(n+2)") {
    gen_config cfg;
    cfg.p_max = 4;
    const flowshop_instance fs =
        std::get<flowshop_instance>(gen_random(problem_kind::flowshop3, 4, 8, cfg));
    const int n = fs.n();
    for (std::int64_t beta : {1, 2, 3}) {
        flowshop_instance bumped = fs;
        for (auto& row : bumped.p)
            for (auto& v : row) v += beta;
        permutation perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        do {
            const std::int64_t before = flowshop_simulate(perm, fs).cmax;
            const std::int64_t after = flowshop_simulate(perm, bumped).cmax;
            CHECK(after >= before);
            CHECK(after <= before + beta * (n + 2));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("approximation on the two-job sample is certified") {
    const flowshop_instance fs = two_job_fs();
    const approx_result r =
        approx_solve(fs, make_rational(1, 1), make_permutation_solver());
    CHECK(r.cmax == 8);  // scaled optimum picks the same order here
    CHECK(r.perm == permutation{0, 1});
    CHECK(r.cmax_scaled == 7);
    CHECK(r.lower_bound >= 5);
    CHECK(r.certified);
    CHECK(r.ratio_bound.num == 2);
    CHECK(r.ratio_bound.den == 1);
}

TEST_CASE("ratio holds against the true optimum across random instances") {
    int certified = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        gen_config cfg;
        cfg.p_max = 9;
        const int n = 1 + static_cast<int>(seed % 5);
        const flowshop_instance fs =
            std::get<flowshop_instance>(gen_random(problem_kind::flowshop3, n, 100 + seed, cfg));
        const std::int64_t opt = brute_cmax(fs);
        for (const rational eps : {make_rational(1, 4), make_rational(1, 1)}) {
            const approx_result r = approx_solve(fs, eps, make_permutation_solver());
            CHECK(flowshop_simulate(r.perm, fs).cmax == r.cmax);
            // cmax <= (1 + eps) * opt, cross-multiplied exactly
            CHECK(r.cmax * eps.den <= opt * (eps.den + eps.num));
            CHECK(r.lower_bound <= opt);
            if (r.certified) ++certified;
        }
    }
    CHECK(certified > 0);
}

TEST_CASE("decision-backed exact solver agrees with permutation enumeration") {
    gen_config cfg;
    cfg.p_max = 3;
    const flowshop_instance fs =
        std::get<flowshop_instance>(gen_random(problem_kind::flowshop3, 4, 9, cfg));
    const auto by_perm = make_permutation_solver()(fs);
    const auto by_dec = make_decision_solver()(fs);
    CHECK(by_perm.first == by_dec.first);
    CHECK(flowshop_simulate(by_dec.second, fs).cmax == by_dec.first);
}

TEST_CASE("all-zero instances short-circuit to identity") {
    flowshop_instance fs;
    fs.p = {{{0, 0}, {0, 0}, {0, 0}}};
    const scaled_instance s = scale_instance(fs, make_rational(1, 2));
    CHECK(s.identity);
    CHECK(s.scaled.p == fs.p);
    const approx_result r = approx_solve(fs, make_rational(1, 2), make_permutation_solver());
    CHECK(r.cmax == 0);
    CHECK(r.certified);  // 0 <= anything
}
