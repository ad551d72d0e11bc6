#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "qdpas/decision.hpp"
#include "qdpas/model.hpp"

namespace qdpas {

// Exact positive rational, kept in lowest terms.
struct rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

rational make_rational(std::int64_t num, std::int64_t den);

// Accepts "a/b", plain integers ("2"), and decimals ("0.25").
rational parse_rational(const std::string& text);

struct scaled_instance {
    flowshop_instance original;
    flowshop_instance scaled;  // p'_{ij} = ceil(p_{ij} / K)
    rational k;                // K = epsilon * P / (n + 2)
    std::int64_t p_max = 0;    // P = max p_{ij}
    bool identity = false;     // all-zero input: scaling skipped
};

// Rounds the instance down to coarse units K = epsilon*P/(n+2) so that the
// scaled magnitudes are polynomial in n and 1/epsilon while any scaled-optimal
// permutation stays within a (1+epsilon) factor of the true optimum.
// The ceilings are computed in exact integer arithmetic,
// ceil(p * b * (n+2) / (a * P)) for epsilon = a/b; floating point could
// break the rounding inequalities at boundaries.
// Guarantees sum of scaled times <= 3n(n+2)/epsilon + 3n.
scaled_instance scale_instance(const flowshop_instance& fs, rational epsilon);

// Any exact flowshop solver: returns (optimal makespan, optimal permutation).
using exact_flowshop_solver =
    std::function<std::pair<std::int64_t, permutation>(const flowshop_instance&)>;

// Enumerates all permutations; guard on n (factorial blowup).
exact_flowshop_solver make_permutation_solver(int n_guard = 8);

// Backed by the flowshop decision table + makespan search + witness walk.
exact_flowshop_solver make_decision_solver(search_mode mode = search_mode::dichotomic);

struct approx_result {
    scaled_instance scaling;
    permutation perm;              // optimal for the scaled instance
    std::int64_t cmax = 0;         // perm evaluated on ORIGINAL times
    std::int64_t cmax_scaled = 0;  // perm evaluated on scaled times
    std::int64_t lower_bound = 0;  // certified lower bound on the true optimum
    rational ratio_bound;          // 1 + epsilon
    bool certified = false;        // den*cmax <= num*lower_bound checked exactly
};

// Solves the scaled instance exactly and evaluates its optimal permutation on
// the original times; the result is within (1+epsilon) of the true optimum.
// lower_bound = max(P, machine loads, job path lengths, K*(scaled opt - (n+2)))
// never exceeds the true optimum, so certified=true is a self-contained
// proof of the ratio; certified=false still satisfies the guarantee, the
// local bound is just too loose to show it.
approx_result approx_solve(const flowshop_instance& fs, rational epsilon,
                           const exact_flowshop_solver& solver);

}  // namespace qdpas
