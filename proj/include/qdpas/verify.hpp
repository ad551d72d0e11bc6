#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdpas/additive.hpp"
#include "qdpas/composed.hpp"
#include "qdpas/model.hpp"

namespace qdpas {

// Aggregate outcome of cross-checking instances against the brute-force
// oracles. `checks` counts instances fully cross-checked, `assertions`
// counts individual equality tests; every failure carries the offending
// instance as a reproducible document plus what mismatched.
struct verify_report {
    std::int64_t checks = 0;         // instances cross-checked
    std::int64_t failed_checks = 0;  // instances with at least one mismatch
    std::int64_t assertions = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

// standard keeps per-instance cost small (sampled start times / sampled
// hybrid queries); exhaustive checks every table cell at every reachable
// argument and is what the acceptance suite runs.
enum class verify_depth { standard, exhaustive };

// Cross-checks one additive instance: subset-DP table vs brute force on all
// cells, dichotomic table (on the power-of-two padding) vs brute force,
// hybrid deterministic runs vs the classical value, and witness
// re-evaluation. The adapter is a parameter so a harness can inject a
// mutated cost function and watch the checker catch it.
void verify_additive_instance(const instance& inst, const add_adapter& adapter,
                              verify_depth depth, verify_report& report);

// Cross-checks one composed instance (ReleaseWU / ReleaseWC): full-table and
// dichotomic-table equality vs permutation enumeration, sampled
// brute_force_aux cells, hybrid queries at selected (or all) eps, and the
// min-eps meta-search vs the brute-force minimum objective.
void verify_composed_instance(const instance& inst, const comp_adapter& adapter,
                              verify_depth depth, verify_report& report);

// Cross-checks one flowshop instance: every lattice cell vs
// brute_force_decision, dichotomic cells on common cardinalities, hybrid
// decision queries on sampled cells, makespan search in both modes vs the
// brute-force optimum, and monotonicity of D[[n],(0,0),(c,c)] in c.
void verify_flowshop_instance(const flowshop_instance& fs, verify_depth depth,
                              verify_report& report);

// Seeded sweep: `trials` random instances of one kind, sizes cycling over
// 1..n_max. Caps are clamped per kind to keep the brute-force oracles
// tractable (additive: n <= 6; composed: n <= 5, p <= 3, w <= 2;
// flowshop: n <= 4, p <= 2).
void verify_kind(problem_kind kind, int n_max, std::int64_t p_max, int trials,
                 std::uint64_t seed, verify_depth depth, verify_report& report);

}  // namespace qdpas
