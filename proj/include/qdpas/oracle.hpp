#pragma once

#include <optional>
#include <utility>

#include "qdpas/ledger.hpp"
#include "qdpas/model.hpp"

namespace qdpas {

struct oracle_result {
    dp_value value = dp_value::inf();
    std::optional<permutation> witness;  // absent iff value is +inf
};

// Objective of scheduling exactly the jobs of perm consecutively from t0.
// DeadlineWC: sum w_j C_j, +inf if any deadline is violated.
// Tardiness:  sum w_j max(0, C_j - d_j).
// PrecWC:     sum w_j C_j, +inf if an edge within perm's set is violated.
// ReleaseWU:  sum w_j [C_j > d_j]  (release dates delay starts).
// ReleaseWC:  sum w_j C_j          (release dates delay starts).
dp_value evaluate_start_at(const instance& inst, const permutation& perm, std::int64_t t0);

// Exhaustive minimum over all |J|! permutations, lexicographically smallest
// witness among ties. guard bounds |J|. When a ledger is given, counts one
// classical op per permutation evaluated.
oracle_result brute_force(const instance& inst, job_set j_set, std::int64_t t0, int guard = 8,
                          query_ledger* led = nullptr);

// Auxiliary problem: minimum makespan over schedules that run the jobs of J
// in some order from t, inserting idle time where useful -- each completion
// only needs C >= max(previous completion, release) + processing -- whose
// exact cost (ReleaseWU: weighted late count, ReleaseWC: weighted completion
// sum) equals eps; +inf if none. eps outside the objective domain and
// t = +inf answer +inf. The witness is the job order; its idle pattern is
// recoverable via aux_perm_value.
oracle_result brute_force_aux(const instance& inst, job_set j_set, dp_value t, std::int64_t eps,
                              int guard = 8, query_ledger* led = nullptr);

// Whole auxiliary row at fixed (J, t): entry eps in [0, eps_domain_of(inst).hi]
// is brute_force_aux's value there. One pass over the permutations answers
// every eps at once, which keeps exhaustive cell sweeps affordable.
std::vector<dp_value> brute_force_aux_row(const instance& inst, job_set j_set, dp_value t,
                                          int guard = 8, query_ledger* led = nullptr);

// Minimum makespan realizing exactly eps with the jobs of perm in the given
// order from t, inserting idle time where useful; +inf when unreachable.
// Re-evaluates witnesses: a claimed (perm, value) pair holds iff this
// returns value.
dp_value aux_perm_value(const instance& inst, const permutation& perm, dp_value t,
                        std::int64_t eps);

struct decision_result {
    bool yes = false;
    std::optional<permutation> witness;
};

// Does some permutation of J admit per-machine begin/end times with
// b_i >= beta_i and e_i <= eps_i (machines 2, 3), machine 1 starting at 0?
// Earliest-start-after-beta scheduling per permutation; optimal because all
// constraints are monotone in start times.
decision_result brute_force_decision(const flowshop_instance& fs, job_set j_set,
                                     temporal_front beta, temporal_front eps, int guard = 8,
                                     query_ledger* led = nullptr);

// Machine 2/3 end times of perm under earliest-start-after-beta scheduling.
std::pair<std::int64_t, std::int64_t> decision_end_times(const flowshop_instance& fs,
                                                         const permutation& perm,
                                                         temporal_front beta);

}  // namespace qdpas
