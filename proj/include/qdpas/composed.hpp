#pragma once

#include <functional>
#include <optional>

#include "qdpas/ledger.hpp"
#include "qdpas/model.hpp"

namespace qdpas {

// Plug-in for the auxiliary-problem recurrences. init_single is the one-job
// table value: the smallest completion at or past max(t, r_j) + p_j whose
// exact cost equals eps (idle may be inserted before the job), else +inf.
// It is a formula, evaluable at any start time including values beyond the
// public horizon.
struct comp_adapter {
    std::function<dp_value(int j, dp_value t, std::int64_t eps)> init_single;
    time_domain domain;  // plus_infinity_member = true
    eps_domain edomain;
};

comp_adapter make_release_wu_adapter(const instance& inst);
comp_adapter make_release_wc_adapter(const instance& inst);
comp_adapter make_comp_adapter(const instance& inst);

// Largest start time any finite cell value can take, hence the highest t the
// extended table must store so every composed lookup stays inside.
std::int64_t comp_reach_hi(const instance& inst);

// Composes an outer one-job evaluation with an inner optimal value used as
// the start time; +inf propagates (an infeasible prefix poisons the suffix).
dp_value comp_compose(const comp_adapter& adapter, int j, dp_value inner_value, std::int64_t eps);

// Dense table over (mask, t, eps) with t in [0, t_hi(mask)]; eps outside
// [0, E] and t = +inf read as +inf without storage.
class comp_table {
  public:
    comp_table(const instance& inst, const comp_adapter& adapter, bool extended_t,
               bool want_parents);

    dp_value at(job_set j, dp_value t, std::int64_t eps) const;
    std::int64_t t_cap(job_set j) const;
    int n() const { return n_; }
    std::int64_t eps_hi() const { return eps_hi_; }

    // filled-through cardinality bookkeeping lives in the solver functions
    void set(job_set j, std::int64_t t, std::int64_t eps, dp_value v);
    void set_parent(job_set j, std::int64_t t, std::int64_t eps, int job, std::int64_t eps_outer);
    permutation witness(job_set j, std::int64_t t, std::int64_t eps) const;

  private:
    int n_ = 0;
    std::int64_t sum_p_ = 0;
    std::int64_t reach_hi_ = 0;  // max start time reachable through compositions
    bool extended_t_ = false;
    std::int64_t eps_hi_ = 0;
    std::vector<std::int64_t> p_;
    std::vector<std::vector<std::int64_t>> value_;  // [mask][t * (eps_hi+1) + eps]
    struct parent_entry {
        std::int8_t job = -1;
        std::int64_t eps_outer = 0;
    };
    std::vector<std::vector<parent_entry>> parent_;
    bool has_parents_ = false;

    std::size_t idx(std::int64_t t, std::int64_t eps) const {
        return static_cast<std::size_t>(t) * (eps_hi_ + 1) + eps;
    }
};

struct comp_solve_result {
    comp_table table;
    dp_value value;  // OPT[[n], 0, eps] for the requested eps, when asked
};

// One-job-last composition, cells (J, t, eps) for |J| <= up_to_card. The
// start time stays constant down this recurrence, so cells only ever read
// cells at the same t.
comp_table solve_comp_dpas(const instance& inst, const comp_adapter& adapter, int up_to_card = -1,
                           query_ledger* led = nullptr, bool extended_t = false,
                           bool want_parents = false);

// Balanced-bipartition composition over levels 1, 2, 4, ..., n (n a power of
// two). Outer halves are looked up at the inner half's optimal makespan, so
// the table carries the extended t range.
comp_table solve_comp_d_dpas(const instance& inst, const comp_adapter& adapter,
                             query_ledger* led = nullptr);

struct min_eps_result {
    std::optional<std::int64_t> eps_star;
    dp_value makespan = dp_value::inf();
    permutation witness;
};

// Smallest eps in [0, E] with a finite OPT[[n],0,eps]. Ascending scan with
// early exit by default; full_scan evaluates every eps (kept for ledger
// comparisons).
min_eps_result min_feasible_eps(const eps_domain& ed,
                                const std::function<dp_value(std::int64_t)>& value_at_eps,
                                bool full_scan = false);

}  // namespace qdpas
