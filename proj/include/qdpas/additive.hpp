#pragma once

#include <functional>

#include "qdpas/ledger.hpp"
#include "qdpas/model.hpp"

namespace qdpas {

// Problem plug-in for the additive recurrences. g prices appending job j last
// to a schedule of J started at t; h prices concatenating the halves X and
// J\X of J; tau_shift is the start time of the second half; init_single is
// the one-job table value.
struct add_adapter {
    std::function<dp_value(job_set j_of, int j, std::int64_t t)> g;
    std::function<dp_value(job_set j_of, job_set x, std::int64_t t)> h;
    std::function<std::int64_t(job_set j_of, job_set x, std::int64_t t)> tau_shift;
    std::function<dp_value(int j, std::int64_t t)> init_single;
    time_domain domain;
};

add_adapter adapter_deadline_wc(const instance& inst);
add_adapter adapter_tardiness(const instance& inst);
add_adapter adapter_prec_wc(const instance& inst);
add_adapter make_add_adapter(const instance& inst);  // dispatch on inst.kind

// Dense table over all masks for one fixed start time t0, filled by
// increasing cardinality through the one-job-last recurrence. Cells beyond
// max_card are left at +inf and must not be read.
struct add_table {
    int n = 0;
    std::int64_t t0 = 0;
    int max_card = 0;
    std::vector<std::int64_t> value;   // raw dp_value by mask
    std::vector<std::int8_t> parent;   // job scheduled last; -1 for empty/infeasible
    bool has_parents = false;

    dp_value at(job_set j) const { return dp_value::from_raw(value.at(j.mask)); }
};

struct add_solve_result {
    add_table table;
    dp_value value;       // OPT[[n], t0]
    permutation witness;  // empty when value is +inf (or parents disabled)
};

// Counts exactly one classical op per (J, j) transition: a full run charges
// n * 2^(n-1) ops to the ledger.
add_solve_result solve_add_dpas(const instance& inst, const add_adapter& adapter, std::int64_t t0,
                                query_ledger* led = nullptr, int max_card = -1,
                                bool want_parents = true);

permutation reconstruct_add_witness(const add_table& table, job_set j);

// Dichotomic table: levels of cardinality 1, 2, 4, ..., n (n a power of two),
// each cell (S, t) minimized over balanced bipartitions of S. Cells exist for
// t in [0, t_cap(S)]; the cap extends past the public horizon so that
// tau-shifted lookups stay inside the table for every root t in [0, sum p].
class add_d_table {
  public:
    add_d_table(const instance& inst, const add_adapter& adapter, bool want_parents);

    dp_value at(job_set s, std::int64_t t) const;
    std::int64_t t_cap(job_set s) const;
    const std::vector<int>& levels() const { return levels_; }
    int n() const { return n_; }
    permutation witness(job_set s, std::int64_t t, const add_adapter& adapter) const;

    void fill(const add_adapter& adapter, query_ledger* led);

  private:
    struct cell_block {
        std::vector<std::int64_t> value;  // over t
        std::vector<std::uint32_t> parent_x;
    };

    int n_ = 0;
    std::int64_t sum_p_ = 0;
    bool trivial_domain_ = false;  // T = {0}
    bool has_parents_ = false;
    std::vector<std::int64_t> p_;
    std::vector<int> levels_;
    std::vector<std::vector<cell_block>> blocks_;  // [level index][subset rank]

    std::pair<int, std::uint64_t> locate(job_set s) const;
};

struct add_d_result {
    add_d_table table;
    dp_value value;       // OPT[[n], 0]
    permutation witness;  // empty when +inf or parents disabled
};

// Requires n to be a power of two >= 2 (callers pad first).
add_d_result solve_add_d_dpas(const instance& inst, const add_adapter& adapter,
                              query_ledger* led = nullptr, bool want_parents = false);

}  // namespace qdpas
