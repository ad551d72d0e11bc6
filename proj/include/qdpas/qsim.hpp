#pragma once

#include <functional>
#include <limits>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qdpas/additive.hpp"
#include "qdpas/composed.hpp"
#include "qdpas/decision.hpp"
#include "qdpas/ledger.hpp"
#include "qdpas/model.hpp"
#include "qdpas/oracle.hpp"

namespace qdpas {

enum class qmf_mode { deterministic, noisy };

// Emulation knobs for the quantum layer. In noisy mode each repetition of a
// minimum-finding call returns a true optimum with probability
// per_call_success; repetitions are chosen so the whole hybrid solve fails
// with probability at most target_delta, split across the nesting levels.
struct qmf_config {
    qmf_mode mode = qmf_mode::deterministic;
    double per_call_success = 1.0;
    double target_delta = 0.01;
    std::uint64_t seed = 0;
    int levels = 2;  // nesting depth of the hybrid solver (2 or 3)
};

// Smallest r with (1 - p)^r <= delta; at least 1.
int repetitions_for(double p, double delta);

std::uint64_t sqrt_ceil(std::uint64_t n);

struct eval_outcome {
    dp_value value;
    std::uint64_t charge = 1;  // query cost of this evaluation as a subroutine
};

struct pred_outcome {
    bool truth = false;
    std::uint64_t charge = 1;
};

// Emulated minimum-finding / search layer. A call evaluates every candidate
// once (that is the emulation; the charge model, not the work, is
// square-root) and costs reps * ceil(sqrt(domain)) * q, where q is the
// rounded mean charge of the evaluations it performed. Charges are returned,
// not booked: a nested call's charge flows into its caller's evaluation
// charge, and only the outermost call is added to the ledger by the
// orchestrators. Every call is logged with its domain size and level so the
// auditor can recompute counterfactual accountings.
class quantum_runtime {
  public:
    quantum_runtime(const qmf_config& cfg, query_ledger& led);

    // Failure budget target_delta / (levels * 2^level): one share per
    // result-relevant call (the top call plus the calls on the chosen path).
    int reps_for_level(int level) const;
    qmf_mode mode() const { return cfg_.mode; }

    struct qmf_result {
        std::uint64_t index = 0;
        dp_value value;
        std::uint64_t charge = 0;
    };
    // Minimum over [0, domain). Deterministic: exact minimum, smallest index.
    // Noisy: best of reps repetitions; a failed repetition returns a uniform
    // candidate among those with non-optimal values (forced success when all
    // values are equal). Returned values are always values of real
    // candidates, so errors are one-sided for minimization.
    qmf_result qmf(std::uint64_t domain, int level,
                   const std::function<eval_outcome(std::uint64_t)>& eval);

    struct grover_result {
        bool found = false;
        std::uint64_t index = 0;
        std::uint64_t charge = 0;
    };
    // Search over [0, domain) for a true candidate, smallest index first.
    // Noisy repetitions miss an existing witness with probability 1 - p;
    // false positives never occur.
    grover_result grover(std::uint64_t domain, int level,
                         const std::function<pred_outcome(std::uint64_t)>& eval);

  private:
    qmf_config cfg_;
    query_ledger& led_;
    std::mt19937_64 rng_;

    bool rep_succeeds();
};

// One-shot forms over materialized arrays; each books its own
// ceil(sqrt(N)) queries on the ledger.
struct qmf_outcome {
    std::int64_t value = 0;
    std::size_t index = 0;
};
qmf_outcome qmf(const std::vector<std::int64_t>& values, query_ledger& led);

struct grover_outcome {
    bool found = false;
    std::size_t index = 0;
};
grover_outcome grover_or(const std::vector<bool>& truth, query_ledger& led);

// Dense random-access store for precomputed DP cells, with the access
// discipline the hybrid algorithms assume: writes happen only during the
// classical phase (before freeze), reads are counted, and reading a key that
// was never written is a logic error -- which makes the closure argument
// ("the quantum phase only dereferences precomputed cells") executable.
// Witnesses are packed five bits per job id, so they fit alongside values.
class qram {
  public:
    qram(std::size_t capacity, query_ledger& led);

    void put(std::size_t key, dp_value v);
    void put_witness(std::size_t key, const permutation& w);  // w.size() <= 12, ids < 32
    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }
    std::size_t capacity() const { return raw_.size(); }

    dp_value get(std::size_t key) const;          // one counted read
    permutation witness_at(std::size_t key) const;  // one counted read

  private:
    static constexpr std::int64_t k_absent_ = std::numeric_limits<std::int64_t>::min();
    std::vector<std::int64_t> raw_;
    std::vector<std::uint64_t> wpack_;
    query_ledger& led_;
    bool frozen_ = false;
};

struct qrun_result {
    dp_value value = dp_value::inf();
    permutation witness;    // schedule order over original job ids; empty when +inf
    bool verified = false;  // witness re-evaluated classically to exactly `value`
};

// Third-level half sizes (s, n/4 - s) used by the three-level hybrid on an
// n-job (multiple of four) instance; s rounds 0.945 * n/4 to the nearest
// integer, which degenerates to (n/4, 0) for every n <= 36.
std::pair<int, int> third_level_split_size(int n);

// Hybrid solver for the additive problems: classical tables up to
// cardinality n/4 for every start time the quantum phase can reach, frozen
// into QRAM, then nested minimum-finding over balanced bipartitions. The
// final value is re-derived classically inside the chosen top branch, so the
// returned witness is a real schedule evaluating to the returned value
// (>= OPT in noisy mode, == OPT deterministically, asserted).
class qadd_engine {
  public:
    qadd_engine(const instance& inst, std::int64_t t0, const qmf_config& cfg, query_ledger& led);

    qrun_result query();  // one hybrid solve; engine reuse repeats only this phase

    int padded_n() const { return padded_.inst.n(); }
    std::int64_t t_hi() const { return t_hi_; }

  private:
    instance original_;
    padded_instance padded_;
    add_adapter adapter_;
    std::int64_t t0_ = 0;
    std::int64_t t_hi_ = 0;
    int quarter_ = 0;
    std::vector<std::uint64_t> slab_off_;  // by cardinality, in units of subsets
    qram ram_;
    quantum_runtime qrt_;
    query_ledger& led_;
    int levels_ = 2;

    std::size_t key(job_set s, std::int64_t t) const;
    quantum_runtime::qmf_result nested_opt(job_set s, std::int64_t t);
    quantum_runtime::qmf_result third_opt(job_set s, std::int64_t t);
    std::pair<dp_value, permutation> exact_opt(job_set s, std::int64_t t);
};

qrun_result run_qddpas_additive(const instance& inst, std::int64_t t0, const qmf_config& cfg,
                                query_ledger& led);
qrun_result run_qddpas_additive_3level(const instance& inst, std::int64_t t0,
                                       const qmf_config& cfg, query_ledger& led);

// Hybrid solver for the auxiliary-cost problems. The classical phase fills
// cells up to cardinality n/4 over the extended start-time range and all
// budgets; each query(eps0) then runs nested minimum-finding over
// (bipartition, budget split) pairs.
class qcomp_engine {
  public:
    qcomp_engine(const instance& inst, const qmf_config& cfg, query_ledger& led);

    qrun_result query(std::int64_t eps0);
    min_eps_result min_feasible(bool full_scan = false);

    const eps_domain& edomain() const { return edomain_; }
    int padded_n() const { return padded_.inst.n(); }

  private:
    instance original_;
    padded_instance padded_;
    comp_adapter adapter_;
    eps_domain edomain_;
    std::int64_t t_hi_ = 0;
    int quarter_ = 0;
    std::vector<std::uint64_t> slab_off_;
    qram ram_;
    quantum_runtime qrt_;
    query_ledger& led_;

    std::size_t key(job_set s, std::int64_t t, std::int64_t eps) const;
    dp_value cell(job_set s, dp_value t, std::int64_t eps) const;  // handles inf/out-of-range
    quantum_runtime::qmf_result nested_opt(job_set s, dp_value t, std::int64_t eps);
    std::pair<dp_value, permutation> exact_opt(job_set s, dp_value t, std::int64_t eps);
};

qrun_result run_qddpas_composed(const instance& inst, std::int64_t eps0, const qmf_config& cfg,
                                query_ledger& led);

// Hybrid decision solver for the flowshop. The classical phase fills the
// cardinality-(n/4) decision tables over the whole front lattice; queries
// run nested search over (bipartition, intermediate front) pairs. Reads of
// the precomputed cells are counted as QRAM traffic. Answers are one-sided
// in noisy mode: yes is always certified by real cells, no may err.
class qdec_engine {
  public:
    qdec_engine(const flowshop_instance& fs, const qmf_config& cfg, query_ledger& led);

    bool query(temporal_front beta0, temporal_front eps0);
    makespan_result min_makespan(search_mode mode = search_mode::dichotomic);

    std::int64_t horizon() const { return solver_.horizon(); }
    int padded_n() const { return padded_.fs.n(); }

  private:
    padded_flowshop padded_;
    std::vector<std::int64_t> p1_;
    int quarter_ = 0;
    dec_solver solver_;  // cardinality <= n/4 cells; reads counted below
    quantum_runtime qrt_;
    query_ledger& led_;

    bool read_cell(job_set s, temporal_front beta, temporal_front eps) const;
    quantum_runtime::grover_result nested_dec(job_set s, temporal_front beta, temporal_front eps);
};

bool run_qdec_ddpas(const flowshop_instance& fs, temporal_front beta0, temporal_front eps0,
                    const qmf_config& cfg, query_ledger& led);

}  // namespace qdpas
