#pragma once

#include <functional>
#include <optional>

#include "qdpas/ledger.hpp"
#include "qdpas/model.hpp"

namespace qdpas {

// One job j alone: machine 1 on [0, p1j], machine 2 from max(p1j, beta2),
// machine 3 from max(end of machine 2, beta3). Earliest starts are optimal
// because feasibility is monotone in start times.
bool single_job_decision(const flowshop_instance& fs, int j, temporal_front beta,
                         temporal_front eps);

// Bottom-up decision tables D[J, beta, eps] over the full front lattice
// [0, horizon]^4, filled by increasing cardinality through the
// first-job-then-rest recurrence (the rest's clock shifts by the first job's
// machine-1 time).
class dec_solver {
  public:
    explicit dec_solver(const flowshop_instance& fs, int up_to_card = -1,
                        query_ledger* led = nullptr, std::uint64_t cell_guard = 150'000'000);

    // Normalizing query: clamps negative begin bounds to 0, answers false for
    // negative end bounds and for empty intervals.
    bool solve(job_set j, temporal_front beta, temporal_front eps) const;

    std::int64_t horizon() const { return f_ - 1; }
    int n() const { return n_; }
    int filled_card() const { return filled_card_; }

  private:
    friend permutation reconstruct_flowshop_witness(const dec_solver& solver, job_set j,
                                                    temporal_front beta, temporal_front eps);
    int n_ = 0;
    std::int64_t f_ = 0;  // horizon + 1, extent of each front coordinate
    int filled_card_ = 0;
    std::vector<std::int64_t> p1_;
    std::vector<std::vector<std::uint8_t>> cells_;  // [mask][((b2*F+b3)*F+e2)*F+e3]

    bool at(std::uint32_t mask, std::int64_t b2, std::int64_t b3, std::int64_t e2,
            std::int64_t e3) const {
        return cells_[mask][static_cast<std::size_t>(((b2 * f_ + b3) * f_ + e2) * f_ + e3)] != 0;
    }
    void fill(const flowshop_instance& fs, int up_to_card, query_ledger* led);
};

// Dichotomic variant: cells exist only at cardinalities 1, 2, 4, ..., n
// (n a power of two), each cell an OR over balanced bipartitions and a
// front between the halves; the second half's clock shifts by the first
// half's total machine-1 time.
class dec_d_solver {
  public:
    explicit dec_d_solver(const flowshop_instance& fs, query_ledger* led = nullptr,
                          std::uint64_t cell_guard = 150'000'000);

    bool solve(job_set j, temporal_front beta, temporal_front eps) const;
    std::int64_t horizon() const { return f_ - 1; }
    const std::vector<int>& levels() const { return levels_; }

  private:
    int n_ = 0;
    std::int64_t f_ = 0;
    std::vector<std::int64_t> p1_;
    std::vector<int> levels_;
    std::vector<std::vector<std::uint8_t>> cells_;  // dense by mask; level masks only

    bool at(std::uint32_t mask, std::int64_t b2, std::int64_t b3, std::int64_t e2,
            std::int64_t e3) const {
        return cells_[mask][static_cast<std::size_t>(((b2 * f_ + b3) * f_ + e2) * f_ + e3)] != 0;
    }
    void fill(const flowshop_instance& fs, query_ledger* led);
};

// One-shot convenience forms (each builds its tables, so prefer the classes
// when querying repeatedly).
bool solve_dec_dpas(const flowshop_instance& fs, job_set j, temporal_front beta,
                    temporal_front eps, query_ledger* led = nullptr);
bool solve_dec_d_dpas(const flowshop_instance& fs, job_set j, temporal_front beta,
                      temporal_front eps, query_ledger* led = nullptr);

enum class search_mode { dichotomic, linear };

struct makespan_result {
    std::int64_t cmax = 0;
    temporal_front front;  // the certifying end front (cmax, cmax)
};

// Smallest c with decide(c) = D[[n],(0,0),(c,c)] true. Dichotomic mode
// exploits monotonicity in c and asserts it at the boundary; a violation
// aborts with a diagnostic. c = horizon is always feasible.
makespan_result min_makespan(std::int64_t horizon, const std::function<bool(std::int64_t)>& decide,
                             search_mode mode = search_mode::dichotomic);

// Schedule-order witness for a true cell, via the first-job peel on a fully
// filled dec_solver.
permutation reconstruct_flowshop_witness(const dec_solver& solver, job_set j, temporal_front beta,
                                         temporal_front eps);

}  // namespace qdpas
