#include "qdpas/decision.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdpas {

namespace {

std::int64_t flowshop_horizon(const flowshop_instance& fs) {
    std::int64_t total = 0;
    for (int m = 0; m < 3; ++m)
        for (std::int64_t v : fs.p[m]) total += v;
    return total;
}

// Number of front-lattice cells implied by filling `masks` masks over
// [0, horizon]^4; used against the allocation guard.
std::uint64_t lattice_cells(std::uint64_t masks, std::int64_t f) {
    std::uint64_t per = 1;
    for (int i = 0; i < 4; ++i) per *= static_cast<std::uint64_t>(f);
    return masks * per;
}

}  // namespace

bool single_job_decision(const flowshop_instance& fs, int j, temporal_front beta,
                         temporal_front eps) {
    const std::int64_t e1 = fs.p[0][static_cast<std::size_t>(j)];
    const std::int64_t b2 = std::max(e1, beta.m2);
    const std::int64_t e2 = b2 + fs.p[1][static_cast<std::size_t>(j)];
    const std::int64_t b3 = std::max(e2, beta.m3);
    const std::int64_t e3 = b3 + fs.p[2][static_cast<std::size_t>(j)];
    return e2 <= eps.m2 && e3 <= eps.m3;
}

dec_solver::dec_solver(const flowshop_instance& fs, int up_to_card, query_ledger* led,
                       std::uint64_t cell_guard) {
    n_ = fs.n();
    if (n_ < 1) throw guard_error("decision table needs at least one job");
    f_ = flowshop_horizon(fs) + 1;
    if (up_to_card < 0 || up_to_card > n_) up_to_card = n_;
    filled_card_ = up_to_card;
    p1_ = fs.p[0];

    std::uint64_t masks = 0;
    for (int k = 1; k <= up_to_card; ++k) masks += binomial(n_, k);
    if (lattice_cells(masks, f_) > cell_guard)
        throw guard_error("decision table would exceed the memory guard: " +
                          std::to_string(lattice_cells(masks, f_)) + " cells");

    cells_.assign(std::size_t{1} << n_, {});
    fill(fs, up_to_card, led);
}

void dec_solver::fill(const flowshop_instance& fs, int up_to_card, query_ledger* led) {
    const job_set full = job_set::full(n_);
    const std::size_t per_mask = static_cast<std::size_t>(f_) * static_cast<std::size_t>(f_) *
                                 static_cast<std::size_t>(f_) * static_cast<std::size_t>(f_);

    // Cardinality one: the closed form, one operation per lattice cell.
    for (int j = 0; j < n_; ++j) {
        auto& row = cells_[job_set::single(j).mask];
        row.assign(per_mask, 0);
        for (std::int64_t b2 = 0; b2 < f_; ++b2)
            for (std::int64_t b3 = 0; b3 < f_; ++b3)
                for (std::int64_t e2 = 0; e2 < f_; ++e2)
                    for (std::int64_t e3 = 0; e3 < f_; ++e3) {
                        if (led) ++led->classical_ops;
                        if (single_job_decision(fs, j, {b2, b3}, {e2, e3}))
                            row[static_cast<std::size_t>(((b2 * f_ + b3) * f_ + e2) * f_ + e3)] = 1;
                    }
    }

    // Larger cardinalities: pick the job that runs first on machine one, then
    // an intermediate front between it and the rest; the rest's clock starts
    // after the first job's machine-one time.
    for (int card = 2; card <= up_to_card; ++card) {
        for (job_set sub : subsets_of_size(full, card)) {
            auto& row = cells_[sub.mask];
            row.assign(per_mask, 0);
            const auto elems = sub.elements();
            for (std::int64_t b2 = 0; b2 < f_; ++b2)
                for (std::int64_t b3 = 0; b3 < f_; ++b3)
                    for (std::int64_t e2 = b2; e2 < f_; ++e2)
                        for (std::int64_t e3 = b3; e3 < f_; ++e3) {
                            bool val = false;
                            for (int j : elems) {
                                const std::int64_t off = p1_[static_cast<std::size_t>(j)];
                                const std::int64_t re2 = e2 - off;
                                const std::int64_t re3 = e3 - off;
                                if (re2 < 0 || re3 < 0) continue;
                                const std::uint32_t rest = sub.mask & ~job_set::single(j).mask;
                                for (std::int64_t t2 = b2; t2 <= e2 && !val; ++t2)
                                    for (std::int64_t t3 = b3; t3 <= e3; ++t3) {
                                        if (led) ++led->classical_ops;
                                        if (!at(job_set::single(j).mask, b2, b3, t2, t3)) continue;
                                        const std::int64_t rb2 = std::max<std::int64_t>(0, t2 - off);
                                        const std::int64_t rb3 = std::max<std::int64_t>(0, t3 - off);
                                        if (at(rest, rb2, rb3, re2, re3)) {
                                            val = true;
                                            break;
                                        }
                                    }
                                if (val) break;
                            }
                            if (val)
                                row[static_cast<std::size_t>(((b2 * f_ + b3) * f_ + e2) * f_ +
                                                             e3)] = 1;
                        }
        }
    }
}

bool dec_solver::solve(job_set j, temporal_front beta, temporal_front eps) const {
    if (eps.m2 < 0 || eps.m3 < 0) return false;
    beta.m2 = std::max<std::int64_t>(0, beta.m2);
    beta.m3 = std::max<std::int64_t>(0, beta.m3);
    if (!beta.leq(eps)) return false;
    if (j.empty_set()) return true;
    if (beta.m2 >= f_ || beta.m3 >= f_ || eps.m2 >= f_ || eps.m3 >= f_)
        throw std::logic_error("decision query beyond the table horizon");
    if (j.size() > filled_card_) throw std::logic_error("decision query beyond the filled cardinality");
    return at(j.mask, beta.m2, beta.m3, eps.m2, eps.m3);
}

dec_d_solver::dec_d_solver(const flowshop_instance& fs, query_ledger* led,
                           std::uint64_t cell_guard) {
    n_ = fs.n();
    if (n_ < 2 || (n_ & (n_ - 1)) != 0)
        throw guard_error("dichotomic decision tables need a power-of-two job count; pad first");
    f_ = flowshop_horizon(fs) + 1;
    p1_ = fs.p[0];
    for (int k = 1; k <= n_; k *= 2) levels_.push_back(k);

    std::uint64_t masks = 0;
    for (int k : levels_) masks += binomial(n_, k);
    if (lattice_cells(masks, f_) > cell_guard)
        throw guard_error("dichotomic decision table would exceed the memory guard: " +
                          std::to_string(lattice_cells(masks, f_)) + " cells");

    cells_.assign(std::size_t{1} << n_, {});
    fill(fs, led);
}

void dec_d_solver::fill(const flowshop_instance& fs, query_ledger* led) {
    const job_set full = job_set::full(n_);
    const std::size_t per_mask = static_cast<std::size_t>(f_) * static_cast<std::size_t>(f_) *
                                 static_cast<std::size_t>(f_) * static_cast<std::size_t>(f_);

    for (int j = 0; j < n_; ++j) {
        auto& row = cells_[job_set::single(j).mask];
        row.assign(per_mask, 0);
        for (std::int64_t b2 = 0; b2 < f_; ++b2)
            for (std::int64_t b3 = 0; b3 < f_; ++b3)
                for (std::int64_t e2 = 0; e2 < f_; ++e2)
                    for (std::int64_t e3 = 0; e3 < f_; ++e3) {
                        if (led) ++led->classical_ops;
                        if (single_job_decision(fs, j, {b2, b3}, {e2, e3}))
                            row[static_cast<std::size_t>(((b2 * f_ + b3) * f_ + e2) * f_ + e3)] = 1;
                    }
    }

    for (std::size_t li = 1; li < levels_.size(); ++li) {
        const int card = levels_[li];
        const int half = card / 2;
        for (job_set sub : subsets_of_size(full, card)) {
            auto& row = cells_[sub.mask];
            row.assign(per_mask, 0);
            const auto splits = subsets_of_size(sub, half);
            for (std::int64_t b2 = 0; b2 < f_; ++b2)
                for (std::int64_t b3 = 0; b3 < f_; ++b3)
                    for (std::int64_t e2 = b2; e2 < f_; ++e2)
                        for (std::int64_t e3 = b3; e3 < f_; ++e3) {
                            bool val = false;
                            for (job_set x : splits) {
                                std::int64_t off = 0;
                                x.for_each(
                                    [&](int j) { off += p1_[static_cast<std::size_t>(j)]; });
                                const std::int64_t re2 = e2 - off;
                                const std::int64_t re3 = e3 - off;
                                if (re2 < 0 || re3 < 0) continue;
                                const std::uint32_t rest = sub.mask & ~x.mask;
                                for (std::int64_t t2 = b2; t2 <= e2 && !val; ++t2)
                                    for (std::int64_t t3 = b3; t3 <= e3; ++t3) {
                                        if (led) ++led->classical_ops;
                                        if (!at(x.mask, b2, b3, t2, t3)) continue;
                                        const std::int64_t rb2 = std::max<std::int64_t>(0, t2 - off);
                                        const std::int64_t rb3 = std::max<std::int64_t>(0, t3 - off);
                                        if (at(rest, rb2, rb3, re2, re3)) {
                                            val = true;
                                            break;
                                        }
                                    }
                                if (val) break;
                            }
                            if (val)
                                row[static_cast<std::size_t>(((b2 * f_ + b3) * f_ + e2) * f_ +
                                                             e3)] = 1;
                        }
        }
    }
}

bool dec_d_solver::solve(job_set j, temporal_front beta, temporal_front eps) const {
    if (eps.m2 < 0 || eps.m3 < 0) return false;
    beta.m2 = std::max<std::int64_t>(0, beta.m2);
    beta.m3 = std::max<std::int64_t>(0, beta.m3);
    if (!beta.leq(eps)) return false;
    if (j.empty_set()) return true;
    if (beta.m2 >= f_ || beta.m3 >= f_ || eps.m2 >= f_ || eps.m3 >= f_)
        throw std::logic_error("decision query beyond the table horizon");
    if (std::find(levels_.begin(), levels_.end(), j.size()) == levels_.end())
        throw std::logic_error("dichotomic decision query at an unfilled cardinality");
    return at(j.mask, beta.m2, beta.m3, eps.m2, eps.m3);
}

bool solve_dec_dpas(const flowshop_instance& fs, job_set j, temporal_front beta,
                    temporal_front eps, query_ledger* led) {
    dec_solver solver(fs, j.size(), led);
    return solver.solve(j, beta, eps);
}

bool solve_dec_d_dpas(const flowshop_instance& fs, job_set j, temporal_front beta,
                      temporal_front eps, query_ledger* led) {
    dec_d_solver solver(fs, led);
    return solver.solve(j, beta, eps);
}

makespan_result min_makespan(std::int64_t horizon, const std::function<bool(std::int64_t)>& decide,
                             search_mode mode) {
    std::int64_t best = -1;
    if (mode == search_mode::linear) {
        for (std::int64_t c = 0; c <= horizon; ++c) {
            if (decide(c)) {
                best = c;
                break;
            }
        }
        if (best < 0) throw std::logic_error("no feasible makespan up to the horizon");
    } else {
        if (!decide(horizon)) throw std::logic_error("the horizon itself is infeasible");
        std::int64_t lo = -1, hi = horizon;  // decide(lo) false (virtually), decide(hi) true
        while (hi - lo > 1) {
            const std::int64_t mid = lo + (hi - lo) / 2;
            if (decide(mid))
                hi = mid;
            else
                lo = mid;
        }
        best = hi;
        // The bisection is only sound when feasibility is monotone in c;
        // check it explicitly at the boundary.
        if (!decide(best) || (best > 0 && decide(best - 1)))
            throw std::logic_error("makespan feasibility is not monotone at the boundary");
    }
    return {best, {best, best}};
}

namespace {

void peel_first_job(const dec_solver& solver, const std::vector<std::int64_t>& p1,
                    std::uint32_t mask, temporal_front beta, temporal_front eps,
                    permutation& out) {
    const job_set s{mask};
    if (s.size() == 1) {
        const int j = s.elements()[0];
        if (!solver.solve(s, beta, eps))
            throw std::logic_error("witness walk reached a false cell");
        out.push_back(j);
        return;
    }
    for (int j : s.elements()) {
        const job_set rest = s.without(j);
        const std::int64_t off = p1[static_cast<std::size_t>(j)];
        for (std::int64_t t2 = beta.m2; t2 <= eps.m2; ++t2)
            for (std::int64_t t3 = beta.m3; t3 <= eps.m3; ++t3) {
                if (!solver.solve(job_set::single(j), beta, {t2, t3})) continue;
                const temporal_front rb{std::max<std::int64_t>(0, t2 - off),
                                        std::max<std::int64_t>(0, t3 - off)};
                const temporal_front re{eps.m2 - off, eps.m3 - off};
                if (solver.solve(rest, rb, re)) {
                    out.push_back(j);
                    peel_first_job(solver, p1, rest.mask, rb, re, out);
                    return;
                }
            }
    }
    throw std::logic_error("witness walk reached a false cell");
}

}  // namespace

permutation reconstruct_flowshop_witness(const dec_solver& solver, job_set j, temporal_front beta,
                                         temporal_front eps) {
    beta.m2 = std::max<std::int64_t>(0, beta.m2);
    beta.m3 = std::max<std::int64_t>(0, beta.m3);
    if (j.empty_set()) return {};
    if (!solver.solve(j, beta, eps))
        throw std::logic_error("cannot reconstruct a witness for a false cell");
    permutation out;
    peel_first_job(solver, solver.p1_, j.mask, beta, eps, out);
    return out;
}

}  // namespace qdpas
