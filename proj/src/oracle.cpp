#include "qdpas/oracle.hpp"

#include <algorithm>
#include <limits>

namespace qdpas {

dp_value evaluate_start_at(const instance& inst, const permutation& perm, std::int64_t t0) {
    switch (inst.kind) {
        case problem_kind::prec_wc: {
            // edges with both endpoints inside perm's set must be respected
            std::vector<int> pos(inst.n(), -1);
            for (int k = 0; k < static_cast<int>(perm.size()); ++k) pos[perm[k]] = k;
            for (const auto& [a, b] : inst.prec)
                if (pos[a] >= 0 && pos[b] >= 0 && pos[a] > pos[b]) return dp_value::inf();
            break;
        }
        default:
            break;
    }

    const auto c = completion_times(perm, inst, t0);
    dp_value cost = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) {
        const auto& jb = inst.jobs.at(perm[k]);
        switch (inst.kind) {
            case problem_kind::deadline_wc:
                if (jb.dtilde->finite() && c[k] > jb.dtilde->value()) return dp_value::inf();
                cost += dp_value(checked_mul(*jb.w, c[k]));
                break;
            case problem_kind::tardiness:
                cost += dp_value(checked_mul(*jb.w, std::max<std::int64_t>(0, c[k] - *jb.d)));
                break;
            case problem_kind::prec_wc:
            case problem_kind::release_wc:
                cost += dp_value(checked_mul(*jb.w, c[k]));
                break;
            case problem_kind::release_wu:
                if (c[k] > *jb.d) cost += dp_value(*jb.w);
                break;
            case problem_kind::flowshop3:
                throw std::logic_error("evaluate_start_at: flowshop instance");
        }
    }
    return cost;
}

namespace {

void check_guard(job_set j_set, int guard) {
    if (j_set.size() > guard)
        throw guard_error("factorial enumeration guard: |J| = " + std::to_string(j_set.size()) +
                          " exceeds " + std::to_string(guard));
}

}  // namespace

oracle_result brute_force(const instance& inst, job_set j_set, std::int64_t t0, int guard,
                          query_ledger* led) {
    check_guard(j_set, guard);
    oracle_result best;
    if (j_set.empty_set()) {
        best.value = 0;
        best.witness = permutation{};
        return best;
    }
    permutation perm = j_set.elements();  // ascending start => lexicographic enumeration
    do {
        if (led) ++led->classical_ops;
        const dp_value v = evaluate_start_at(inst, perm, t0);
        if (v < best.value) {
            best.value = v;
            best.witness = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (best.value.is_inf()) best.witness.reset();
    return best;
}

namespace {

// Forward sweep over one fixed job order for the auxiliary kinds. After a
// prefix is placed only (accumulated cost, completion) matters, and a smaller
// completion dominates: inserting idle never tightens a later constraint, so
// any continuation of a larger completion is also a continuation of a smaller
// one. Entry a of the result is the minimal completion closing the whole
// order at exact cost a, or INT64_MAX when cost a is unreachable.
std::vector<std::int64_t> aux_perm_row(const instance& inst, const permutation& perm,
                                       std::int64_t t, std::int64_t eps_hi) {
    constexpr std::int64_t none = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> best(static_cast<std::size_t>(eps_hi) + 1, none);
    best[0] = t;
    std::vector<std::int64_t> next(best.size());
    for (const int j : perm) {
        const job& jb = inst.jobs.at(static_cast<std::size_t>(j));
        const std::int64_t w = jb.w.value_or(0);
        const std::int64_t r = jb.r.value_or(0);
        std::fill(next.begin(), next.end(), none);
        for (std::int64_t a = 0; a <= eps_hi; ++a) {
            const std::int64_t prev = best[static_cast<std::size_t>(a)];
            if (prev == none) continue;
            const std::int64_t earliest = std::max(prev, r) + jb.p;
            if (inst.kind == problem_kind::release_wu) {
                const std::int64_t d = *jb.d;
                auto& on_time = next[static_cast<std::size_t>(a)];
                if (earliest <= d) on_time = std::min(on_time, earliest);
                // smallest completion past the deadline (idle in if needed)
                if (a + w <= eps_hi) {
                    auto& late = next[static_cast<std::size_t>(a + w)];
                    late = std::min(late, std::max(earliest, d + 1));
                }
            } else {  // release_wc
                if (w == 0) {
                    auto& cell = next[static_cast<std::size_t>(a)];
                    cell = std::min(cell, earliest);
                } else {
                    // every completion c >= earliest is reachable; costs past
                    // eps_hi sit outside the objective domain
                    for (std::int64_t c = earliest; c <= (eps_hi - a) / w; ++c) {
                        auto& cell = next[static_cast<std::size_t>(a + w * c)];
                        cell = std::min(cell, c);
                    }
                }
            }
        }
        best.swap(next);
    }
    return best;
}

}  // namespace

dp_value aux_perm_value(const instance& inst, const permutation& perm, dp_value t,
                        std::int64_t eps) {
    if (!is_composed_kind(inst.kind))
        throw std::logic_error("aux_perm_value: composed kinds only");
    if (t.is_inf()) return dp_value::inf();
    const std::int64_t eps_hi = eps_domain_of(inst).hi;
    if (eps < 0 || eps > eps_hi) return dp_value::inf();
    if (perm.empty()) return eps == 0 ? t : dp_value::inf();
    const auto row = aux_perm_row(inst, perm, t.value(), eps_hi);
    const std::int64_t v = row[static_cast<std::size_t>(eps)];
    return v == std::numeric_limits<std::int64_t>::max() ? dp_value::inf() : dp_value(v);
}

std::vector<dp_value> brute_force_aux_row(const instance& inst, job_set j_set, dp_value t,
                                          int guard, query_ledger* led) {
    if (!is_composed_kind(inst.kind))
        throw std::logic_error("brute_force_aux_row: composed kinds only");
    check_guard(j_set, guard);
    const std::int64_t eps_hi = eps_domain_of(inst).hi;
    std::vector<dp_value> out(static_cast<std::size_t>(eps_hi) + 1, dp_value::inf());
    if (t.is_inf()) return out;
    if (j_set.empty_set()) {
        // empty schedule ends where it starts, with zero accumulated cost
        out[0] = t;
        return out;
    }
    permutation perm = j_set.elements();
    do {
        if (led) ++led->classical_ops;
        const auto row = aux_perm_row(inst, perm, t.value(), eps_hi);
        for (std::int64_t a = 0; a <= eps_hi; ++a) {
            const std::int64_t v = row[static_cast<std::size_t>(a)];
            if (v != std::numeric_limits<std::int64_t>::max())
                out[static_cast<std::size_t>(a)] = dp_value::min(out[static_cast<std::size_t>(a)],
                                                                 dp_value(v));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

oracle_result brute_force_aux(const instance& inst, job_set j_set, dp_value t, std::int64_t eps,
                              int guard, query_ledger* led) {
    if (!is_composed_kind(inst.kind))
        throw std::logic_error("brute_force_aux: composed kinds only");
    check_guard(j_set, guard);
    oracle_result best;
    if (t.is_inf()) return best;  // composing with an infeasible prefix
    const std::int64_t eps_hi = eps_domain_of(inst).hi;
    if (eps < 0 || eps > eps_hi) return best;  // outside the objective domain
    if (j_set.empty_set()) {
        // empty schedule ends where it starts, with zero accumulated cost
        if (eps == 0) {
            best.value = t;
            best.witness = permutation{};
        }
        return best;
    }
    permutation perm = j_set.elements();
    do {
        if (led) ++led->classical_ops;
        const auto row = aux_perm_row(inst, perm, t.value(), eps_hi);
        const std::int64_t v = row[static_cast<std::size_t>(eps)];
        if (v != std::numeric_limits<std::int64_t>::max() && dp_value(v) < best.value) {
            best.value = dp_value(v);
            best.witness = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (best.value.is_inf()) best.witness.reset();
    return best;
}

std::pair<std::int64_t, std::int64_t> decision_end_times(const flowshop_instance& fs,
                                                         const permutation& perm,
                                                         temporal_front beta) {
    // machine 1 runs from 0; machines 2 and 3 may insert idle time, so their
    // first operations start no earlier than beta
    std::int64_t c1 = 0, c2 = 0, c3 = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) {
        const int j = perm[k];
        c1 += fs.p[0].at(j);
        c2 = std::max(c1, k == 0 ? beta.m2 : c2) + fs.p[1].at(j);
        c3 = std::max(c2, k == 0 ? beta.m3 : c3) + fs.p[2].at(j);
    }
    return {c2, c3};
}

decision_result brute_force_decision(const flowshop_instance& fs, job_set j_set,
                                     temporal_front beta, temporal_front eps, int guard,
                                     query_ledger* led) {
    check_guard(j_set, guard);
    decision_result out;
    if (j_set.empty_set()) {
        // empty machine-i usage collapses begin and end onto one point, which
        // must fit between the fronts
        out.yes = beta.leq(eps);
        if (out.yes) out.witness = permutation{};
        return out;
    }
    if (eps.m2 < 0 || eps.m3 < 0) return out;
    permutation perm = j_set.elements();
    const temporal_front beta_c{std::max<std::int64_t>(0, beta.m2),
                                std::max<std::int64_t>(0, beta.m3)};
    do {
        if (led) ++led->classical_ops;
        const auto [e2, e3] = decision_end_times(fs, perm, beta_c);
        if (e2 <= eps.m2 && e3 <= eps.m3) {
            out.yes = true;
            out.witness = perm;
            return out;  // lexicographically smallest witness
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace qdpas
