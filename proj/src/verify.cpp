#include "qdpas/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qdpas/decision.hpp"
#include "qdpas/oracle.hpp"
#include "qdpas/qsim.hpp"

namespace qdpas {

namespace {

constexpr std::size_t k_max_failures_per_instance = 8;

struct recorder {
    verify_report& report;
    std::string doc;
    std::size_t recorded = 0;

    ~recorder() {
        if (recorded > 0) ++report.failed_checks;
    }

    template <class F>
    void expect(bool cond, F&& what) {
        ++report.assertions;
        if (cond) return;
        if (recorded < k_max_failures_per_instance) {
            report.failures.push_back(std::string(what()) + "\ninstance:\n" + doc);
        }
        ++recorded;
    }
};

// Objective and makespan of scheduling exactly the jobs of perm from t0,
// for the composed kinds (release dates delay starts).
std::pair<std::int64_t, std::int64_t> aux_cost_and_completion(const instance& inst,
                                                              const permutation& perm,
                                                              std::int64_t t0) {
    if (perm.empty()) return {0, t0};
    const auto completion = completion_times(perm, inst, t0);
    std::int64_t cost = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        const job& jb = inst.jobs[static_cast<std::size_t>(perm[i])];
        if (inst.kind == problem_kind::release_wu) {
            if (completion[i] > *jb.d) cost += *jb.w;
        } else {
            cost += checked_mul(*jb.w, completion[i]);
        }
    }
    return {cost, completion.back()};
}

std::int64_t brute_min_objective(const instance& inst, std::int64_t t0) {
    permutation perm = job_set::full(inst.n()).elements();
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    do {
        best = std::min(best, aux_cost_and_completion(inst, perm, t0).first);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
    return seed * 6364136223846793005ull +
           (static_cast<std::uint64_t>(trial) + 1) * 1442695040888963407ull;
}

}  // namespace

void verify_additive_instance(const instance& inst, const add_adapter& adapter,
                              verify_depth depth, verify_report& report) {
    ++report.checks;
    recorder rec{report, to_document(inst)};
    const int n = inst.n();
    const time_domain dom = adapter.domain;

    std::vector<std::int64_t> t_sweep;
    if (depth == verify_depth::exhaustive) {
        for (std::int64_t t = dom.lo; t <= dom.hi; ++t) t_sweep.push_back(t);
    } else {
        t_sweep = {dom.lo, (dom.lo + dom.hi) / 2, dom.hi};
        t_sweep.erase(std::unique(t_sweep.begin(), t_sweep.end()), t_sweep.end());
    }

    std::map<std::int64_t, dp_value> baseline;  // full-set OPT per start time
    for (std::int64_t t0 : t_sweep) {
        const add_solve_result res = solve_add_dpas(inst, adapter, t0);
        baseline[t0] = res.value;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            const job_set s{mask};
            const oracle_result br = brute_force(inst, s, t0);
            rec.expect(res.table.at(s) == br.value, [&] {
                return "subset-DP cell != brute force (mask=" + std::to_string(mask) +
                       ", t0=" + std::to_string(t0) + "): " + res.table.at(s).str() + " vs " +
                       br.value.str();
            });
        }
        if (res.value.finite()) {
            rec.expect(evaluate_start_at(inst, res.witness, t0) == res.value, [&] {
                return "subset-DP witness does not re-evaluate to its value at t0=" +
                       std::to_string(t0);
            });
        }

        query_ledger led2;
        const qmf_config cfg2;
        const qrun_result q2 = run_qddpas_additive(inst, t0, cfg2, led2);
        rec.expect(q2.value == res.value, [&] {
            return "2-level hybrid value != classical value at t0=" + std::to_string(t0) + ": " +
                   q2.value.str() + " vs " + res.value.str();
        });
        rec.expect(q2.verified, [&] {
            return "2-level hybrid witness not verified at t0=" + std::to_string(t0);
        });

        query_ledger led3;
        qmf_config cfg3;
        cfg3.levels = 3;
        const qrun_result q3 = run_qddpas_additive_3level(inst, t0, cfg3, led3);
        rec.expect(q3.value == res.value, [&] {
            return "3-level hybrid value != classical value at t0=" + std::to_string(t0) + ": " +
                   q3.value.str() + " vs " + res.value.str();
        });
        rec.expect(q3.verified, [&] {
            return "3-level hybrid witness not verified at t0=" + std::to_string(t0);
        });
    }

    // Dichotomic table on the power-of-two padding.
    const padded_instance pad = pad_to_power_of_two(inst);
    const add_adapter pad_adapter = make_add_adapter(pad.inst);
    const add_d_result dres = solve_add_d_dpas(pad.inst, pad_adapter, nullptr, true);
    const int np = pad.inst.n();
    const job_set pad_full = job_set::full(np);

    std::int64_t t_max = 0;
    for (int card : dres.table.levels()) {
        for (job_set s : subsets_of_size(pad_full, card)) {
            t_max = std::max(t_max, dres.table.t_cap(s));
        }
    }
    for (std::int64_t t = 0; t <= t_max; ++t) {
        // One plain-DP solve covers every dichotomic cell at this start time.
        const add_solve_result at_t = solve_add_dpas(pad.inst, pad_adapter, t, nullptr, -1, false);
        for (int card : dres.table.levels()) {
            for (job_set s : subsets_of_size(pad_full, card)) {
                if (t > dres.table.t_cap(s)) continue;
                rec.expect(dres.table.at(s, t) == at_t.table.at(s), [&] {
                    return "dichotomic cell != subset-DP (mask=" + std::to_string(s.mask) +
                           ", t=" + std::to_string(t) + "): " + dres.table.at(s, t).str() +
                           " vs " + at_t.table.at(s).str();
                });
            }
        }
        const auto base = baseline.find(t);
        if (base != baseline.end()) {
            rec.expect(at_t.table.at(pad_full) == base->second, [&] {
                return "padding changed the full-set optimum at t0=" + std::to_string(t);
            });
        }
    }

    // Brute force against the dichotomic table itself (cards small enough to
    // enumerate; the full padded card in exhaustive mode over the public
    // horizon).
    for (int card : dres.table.levels()) {
        const bool cheap = card <= 4;
        if (!cheap && depth != verify_depth::exhaustive) continue;
        for (job_set s : subsets_of_size(pad_full, card)) {
            const std::int64_t cap =
                cheap ? dres.table.t_cap(s) : std::min(dres.table.t_cap(s), dom.hi);
            for (std::int64_t t = 0; t <= cap; ++t) {
                const oracle_result br = brute_force(pad.inst, s, t);
                rec.expect(dres.table.at(s, t) == br.value, [&] {
                    return "dichotomic cell != brute force (mask=" + std::to_string(s.mask) +
                           ", t=" + std::to_string(t) + "): " + dres.table.at(s, t).str() +
                           " vs " + br.value.str();
                });
            }
        }
    }

    // Dichotomic witness on the full padded set at t = 0.
    if (dres.value.finite()) {
        const permutation w = dres.table.witness(pad_full, 0, pad_adapter);
        rec.expect(evaluate_start_at(pad.inst, w, 0) == dres.value,
                   [&] { return "dichotomic witness does not re-evaluate to its value"; });
    }
}

void verify_composed_instance(const instance& inst, const comp_adapter& adapter,
                              verify_depth depth, verify_report& report) {
    ++report.checks;
    recorder rec{report, to_document(inst)};
    const int n = inst.n();
    const eps_domain ed = adapter.edomain;
    const job_set full = job_set::full(n);

    const comp_table ctab =
        solve_comp_dpas(inst, adapter, -1, nullptr, /*extended_t=*/false, /*want_parents=*/true);

    // Every cell against permutation enumeration (one pass per (J, t) yields
    // the whole achievable-cost profile).
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const job_set s{mask};
        if (depth != verify_depth::exhaustive && s.size() > 3 && mask != full.mask) continue;
        const std::int64_t cap = ctab.t_cap(s);
        std::vector<std::int64_t> t_list;
        if (depth == verify_depth::exhaustive) {
            for (std::int64_t t = 0; t <= cap; ++t) t_list.push_back(t);
        } else {
            t_list = {0, cap / 2, cap};
            t_list.erase(std::unique(t_list.begin(), t_list.end()), t_list.end());
        }
        for (std::int64_t t : t_list) {
            const auto profile = brute_force_aux_row(inst, s, dp_value(t));
            for (std::int64_t eps = 0; eps <= ed.hi; ++eps) {
                const dp_value cell = ctab.at(s, dp_value(t), eps);
                rec.expect(cell == profile[static_cast<std::size_t>(eps)], [&] {
                    return "composed cell != permutation enumeration (mask=" +
                           std::to_string(mask) + ", t=" + std::to_string(t) +
                           ", eps=" + std::to_string(eps) + ")";
                });
            }
        }
    }

    // Cells with t = +inf are +inf for nonempty J.
    if (n >= 1) {
        rec.expect(ctab.at(full, dp_value::inf(), 0).is_inf(),
                   [&] { return "composed cell at t=+inf is not +inf"; });
    }

    // Tie the profile helper back to the single-cell oracle on sampled cells.
    for (int k = 0; k < 24; ++k) {
        const std::uint32_t mask = static_cast<std::uint32_t>((k * 2654435761ull) % (1u << n));
        const job_set s{mask};
        const std::int64_t t = (k * 5) % (ctab.t_cap(s) + 1);
        const std::int64_t eps = (k * 7) % (ed.hi + 1);
        const oracle_result br = brute_force_aux(inst, s, dp_value(t), eps);
        rec.expect(ctab.at(s, dp_value(t), eps) == br.value, [&] {
            return "composed cell != brute_force_aux (mask=" + std::to_string(mask) +
                   ", t=" + std::to_string(t) + ", eps=" + std::to_string(eps) + ")";
        });
    }

    // Dichotomic levels on the power-of-two padding, against enumeration.
    const padded_instance pad = pad_to_power_of_two(inst);
    const comp_adapter pad_adapter = make_comp_adapter(pad.inst);
    const comp_table dt = solve_comp_d_dpas(pad.inst, pad_adapter);
    const job_set pad_full = job_set::full(pad.inst.n());
    const std::int64_t pad_sp = total_p(pad.inst);
    // Padding jobs process nothing and never pay cost, so a mask's profile
    // equals its real-job profile; stripping them keeps the factorial at the
    // real size. Cells past the processing horizon exist to serve composed
    // lookups; sample them instead of sweeping (small cardinalities only,
    // where rows stay cheap).
    const std::uint32_t real_mask = (1u << n) - 1;
    for (int card = 1; card <= pad.inst.n(); card *= 2) {
        for (job_set s : subsets_of_size(pad_full, card)) {
            const std::int64_t cap = dt.t_cap(s);
            std::vector<std::int64_t> t_list;
            if (depth == verify_depth::exhaustive) {
                for (std::int64_t t = 0; t <= std::min(cap, pad_sp); ++t) t_list.push_back(t);
                if (card <= 2 && cap > pad_sp) {
                    t_list.push_back(pad_sp + (cap - pad_sp) / 2);
                    t_list.push_back(cap);
                }
            } else {
                t_list = {0, cap};
                if (card > 2) t_list[1] = std::min(cap, pad_sp);
            }
            std::sort(t_list.begin(), t_list.end());
            t_list.erase(std::unique(t_list.begin(), t_list.end()), t_list.end());
            const job_set s_real{s.mask & real_mask};
            for (std::int64_t t : t_list) {
                const auto profile = brute_force_aux_row(pad.inst, s_real, dp_value(t));
                for (std::int64_t eps = 0; eps <= ed.hi; ++eps) {
                    const dp_value cell = dt.at(s, dp_value(t), eps);
                    rec.expect(cell == profile[static_cast<std::size_t>(eps)], [&] {
                        return "dichotomic composed cell != enumeration (mask=" +
                               std::to_string(s.mask) + ", t=" + std::to_string(t) +
                               ", eps=" + std::to_string(eps) + ")";
                    });
                }
            }
        }
    }
    // Padding neutrality at the top row.
    for (std::int64_t eps = 0; eps <= ed.hi; ++eps) {
        rec.expect(dt.at(pad_full, dp_value(0), eps) == ctab.at(full, dp_value(0), eps),
                   [&] {
                       return "padded dichotomic top row != original top row at eps=" +
                              std::to_string(eps);
                   });
    }

    // Hybrid queries (deterministic): all eps when the domain is small,
    // otherwise a deterministic sample around the interesting points.
    const min_eps_result me = min_feasible_eps(
        ed, [&](std::int64_t e) { return ctab.at(full, dp_value(0), e); });
    {
        query_ledger led;
        const qmf_config cfg;
        qcomp_engine eng(inst, cfg, led);
        std::vector<std::int64_t> eps_list;
        if (ed.hi <= 40) {
            for (std::int64_t e = 0; e <= ed.hi; ++e) eps_list.push_back(e);
        } else {
            eps_list = {0, ed.hi / 2, ed.hi};
            if (me.eps_star) {
                eps_list.push_back(*me.eps_star);
                if (*me.eps_star > 0) eps_list.push_back(*me.eps_star - 1);
                if (*me.eps_star < ed.hi) eps_list.push_back(*me.eps_star + 1);
            }
            std::sort(eps_list.begin(), eps_list.end());
            eps_list.erase(std::unique(eps_list.begin(), eps_list.end()), eps_list.end());
        }
        for (std::int64_t eps0 : eps_list) {
            const qrun_result q = eng.query(eps0);
            rec.expect(q.value == ctab.at(full, dp_value(0), eps0), [&] {
                return "hybrid composed value != classical cell at eps=" + std::to_string(eps0) +
                       ": " + q.value.str();
            });
            rec.expect(q.verified,
                       [&] { return "hybrid composed run not verified at eps=" + std::to_string(eps0); });
        }
        // Out-of-domain eps answers +inf.
        const qrun_result qbad = eng.query(ed.hi + 3);
        rec.expect(qbad.value.is_inf(), [&] { return "hybrid composed accepted eps > E"; });

        // Meta-search with the hybrid subroutine (cheap domains only).
        if (ed.hi <= 40) {
            const min_eps_result hme = eng.min_feasible();
            rec.expect(hme.eps_star == me.eps_star,
                       [&] { return "hybrid min-eps != classical min-eps"; });
        }
    }

    // Classical min-eps vs the brute-force minimum objective. A minimum
    // above E.hi falls outside the objective domain and must come back empty.
    const std::int64_t bmin = brute_min_objective(inst, 0);
    if (me.eps_star) {
        rec.expect(*me.eps_star == bmin, [&] {
            return "min feasible eps " + std::to_string(*me.eps_star) +
                   " != brute-force minimum objective " + std::to_string(bmin);
        });
        const permutation w = ctab.witness(full, 0, *me.eps_star);
        const auto [wcost, wcmax] = aux_cost_and_completion(inst, w, 0);
        rec.expect(wcost == *me.eps_star && dp_value(wcmax) == me.makespan,
                   [&] { return "witness at min feasible eps does not re-evaluate"; });
    } else {
        rec.expect(bmin > ed.hi, [&] {
            return "no feasible eps although the brute-force minimum " + std::to_string(bmin) +
                   " lies inside the objective domain";
        });
    }
}

void verify_flowshop_instance(const flowshop_instance& fs, verify_depth depth,
                              verify_report& report) {
    ++report.checks;
    recorder rec{report, to_document(fs)};
    const int n = fs.n();
    const job_set full = job_set::full(n);

    dec_solver dec(fs, -1);
    const std::int64_t horizon = dec.horizon();

    // Every live lattice cell against the brute-force decision oracle.
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const job_set s{mask};
        if (depth != verify_depth::exhaustive && s.size() > 2 && mask != full.mask) continue;
        for (std::int64_t b2 = 0; b2 <= horizon; ++b2) {
            for (std::int64_t e2 = b2; e2 <= horizon; ++e2) {
                for (std::int64_t b3 = 0; b3 <= horizon; ++b3) {
                    for (std::int64_t e3 = b3; e3 <= horizon; ++e3) {
                        const temporal_front beta{b2, b3};
                        const temporal_front eps{e2, e3};
                        const bool got = dec.solve(s, beta, eps);
                        const bool want = brute_force_decision(fs, s, beta, eps).yes;
                        rec.expect(got == want, [&] {
                            return "decision cell != brute force (mask=" + std::to_string(mask) +
                                   ", beta=(" + std::to_string(b2) + "," + std::to_string(b3) +
                                   "), eps=(" + std::to_string(e2) + "," + std::to_string(e3) +
                                   "))";
                        });
                    }
                }
            }
        }
    }

    // Dichotomic levels on the power-of-two padding, against the plain table.
    const padded_flowshop pfs = pad_to_power_of_two(fs);
    const dec_d_solver decd(pfs.fs);
    dec_solver pdec_storage(pfs.fs, -1);
    const dec_solver& pdec = pfs.fs.n() == n ? dec : pdec_storage;
    const job_set pad_full = job_set::full(pfs.fs.n());
    for (int card : decd.levels()) {
        for (job_set s : subsets_of_size(pad_full, card)) {
            for (std::int64_t b2 = 0; b2 <= horizon; ++b2) {
                for (std::int64_t e2 = b2; e2 <= horizon; ++e2) {
                    for (std::int64_t b3 = 0; b3 <= horizon; ++b3) {
                        for (std::int64_t e3 = b3; e3 <= horizon; ++e3) {
                            const temporal_front beta{b2, b3};
                            const temporal_front eps{e2, e3};
                            rec.expect(decd.solve(s, beta, eps) == pdec.solve(s, beta, eps), [&] {
                                return "dichotomic decision cell != plain cell (mask=" +
                                       std::to_string(s.mask) + ", beta=(" + std::to_string(b2) +
                                       "," + std::to_string(b3) + "), eps=(" + std::to_string(e2) +
                                       "," + std::to_string(e3) + "))";
                            });
                        }
                    }
                }
            }
        }
    }

    // Brute-force optimum and both makespan search modes.
    std::int64_t cstar = 0;
    if (n >= 1) {
        permutation perm = full.elements();
        cstar = std::numeric_limits<std::int64_t>::max();
        do {
            cstar = std::min(cstar, flowshop_simulate(perm, fs).cmax);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    const auto decide = [&](std::int64_t c) { return dec.solve(full, {0, 0}, {c, c}); };
    const makespan_result mk_d = min_makespan(horizon, decide, search_mode::dichotomic);
    const makespan_result mk_l = min_makespan(horizon, decide, search_mode::linear);
    rec.expect(mk_d.cmax == cstar, [&] {
        return "dichotomic makespan search " + std::to_string(mk_d.cmax) +
               " != brute-force optimum " + std::to_string(cstar);
    });
    rec.expect(mk_l.cmax == cstar, [&] {
        return "linear makespan search " + std::to_string(mk_l.cmax) + " != brute-force optimum " +
               std::to_string(cstar);
    });

    // Monotone feasibility column.
    bool prev = false;
    for (std::int64_t c = 0; c <= horizon; ++c) {
        const bool cur = decide(c);
        rec.expect(!prev || cur, [&] {
            return "feasibility not monotone in the makespan bound at c=" + std::to_string(c);
        });
        prev = cur;
    }

    // Witness at the optimum.
    if (n >= 1) {
        const permutation w = reconstruct_flowshop_witness(dec, full, {0, 0}, {cstar, cstar});
        rec.expect(flowshop_simulate(w, fs).cmax == cstar,
                   [&] { return "decision witness does not achieve the optimum makespan"; });
    }

    // Hybrid decision runs on sampled cells + makespan search.
    {
        query_ledger led;
        const qmf_config cfg;
        qdec_engine eng(fs, cfg, led);
        std::vector<std::pair<temporal_front, temporal_front>> cells;
        cells.push_back({{0, 0}, {0, 0}});
        cells.push_back({{0, 0}, {horizon, horizon}});
        if (cstar > 0) cells.push_back({{0, 0}, {cstar - 1, cstar - 1}});
        cells.push_back({{0, 0}, {cstar, cstar}});
        if (horizon >= 1) {
            cells.push_back({{0, 0}, {horizon - 1, horizon}});
            cells.push_back({{0, 0}, {horizon, horizon - 1}});
            cells.push_back({{1, 0}, {horizon, horizon}});
        }
        for (const auto& [beta, eps] : cells) {
            rec.expect(eng.query(beta, eps) == dec.solve(full, beta, eps), [&] {
                return "hybrid decision != plain cell (beta=(" + std::to_string(beta.m2) + "," +
                       std::to_string(beta.m3) + "), eps=(" + std::to_string(eps.m2) + "," +
                       std::to_string(eps.m3) + "))";
            });
        }
        rec.expect(eng.min_makespan(search_mode::dichotomic).cmax == cstar,
                   [&] { return "hybrid dichotomic makespan search missed the optimum"; });
        if (depth == verify_depth::exhaustive) {
            rec.expect(eng.min_makespan(search_mode::linear).cmax == cstar,
                       [&] { return "hybrid linear makespan search missed the optimum"; });
        }
    }
}

void verify_kind(problem_kind kind, int n_max, std::int64_t p_max, int trials, std::uint64_t seed,
                 verify_depth depth, verify_report& report) {
    if (n_max < 1) throw std::invalid_argument("verify_kind: n_max must be >= 1");
    if (trials < 1) throw std::invalid_argument("verify_kind: trials must be >= 1");

    for (int i = 0; i < trials; ++i) {
        const std::uint64_t s = trial_seed(seed, i);
        switch (kind) {
            case problem_kind::deadline_wc:
            case problem_kind::tardiness:
            case problem_kind::prec_wc: {
                const int n = 1 + i % std::min(n_max, 6);
                gen_config cfg;
                cfg.p_max = std::max<std::int64_t>(1, p_max);
                const auto pi = gen_random(kind, n, s, cfg);
                const instance& inst = std::get<instance>(pi);
                verify_additive_instance(inst, make_add_adapter(inst), depth, report);
                break;
            }
            case problem_kind::release_wu:
            case problem_kind::release_wc: {
                const int n = 1 + i % std::min(n_max, 5);
                gen_config cfg;
                cfg.p_max = std::clamp<std::int64_t>(p_max, 1, 3);
                cfg.w_max = 2;
                const auto pi = gen_random(kind, n, s, cfg);
                const instance& inst = std::get<instance>(pi);
                verify_composed_instance(inst, make_comp_adapter(inst), depth, report);
                break;
            }
            case problem_kind::flowshop3: {
                const int n = 1 + i % std::min(n_max, 4);
                gen_config cfg;
                cfg.p_max = std::clamp<std::int64_t>(p_max, 0, 2);
                const auto pi = gen_random(kind, n, s, cfg);
                verify_flowshop_instance(std::get<flowshop_instance>(pi), depth, report);
                break;
            }
        }
    }
}

}  // namespace qdpas
