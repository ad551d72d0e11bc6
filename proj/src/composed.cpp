#include "qdpas/composed.hpp"

#include <algorithm>
#include <memory>

namespace qdpas {

namespace {

struct comp_ctx {
    std::vector<std::int64_t> p, w, d, r;
};

std::shared_ptr<comp_ctx> make_ctx(const instance& inst) {
    auto ctx = std::make_shared<comp_ctx>();
    for (const auto& j : inst.jobs) {
        ctx->p.push_back(j.p);
        ctx->w.push_back(j.w.value_or(0));
        ctx->d.push_back(j.d.value_or(0));
        ctx->r.push_back(j.r.value_or(0));
    }
    return ctx;
}

}  // namespace

comp_adapter make_release_wu_adapter(const instance& inst) {
    if (inst.kind != problem_kind::release_wu)
        throw std::logic_error("make_release_wu_adapter: wrong kind");
    auto ctx = make_ctx(inst);
    comp_adapter a;
    a.domain = time_domain_of(inst);
    a.edomain = eps_domain_of(inst);
    a.init_single = [ctx](int j, dp_value t, std::int64_t eps) -> dp_value {
        if (t.is_inf()) return dp_value::inf();
        const std::int64_t earliest = std::max(t.value(), ctx->r[j]) + ctx->p[j];
        const std::int64_t w = ctx->w[j];
        if (w == 0) return eps == 0 ? dp_value(earliest) : dp_value::inf();
        // One job at exact cost: on time (cost 0) only at the earliest
        // completion, or late (cost w) at the smallest completion past the
        // deadline -- idling in makes any later completion reachable too, but
        // never a smaller one.
        if (eps == 0) return earliest <= ctx->d[j] ? dp_value(earliest) : dp_value::inf();
        if (eps == w) return dp_value(std::max(earliest, ctx->d[j] + 1));
        return dp_value::inf();
    };
    return a;
}

comp_adapter make_release_wc_adapter(const instance& inst) {
    if (inst.kind != problem_kind::release_wc)
        throw std::logic_error("make_release_wc_adapter: wrong kind");
    auto ctx = make_ctx(inst);
    comp_adapter a;
    a.domain = time_domain_of(inst);
    a.edomain = eps_domain_of(inst);
    a.init_single = [ctx](int j, dp_value t, std::int64_t eps) -> dp_value {
        if (t.is_inf()) return dp_value::inf();
        const std::int64_t earliest = std::max(t.value(), ctx->r[j]) + ctx->p[j];
        const std::int64_t w = ctx->w[j];
        if (w == 0) return eps == 0 ? dp_value(earliest) : dp_value::inf();
        // One job at exact cost eps completes at eps / w, reachable by idling
        // in iff that sits at or past the earliest completion.
        if (eps < 0 || eps % w != 0) return dp_value::inf();
        const std::int64_t c = eps / w;
        return c >= earliest ? dp_value(c) : dp_value::inf();
    };
    return a;
}

comp_adapter make_comp_adapter(const instance& inst) {
    switch (inst.kind) {
        case problem_kind::release_wu: return make_release_wu_adapter(inst);
        case problem_kind::release_wc: return make_release_wc_adapter(inst);
        default: throw std::logic_error("make_comp_adapter: composed kinds only");
    }
}

dp_value comp_compose(const comp_adapter& adapter, int j, dp_value inner_value, std::int64_t eps) {
    if (inner_value.is_inf()) return dp_value::inf();
    return adapter.init_single(j, inner_value, eps);
}

std::int64_t comp_reach_hi(const instance& inst) {
    // Composition hands a finite inner value to the next start time, so the
    // extended t-range must cover every finite cell value. A finite value is
    // a completion, and one completion is anchored by at most one of: the
    // root start (<= sum p), a release, the first late instant (weighted-unit
    // kinds never idle past max d + 1 in a minimal schedule), or a
    // cost-capped completion (weighted-completion kinds keep w * C inside the
    // objective domain). Jobs along one composition chain are disjoint, so
    // the processing they add on top of the anchor is at most sum p.
    const std::int64_t sp = total_p(inst);
    std::int64_t anchor = std::max(sp, max_r(inst));
    if (inst.kind == problem_kind::release_wu) {
        std::int64_t dmax = 0;
        for (const auto& jb : inst.jobs) dmax = std::max(dmax, jb.d.value_or(0));
        anchor = std::max(anchor, dmax + 1);
    } else {
        anchor = std::max(anchor, eps_domain_of(inst).hi);
    }
    return anchor + sp;
}

comp_table::comp_table(const instance& inst, const comp_adapter& adapter, bool extended_t,
                       bool want_parents) {
    n_ = inst.n();
    sum_p_ = total_p(inst);
    extended_t_ = extended_t;
    eps_hi_ = adapter.edomain.hi;
    has_parents_ = want_parents;
    for (const auto& jb : inst.jobs) p_.push_back(jb.p);
    reach_hi_ = comp_reach_hi(inst);

    long double cells = 0;
    const long double eps_extent = static_cast<long double>(eps_hi_) + 1;
    for (std::uint32_t mask = 1; mask < (1u << n_); ++mask)
        cells += (static_cast<long double>(t_cap(job_set{mask})) + 1) * eps_extent;
    if (cells > 8e7L)
        throw guard_error("composed table memory guard: ~" +
                          std::to_string(static_cast<long long>(cells)) + " cells");

    value_.resize(std::size_t{1} << n_);
    if (has_parents_) parent_.resize(std::size_t{1} << n_);
}

std::int64_t comp_table::t_cap(job_set j) const {
    if (!extended_t_) return sum_p_;
    std::int64_t ps = 0;
    j.for_each([&](int x) { ps += p_[x]; });
    return reach_hi_ - ps;
}

dp_value comp_table::at(job_set j, dp_value t, std::int64_t eps) const {
    if (t.is_inf()) return dp_value::inf();
    if (eps < 0 || eps > eps_hi_) return dp_value::inf();
    if (j.empty_set()) return eps == 0 ? t : dp_value::inf();
    const auto& block = value_.at(j.mask);
    const std::int64_t tv = t.value();
    if (tv > t_cap(j))
        throw std::logic_error("comp_table: t = " + std::to_string(tv) + " beyond cap for mask");
    if (block.empty()) throw std::logic_error("comp_table: reading unfilled mask");
    return dp_value::from_raw(block[idx(tv, eps)]);
}

void comp_table::set(job_set j, std::int64_t t, std::int64_t eps, dp_value v) {
    auto& block = value_.at(j.mask);
    if (block.empty())
        block.assign(static_cast<std::size_t>(t_cap(j) + 1) * (eps_hi_ + 1),
                     dp_value::inf().raw());
    block[idx(t, eps)] = v.raw();
}

void comp_table::set_parent(job_set j, std::int64_t t, std::int64_t eps, int job,
                            std::int64_t eps_outer) {
    auto& block = parent_.at(j.mask);
    if (block.empty())
        block.assign(static_cast<std::size_t>(t_cap(j) + 1) * (eps_hi_ + 1), parent_entry{});
    block[idx(t, eps)] = parent_entry{static_cast<std::int8_t>(job), eps_outer};
}

permutation comp_table::witness(job_set j, std::int64_t t, std::int64_t eps) const {
    if (!has_parents_) throw std::logic_error("comp_table::witness: parents disabled");
    if (j.empty_set()) return {};
    const auto& block = parent_.at(j.mask);
    if (block.empty()) return {};
    const parent_entry pe = block[idx(t, eps)];
    if (pe.job < 0) return {};
    permutation head = witness(j.without(pe.job), t, eps - pe.eps_outer);
    head.push_back(pe.job);
    return head;
}

comp_table solve_comp_dpas(const instance& inst, const comp_adapter& adapter, int up_to_card,
                           query_ledger* led, bool extended_t, bool want_parents) {
    const int n = inst.n();
    if (up_to_card < 0) up_to_card = n;
    comp_table tab(inst, adapter, extended_t, want_parents);

    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const job_set j_of{mask};
        if (j_of.size() > up_to_card) continue;
        const std::int64_t cap = tab.t_cap(j_of);
        for (std::int64_t t = 0; t <= cap; ++t) {
            for (std::int64_t eps = 0; eps <= tab.eps_hi(); ++eps) {
                dp_value best = dp_value::inf();
                int arg_j = -1;
                std::int64_t arg_eps = 0;
                if (j_of.size() == 1) {
                    if (led) ++led->classical_ops;
                    best = adapter.init_single(j_of.elements()[0], dp_value(t), eps);
                    arg_j = j_of.elements()[0];
                    arg_eps = eps;
                } else {
                    j_of.for_each([&](int j) {
                        for (std::int64_t eps_outer = 0; eps_outer <= eps; ++eps_outer) {
                            if (led) ++led->classical_ops;
                            const dp_value inner =
                                tab.at(j_of.without(j), dp_value(t), eps - eps_outer);
                            const dp_value cand = comp_compose(adapter, j, inner, eps_outer);
                            if (cand < best) {
                                best = cand;
                                arg_j = j;
                                arg_eps = eps_outer;
                            }
                        }
                    });
                }
                tab.set(j_of, t, eps, best);
                if (want_parents && best.finite()) tab.set_parent(j_of, t, eps, arg_j, arg_eps);
            }
        }
    }
    return tab;
}

comp_table solve_comp_d_dpas(const instance& inst, const comp_adapter& adapter,
                             query_ledger* led) {
    const int n = inst.n();
    if (n < 2 || (n & (n - 1)) != 0)
        throw guard_error("dichotomic solver requires n to be a power of two (pad first); n = " +
                          std::to_string(n));
    comp_table tab(inst, adapter, /*extended_t=*/true, /*want_parents=*/false);
    const job_set full = job_set::full(n);

    // singletons
    for (int j = 0; j < n; ++j) {
        const job_set s = job_set::single(j);
        const std::int64_t cap = tab.t_cap(s);
        for (std::int64_t t = 0; t <= cap; ++t)
            for (std::int64_t eps = 0; eps <= tab.eps_hi(); ++eps) {
                if (led) ++led->classical_ops;
                tab.set(s, t, eps, adapter.init_single(j, dp_value(t), eps));
            }
    }

    for (int card = 2; card <= n; card *= 2) {
        const int half = card / 2;
        for (const job_set s : subsets_of_size(full, card)) {
            const std::int64_t cap = tab.t_cap(s);
            const auto halves = subsets_of_size(s, half);
            for (std::int64_t t = 0; t <= cap; ++t)
                for (std::int64_t eps = 0; eps <= tab.eps_hi(); ++eps) {
                    dp_value best = dp_value::inf();
                    for (const job_set x : halves) {
                        for (std::int64_t eps_outer = 0; eps_outer <= eps; ++eps_outer) {
                            if (led) ++led->classical_ops;
                            const dp_value inner =
                                tab.at(s.minus(x), dp_value(t), eps - eps_outer);
                            const dp_value cand = tab.at(x, inner, eps_outer);
                            best = dp_value::min(best, cand);
                        }
                    }
                    tab.set(s, t, eps, best);
                }
        }
    }
    return tab;
}

min_eps_result min_feasible_eps(const eps_domain& ed,
                                const std::function<dp_value(std::int64_t)>& value_at_eps,
                                bool full_scan) {
    min_eps_result res;
    for (std::int64_t eps = ed.lo; eps <= ed.hi; ++eps) {
        const dp_value v = value_at_eps(eps);
        if (v.finite() && !res.eps_star) {
            res.eps_star = eps;
            res.makespan = v;
            if (!full_scan) return res;
        }
    }
    return res;
}

}  // namespace qdpas
