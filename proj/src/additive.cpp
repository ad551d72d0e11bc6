#include "qdpas/additive.hpp"

#include <algorithm>
#include <memory>

namespace qdpas {

namespace {

struct add_ctx {
    std::vector<std::int64_t> p, w;
    std::vector<std::int64_t> d;          // tardiness
    std::vector<std::int64_t> dtilde;     // deadline, raw dp (inf sentinel)
    std::vector<std::uint32_t> succ_mask; // precedence successors

    std::int64_t p_of(job_set s) const {
        std::int64_t sum = 0;
        s.for_each([&](int j) { sum += p[j]; });
        return sum;
    }
    std::int64_t w_of(job_set s) const {
        std::int64_t sum = 0;
        s.for_each([&](int j) { sum += w[j]; });
        return sum;
    }
};

std::shared_ptr<add_ctx> make_ctx(const instance& inst) {
    auto ctx = std::make_shared<add_ctx>();
    for (const auto& j : inst.jobs) {
        ctx->p.push_back(j.p);
        ctx->w.push_back(j.w.value_or(0));
        ctx->d.push_back(j.d.value_or(0));
        ctx->dtilde.push_back(j.dtilde ? j.dtilde->raw() : dp_value::inf().raw());
    }
    ctx->succ_mask.assign(inst.jobs.size(), 0);
    for (const auto& [a, b] : inst.prec) ctx->succ_mask[a] |= 1u << b;
    return ctx;
}

}  // namespace

add_adapter adapter_deadline_wc(const instance& inst) {
    if (inst.kind != problem_kind::deadline_wc)
        throw std::logic_error("adapter_deadline_wc: wrong kind");
    auto ctx = make_ctx(inst);
    add_adapter a;
    a.domain = time_domain_of(inst);
    a.g = [ctx](job_set j_of, int j, std::int64_t t) -> dp_value {
        const std::int64_t c = t + ctx->p_of(j_of);  // j completes last
        const dp_value dl = dp_value::from_raw(ctx->dtilde[j]);
        if (dl.finite() && c > dl.value()) return dp_value::inf();
        return dp_value(checked_mul(ctx->w[j], c));
    };
    a.h = [](job_set, job_set, std::int64_t) -> dp_value { return dp_value(0); };
    a.tau_shift = [ctx](job_set, job_set x, std::int64_t t) { return t + ctx->p_of(x); };
    a.init_single = [ctx](int j, std::int64_t t) -> dp_value {
        const std::int64_t c = ctx->p[j] + t;
        const dp_value dl = dp_value::from_raw(ctx->dtilde[j]);
        if (dl.finite() && c > dl.value()) return dp_value::inf();
        return dp_value(checked_mul(ctx->w[j], c));
    };
    return a;
}

add_adapter adapter_tardiness(const instance& inst) {
    if (inst.kind != problem_kind::tardiness) throw std::logic_error("adapter_tardiness: wrong kind");
    auto ctx = make_ctx(inst);
    add_adapter a;
    a.domain = time_domain_of(inst);
    a.g = [ctx](job_set j_of, int j, std::int64_t t) -> dp_value {
        const std::int64_t late = ctx->p_of(j_of) - ctx->d[j] + t;
        return dp_value(checked_mul(ctx->w[j], std::max<std::int64_t>(0, late)));
    };
    a.h = [](job_set, job_set, std::int64_t) -> dp_value { return dp_value(0); };
    a.tau_shift = [ctx](job_set, job_set x, std::int64_t t) { return t + ctx->p_of(x); };
    a.init_single = [ctx](int j, std::int64_t t) -> dp_value {
        return dp_value(
            checked_mul(ctx->w[j], std::max<std::int64_t>(0, ctx->p[j] - ctx->d[j] + t)));
    };
    return a;
}

add_adapter adapter_prec_wc(const instance& inst) {
    if (inst.kind != problem_kind::prec_wc) throw std::logic_error("adapter_prec_wc: wrong kind");
    auto ctx = make_ctx(inst);
    add_adapter a;
    a.domain = time_domain_of(inst);  // {0}
    a.g = [ctx](job_set j_of, int j, std::int64_t) -> dp_value {
        // j is last within J: any successor of j still in J is violated
        if (ctx->succ_mask[j] & j_of.without(j).mask) return dp_value::inf();
        return dp_value(checked_mul(ctx->w[j], ctx->p_of(j_of)));
    };
    a.h = [ctx](job_set j_of, job_set x, std::int64_t) -> dp_value {
        // infeasible if an edge runs from the second half into the first
        bool bad = false;
        j_of.minus(x).for_each([&](int aj) {
            if (ctx->succ_mask[aj] & x.mask) bad = true;
        });
        if (bad) return dp_value::inf();
        return dp_value(checked_mul(ctx->p_of(x), ctx->w_of(j_of.minus(x))));
    };
    a.tau_shift = [](job_set, job_set, std::int64_t) -> std::int64_t { return 0; };
    a.init_single = [ctx](int j, std::int64_t) -> dp_value {
        return dp_value(checked_mul(ctx->w[j], ctx->p[j]));
    };
    return a;
}

add_adapter make_add_adapter(const instance& inst) {
    switch (inst.kind) {
        case problem_kind::deadline_wc: return adapter_deadline_wc(inst);
        case problem_kind::tardiness: return adapter_tardiness(inst);
        case problem_kind::prec_wc: return adapter_prec_wc(inst);
        default: throw std::logic_error("make_add_adapter: additive kinds only");
    }
}

add_solve_result solve_add_dpas(const instance& inst, const add_adapter& adapter, std::int64_t t0,
                                query_ledger* led, int max_card, bool want_parents) {
    const int n = inst.n();
    if (n > 22) throw guard_error("additive table guard: n = " + std::to_string(n));
    if (max_card < 0) max_card = n;

    add_solve_result res;
    add_table& tab = res.table;
    tab.n = n;
    tab.t0 = t0;
    tab.max_card = max_card;
    tab.value.assign(std::size_t{1} << n, dp_value::inf().raw());
    tab.has_parents = want_parents;
    if (want_parents) tab.parent.assign(std::size_t{1} << n, -1);
    tab.value[0] = 0;

    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) > max_card) continue;
        const job_set j_of{mask};
        dp_value best = dp_value::inf();
        int arg = -1;
        j_of.for_each([&](int j) {
            if (led) ++led->classical_ops;
            const dp_value prev = dp_value::from_raw(tab.value[mask & ~(1u << j)]);
            const dp_value cand = prev + adapter.g(j_of, j, t0);
            if (cand < best) {
                best = cand;
                arg = j;
            }
        });
        tab.value[mask] = best.raw();
        if (want_parents && best.finite()) tab.parent[mask] = static_cast<std::int8_t>(arg);
    }

    if (max_card >= n) {
        res.value = tab.at(job_set::full(n));
        if (want_parents && res.value.finite())
            res.witness = reconstruct_add_witness(tab, job_set::full(n));
    } else {
        res.value = dp_value::inf();
    }
    return res;
}

permutation reconstruct_add_witness(const add_table& table, job_set j) {
    if (!table.has_parents) throw std::logic_error("reconstruct_add_witness: parents disabled");
    permutation rev;
    std::uint32_t mask = j.mask;
    while (mask) {
        const std::int8_t last = table.parent.at(mask);
        if (last < 0) return {};  // infeasible cell
        rev.push_back(last);
        mask &= ~(1u << last);
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

add_d_table::add_d_table(const instance& inst, const add_adapter& adapter, bool want_parents) {
    n_ = inst.n();
    if (n_ < 2 || (n_ & (n_ - 1)) != 0)
        throw guard_error("dichotomic solver requires n to be a power of two (pad first); n = " +
                          std::to_string(n_));
    sum_p_ = total_p(inst);
    trivial_domain_ = adapter.domain.hi == 0;
    has_parents_ = want_parents;
    for (const auto& jb : inst.jobs) p_.push_back(jb.p);
    for (int k = 1; k <= n_; k *= 2) levels_.push_back(k);
    blocks_.resize(levels_.size());
    for (std::size_t li = 0; li < levels_.size(); ++li)
        blocks_[li].resize(binomial(n_, levels_[li]));
}

std::int64_t add_d_table::t_cap(job_set s) const {
    if (trivial_domain_) return 0;
    std::int64_t ps = 0;
    s.for_each([&](int j) { ps += p_[j]; });
    return 2 * sum_p_ - ps;
}

std::pair<int, std::uint64_t> add_d_table::locate(job_set s) const {
    const int card = s.size();
    const auto it = std::find(levels_.begin(), levels_.end(), card);
    if (it == levels_.end())
        throw std::logic_error("add_d_table: no level with cardinality " + std::to_string(card));
    return {static_cast<int>(it - levels_.begin()), subset_rank(job_set::full(n_), s)};
}

dp_value add_d_table::at(job_set s, std::int64_t t) const {
    const auto [li, rank] = locate(s);
    const auto& block = blocks_[li][rank];
    if (t < 0 || t >= static_cast<std::int64_t>(block.value.size()))
        throw std::logic_error("add_d_table: t out of range");
    return dp_value::from_raw(block.value[t]);
}

void add_d_table::fill(const add_adapter& adapter, query_ledger* led) {
    // singletons
    {
        const auto singles = subsets_of_size(job_set::full(n_), 1);
        for (std::uint64_t r = 0; r < singles.size(); ++r) {
            const int j = singles[r].elements()[0];
            auto& block = blocks_[0][r];
            const std::int64_t cap = t_cap(singles[r]);
            block.value.resize(cap + 1);
            for (std::int64_t t = 0; t <= cap; ++t) {
                if (led) ++led->classical_ops;
                block.value[t] = adapter.init_single(j, t).raw();
            }
        }
    }
    for (std::size_t li = 1; li < levels_.size(); ++li) {
        const int card = levels_[li];
        const int half = card / 2;
        const auto masks = subsets_of_size(job_set::full(n_), card);
        for (std::uint64_t r = 0; r < masks.size(); ++r) {
            const job_set s = masks[r];
            auto& block = blocks_[li][r];
            const std::int64_t cap = t_cap(s);
            block.value.resize(cap + 1);
            if (has_parents_) block.parent_x.resize(cap + 1, 0);
            const auto halves = subsets_of_size(s, half);
            for (std::int64_t t = 0; t <= cap; ++t) {
                dp_value best = dp_value::inf();
                std::uint32_t arg = 0;
                for (const job_set x : halves) {
                    if (led) ++led->classical_ops;
                    const std::int64_t tau = adapter.tau_shift(s, x, t);
                    const dp_value cand =
                        at(x, t) + adapter.h(s, x, t) + at(s.minus(x), tau);
                    if (cand < best) {
                        best = cand;
                        arg = x.mask;
                    }
                }
                block.value[t] = best.raw();
                if (has_parents_) block.parent_x[t] = arg;
            }
        }
    }
}

permutation add_d_table::witness(job_set s, std::int64_t t, const add_adapter& adapter) const {
    if (s.size() == 1) return s.elements();
    if (!has_parents_) throw std::logic_error("add_d_table::witness: parents disabled");
    const auto [li, rank] = locate(s);
    const auto& block = blocks_[li][rank];
    if (dp_value::from_raw(block.value.at(t)).is_inf()) return {};
    const job_set x{block.parent_x.at(t)};
    permutation first = witness(x, t, adapter);
    permutation second = witness(s.minus(x), adapter.tau_shift(s, x, t), adapter);
    first.insert(first.end(), second.begin(), second.end());
    return first;
}

add_d_result solve_add_d_dpas(const instance& inst, const add_adapter& adapter, query_ledger* led,
                              bool want_parents) {
    // memory guard: cells = masks-at-levels x (t_cap + 1)
    {
        const int n = inst.n();
        if (n >= 2 && (n & (n - 1)) == 0) {
            long double cells = 0;
            const std::int64_t t_extent = adapter.domain.hi == 0 ? 1 : 2 * total_p(inst) + 1;
            for (int k = 1; k <= n; k *= 2)
                cells += static_cast<long double>(binomial(n, k)) * t_extent;
            if (cells > 6e7L)
                throw guard_error("dichotomic table memory guard: ~" +
                                  std::to_string(static_cast<long long>(cells)) + " cells");
        }
    }
    add_d_result res{add_d_table(inst, adapter, want_parents), dp_value::inf(), {}};
    res.table.fill(adapter, led);
    res.value = res.table.at(job_set::full(inst.n()), 0);
    if (want_parents && res.value.finite())
        res.witness = res.table.witness(job_set::full(inst.n()), 0, adapter);
    return res;
}

}  // namespace qdpas
