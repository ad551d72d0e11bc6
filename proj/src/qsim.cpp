#include "qdpas/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qdpas {

int repetitions_for(double p, double delta) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("per-call success probability must be in (0, 1]");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0, 1)");
    if (p >= 1.0) return 1;
    const double r = std::ceil(std::log(1.0 / delta) / std::log(1.0 / (1.0 - p)));
    return std::max(1, static_cast<int>(r));
}

std::uint64_t sqrt_ceil(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (s > 0 && s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;  // s = floor sqrt, fp-robust
    return s * s == n ? s : s + 1;
}

quantum_runtime::quantum_runtime(const qmf_config& cfg, query_ledger& led)
    : cfg_(cfg), led_(led), rng_(cfg.seed) {
    if (cfg_.levels < 1) throw std::invalid_argument("nesting depth must be at least 1");
    if (cfg_.mode == qmf_mode::noisy) {
        if (!(cfg_.per_call_success > 0.0 && cfg_.per_call_success <= 1.0))
            throw std::invalid_argument("per-call success probability must be in (0, 1]");
        if (!(cfg_.target_delta > 0.0 && cfg_.target_delta < 1.0))
            throw std::invalid_argument("target delta must be in (0, 1)");
    }
}

int quantum_runtime::reps_for_level(int level) const {
    if (cfg_.mode == qmf_mode::deterministic) return 1;
    const double share =
        cfg_.target_delta / (static_cast<double>(cfg_.levels) * std::pow(2.0, level));
    return repetitions_for(cfg_.per_call_success, share);
}

bool quantum_runtime::rep_succeeds() {
    constexpr std::uint64_t scale = 1'000'000'000;
    const auto threshold =
        static_cast<std::uint64_t>(std::llround(cfg_.per_call_success * static_cast<double>(scale)));
    return rng_below(rng_, scale) < threshold;
}

quantum_runtime::qmf_result quantum_runtime::qmf(
    std::uint64_t domain, int level, const std::function<eval_outcome(std::uint64_t)>& eval) {
    if (domain == 0) throw std::logic_error("minimum-finding over an empty domain");
    led_.log_call(domain, level);

    std::vector<std::int64_t> vals(domain);
    std::uint64_t charge_sum = 0;
    for (std::uint64_t i = 0; i < domain; ++i) {
        const eval_outcome out = eval(i);
        vals[i] = out.value.raw();
        charge_sum += out.charge;
    }
    const auto per_query = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(
               std::llround(static_cast<double>(charge_sum) / static_cast<double>(domain))));
    const int reps = reps_for_level(level);
    const std::uint64_t charge = static_cast<std::uint64_t>(reps) * sqrt_ceil(domain) * per_query;

    std::uint64_t best = 0;
    for (std::uint64_t i = 1; i < domain; ++i)
        if (vals[i] < vals[best]) best = i;

    std::uint64_t chosen = best;
    if (cfg_.mode == qmf_mode::noisy) {
        // A failed repetition lands on a candidate whose value is strictly
        // worse; when every candidate has the optimal value the draw is
        // forced. Either way the reported value belongs to a real candidate.
        std::vector<std::uint64_t> rest;
        for (std::uint64_t i = 0; i < domain; ++i)
            if (vals[i] != vals[best]) rest.push_back(i);
        bool have = false;
        std::uint64_t pick = 0;
        for (int r = 0; r < reps; ++r) {
            std::uint64_t cand;
            if (rep_succeeds() || rest.empty())
                cand = best;
            else
                cand = rest[rng_below(rng_, rest.size())];
            if (!have || vals[cand] < vals[pick] || (vals[cand] == vals[pick] && cand < pick)) {
                pick = cand;
                have = true;
            }
        }
        chosen = pick;
    }
    return {chosen, dp_value::from_raw(vals[chosen]), charge};
}

quantum_runtime::grover_result quantum_runtime::grover(
    std::uint64_t domain, int level, const std::function<pred_outcome(std::uint64_t)>& eval) {
    const int reps = reps_for_level(level);
    if (domain == 0) return {false, 0, static_cast<std::uint64_t>(reps)};
    led_.log_call(domain, level);

    std::uint64_t charge_sum = 0;
    std::uint64_t evaluated = 0;
    bool exists = false;
    std::uint64_t idx = 0;
    for (std::uint64_t i = 0; i < domain; ++i) {
        const pred_outcome out = eval(i);
        ++evaluated;
        charge_sum += out.charge;
        if (out.truth) {
            exists = true;
            idx = i;
            break;
        }
    }
    const auto per_query = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(
               std::llround(static_cast<double>(charge_sum) / static_cast<double>(evaluated))));
    const std::uint64_t charge = static_cast<std::uint64_t>(reps) * sqrt_ceil(domain) * per_query;

    bool reported = exists;
    if (cfg_.mode == qmf_mode::noisy && exists) {
        reported = false;  // misses possible, false positives never
        for (int r = 0; r < reps && !reported; ++r) reported = rep_succeeds();
    }
    return {reported, idx, charge};
}

qmf_outcome qmf(const std::vector<std::int64_t>& values, query_ledger& led) {
    if (values.empty()) throw std::logic_error("minimum-finding over an empty domain");
    led.log_call(values.size(), 0);
    led.quantum_queries += sqrt_ceil(values.size());
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[best]) best = i;
    return {values[best], best};
}

grover_outcome grover_or(const std::vector<bool>& truth, query_ledger& led) {
    if (truth.empty()) throw std::logic_error("search over an empty domain");
    led.log_call(truth.size(), 0);
    led.quantum_queries += sqrt_ceil(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (truth[i]) return {true, i};
    return {false, 0};
}

qram::qram(std::size_t capacity, query_ledger& led)
    : raw_(capacity, k_absent_), wpack_(capacity, 0), led_(led) {}

void qram::put(std::size_t key, dp_value v) {
    if (frozen_) throw std::logic_error("write to a frozen store");
    raw_.at(key) = v.raw();
    ++led_.qram_writes;
}

void qram::put_witness(std::size_t key, const permutation& w) {
    if (frozen_) throw std::logic_error("write to a frozen store");
    if (w.empty() || w.size() > 11)
        throw std::logic_error("witness does not fit the packed encoding");
    std::uint64_t pack = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 0 || w[i] >= 32)
            throw std::logic_error("witness job id does not fit the packed encoding");
        pack |= static_cast<std::uint64_t>(w[i]) << (5 + 5 * i);
    }
    wpack_.at(key) = pack;
    ++led_.qram_writes;
}

dp_value qram::get(std::size_t key) const {
    ++led_.qram_reads;
    const std::int64_t r = raw_.at(key);
    if (r == k_absent_)
        throw std::logic_error("read of a cell the classical phase never wrote");
    return dp_value::from_raw(r);
}

permutation qram::witness_at(std::size_t key) const {
    ++led_.qram_reads;
    const std::uint64_t pack = wpack_.at(key);
    if (pack == 0) throw std::logic_error("witness read of a cell without one");
    const int count = static_cast<int>(pack & 31u);
    permutation w(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        w[static_cast<std::size_t>(i)] = static_cast<int>((pack >> (5 + 5 * i)) & 31u);
    return w;
}

std::pair<int, int> third_level_split_size(int n) {
    if (n < 4 || n % 4 != 0)
        throw std::logic_error("three-level split sizes need a multiple-of-four job count");
    const int quarter = n / 4;
    int s = static_cast<int>(std::lround(0.945 * static_cast<double>(quarter)));
    s = std::max(1, std::min(quarter, s));
    return {s, quarter - s};
}

namespace {

constexpr std::uint64_t k_store_guard = 150'000'000;   // dense cells
constexpr std::uint64_t k_emulate_guard = 1'000'000'000;  // emulated evaluations per query

std::vector<std::uint64_t> slab_offsets(int n, int max_card) {
    std::vector<std::uint64_t> off(static_cast<std::size_t>(max_card) + 1, 0);
    std::uint64_t acc = 0;
    for (int k = 1; k <= max_card; ++k) {
        off[static_cast<std::size_t>(k)] = acc;
        acc += binomial(n, k);
    }
    return off;
}

std::uint64_t slab_total(int n, int max_card) {
    std::uint64_t acc = 0;
    for (int k = 1; k <= max_card; ++k) acc += binomial(n, k);
    return acc;
}

// Sized in long double first so absurd extents fail the guard instead of
// wrapping around 64-bit arithmetic.
std::size_t guarded_capacity(long double cells, const char* what) {
    if (!(cells <= static_cast<long double>(k_store_guard)))
        throw guard_error(std::string(what) + " would need about " +
                          std::to_string(static_cast<double>(cells)) +
                          " cells, over the memory guard");
    return static_cast<std::size_t>(cells);
}

}  // namespace

// ---------------------------------------------------------------- additive

namespace {

// Highest start time the quantum phase can reach: t0 plus any prefix load.
// Validates t0 here because this runs before the store is sized.
std::int64_t add_fill_hi(const instance& inst, std::int64_t t0) {
    const time_domain dom = time_domain_of(inst);
    if (t0 < dom.lo || t0 > dom.hi)
        throw guard_error("t0 = " + std::to_string(t0) + " outside the instance time domain [" +
                          std::to_string(dom.lo) + ", " + std::to_string(dom.hi) + "]");
    return t0 + total_p(inst);
}

}  // namespace

qadd_engine::qadd_engine(const instance& inst, std::int64_t t0, const qmf_config& cfg,
                         query_ledger& led)
    : original_(inst),
      padded_(pad_to_multiple_of_four(inst)),
      adapter_(make_add_adapter(padded_.inst)),
      t0_(t0),
      t_hi_(add_fill_hi(padded_.inst, t0)),
      quarter_(padded_.inst.n() / 4),
      slab_off_(slab_offsets(padded_.inst.n(), quarter_)),
      ram_(guarded_capacity(static_cast<long double>(slab_total(padded_.inst.n(), quarter_)) *
                                (static_cast<long double>(t_hi_) + 1),
                            "the additive hybrid store"),
           led),
      qrt_(cfg, led),
      led_(led),
      levels_(cfg.levels) {
    if (levels_ != 2 && levels_ != 3)
        throw guard_error("the additive hybrid supports nesting depth 2 or 3");

    const int n = padded_.inst.n();
    const job_set full = job_set::full(n);
    for (std::int64_t t = 0; t <= t_hi_; ++t) {
        const auto res = solve_add_dpas(padded_.inst, adapter_, t, &led_, quarter_, true);
        for (int k = 1; k <= quarter_; ++k)
            for (const job_set s : subsets_of_size(full, k)) {
                const dp_value v = res.table.at(s);
                ram_.put(key(s, t), v);
                if (v.finite() && k == quarter_)
                    ram_.put_witness(key(s, t), reconstruct_add_witness(res.table, s));
            }
    }
    ram_.freeze();
}

std::size_t qadd_engine::key(job_set s, std::int64_t t) const {
    const std::uint64_t rank =
        slab_off_[static_cast<std::size_t>(s.size())] +
        subset_rank(job_set::full(padded_.inst.n()), s);
    return static_cast<std::size_t>(rank * static_cast<std::uint64_t>(t_hi_ + 1) +
                                    static_cast<std::uint64_t>(t));
}

quantum_runtime::qmf_result qadd_engine::nested_opt(job_set s, std::int64_t t) {
    const auto subs = subsets_of_size(s, s.size() / 2);
    return qrt_.qmf(subs.size(), 1, [&](std::uint64_t i) -> eval_outcome {
        const job_set y = subs[i];
        const std::int64_t tau = adapter_.tau_shift(s, y, t);
        if (levels_ <= 2) {
            const dp_value v =
                ram_.get(key(y, t)) + adapter_.h(s, y, t) + ram_.get(key(s.minus(y), tau));
            return {v, 1};
        }
        auto a = third_opt(y, t);
        auto b = third_opt(s.minus(y), tau);
        return {a.value + adapter_.h(s, y, t) + b.value, a.charge + b.charge};
    });
}

quantum_runtime::qmf_result qadd_engine::third_opt(job_set s, std::int64_t t) {
    const auto [s3, r3] = third_level_split_size(padded_.inst.n());
    const auto subs = subsets_of_size(s, s3);
    return qrt_.qmf(subs.size(), 2, [&, r3 = r3](std::uint64_t i) -> eval_outcome {
        const job_set y = subs[i];
        dp_value v = ram_.get(key(y, t)) + adapter_.h(s, y, t);
        if (r3 > 0) {
            const std::int64_t tau = adapter_.tau_shift(s, y, t);
            v += ram_.get(key(s.minus(y), tau));
        }
        return {v, 1};
    });
}

std::pair<dp_value, permutation> qadd_engine::exact_opt(job_set s, std::int64_t t) {
    if (s.size() == quarter_) {
        ++led_.classical_ops;
        const dp_value v = ram_.get(key(s, t));
        if (v.is_inf()) return {v, {}};
        return {v, ram_.witness_at(key(s, t))};
    }
    dp_value best = dp_value::inf();
    permutation bestw;
    for (const job_set y : subsets_of_size(s, s.size() / 2)) {
        ++led_.classical_ops;
        auto [va, wa] = exact_opt(y, t);
        const std::int64_t tau = adapter_.tau_shift(s, y, t);
        auto [vb, wb] = exact_opt(s.minus(y), tau);
        const dp_value cand = va + adapter_.h(s, y, t) + vb;
        if (cand < best) {
            best = cand;
            bestw = wa;
            bestw.insert(bestw.end(), wb.begin(), wb.end());
        }
    }
    return {best, bestw};
}

qrun_result qadd_engine::query() {
    const int n = padded_.inst.n();
    const job_set full = job_set::full(n);
    const auto splits = subsets_of_size(full, n / 2);

    auto top = qrt_.qmf(splits.size(), 0, [&](std::uint64_t i) -> eval_outcome {
        const job_set x = splits[i];
        auto a = nested_opt(x, t0_);
        const std::int64_t tau = adapter_.tau_shift(full, x, t0_);
        auto b = nested_opt(full.minus(x), tau);
        return {a.value + adapter_.h(full, x, t0_) + b.value, a.charge + b.charge};
    });
    led_.quantum_queries += top.charge;

    // Exact classical pass inside the chosen top branch: the reported value
    // is the true optimum over schedules that split at top.index, so a real
    // witness always backs it.
    const job_set xstar = splits[top.index];
    auto [va, wa] = exact_opt(xstar, t0_);
    const std::int64_t tau = adapter_.tau_shift(full, xstar, t0_);
    auto [vb, wb] = exact_opt(full.minus(xstar), tau);
    const dp_value value = va + adapter_.h(full, xstar, t0_) + vb;
    if (qrt_.mode() == qmf_mode::deterministic && !(value == top.value))
        throw std::logic_error("deterministic hybrid value disagrees with its own branch optimum");

    qrun_result out;
    out.value = value;
    if (value.finite()) {
        permutation w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.witness = project_witness(w, padded_.original_n);
        out.verified = evaluate_start_at(original_, out.witness, t0_) == value;
    } else {
        out.verified = qrt_.mode() == qmf_mode::deterministic;
    }
    return out;
}

qrun_result run_qddpas_additive(const instance& inst, std::int64_t t0, const qmf_config& cfg,
                                query_ledger& led) {
    qmf_config c = cfg;
    c.levels = 2;
    return qadd_engine(inst, t0, c, led).query();
}

qrun_result run_qddpas_additive_3level(const instance& inst, std::int64_t t0,
                                       const qmf_config& cfg, query_ledger& led) {
    qmf_config c = cfg;
    c.levels = 3;
    return qadd_engine(inst, t0, c, led).query();
}

// ---------------------------------------------------------------- composed

qcomp_engine::qcomp_engine(const instance& inst, const qmf_config& cfg, query_ledger& led)
    : original_(inst),
      padded_(pad_to_multiple_of_four(inst)),
      adapter_(make_comp_adapter(padded_.inst)),
      edomain_(adapter_.edomain),
      t_hi_(comp_reach_hi(padded_.inst)),
      quarter_(padded_.inst.n() / 4),
      slab_off_(slab_offsets(padded_.inst.n(), quarter_)),
      ram_(guarded_capacity(static_cast<long double>(slab_total(padded_.inst.n(), quarter_)) *
                                (static_cast<long double>(t_hi_) + 1) *
                                (static_cast<long double>(edomain_.hi) + 1),
                            "the auxiliary-cost hybrid store"),
           led),
      qrt_(cfg, led),
      led_(led) {
    const int n = padded_.inst.n();
    const long double espan = static_cast<long double>(edomain_.hi) + 1;
    const long double per_query = static_cast<long double>(binomial(n, n / 2)) * espan * 2 *
                                  static_cast<long double>(binomial(n / 2, n / 4)) * espan;
    if (!(per_query <= static_cast<long double>(k_emulate_guard)))
        throw guard_error("one emulated hybrid query would evaluate about " +
                          std::to_string(static_cast<double>(per_query)) +
                          " candidates, over the emulation guard");

    const comp_table table =
        solve_comp_dpas(padded_.inst, adapter_, quarter_, &led_, /*extended_t=*/true,
                        /*want_parents=*/true);
    const job_set full = job_set::full(n);
    for (int k = 1; k <= quarter_; ++k)
        for (const job_set s : subsets_of_size(full, k))
            for (std::int64_t t = 0; t <= table.t_cap(s); ++t)
                for (std::int64_t eps = 0; eps <= edomain_.hi; ++eps) {
                    const dp_value v = table.at(s, dp_value(t), eps);
                    ram_.put(key(s, t, eps), v);
                    if (v.finite() && k == quarter_)
                        ram_.put_witness(key(s, t, eps), table.witness(s, t, eps));
                }
    ram_.freeze();
}

std::size_t qcomp_engine::key(job_set s, std::int64_t t, std::int64_t eps) const {
    const std::uint64_t rank =
        slab_off_[static_cast<std::size_t>(s.size())] +
        subset_rank(job_set::full(padded_.inst.n()), s);
    const std::uint64_t espan = static_cast<std::uint64_t>(edomain_.hi) + 1;
    return static_cast<std::size_t>(
        (rank * static_cast<std::uint64_t>(t_hi_ + 1) + static_cast<std::uint64_t>(t)) * espan +
        static_cast<std::uint64_t>(eps));
}

dp_value qcomp_engine::cell(job_set s, dp_value t, std::int64_t eps) const {
    if (t.is_inf()) return dp_value::inf();
    if (eps < 0 || eps > edomain_.hi) return dp_value::inf();
    return ram_.get(key(s, t.value(), eps));
}

quantum_runtime::qmf_result qcomp_engine::nested_opt(job_set s, dp_value t, std::int64_t eps) {
    const auto subs = subsets_of_size(s, s.size() / 2);
    const std::uint64_t espan = static_cast<std::uint64_t>(edomain_.hi) + 1;
    return qrt_.qmf(subs.size() * espan, 1, [&](std::uint64_t i) -> eval_outcome {
        const job_set x = subs[i / espan];
        const auto eps_outer = static_cast<std::int64_t>(i % espan);
        if (eps_outer > eps) return {dp_value::inf(), 1};
        const dp_value t1 = cell(s.minus(x), t, eps - eps_outer);
        return {cell(x, t1, eps_outer), 1};
    });
}

std::pair<dp_value, permutation> qcomp_engine::exact_opt(job_set s, dp_value t, std::int64_t eps) {
    if (t.is_inf() || eps < 0 || eps > edomain_.hi) return {dp_value::inf(), {}};
    if (s.size() == quarter_) {
        ++led_.classical_ops;
        const dp_value v = ram_.get(key(s, t.value(), eps));
        if (v.is_inf()) return {v, {}};
        return {v, ram_.witness_at(key(s, t.value(), eps))};
    }
    dp_value best = dp_value::inf();
    permutation bestw;
    for (const job_set x : subsets_of_size(s, s.size() / 2)) {
        for (std::int64_t eps_outer = 0; eps_outer <= eps; ++eps_outer) {
            ++led_.classical_ops;
            auto [t1, win] = exact_opt(s.minus(x), t, eps - eps_outer);
            if (t1.is_inf()) continue;
            auto [vout, wout] = exact_opt(x, t1, eps_outer);
            if (vout < best) {
                best = vout;
                bestw = win;
                bestw.insert(bestw.end(), wout.begin(), wout.end());
            }
        }
    }
    return {best, bestw};
}

qrun_result qcomp_engine::query(std::int64_t eps0) {
    if (eps0 < edomain_.lo || eps0 > edomain_.hi) {
        qrun_result out;
        out.verified = qrt_.mode() == qmf_mode::deterministic;
        return out;
    }
    const int n = padded_.inst.n();
    const job_set full = job_set::full(n);
    const auto splits = subsets_of_size(full, n / 2);
    const std::uint64_t espan = static_cast<std::uint64_t>(edomain_.hi) + 1;

    auto top = qrt_.qmf(splits.size() * espan, 0, [&](std::uint64_t i) -> eval_outcome {
        const job_set x = splits[i / espan];
        const auto eps_outer = static_cast<std::int64_t>(i % espan);
        if (eps_outer > eps0) return {dp_value::inf(), 1};
        auto inner = nested_opt(full.minus(x), dp_value(0), eps0 - eps_outer);
        auto outer = nested_opt(x, inner.value, eps_outer);
        return {outer.value, inner.charge + outer.charge};
    });
    led_.quantum_queries += top.charge;

    const job_set xstar = splits[top.index / espan];
    const auto estar = static_cast<std::int64_t>(top.index % espan);
    dp_value value = dp_value::inf();
    permutation wfull;
    if (estar <= eps0) {
        auto [t1, win] = exact_opt(full.minus(xstar), dp_value(0), eps0 - estar);
        if (t1.finite()) {
            auto [vout, wout] = exact_opt(xstar, t1, estar);
            value = vout;
            wfull = win;
            wfull.insert(wfull.end(), wout.begin(), wout.end());
        }
    }
    if (qrt_.mode() == qmf_mode::deterministic && !(value == top.value))
        throw std::logic_error("deterministic hybrid value disagrees with its own branch optimum");

    qrun_result out;
    out.value = value;
    if (value.finite()) {
        out.witness = project_witness(wfull, padded_.original_n);
        out.verified = aux_perm_value(original_, out.witness, dp_value(0), eps0) == value;
    } else {
        out.verified = qrt_.mode() == qmf_mode::deterministic;
    }
    return out;
}

min_eps_result qcomp_engine::min_feasible(bool full_scan) {
    min_eps_result res;
    for (std::int64_t eps = edomain_.lo; eps <= edomain_.hi; ++eps) {
        const qrun_result r = query(eps);
        if (r.value.finite() && !res.eps_star) {
            res.eps_star = eps;
            res.makespan = r.value;
            res.witness = r.witness;
            if (!full_scan) return res;
        }
    }
    return res;
}

qrun_result run_qddpas_composed(const instance& inst, std::int64_t eps0, const qmf_config& cfg,
                                query_ledger& led) {
    qmf_config c = cfg;
    c.levels = 2;
    return qcomp_engine(inst, c, led).query(eps0);
}

// ---------------------------------------------------------------- decision

qdec_engine::qdec_engine(const flowshop_instance& fs, const qmf_config& cfg, query_ledger& led)
    : padded_(pad_to_multiple_of_four(fs)),
      p1_(padded_.fs.p[0]),
      quarter_(padded_.fs.n() / 4),
      solver_(padded_.fs, padded_.fs.n() / 4, &led),
      qrt_(cfg, led),
      led_(led) {}

bool qdec_engine::read_cell(job_set s, temporal_front beta, temporal_front eps) const {
    ++led_.qram_reads;
    return solver_.solve(s, beta, eps);
}

quantum_runtime::grover_result qdec_engine::nested_dec(job_set s, temporal_front beta,
                                                       temporal_front eps) {
    if (eps.m2 < 0 || eps.m3 < 0) return {false, 0, 1};
    beta.m2 = std::max<std::int64_t>(0, beta.m2);
    beta.m3 = std::max<std::int64_t>(0, beta.m3);
    if (!beta.leq(eps)) return {false, 0, 1};

    const auto subs = subsets_of_size(s, s.size() / 2);
    const auto w2 = static_cast<std::uint64_t>(eps.m2 - beta.m2) + 1;
    const auto w3 = static_cast<std::uint64_t>(eps.m3 - beta.m3) + 1;
    const std::uint64_t latt = w2 * w3;
    return qrt_.grover(subs.size() * latt, 1, [&](std::uint64_t i) -> pred_outcome {
        const job_set x = subs[i / latt];
        const std::uint64_t rem = i % latt;
        const temporal_front mid{beta.m2 + static_cast<std::int64_t>(rem / w3),
                                 beta.m3 + static_cast<std::int64_t>(rem % w3)};
        if (!read_cell(x, beta, mid)) return {false, 1};
        std::int64_t off = 0;
        x.for_each([&](int j) { off += p1_[static_cast<std::size_t>(j)]; });
        return {read_cell(s.minus(x), mid.shifted(off), eps.shifted(off)), 1};
    });
}

bool qdec_engine::query(temporal_front beta0, temporal_front eps0) {
    if (eps0.m2 < 0 || eps0.m3 < 0) return false;
    beta0.m2 = std::max<std::int64_t>(0, beta0.m2);
    beta0.m3 = std::max<std::int64_t>(0, beta0.m3);
    if (!beta0.leq(eps0)) return false;
    if (eps0.m2 > horizon() || eps0.m3 > horizon())
        throw std::logic_error("decision query beyond the table horizon");

    const int n = padded_.fs.n();
    const job_set full = job_set::full(n);
    const auto splits = subsets_of_size(full, n / 2);
    const auto w2 = static_cast<std::uint64_t>(eps0.m2 - beta0.m2) + 1;
    const auto w3 = static_cast<std::uint64_t>(eps0.m3 - beta0.m3) + 1;
    const std::uint64_t latt = w2 * w3;
    const long double per_query = static_cast<long double>(splits.size()) * latt *
                                  (1 + 2.0L * binomial(n / 2, n / 4) * latt);
    if (!(per_query <= static_cast<long double>(k_emulate_guard)))
        throw guard_error("one emulated decision query would evaluate about " +
                          std::to_string(static_cast<double>(per_query)) +
                          " candidates, over the emulation guard");

    auto top = qrt_.grover(splits.size() * latt, 0, [&](std::uint64_t i) -> pred_outcome {
        const job_set x = splits[i / latt];
        const std::uint64_t rem = i % latt;
        const temporal_front mid{beta0.m2 + static_cast<std::int64_t>(rem / w3),
                                 beta0.m3 + static_cast<std::int64_t>(rem % w3)};
        auto a = nested_dec(x, beta0, mid);
        if (!a.found) return {false, a.charge};
        std::int64_t off = 0;
        x.for_each([&](int j) { off += p1_[static_cast<std::size_t>(j)]; });
        auto b = nested_dec(full.minus(x), mid.shifted(off), eps0.shifted(off));
        return {b.found, a.charge + b.charge};
    });
    led_.quantum_queries += top.charge;
    return top.found;
}

makespan_result qdec_engine::min_makespan(search_mode mode) {
    return qdpas::min_makespan(
        horizon(), [&](std::int64_t c) { return query({0, 0}, {c, c}); }, mode);
}

bool run_qdec_ddpas(const flowshop_instance& fs, temporal_front beta0, temporal_front eps0,
                    const qmf_config& cfg, query_ledger& led) {
    qmf_config c = cfg;
    c.levels = 2;
    return qdec_engine(fs, c, led).query(beta0, eps0);
}

}  // namespace qdpas
