#include "qdpas/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "qdpas/additive.hpp"
#include "qdpas/approx.hpp"
#include "qdpas/audit.hpp"
#include "qdpas/composed.hpp"
#include "qdpas/decision.hpp"
#include "qdpas/model.hpp"
#include "qdpas/oracle.hpp"
#include "qdpas/qsim.hpp"
#include "qdpas/verify.hpp"

namespace qdpas {
namespace {

constexpr const char* k_csv_header =
    "kind,method,n,T,E,classical_ops,quantum_queries,qram_reads,wall_ms,cap,pass";

struct flags {
    std::string kind;
    std::string in_path;
    std::string method;
    std::int64_t t0 = 0;
    std::int64_t eps0 = 0;
    bool has_eps0 = false;
    std::string epsilon = "1/4";
    bool noisy = false;
    double p_success = 0.6;
    double delta = 0.01;
    std::uint64_t seed = 1;
    int n_max = 0;       // 0 = per-command default
    std::int64_t p_max = -1;  // <0 = per-command default
    int trials = 0;      // 0 = per-command default
    std::string csv;
    std::string mode = "dichotomic";
    int levels = 2;
};

class stopwatch {
  public:
    stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::int64_t ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

search_mode mode_of(const flags& f) {
    return f.mode == "linear" ? search_mode::linear : search_mode::dichotomic;
}

qmf_config qcfg_of(const flags& f) {
    qmf_config cfg;
    cfg.mode = f.noisy ? qmf_mode::noisy : qmf_mode::deterministic;
    cfg.per_call_success = f.p_success;
    cfg.target_delta = f.delta;
    cfg.seed = f.seed;
    cfg.levels = f.method == "qddpas3" ? 3 : 2;
    return cfg;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

std::string witness_str(const permutation& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(w[i] + 1);  // 1-based in human-facing output
    }
    return out;
}

// ------------------------------- solve ----------------------------------

struct run_record {
    std::string kind;
    std::string method;
    int n = 0;
    dp_value value = dp_value::inf();
    permutation witness;
    bool has_witness = false;
    bool quantum = false;
    bool verified = false;
    query_ledger led;
    std::int64_t wall_ms = 0;
    std::vector<std::pair<std::string, std::string>> extra;
};

void print_record(const run_record& r, std::ostream& out) {
    out << "kind: " << r.kind << "\n";
    out << "method: " << r.method << "\n";
    out << "n: " << r.n << "\n";
    out << "value: " << r.value.str() << "\n";
    if (r.has_witness) out << "witness: " << witness_str(r.witness) << "\n";
    for (const auto& [key, val] : r.extra) out << key << ": " << val << "\n";
    out << "classical_ops: " << r.led.classical_ops << "\n";
    out << "quantum_queries: " << r.led.quantum_queries << "\n";
    out << "qram_reads: " << r.led.qram_reads << "\n";
    if (r.quantum) out << "verified: " << (r.verified ? "yes" : "no") << "\n";
    out << "wall_ms: " << r.wall_ms << "\n";
}

int finish_record(run_record& r, const stopwatch& sw, std::ostream& out) {
    r.wall_ms = sw.ms();
    print_record(r, out);
    return r.value.finite() ? 0 : 2;
}

int solve_additive(const instance& inst, const flags& f, std::ostream& out, std::ostream& err) {
    run_record r;
    r.kind = kind_name(inst.kind);
    r.method = f.method;
    r.n = inst.n();
    const add_adapter adapter = make_add_adapter(inst);
    if (f.t0 < adapter.domain.lo || f.t0 > adapter.domain.hi) {
        err << "error: --t0 outside the instance time domain [" << adapter.domain.lo << ", "
            << adapter.domain.hi << "]\n";
        return 1;
    }
    stopwatch sw;
    if (f.method == "bruteforce") {
        const oracle_result br = brute_force(inst, job_set::full(inst.n()), f.t0, 10, &r.led);
        r.value = br.value;
        if (br.witness) {
            r.witness = *br.witness;
            r.has_witness = true;
        }
    } else if (f.method == "dpas") {
        const add_solve_result res = solve_add_dpas(inst, adapter, f.t0, &r.led);
        r.value = res.value;
        r.witness = res.witness;
        r.has_witness = res.value.finite();
    } else if (f.method == "d-dpas") {
        const padded_instance pad = pad_to_power_of_two(inst);
        const add_adapter pa = make_add_adapter(pad.inst);
        const add_d_result res = solve_add_d_dpas(pad.inst, pa, &r.led, true);
        const job_set pfull = job_set::full(pad.inst.n());
        r.value = res.table.at(pfull, f.t0);
        if (r.value.finite()) {
            r.witness = project_witness(res.table.witness(pfull, f.t0, pa), inst.n());
            r.has_witness = true;
        }
    } else if (f.method == "qddpas" || f.method == "qddpas3") {
        r.quantum = true;
        const qmf_config cfg = qcfg_of(f);
        const qrun_result q = f.method == "qddpas3"
                                  ? run_qddpas_additive_3level(inst, f.t0, cfg, r.led)
                                  : run_qddpas_additive(inst, f.t0, cfg, r.led);
        r.value = q.value;
        r.witness = q.witness;
        r.has_witness = q.value.finite();
        r.verified = q.verified;
    } else {
        err << "error: method " << f.method << " does not apply to kind " << r.kind << "\n";
        return 1;
    }
    if (r.has_witness && !r.quantum &&
        evaluate_start_at(inst, r.witness, f.t0) != r.value) {
        throw std::logic_error("witness re-evaluation mismatch");
    }
    return finish_record(r, sw, out);
}

int solve_composed(const instance& inst, const flags& f, std::ostream& out, std::ostream& err) {
    run_record r;
    r.kind = kind_name(inst.kind);
    r.method = f.method;
    r.n = inst.n();
    if (f.t0 != 0) {
        err << "error: " << r.kind << " solves start at t = 0; --t0 is not applicable\n";
        return 1;
    }
    if (f.has_eps0 && f.eps0 < 0) {
        err << "error: --eps0 must be nonnegative\n";
        return 1;
    }
    const comp_adapter adapter = make_comp_adapter(inst);
    const eps_domain ed = adapter.edomain;
    const job_set full = job_set::full(inst.n());
    stopwatch sw;

    // Re-evaluates a schedule: (objective cost, makespan) from t = 0.
    const auto evaluate = [&](const permutation& w) -> std::pair<dp_value, std::int64_t> {
        const dp_value cost = evaluate_start_at(inst, w, 0);
        const auto c = completion_times(w, inst, 0);
        return {cost, c.empty() ? 0 : c.back()};
    };
    const auto note_min = [&](std::int64_t eps_star, dp_value makespan) {
        r.value = dp_value(eps_star);
        r.extra.push_back({"eps_star", std::to_string(eps_star)});
        r.extra.push_back({"makespan", makespan.str()});
    };

    if (f.method == "bruteforce") {
        if (f.has_eps0) {
            const oracle_result br = brute_force_aux(inst, full, dp_value(0), f.eps0, 10, &r.led);
            r.value = br.value;
            if (br.witness) {
                r.witness = *br.witness;
                r.has_witness = true;
            }
        } else {
            if (inst.n() > 10) throw guard_error("brute-force guard: n > 10");
            dp_value best_cost = dp_value::inf();
            dp_value best_cmax = dp_value::inf();
            permutation best;
            permutation perm = full.elements();
            do {
                ++r.led.classical_ops;
                const auto [cost, cmax] = evaluate(perm);
                if (cost < best_cost || (cost == best_cost && dp_value(cmax) < best_cmax)) {
                    best_cost = cost;
                    best_cmax = dp_value(cmax);
                    best = perm;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (best_cost.finite() && best_cost.value() <= ed.hi) {
                note_min(best_cost.value(), best_cmax);
                r.witness = best;
                r.has_witness = true;
            } else {
                r.extra.push_back({"eps_star", "none"});
            }
        }
    } else if (f.method == "dpas") {
        const comp_table tbl = solve_comp_dpas(inst, adapter, -1, &r.led, false, true);
        if (f.has_eps0) {
            r.value = tbl.at(full, dp_value(0), f.eps0);
            if (r.value.finite()) {
                r.witness = tbl.witness(full, 0, f.eps0);
                r.has_witness = true;
            }
        } else {
            const min_eps_result me = min_feasible_eps(
                ed, [&](std::int64_t e) { return tbl.at(full, dp_value(0), e); });
            if (me.eps_star) {
                note_min(*me.eps_star, me.makespan);
                r.witness = tbl.witness(full, 0, *me.eps_star);
                r.has_witness = true;
            } else {
                r.extra.push_back({"eps_star", "none"});
            }
        }
    } else if (f.method == "d-dpas") {
        const padded_instance pad = pad_to_power_of_two(inst);
        const comp_adapter pa = make_comp_adapter(pad.inst);
        const comp_table dt = solve_comp_d_dpas(pad.inst, pa, &r.led);
        const job_set pfull = job_set::full(pad.inst.n());
        if (f.has_eps0) {
            r.value = dt.at(pfull, dp_value(0), f.eps0);
        } else {
            const min_eps_result me = min_feasible_eps(
                ed, [&](std::int64_t e) { return dt.at(pfull, dp_value(0), e); });
            if (me.eps_star) {
                note_min(*me.eps_star, me.makespan);
            } else {
                r.extra.push_back({"eps_star", "none"});
            }
        }
    } else if (f.method == "qddpas") {
        r.quantum = true;
        query_ledger& led = r.led;
        qcomp_engine eng(inst, qcfg_of(f), led);
        if (f.has_eps0) {
            const qrun_result q = eng.query(f.eps0);
            r.value = q.value;
            r.witness = q.witness;
            r.has_witness = q.value.finite();
            r.verified = q.verified;
        } else {
            const min_eps_result me = eng.min_feasible();
            if (me.eps_star) {
                note_min(*me.eps_star, me.makespan);
                r.witness = me.witness;
                r.has_witness = !me.witness.empty() || inst.n() == 0;
                const auto [cost, cmax] = evaluate(me.witness);
                r.verified = cost.finite() && cost.value() == *me.eps_star &&
                             dp_value(cmax) == me.makespan;
            } else {
                r.extra.push_back({"eps_star", "none"});
                r.verified = !f.noisy;
            }
        }
    } else {
        err << "error: method " << f.method << " does not apply to kind " << r.kind << "\n";
        return 1;
    }
    if (r.has_witness && !r.quantum && r.value.finite()) {
        bool ok;
        if (f.has_eps0) {
            // exact-cost runs may idle the witness order, so re-evaluate the
            // order's cheapest realization of exactly eps0
            ok = aux_perm_value(inst, r.witness, dp_value(0), f.eps0) == r.value;
        } else {
            // at the minimum feasible cost the witness never idles
            const auto [cost, cmax] = evaluate(r.witness);
            ok = cost.finite() && cost == r.value;
        }
        if (!ok) throw std::logic_error("witness re-evaluation mismatch");
    }
    return finish_record(r, sw, out);
}

int solve_flowshop(const flowshop_instance& fs, const flags& f, std::ostream& out,
                   std::ostream& err) {
    run_record r;
    r.kind = kind_name(problem_kind::flowshop3);
    r.method = f.method;
    r.n = fs.n();
    const job_set full = job_set::full(fs.n());
    stopwatch sw;
    if (f.method == "bruteforce") {
        if (fs.n() > 10) throw guard_error("brute-force guard: n > 10");
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        permutation best_perm;
        permutation perm = full.elements();
        if (perm.empty()) {
            best = 0;
        } else {
            do {
                ++r.led.classical_ops;
                const std::int64_t cmax = flowshop_simulate(perm, fs).cmax;
                if (cmax < best) {
                    best = cmax;
                    best_perm = perm;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        r.value = dp_value(best);
        r.witness = best_perm;
        r.has_witness = fs.n() > 0;
    } else if (f.method == "dpas") {
        dec_solver dec(fs, -1, &r.led);
        const std::int64_t horizon = dec.horizon();
        const makespan_result mk = min_makespan(
            horizon, [&](std::int64_t c) { return dec.solve(full, {0, 0}, {c, c}); }, mode_of(f));
        r.value = dp_value(mk.cmax);
        if (fs.n() > 0) {
            r.witness = reconstruct_flowshop_witness(dec, full, {0, 0}, {mk.cmax, mk.cmax});
            r.has_witness = true;
        }
    } else if (f.method == "d-dpas") {
        const padded_flowshop pad = pad_to_power_of_two(fs);
        const dec_d_solver dd(pad.fs, &r.led);
        const job_set pfull = job_set::full(pad.fs.n());
        const makespan_result mk = min_makespan(
            dd.horizon(), [&](std::int64_t c) { return dd.solve(pfull, {0, 0}, {c, c}); },
            mode_of(f));
        r.value = dp_value(mk.cmax);
    } else if (f.method == "qdec") {
        r.quantum = true;
        qdec_engine eng(fs, qcfg_of(f), r.led);
        const makespan_result mk = eng.min_makespan(mode_of(f));
        r.value = dp_value(mk.cmax);
        r.verified = !f.noisy;
    } else if (f.method == "approx") {
        const rational eps = parse_rational(f.epsilon);
        const approx_result ar = approx_solve(fs, eps, make_decision_solver(mode_of(f)));
        r.value = dp_value(ar.cmax);
        r.witness = ar.perm;
        r.has_witness = fs.n() > 0;
        std::int64_t scaled_total = 0;
        for (const auto& row : ar.scaling.scaled.p)
            for (std::int64_t p : row) scaled_total += p;
        r.extra.push_back({"epsilon", std::to_string(eps.num) + "/" + std::to_string(eps.den)});
        r.extra.push_back(
            {"scale_k", std::to_string(ar.scaling.k.num) + "/" + std::to_string(ar.scaling.k.den)});
        r.extra.push_back({"scaled_total", std::to_string(scaled_total)});
        r.extra.push_back({"scaled_value", std::to_string(ar.cmax_scaled)});
        r.extra.push_back({"lower_bound", std::to_string(ar.lower_bound)});
        r.extra.push_back({"ratio_bound", std::to_string(ar.ratio_bound.num) + "/" +
                                              std::to_string(ar.ratio_bound.den)});
        r.extra.push_back({"certified", ar.certified ? "yes" : "no"});
    } else {
        err << "error: method " << f.method << " does not apply to kind " << r.kind << "\n";
        return 1;
    }
    if (r.has_witness && flowshop_simulate(r.witness, fs).cmax != r.value.value()) {
        throw std::logic_error("witness re-evaluation mismatch");
    }
    return finish_record(r, sw, out);
}

int cmd_solve(const flags& f, std::ostream& out, std::ostream& err) {
    const std::string text = read_file(f.in_path);
    const parsed_instance pi = parse_instance(text);
    const problem_kind kind = std::holds_alternative<instance>(pi)
                                  ? std::get<instance>(pi).kind
                                  : problem_kind::flowshop3;
    if (!f.kind.empty()) {
        const auto want = kind_from_name(f.kind);
        if (!want) {
            err << "error: unknown kind " << f.kind << "\n";
            return 1;
        }
        if (*want != kind) {
            err << "error: --kind " << f.kind << " does not match the instance file ("
                << kind_name(kind) << ")\n";
            return 1;
        }
    }
    if (std::holds_alternative<flowshop_instance>(pi)) {
        return solve_flowshop(std::get<flowshop_instance>(pi), f, out, err);
    }
    const instance& inst = std::get<instance>(pi);
    return is_composed_kind(inst.kind) ? solve_composed(inst, f, out, err)
                                       : solve_additive(inst, f, out, err);
}

// ------------------------------- verify ---------------------------------

int cmd_verify(const flags& f, std::ostream& out, std::ostream& err) {
    std::vector<problem_kind> kinds;
    if (f.kind.empty() || f.kind == "all") {
        kinds = {problem_kind::deadline_wc, problem_kind::tardiness,  problem_kind::prec_wc,
                 problem_kind::release_wu,  problem_kind::release_wc, problem_kind::flowshop3};
    } else {
        const auto k = kind_from_name(f.kind);
        if (!k) {
            err << "error: unknown kind " << f.kind << "\n";
            return 1;
        }
        kinds = {*k};
    }
    const int n_max = f.n_max > 0 ? f.n_max : 6;
    const std::int64_t p_max = f.p_max >= 0 ? f.p_max : 5;
    const int trials = f.trials > 0 ? f.trials : 50;

    verify_report report;
    stopwatch sw;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        verify_kind(kinds[i], n_max, p_max, trials, f.seed + i * 0x9E3779B97F4A7C15ull,
                    verify_depth::standard, report);
    }
    if (report.ok()) {
        out << "PASS " << report.checks << "/" << report.checks << " checks\n";
        out << "assertions: " << report.assertions << "\n";
        out << "wall_ms: " << sw.ms() << "\n";
        return 0;
    }
    out << "FAIL " << (report.checks - report.failed_checks) << "/" << report.checks
        << " checks\n";
    const std::size_t show = std::min<std::size_t>(report.failures.size(), 10);
    for (std::size_t i = 0; i < show; ++i) out << "\n" << report.failures[i] << "\n";
    if (report.failures.size() > show) {
        out << "\n(" << report.failures.size() - show << " more failures suppressed)\n";
    }
    return 4;
}

// ------------------------------- bench ----------------------------------

struct csv_row {
    std::string kind;
    std::string method;
    int n = 0;
    std::int64_t T = 0;
    std::int64_t E = 0;
    std::uint64_t classical_ops = 0;
    std::uint64_t quantum_queries = 0;
    std::uint64_t qram_reads = 0;
    std::int64_t wall_ms = 0;
    long double cap = 0.0L;
    bool pass = false;
};

std::string fmt_count(long double x) {
    if (x < 9.0e18L) return std::to_string(static_cast<long long>(llroundl(x)));
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6Lg", x);
    return buf;
}

void write_csv_rows(const std::vector<csv_row>& rows, std::ostream& os, bool with_header) {
    if (with_header) os << k_csv_header << "\n";
    for (const auto& r : rows) {
        os << r.kind << ',' << r.method << ',' << r.n << ',' << r.T << ',' << r.E << ','
           << r.classical_ops << ',' << r.quantum_queries << ',' << r.qram_reads << ','
           << r.wall_ms << ',' << fmt_count(r.cap) << ',' << (r.pass ? 1 : 0) << "\n";
    }
}

int emit_csv(const std::vector<csv_row>& rows, const std::string& path, bool append,
             std::ostream& out, std::ostream& err) {
    if (path.empty()) {
        write_csv_rows(rows, out, true);
        return 0;
    }
    bool need_header = true;
    if (append) {
        std::ifstream probe(path, std::ios::binary | std::ios::ate);
        if (probe.good() && probe.tellg() > 0) need_header = false;
    }
    std::ofstream os(path, append ? std::ios::app : std::ios::trunc);
    if (!os) {
        err << "error: cannot write " << path << "\n";
        return 1;
    }
    write_csv_rows(rows, os, need_header);
    out << "wrote " << rows.size() << " rows to " << path << "\n";
    return 0;
}

void seal_row(csv_row& r, const query_ledger& led, const stopwatch& sw, long double cap,
              bool quantum) {
    r.classical_ops = led.classical_ops;
    r.quantum_queries = led.quantum_queries;
    r.qram_reads = led.qram_reads;
    r.wall_ms = sw.ms();
    r.cap = cap;
    const std::uint64_t headline = quantum ? led.quantum_queries : led.classical_ops;
    r.pass = static_cast<long double>(headline) <= cap;
}

long double factorial_ld(int n) {
    long double out = 1.0L;
    for (int i = 2; i <= n; ++i) out *= i;
    return out;
}

csv_row bench_additive(const instance& inst, const std::string& method) {
    csv_row r;
    r.kind = kind_name(inst.kind);
    r.method = method;
    r.n = inst.n();
    const add_adapter ad = make_add_adapter(inst);
    r.T = ad.domain.hi - ad.domain.lo + 1;
    r.E = 0;
    const int n = inst.n();
    query_ledger led;
    stopwatch sw;
    long double cap = 0.0L;
    bool quantum = false;
    if (method == "bruteforce") {
        brute_force(inst, job_set::full(n), 0, 10, &led);
        cap = factorial_ld(n) * n;
    } else if (method == "dpas") {
        solve_add_dpas(inst, ad, 0, &led);
        cap = static_cast<long double>(n) * exp2l(n - 1);
    } else if (method == "d-dpas") {
        const padded_instance pad = pad_to_power_of_two(inst);
        const add_adapter pa = make_add_adapter(pad.inst);
        solve_add_d_dpas(pad.inst, pa, &led);
        const int np = pad.inst.n();
        const long double tsize = static_cast<long double>(pa.domain.hi - pa.domain.lo + 1);
        cap = static_cast<long double>(np) * np * tsize * exp2l(1.5L * np);
    } else if (method == "qddpas") {
        quantum = true;
        const qmf_config cfg;
        run_qddpas_additive(inst, 0, cfg, led);
        cap = static_cast<long double>(n) * n * exp2l(0.75L * n);
    } else if (method == "qddpas3") {
        quantum = true;
        qmf_config cfg;
        cfg.levels = 3;
        run_qddpas_additive_3level(inst, 0, cfg, led);
        cap = static_cast<long double>(n) * n * exp2l(0.789L * n);
    }
    seal_row(r, led, sw, cap, quantum);
    return r;
}

csv_row bench_composed(const instance& inst, const std::string& method) {
    csv_row r;
    r.kind = kind_name(inst.kind);
    r.method = method;
    r.n = inst.n();
    const comp_adapter ad = make_comp_adapter(inst);
    r.T = ad.domain.hi - ad.domain.lo + 1;
    r.E = ad.edomain.hi - ad.edomain.lo + 1;
    const int n = inst.n();
    query_ledger led;
    stopwatch sw;
    long double cap = 0.0L;
    bool quantum = false;
    if (method == "dpas") {
        const comp_table tbl = solve_comp_dpas(inst, ad, -1, &led);
        min_feasible_eps(ad.edomain,
                         [&](std::int64_t e) { return tbl.at(job_set::full(n), dp_value(0), e); });
        const long double esize = static_cast<long double>(r.E);
        cap = static_cast<long double>(n) * n * r.T * esize * esize * esize * exp2l(n);
    } else if (method == "qddpas") {
        quantum = true;
        const qmf_config cfg;
        qcomp_engine eng(inst, cfg, led);
        eng.min_feasible();
        cap = static_cast<long double>(n) * n * r.E * exp2l(0.75L * n);
    }
    seal_row(r, led, sw, cap, quantum);
    return r;
}

csv_row bench_flowshop(const flowshop_instance& fs, const std::string& method) {
    csv_row r;
    r.kind = kind_name(problem_kind::flowshop3);
    r.method = method;
    r.n = fs.n();
    r.E = 0;
    const int n = fs.n();
    const job_set full = job_set::full(n);
    query_ledger led;
    stopwatch sw;
    long double cap = 0.0L;
    bool quantum = false;
    if (method == "dpas") {
        dec_solver dec(fs, -1, &led);
        r.T = dec.horizon() + 1;
        min_makespan(dec.horizon(),
                     [&](std::int64_t c) { return dec.solve(full, {0, 0}, {c, c}); });
        const long double fsize = static_cast<long double>(r.T);
        cap = static_cast<long double>(n) * n * fsize * fsize * fsize * fsize * exp2l(n);
    } else if (method == "qdec") {
        quantum = true;
        const qmf_config cfg;
        qdec_engine eng(fs, cfg, led);
        r.T = eng.horizon() + 1;
        eng.min_makespan(search_mode::dichotomic);
        const long double fsize = static_cast<long double>(r.T);
        cap = static_cast<long double>(n) * n * fsize * fsize * exp2l(0.75L * n);
    }
    seal_row(r, led, sw, cap, quantum);
    return r;
}

int cmd_bench(const flags& f, std::ostream& out, std::ostream& err) {
    const int n_cap = f.n_max > 0 ? f.n_max : 16;
    std::vector<csv_row> rows;
    for (int n : {4, 8, 12, 16}) {
        if (n > n_cap) continue;
        gen_config gc;
        gc.p_max = 5;
        gc.w_max = 3;
        const instance inst =
            std::get<instance>(gen_random(problem_kind::tardiness, n, f.seed + n, gc));
        if (n <= 8) rows.push_back(bench_additive(inst, "bruteforce"));
        rows.push_back(bench_additive(inst, "dpas"));
        if ((n & (n - 1)) == 0) rows.push_back(bench_additive(inst, "d-dpas"));
        rows.push_back(bench_additive(inst, "qddpas"));
        rows.push_back(bench_additive(inst, "qddpas3"));
    }
    for (int n : {4, 8}) {
        if (n > n_cap) continue;
        gen_config gc;
        gc.p_max = 3;
        gc.w_max = 2;
        const instance inst =
            std::get<instance>(gen_random(problem_kind::release_wu, n, f.seed + 100 + n, gc));
        rows.push_back(bench_composed(inst, "dpas"));
        rows.push_back(bench_composed(inst, "qddpas"));
    }
    if (n_cap >= 4) {
        gen_config gc;
        gc.p_max = 2;
        const flowshop_instance fs =
            std::get<flowshop_instance>(gen_random(problem_kind::flowshop3, 4, f.seed + 200, gc));
        rows.push_back(bench_flowshop(fs, "dpas"));
        rows.push_back(bench_flowshop(fs, "qdec"));
    }
    return emit_csv(rows, f.csv, /*append=*/false, out, err);
}

// ------------------------------- audit ----------------------------------

int cmd_audit(const flags& f, std::ostream& out, std::ostream& err) {
    const int n_cap = f.n_max > 0 ? f.n_max : 16;
    std::vector<audit_row> rows;
    for (int n : {4, 8, 12, 16}) {
        if (n > n_cap) continue;
        gen_config gc;
        gc.p_max = 5;
        gc.w_max = 3;
        const instance inst =
            std::get<instance>(gen_random(problem_kind::tardiness, n, f.seed + n, gc));
        query_ledger led;
        qmf_config cfg;
        cfg.levels = f.levels;
        if (f.levels == 3) {
            run_qddpas_additive_3level(inst, 0, cfg, led);
        } else {
            run_qddpas_additive(inst, 0, cfg, led);
        }
        const auto hr = audit_hybrid_run(led, n, 1.0L, 1.0L, f.levels);
        rows.insert(rows.end(), hr.begin(), hr.end());
    }
    for (const auto& row : entropy_bound_rows(24)) rows.push_back(row);
    for (const auto& row : sqrt_product_rows(24)) rows.push_back(row);

    out << audit_rows_to_json(rows) << "\n";

    if (!f.csv.empty()) {
        std::vector<csv_row> csv;
        csv.reserve(rows.size());
        for (const auto& row : rows) {
            csv_row c;
            c.kind = "audit";
            c.method = row.phase;
            c.n = row.n;
            c.classical_ops = static_cast<std::uint64_t>(llroundl(
                std::min(row.measured, 9.0e18L)));
            c.cap = row.cap;
            c.pass = row.pass;
            csv.push_back(std::move(c));
        }
        return emit_csv(csv, f.csv, /*append=*/true, out, err);
    }
    return 0;
}

// ------------------------------ generate --------------------------------

int cmd_generate(const flags& f, std::ostream& out, std::ostream& err) {
    if (f.kind.empty() || f.kind == "all") {
        err << "error: generate needs a concrete --kind\n";
        return 1;
    }
    const auto k = kind_from_name(f.kind);
    if (!k) {
        err << "error: unknown kind " << f.kind << "\n";
        return 1;
    }
    const int n = f.n_max > 0 ? f.n_max : 4;
    if (n > 20) {
        err << "error: --n-max too large for generation (max 20)\n";
        return 1;
    }
    gen_config gc;
    gc.p_max = f.p_max >= 0 ? f.p_max : 5;
    const parsed_instance pi = gen_random(*k, n, f.seed, gc);
    if (std::holds_alternative<instance>(pi)) {
        out << to_document(std::get<instance>(pi)) << "\n";
    } else {
        out << to_document(std::get<flowshop_instance>(pi)) << "\n";
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    flags f;
    CLI::App app{"exact, dichotomic, and hybrid quantum-classical solvers for hard scheduling"};
    app.require_subcommand(1);

    const std::vector<std::string> methods = {"bruteforce", "dpas",   "d-dpas", "qddpas",
                                              "qddpas3",    "qdec",   "approx"};

    CLI::App* solve = app.add_subcommand("solve", "run one method on one instance file");
    solve->add_option("--kind", f.kind, "problem kind, cross-checked against the file");
    solve->add_option("--in", f.in_path, "instance JSON file")->required();
    solve->add_option("--method", f.method, "solver to run")
        ->required()
        ->check(CLI::IsMember(methods));
    solve->add_option("--t0", f.t0, "start time (additive kinds)");
    CLI::Option* eps0_opt =
        solve->add_option("--eps0", f.eps0, "exact objective budget (composed kinds)");
    solve->add_option("--epsilon", f.epsilon, "approximation parameter, e.g. 1/4 or 0.25");
    solve->add_flag("--noisy", f.noisy, "emulate bounded-error quantum subroutines");
    solve->add_option("--p-success", f.p_success, "per-call success probability in noisy mode");
    solve->add_option("--delta", f.delta, "end-to-end failure budget in noisy mode");
    solve->add_option("--seed", f.seed, "RNG seed (noisy mode)");
    solve->add_option("--mode", f.mode, "makespan search mode")
        ->check(CLI::IsMember({"linear", "dichotomic"}));

    CLI::App* verify = app.add_subcommand("verify", "cross-check against brute-force oracles");
    verify->add_option("--kind", f.kind, "problem kind or 'all'");
    verify->add_option("--n-max", f.n_max, "max jobs per instance (default 6)");
    verify->add_option("--p-max", f.p_max, "max processing time (default 5)");
    verify->add_option("--trials", f.trials, "instances per kind (default 50)");
    verify->add_option("--seed", f.seed, "base RNG seed");

    CLI::App* bench = app.add_subcommand("bench", "instrumented sweep, CSV with complexity caps");
    bench->add_option("--csv", f.csv, "write CSV here instead of stdout");
    bench->add_option("--seed", f.seed, "instance RNG seed");
    bench->add_option("--n-max", f.n_max, "skip sweep sizes above this (default 16)");

    CLI::App* audit = app.add_subcommand("audit", "complexity-bound report (JSON)");
    audit->add_option("--csv", f.csv, "append bound-check rows to this CSV");
    audit->add_option("--seed", f.seed, "instance RNG seed");
    audit->add_option("--n-max", f.n_max, "largest audited hybrid run (default 16)");
    audit->add_option("--levels", f.levels, "audited algorithm depth (2 or 3)")
        ->check(CLI::Range(2, 3));

    CLI::App* generate = app.add_subcommand("generate", "emit a random instance document");
    generate->add_option("--kind", f.kind, "problem kind")->required();
    generate->add_option("--n-max", f.n_max, "number of jobs (default 4)");
    generate->add_option("--p-max", f.p_max, "max processing time (default 5)");
    generate->add_option("--seed", f.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }
    f.has_eps0 = eps0_opt->count() > 0;

    try {
        if (*solve) return cmd_solve(f, out, err);
        if (*verify) return cmd_verify(f, out, err);
        if (*bench) return cmd_bench(f, out, err);
        if (*audit) return cmd_audit(f, out, err);
        if (*generate) return cmd_generate(f, out, err);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const guard_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const overflow_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    err << "error: no subcommand\n";
    return 1;
}

}  // namespace qdpas
