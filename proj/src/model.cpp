#include "qdpas/model.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <queue>

#include "json.hpp"

namespace qdpas {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

std::string kind_name(problem_kind k) {
    switch (k) {
        case problem_kind::deadline_wc: return "DeadlineWC";
        case problem_kind::tardiness: return "Tardiness";
        case problem_kind::prec_wc: return "PrecWC";
        case problem_kind::release_wu: return "ReleaseWU";
        case problem_kind::release_wc: return "ReleaseWC";
        case problem_kind::flowshop3: return "Flowshop3";
    }
    return "?";
}

std::optional<problem_kind> kind_from_name(const std::string& name) {
    std::string s = lower(name);
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '_' || c == '-'; }),
            s.end());
    if (s == "deadlinewc") return problem_kind::deadline_wc;
    if (s == "tardiness") return problem_kind::tardiness;
    if (s == "precwc") return problem_kind::prec_wc;
    if (s == "releasewu") return problem_kind::release_wu;
    if (s == "releasewc") return problem_kind::release_wc;
    if (s == "flowshop3") return problem_kind::flowshop3;
    return std::nullopt;
}

bool is_additive_kind(problem_kind k) {
    return k == problem_kind::deadline_wc || k == problem_kind::tardiness ||
           k == problem_kind::prec_wc;
}

bool is_composed_kind(problem_kind k) {
    return k == problem_kind::release_wu || k == problem_kind::release_wc;
}

namespace {

std::int64_t require_int(const nlohmann::json& obj, const char* field, int job_id_1based) {
    if (!obj.contains(field))
        throw parse_error("missing field \"" + std::string(field) + "\" on job " +
                          std::to_string(job_id_1based));
    const auto& v = obj.at(field);
    if (!v.is_number_integer())
        throw parse_error("field \"" + std::string(field) + "\" on job " +
                          std::to_string(job_id_1based) + " must be an integer");
    return v.get<std::int64_t>();
}

std::int64_t require_nonneg(const nlohmann::json& obj, const char* field, int job_id_1based) {
    const std::int64_t v = require_int(obj, field, job_id_1based);
    if (v < 0)
        throw parse_error("negative value for \"" + std::string(field) + "\" on job " +
                          std::to_string(job_id_1based));
    return v;
}

void check_acyclic(int n, const std::vector<std::pair<int, int>>& prec) {
    // Kahn's algorithm
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> succ(n);
    for (const auto& [a, b] : prec) {
        succ[a].push_back(b);
        ++indeg[b];
    }
    std::queue<int> q;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) q.push(i);
    int seen = 0;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        ++seen;
        for (int v : succ[u])
            if (--indeg[v] == 0) q.push(v);
    }
    if (seen != n) throw parse_error("cyclic precedence");
}

instance parse_single_machine(problem_kind kind, const nlohmann::json& doc,
                              const instance_caps& caps) {
    if (!doc.contains("jobs") || !doc.at("jobs").is_array())
        throw parse_error("missing \"jobs\" array");
    instance inst;
    inst.kind = kind;
    const auto& jobs = doc.at("jobs");
    const int n = static_cast<int>(jobs.size());
    const int cap = is_composed_kind(kind) ? caps.composed_n : caps.additive_n;
    if (n < 1) throw parse_error("instance must have at least one job");
    if (n > cap)
        throw guard_error("instance size guard: n = " + std::to_string(n) + " exceeds cap " +
                          std::to_string(cap) + " for kind " + kind_name(kind));
    for (int i = 0; i < n; ++i) {
        const auto& jd = jobs[i];
        if (!jd.is_object()) throw parse_error("job " + std::to_string(i + 1) + " is not an object");
        job j;
        j.p = require_nonneg(jd, "p", i + 1);
        switch (kind) {
            case problem_kind::deadline_wc:
                j.w = require_nonneg(jd, "w", i + 1);
                if (!jd.contains("dtilde"))
                    throw parse_error("missing field \"dtilde\" on job " + std::to_string(i + 1));
                if (jd.at("dtilde").is_string()) {
                    if (lower(jd.at("dtilde").get<std::string>()) != "inf")
                        throw parse_error("dtilde on job " + std::to_string(i + 1) +
                                          " must be an integer or \"inf\"");
                    j.dtilde = dp_value::inf();
                } else {
                    j.dtilde = dp_value(require_nonneg(jd, "dtilde", i + 1));
                }
                break;
            case problem_kind::tardiness:
                j.w = require_nonneg(jd, "w", i + 1);
                j.d = require_int(jd, "d", i + 1);  // due dates may be negative
                break;
            case problem_kind::prec_wc:
                j.w = require_nonneg(jd, "w", i + 1);
                break;
            case problem_kind::release_wu:
                j.w = require_nonneg(jd, "w", i + 1);
                j.d = require_int(jd, "d", i + 1);
                j.r = require_nonneg(jd, "r", i + 1);
                break;
            case problem_kind::release_wc:
                j.w = require_nonneg(jd, "w", i + 1);
                j.r = require_nonneg(jd, "r", i + 1);
                break;
            case problem_kind::flowshop3:
                break;  // unreachable
        }
        inst.jobs.push_back(std::move(j));
    }
    if (doc.contains("prec") && !doc.at("prec").empty()) {
        if (kind != problem_kind::prec_wc)
            throw parse_error("\"prec\" is only valid for kind PrecWC");
        for (const auto& e : doc.at("prec")) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                throw parse_error("prec entries must be [i, j] integer pairs");
            const std::int64_t a = e[0].get<std::int64_t>();
            const std::int64_t b = e[1].get<std::int64_t>();
            if (a < 1 || a > n || b < 1 || b > n)
                throw parse_error("prec pair (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") out of range 1.." + std::to_string(n));
            inst.prec.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
        }
    }
    check_acyclic(n, inst.prec);
    return inst;
}

flowshop_instance parse_flowshop(const nlohmann::json& doc, const instance_caps& caps) {
    if (!doc.contains("p") || !doc.at("p").is_array() || doc.at("p").size() != 3)
        throw parse_error("flowshop document needs \"p\" as 3 machine rows");
    flowshop_instance fs;
    const auto& rows = doc.at("p");
    for (int i = 0; i < 3; ++i) {
        if (!rows[i].is_array()) throw parse_error("machine row " + std::to_string(i + 1) + " is not an array");
        for (const auto& v : rows[i]) {
            if (!v.is_number_integer())
                throw parse_error("processing times must be integers");
            const std::int64_t t = v.get<std::int64_t>();
            if (t < 0) throw parse_error("negative processing time");
            fs.p[i].push_back(t);
        }
    }
    if (fs.p[0].size() != fs.p[1].size() || fs.p[1].size() != fs.p[2].size())
        throw parse_error("machine rows must have equal length");
    const int n = fs.n();
    if (n < 1) throw parse_error("instance must have at least one job");
    if (n > caps.flowshop_n)
        throw guard_error("instance size guard: n = " + std::to_string(n) + " exceeds cap " +
                          std::to_string(caps.flowshop_n) + " for kind Flowshop3");
    return fs;
}

}  // namespace

parsed_instance parse_instance(const std::string& text, const instance_caps& caps) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string())
        throw parse_error("document must be an object with a \"kind\" string");
    const auto kind = kind_from_name(doc.at("kind").get<std::string>());
    if (!kind)
        throw parse_error("unknown kind \"" + doc.at("kind").get<std::string>() + "\"");
    if (*kind == problem_kind::flowshop3) return parse_flowshop(doc, caps);
    return parse_single_machine(*kind, doc, caps);
}

std::string to_document(const instance& inst) {
    nlohmann::json doc;
    doc["kind"] = kind_name(inst.kind);
    doc["jobs"] = nlohmann::json::array();
    for (const auto& j : inst.jobs) {
        nlohmann::json jd;
        jd["p"] = j.p;
        if (j.w) jd["w"] = *j.w;
        if (j.d) jd["d"] = *j.d;
        if (j.r) jd["r"] = *j.r;
        if (j.dtilde) {
            if (j.dtilde->is_inf())
                jd["dtilde"] = "inf";
            else
                jd["dtilde"] = j.dtilde->value();
        }
        doc["jobs"].push_back(std::move(jd));
    }
    if (!inst.prec.empty()) {
        doc["prec"] = nlohmann::json::array();
        for (const auto& [a, b] : inst.prec) doc["prec"].push_back({a + 1, b + 1});
    }
    return doc.dump();
}

std::string to_document(const flowshop_instance& fs) {
    nlohmann::json doc;
    doc["kind"] = "Flowshop3";
    doc["p"] = {fs.p[0], fs.p[1], fs.p[2]};
    return doc.dump();
}

std::int64_t total_p(const instance& inst) {
    std::int64_t s = 0;
    for (const auto& j : inst.jobs) s += j.p;
    return s;
}

std::int64_t total_p(const flowshop_instance& fs) {
    std::int64_t s = 0;
    for (const auto& row : fs.p)
        for (std::int64_t v : row) s += v;
    return s;
}

std::int64_t total_w(const instance& inst) {
    std::int64_t s = 0;
    for (const auto& j : inst.jobs) s += j.w.value_or(0);
    return s;
}

std::int64_t max_r(const instance& inst) {
    std::int64_t m = 0;
    for (const auto& j : inst.jobs) m = std::max(m, j.r.value_or(0));
    return m;
}

time_domain time_domain_of(const instance& inst) {
    if (inst.kind == problem_kind::prec_wc) return {0, 0, false};
    return {0, total_p(inst), is_composed_kind(inst.kind)};
}

time_domain time_domain_of(const flowshop_instance& fs) { return {0, total_p(fs), false}; }

eps_domain eps_domain_of(const instance& inst) {
    if (inst.kind == problem_kind::release_wu) return {0, total_w(inst)};
    if (inst.kind == problem_kind::release_wc)
        return {0, checked_mul(total_w(inst), total_p(inst))};
    throw std::logic_error("eps_domain_of: not a composed kind");
}

namespace {

job fake_job(const instance& inst) {
    job f;
    f.p = 0;
    switch (inst.kind) {
        case problem_kind::deadline_wc:
            f.w = 0;
            f.dtilde = dp_value::inf();
            break;
        case problem_kind::tardiness:
            f.w = 0;
            f.d = total_p(inst);  // horizon; weight 0 makes it irrelevant anyway
            break;
        case problem_kind::prec_wc:
            f.w = 0;
            break;
        case problem_kind::release_wu:
            f.w = 0;
            f.d = total_p(inst);
            f.r = 0;
            break;
        case problem_kind::release_wc:
            f.w = 0;
            f.r = 0;
            break;
        case problem_kind::flowshop3:
            break;  // unreachable
    }
    return f;
}

int next_multiple_of_four(int n) { return ((n + 3) / 4) * 4; }

int next_power_of_two(int n) {
    int m = 4;
    while (m < n) m *= 2;
    return m;
}

}  // namespace

padded_instance pad_to(const instance& inst, int m) {
    if (m < inst.n()) throw std::logic_error("pad_to: target smaller than instance");
    padded_instance out{inst, inst.n()};
    const job f = fake_job(inst);
    while (out.inst.n() < m) out.inst.jobs.push_back(f);
    return out;
}

padded_instance pad_to_multiple_of_four(const instance& inst) {
    return pad_to(inst, next_multiple_of_four(inst.n()));
}

padded_instance pad_to_power_of_two(const instance& inst) {
    return pad_to(inst, next_power_of_two(inst.n()));
}

padded_flowshop pad_to(const flowshop_instance& fs, int m) {
    if (m < fs.n()) throw std::logic_error("pad_to: target smaller than instance");
    padded_flowshop out{fs, fs.n()};
    for (auto& row : out.fs.p) row.resize(m, 0);
    return out;
}

padded_flowshop pad_to_multiple_of_four(const flowshop_instance& fs) {
    return pad_to(fs, next_multiple_of_four(fs.n()));
}

padded_flowshop pad_to_power_of_two(const flowshop_instance& fs) {
    return pad_to(fs, next_power_of_two(fs.n()));
}

permutation project_witness(const permutation& perm, int original_n) {
    permutation out;
    out.reserve(perm.size());
    for (int j : perm)
        if (j < original_n) out.push_back(j);
    return out;
}

std::vector<std::int64_t> completion_times(const permutation& perm, const instance& inst,
                                           std::int64_t t0) {
    std::vector<std::int64_t> out;
    out.reserve(perm.size());
    std::int64_t free_at = t0;
    for (int j : perm) {
        const auto& jb = inst.jobs.at(j);
        const std::int64_t start = std::max(free_at, jb.r.value_or(0));
        free_at = start + jb.p;
        out.push_back(free_at);
    }
    return out;
}

flowshop_schedule flowshop_simulate(const permutation& perm, const flowshop_instance& fs) {
    flowshop_schedule sch;
    const int m = static_cast<int>(perm.size());
    if (m == 0) return sch;
    for (auto& row : sch.completion) row.resize(m);
    for (int k = 0; k < m; ++k) {
        const int j = perm[k];
        sch.completion[0][k] = (k ? sch.completion[0][k - 1] : 0) + fs.p[0].at(j);
        sch.completion[1][k] =
            std::max(sch.completion[0][k], k ? sch.completion[1][k - 1] : 0) + fs.p[1].at(j);
        sch.completion[2][k] =
            std::max(sch.completion[1][k], k ? sch.completion[2][k - 1] : 0) + fs.p[2].at(j);
    }
    sch.b2 = sch.completion[1][0] - fs.p[1].at(perm[0]);
    sch.b3 = sch.completion[2][0] - fs.p[2].at(perm[0]);
    sch.e2 = sch.completion[1][m - 1];
    sch.e3 = sch.completion[2][m - 1];
    sch.cmax = sch.completion[2][m - 1];
    return sch;
}

std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw std::logic_error("rng_below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

namespace {

// uniform in [lo, hi] inclusive
std::int64_t rng_range(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

std::vector<int> random_order(std::mt19937_64& rng, int n) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(i + 1)))]);
    return order;
}

}  // namespace

parsed_instance gen_random(problem_kind kind, int n, std::uint64_t seed, const gen_config& cfg) {
    if (n < 1) throw std::logic_error("gen_random: n must be >= 1");
    std::mt19937_64 rng(seed);
    if (kind == problem_kind::flowshop3) {
        flowshop_instance fs;
        for (auto& row : fs.p) {
            row.resize(n);
            for (auto& v : row) v = rng_range(rng, 0, std::max<std::int64_t>(0, cfg.p_max));
        }
        return fs;
    }

    instance inst;
    inst.kind = kind;
    inst.jobs.resize(n);
    for (auto& j : inst.jobs) j.p = rng_range(rng, 1, std::max<std::int64_t>(1, cfg.p_max));
    const std::int64_t sum_p = total_p(inst);
    const std::int64_t slack = cfg.slack >= 0 ? cfg.slack : std::max<std::int64_t>(1, sum_p / 2);

    for (auto& j : inst.jobs) j.w = rng_range(rng, 0, std::max<std::int64_t>(0, cfg.w_max));

    switch (kind) {
        case problem_kind::deadline_wc: {
            // deadlines cover a random permutation's completions, so the
            // instance is always feasible; slack loosens them further
            const auto order = random_order(rng, n);
            std::int64_t t = 0;
            for (int j : order) {
                t += inst.jobs[j].p;
                inst.jobs[j].dtilde = dp_value(t + rng_range(rng, 0, slack));
            }
            break;
        }
        case problem_kind::tardiness:
            for (auto& j : inst.jobs) j.d = rng_range(rng, 0, sum_p);
            break;
        case problem_kind::prec_wc: {
            // orient random edges along a random order: acyclic by construction
            const auto order = random_order(rng, n);
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    if (rng_below(rng, 4) == 0) inst.prec.emplace_back(order[a], order[b]);
            break;
        }
        case problem_kind::release_wu:
            for (auto& j : inst.jobs) {
                j.r = rng_range(rng, 0, slack);
                j.d = *j.r + j.p + rng_range(rng, 0, slack);
            }
            break;
        case problem_kind::release_wc:
            for (auto& j : inst.jobs) j.r = rng_range(rng, 0, slack);
            break;
        case problem_kind::flowshop3:
            break;  // unreachable
    }
    return inst;
}

}  // namespace qdpas
