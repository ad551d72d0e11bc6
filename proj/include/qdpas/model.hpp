#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qdpas/dp_value.hpp"
#include "qdpas/job_set.hpp"

namespace qdpas {

// Five single-machine problem kinds plus the 3-machine flowshop.
enum class problem_kind {
    deadline_wc,   // min sum w_j C_j subject to hard deadlines dtilde_j
    tardiness,     // min sum w_j T_j
    prec_wc,       // min sum w_j C_j subject to precedence constraints
    release_wu,    // min sum w_j U_j with release dates (via auxiliary makespan DP)
    release_wc,    // min sum w_j C_j with release dates (via auxiliary makespan DP)
    flowshop3,     // 3-machine permutation flowshop makespan
};

std::string kind_name(problem_kind k);
std::optional<problem_kind> kind_from_name(const std::string& name);
bool is_additive_kind(problem_kind k);
bool is_composed_kind(problem_kind k);

struct job {
    std::int64_t p = 0;
    std::optional<std::int64_t> w;
    std::optional<std::int64_t> d;
    std::optional<std::int64_t> r;
    std::optional<dp_value> dtilde;  // may hold dp_value::inf()
};

struct instance {
    problem_kind kind = problem_kind::tardiness;
    std::vector<job> jobs;
    std::vector<std::pair<int, int>> prec;  // (i before j), 0-based

    int n() const { return static_cast<int>(jobs.size()); }
};

struct flowshop_instance {
    // p[i][j]: processing time of job j on machine i
    std::array<std::vector<std::int64_t>, 3> p;

    int n() const { return static_cast<int>(p[0].size()); }
};

using permutation = std::vector<int>;  // 0-based job ids, schedule order

struct time_domain {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool plus_infinity_member = false;
};

struct eps_domain {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

// Per-machine (2,3) begin or end bounds for the flowshop decision problem.
// Components may go negative transiently under the shift operation; solvers
// normalize before table access.
struct temporal_front {
    std::int64_t m2 = 0;
    std::int64_t m3 = 0;

    temporal_front shifted(std::int64_t c) const { return {m2 - c, m3 - c}; }
    bool leq(const temporal_front& o) const { return m2 <= o.m2 && m3 <= o.m3; }
    friend bool operator==(const temporal_front& a, const temporal_front& b) {
        return a.m2 == b.m2 && a.m3 == b.m3;
    }
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a run would exceed a size/memory/enumeration guard; the message
// names the guard so the CLI can report it.
struct guard_error : std::runtime_error {
    explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

using parsed_instance = std::variant<instance, flowshop_instance>;

struct instance_caps {
    int additive_n = 20;
    int composed_n = 10;
    int flowshop_n = 12;
};

// Instance document, JSON-shaped; see README for the schema. Job ids in the
// document are 1-based list positions; prec pairs use those ids.
parsed_instance parse_instance(const std::string& text, const instance_caps& caps = {});
std::string to_document(const instance& inst);
std::string to_document(const flowshop_instance& fs);

std::int64_t total_p(const instance& inst);
std::int64_t total_p(const flowshop_instance& fs);
std::int64_t total_w(const instance& inst);
std::int64_t max_r(const instance& inst);

time_domain time_domain_of(const instance& inst);
time_domain time_domain_of(const flowshop_instance& fs);
eps_domain eps_domain_of(const instance& inst);  // composed kinds only

// Padding appends fake jobs that cannot change the optimum: p=0, w=0,
// d = horizon, dtilde = +inf, r=0 (flowshop: all-zero columns). original_n
// lets output permutations be projected back.
struct padded_instance {
    instance inst;
    int original_n = 0;
};

struct padded_flowshop {
    flowshop_instance fs;
    int original_n = 0;
};

padded_instance pad_to(const instance& inst, int m);
padded_instance pad_to_multiple_of_four(const instance& inst);
padded_instance pad_to_power_of_two(const instance& inst);  // >= 4, for dichotomic levels
padded_flowshop pad_to(const flowshop_instance& fs, int m);
padded_flowshop pad_to_multiple_of_four(const flowshop_instance& fs);
padded_flowshop pad_to_power_of_two(const flowshop_instance& fs);

// Drops fake job ids (>= original_n) from a permutation over a padded instance.
permutation project_witness(const permutation& perm, int original_n);

// Completion time of each job of perm, processed consecutively from t0;
// with release dates each job starts at max(machine free time, r_j).
// Returned in perm order.
std::vector<std::int64_t> completion_times(const permutation& perm, const instance& inst,
                                           std::int64_t t0);

struct flowshop_schedule {
    std::int64_t cmax = 0;
    std::int64_t b2 = 0, b3 = 0;  // start of first operation on machines 2, 3
    std::int64_t e2 = 0, e3 = 0;  // end of last operation on machines 2, 3
    std::array<std::vector<std::int64_t>, 3> completion;  // per machine, per perm position
};

// Standard non-delay permutation flowshop semantics, machine 1 starting at 0.
flowshop_schedule flowshop_simulate(const permutation& perm, const flowshop_instance& fs);

struct gen_config {
    std::int64_t p_max = 5;
    std::int64_t w_max = 3;
    std::int64_t slack = -1;  // -1: derived from total processing time
};

// Deterministic for a fixed seed. Due dates / deadlines are drawn so that
// instances are feasible (DeadlineWC: deadlines cover a random permutation's
// completion times); precedence edges form a random DAG.
parsed_instance gen_random(problem_kind kind, int n, std::uint64_t seed, const gen_config& cfg = {});

// Uniform integer in [0, bound), platform-stable (rejection sampling on the
// raw mt19937_64 stream; std::uniform_int_distribution is not portable).
std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace qdpas
