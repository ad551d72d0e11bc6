#include "qdpas/approx.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qdpas/ledger.hpp"

namespace qdpas {

namespace {

using int128 = __int128;

std::int64_t to_i64_checked(int128 v, const char* what) {
    if (v > static_cast<int128>(INT64_MAX) || v < static_cast<int128>(INT64_MIN)) {
        throw guard_error(std::string(what) + " exceeds 64-bit range");
    }
    return static_cast<std::int64_t>(v);
}

// ceil(num / den) for num >= 0, den > 0.
std::int64_t ceil_div(int128 num, int128 den, const char* what) {
    return to_i64_checked((num + den - 1) / den, what);
}

std::uint64_t parse_digits(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to) throw parse_error("rational: missing digits in '" + s + "'");
    std::uint64_t v = 0;
    for (std::size_t i = from; i < to; ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw parse_error("rational: bad character in '" + s + "'");
        if (v > (UINT64_MAX - static_cast<std::uint64_t>(c - '0')) / 10) {
            throw parse_error("rational: number too large in '" + s + "'");
        }
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

std::int64_t as_positive_i64(std::uint64_t v, const std::string& s) {
    if (v > static_cast<std::uint64_t>(INT64_MAX)) {
        throw parse_error("rational: number too large in '" + s + "'");
    }
    return static_cast<std::int64_t>(v);
}

}  // namespace

rational make_rational(std::int64_t num, std::int64_t den) {
    // the type promises an exact positive rational, so zero is out too
    if (den <= 0) throw parse_error("rational: denominator must be positive");
    if (num <= 0) throw parse_error("rational: value must be positive");
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '\t') s.push_back(c);
    }
    if (s.empty()) throw parse_error("rational: empty string");

    const std::size_t slash = s.find('/');
    if (slash != std::string::npos) {
        const std::int64_t a = as_positive_i64(parse_digits(s, 0, slash), s);
        const std::int64_t b = as_positive_i64(parse_digits(s, slash + 1, s.size()), s);
        if (b == 0) throw parse_error("rational: zero denominator in '" + s + "'");
        return make_rational(a, b);
    }
    const std::size_t dot = s.find('.');
    if (dot != std::string::npos) {
        const std::size_t frac_digits = s.size() - dot - 1;
        if (frac_digits == 0 || frac_digits > 18) {
            throw parse_error("rational: unsupported decimal '" + s + "'");
        }
        const std::uint64_t ip = dot == 0 ? 0 : parse_digits(s, 0, dot);
        const std::uint64_t fp = parse_digits(s, dot + 1, s.size());
        int128 den = 1;
        for (std::size_t i = 0; i < frac_digits; ++i) den *= 10;
        const int128 num = static_cast<int128>(ip) * den + static_cast<int128>(fp);
        return make_rational(to_i64_checked(num, "rational numerator"),
                             to_i64_checked(den, "rational denominator"));
    }
    return make_rational(as_positive_i64(parse_digits(s, 0, s.size()), s), 1);
}

scaled_instance scale_instance(const flowshop_instance& fs, rational epsilon) {
    if (epsilon.num <= 0 || epsilon.den <= 0) {
        throw std::invalid_argument("scale_instance: epsilon must be positive");
    }
    if (fs.n() < 1) throw std::invalid_argument("scale_instance: empty instance");

    scaled_instance out;
    out.original = fs;
    for (int i = 0; i < 3; ++i) {
        for (std::int64_t v : fs.p[i]) {
            if (v < 0) throw std::invalid_argument("scale_instance: negative processing time");
            out.p_max = std::max(out.p_max, v);
        }
    }
    if (out.p_max == 0) {
        out.scaled = fs;
        out.k = {1, 1};
        out.identity = true;
        return out;
    }

    const int n = fs.n();
    const int128 a = epsilon.num;
    const int128 b = epsilon.den;
    const int128 k_num = a * static_cast<int128>(out.p_max);
    const int128 k_den = b * static_cast<int128>(n + 2);
    {
        // Reduce K = aP / (b(n+2)) exactly; it is reported, never rounded.
        int128 x = k_num, y = k_den;
        while (y != 0) {
            int128 t = x % y;
            x = y;
            y = t;
        }
        out.k.num = to_i64_checked(k_num / x, "scaling ratio");
        out.k.den = to_i64_checked(k_den / x, "scaling ratio");
    }

    out.scaled = fs;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::int64_t p = fs.p[i][j];
            // ceil(p / K) = ceil(p * b * (n+2) / (a * P))
            out.scaled.p[i][j] =
                p == 0 ? 0 : ceil_div(static_cast<int128>(p) * k_den, k_num, "scaled processing time");
        }
    }
    return out;
}

exact_flowshop_solver make_permutation_solver(int n_guard) {
    return [n_guard](const flowshop_instance& fs) -> std::pair<std::int64_t, permutation> {
        const int n = fs.n();
        if (n > n_guard) {
            throw guard_error("permutation solver guard: n = " + std::to_string(n) +
                              " exceeds " + std::to_string(n_guard));
        }
        if (n == 0) return {0, {}};
        permutation perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::int64_t best = INT64_MAX;
        permutation best_perm;
        do {
            const std::int64_t c = flowshop_simulate(perm, fs).cmax;
            if (c < best) {
                best = c;
                best_perm = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return {best, best_perm};
    };
}

exact_flowshop_solver make_decision_solver(search_mode mode) {
    return [mode](const flowshop_instance& fs) -> std::pair<std::int64_t, permutation> {
        const int n = fs.n();
        if (n == 0) return {0, {}};
        query_ledger led;
        dec_solver solver(fs, -1, &led);
        const job_set all = job_set::full(n);
        const auto decide = [&](std::int64_t c) { return solver.solve(all, {0, 0}, {c, c}); };
        const makespan_result mk = min_makespan(solver.horizon(), decide, mode);
        permutation perm =
            reconstruct_flowshop_witness(solver, all, {0, 0}, {mk.cmax, mk.cmax});
        return {mk.cmax, perm};
    };
}

approx_result approx_solve(const flowshop_instance& fs, rational epsilon,
                           const exact_flowshop_solver& solver) {
    approx_result out;
    out.scaling = scale_instance(fs, epsilon);
    out.ratio_bound =
        make_rational(to_i64_checked(static_cast<int128>(epsilon.num) + epsilon.den, "ratio bound"),
                      epsilon.den);

    auto [scaled_opt, perm] = solver(out.scaling.scaled);
    out.perm = std::move(perm);
    out.cmax_scaled = scaled_opt;
    out.cmax = flowshop_simulate(out.perm, fs).cmax;

    const int n = fs.n();
    std::int64_t lb = out.scaling.p_max;
    for (int i = 0; i < 3; ++i) {
        int128 load = 0;
        for (std::int64_t v : fs.p[i]) load += v;
        lb = std::max(lb, to_i64_checked(load, "machine load"));
    }
    for (int j = 0; j < n; ++j) {
        int128 path = 0;
        for (int i = 0; i < 3; ++i) path += fs.p[i][j];
        lb = std::max(lb, to_i64_checked(path, "job path length"));
    }
    if (!out.scaling.identity && out.cmax_scaled > n + 2) {
        // Unscaling: scaled times obey p'/K < p/K + 1, so along any critical
        // path (n+2 operations) the true optimum is at least
        // K * (scaled optimum - (n+2)).
        const int128 num = static_cast<int128>(out.scaling.k.num) *
                           (static_cast<int128>(out.cmax_scaled) - (n + 2));
        lb = std::max(lb, ceil_div(num, static_cast<int128>(out.scaling.k.den), "lower bound"));
    }
    out.lower_bound = lb;
    out.certified = static_cast<int128>(out.ratio_bound.den) * out.cmax <=
                    static_cast<int128>(out.ratio_bound.num) * out.lower_bound;
    return out;
}

}  // namespace qdpas
