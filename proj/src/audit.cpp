#include "qdpas/audit.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "qdpas/job_set.hpp"

namespace qdpas {

namespace {

long double pow2(long double e) { return std::exp2l(e); }

audit_row make_row(std::string phase, int n, long double measured, long double cap) {
    audit_row r;
    r.phase = std::move(phase);
    r.n = n;
    r.measured = measured;
    r.cap = cap;
    r.pass = measured <= cap;
    return r;
}

}  // namespace

long double binary_entropy(long double x) {
    if (x < 0.0L || x > 1.0L) throw std::invalid_argument("binary_entropy: x outside [0,1]");
    if (x == 0.0L || x == 1.0L) return 0.0L;
    return -x * std::log2l(x) - (1.0L - x) * std::log2l(1.0L - x);
}

std::vector<audit_row> audit_hybrid_run(const query_ledger& led,
                                        int n,
                                        long double pseudo_classical,
                                        long double pseudo_quantum,
                                        int levels) {
    if (n < 1) throw std::invalid_argument("audit_hybrid_run: n must be >= 1");
    if (levels != 2 && levels != 3) throw std::invalid_argument("audit_hybrid_run: levels must be 2 or 3");
    if (pseudo_classical < 1.0L) pseudo_classical = 1.0L;
    if (pseudo_quantum < 1.0L) pseudo_quantum = 1.0L;

    const long double poly = static_cast<long double>(n) * static_cast<long double>(n);
    const long double class_exp = levels == 2 ? 0.811L : 0.789L;
    const long double quant_exp = levels == 2 ? 0.75L : 0.789L;

    std::vector<audit_row> rows;
    rows.push_back(make_row("classical-ops", n,
                            static_cast<long double>(led.classical_ops),
                            poly * pseudo_classical * pow2(class_exp * n)));
    rows.push_back(make_row("quantum-queries", n,
                            static_cast<long double>(led.quantum_queries),
                            poly * pseudo_quantum * pow2(quant_exp * n)));

    // Binomial form of the nested-search query cap. For n not divisible by 4
    // the run pads internally; cap against the padded size.
    int np = n;
    while (np % 4 != 0) ++np;
    const long double prod = static_cast<long double>(binomial(np, np / 2)) *
                             static_cast<long double>(binomial(np / 2, np / 4));
    rows.push_back(make_row("quantum-binomial-cap", n,
                            static_cast<long double>(led.quantum_queries),
                            poly * pseudo_quantum * std::sqrt(prod)));

    // Counterfactual: quantum minimum finding applied to every transition of
    // the plain subset DP costs ~sqrt(k) per size-k subset, which sums to
    // Theta(sqrt(n) 2^n) — no improvement over the classical 2^n.
    long double qmf_in_dpas = 0.0L;
    for (int k = 1; k <= n; ++k) {
        qmf_in_dpas += std::sqrt(static_cast<long double>(k)) *
                       static_cast<long double>(binomial(n, k));
    }
    const long double naive_cap = poly * pow2(static_cast<long double>(n));
    rows.push_back(make_row("counterfactual-qmf-in-dpas", n, qmf_in_dpas, naive_cap));

    // Counterfactual: recursing the bipartition search quantumly all the way
    // down (no classical base) costs sqrt of the product of all level domain
    // sizes, which telescopes back to ~2^n.
    long double all_quantum_prod = 1.0L;
    for (int size = np; size >= 2; size /= 2) {
        all_quantum_prod *= static_cast<long double>(binomial(size, size / 2));
    }
    rows.push_back(make_row("counterfactual-all-quantum", n,
                            std::sqrt(all_quantum_prod), naive_cap));
    return rows;
}

std::vector<audit_row> entropy_bound_rows(int n_max) {
    if (n_max < 1 || n_max > 24) throw std::invalid_argument("entropy_bound_rows: n_max must be in [1,24]");
    std::vector<audit_row> rows;
    for (int n = 1; n <= n_max; ++n) {
        for (int k = 0; 2 * k <= n; ++k) {
            std::uint64_t sum = 0;
            for (int i = 0; i <= k; ++i) sum += binomial(n, i);
            const long double cap =
                pow2(binary_entropy(static_cast<long double>(k) / static_cast<long double>(n)) *
                     static_cast<long double>(n));
            rows.push_back(make_row("entropy-bound-k" + std::to_string(k), n,
                                    static_cast<long double>(sum), cap));
        }
    }
    return rows;
}

std::vector<audit_row> sqrt_product_rows(int n_max) {
    if (n_max < 4 || n_max > 24) throw std::invalid_argument("sqrt_product_rows: n_max must be in [4,24]");
    std::vector<audit_row> rows;
    for (int n = 4; n <= n_max; n += 4) {
        const std::uint64_t prod = binomial(n, n / 2) * binomial(n / 2, n / 4);
        audit_row r;
        r.phase = "sqrt-binomial-product";
        r.n = n;
        r.measured = std::sqrt(static_cast<long double>(prod));
        r.cap = pow2(0.75L * static_cast<long double>(n));
        // Decide integer-exactly: sqrt(prod) <= 2^{0.75n}  <=>  prod <= 2^{1.5n},
        // and 1.5n <= 36 keeps the right side in 64-bit range.
        r.pass = prod <= (std::uint64_t{1} << (3 * n / 2));
        rows.push_back(r);
    }
    return rows;
}

std::string audit_rows_to_json(const std::vector<audit_row>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const audit_row& r : rows) {
        arr.push_back({{"n", r.n},
                       {"phase", r.phase},
                       {"measured", static_cast<double>(r.measured)},
                       {"cap", static_cast<double>(r.cap)},
                       {"pass", r.pass}});
    }
    return arr.dump(2);
}

}  // namespace qdpas
