#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdpas/ledger.hpp"

namespace qdpas {

// One bound check: a measured (or estimated) quantity against its cap.
struct audit_row {
    std::string phase;
    int n = 0;
    long double measured = 0.0L;
    long double cap = 0.0L;
    bool pass = false;
};

// Binary entropy H(x) = -x log2 x - (1-x) log2(1-x), with H(0) = H(1) = 0.
long double binary_entropy(long double x);

// Bound checks for one completed hybrid (classical fill + nested-search) run.
//
// pseudo_classical / pseudo_quantum are the pseudo-polynomial magnitude
// factors of the instance (e.g. |T| for the classical fill, |E| or the
// front-lattice size for the search domains); pass 1 when none applies.
// levels selects the exponent pair: 2-level runs are capped by
// n^2 * pc * 2^{0.811 n} classical and n^2 * pq * 2^{0.75 n} quantum;
// 3-level runs by n^2 * pc|pq * 2^{0.789 n} for both.
//
// Rows emitted:
//   classical-ops            ledger.classical_ops vs the classical cap
//   quantum-queries          ledger.quantum_queries vs the exponent cap
//   quantum-binomial-cap     ledger.quantum_queries vs
//                            n^2 * pq * sqrt(C(n,n/2) * C(n/2,n/4))
//   counterfactual-qmf-in-dpas   estimate sum_k sqrt(k) * C(n,k) of running
//                            quantum minimum finding inside the plain
//                            subset DP (stays Theta(2^n): no speedup)
//   counterfactual-all-quantum   estimate sqrt(prod_i C(n/2^{i-1}, n/2^i))
//                            of recursing the quantum search to the bottom
//                            with no classical base (also ~2^n)
// Counterfactual rows are illustrative; their cap is n^2 * 2^n.
std::vector<audit_row> audit_hybrid_run(const query_ledger& led,
                                        int n,
                                        long double pseudo_classical,
                                        long double pseudo_quantum,
                                        int levels);

// Partial-binomial-sum entropy bounds: for every n <= n_max and k <= n/2,
// sum_{i<=k} C(n,i) <= 2^{H(k/n) n}. The sum is exact 64-bit arithmetic;
// the cap is evaluated in long double. One row per (n, k).
std::vector<audit_row> entropy_bound_rows(int n_max = 24);

// sqrt(C(n,n/2) * C(n/2,n/4)) <= 2^{0.75 n} for every n <= n_max divisible
// by 4. pass is decided integer-exactly as C(n,n/2)*C(n/2,n/4) <= 2^{3n/2}.
std::vector<audit_row> sqrt_product_rows(int n_max = 24);

// JSON array of {n, phase, measured, cap, pass} objects, serialized.
std::string audit_rows_to_json(const std::vector<audit_row>& rows);

}  // namespace qdpas
