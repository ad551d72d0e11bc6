#pragma once

#include <cstdint>
#include <vector>

namespace qdpas {

// Subset of jobs 0..n-1 as a bitmask. n stays small (exponential tables),
// 32 bits is plenty.
struct job_set {
    std::uint32_t mask = 0;

    static job_set full(int n) { return {n >= 32 ? ~0u : ((1u << n) - 1u)}; }
    static job_set single(int j) { return {1u << j}; }
    static job_set empty() { return {0}; }

    bool contains(int j) const { return (mask >> j) & 1u; }
    job_set with(int j) const { return {mask | (1u << j)}; }
    job_set without(int j) const { return {mask & ~(1u << j)}; }
    job_set minus(job_set other) const { return {mask & ~other.mask}; }
    bool subset_of(job_set other) const { return (mask & ~other.mask) == 0; }
    bool empty_set() const { return mask == 0; }
    int size() const { return __builtin_popcount(mask); }

    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(size());
        for (std::uint32_t m = mask; m; m &= m - 1) out.push_back(__builtin_ctz(m));
        return out;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::uint32_t m = mask; m; m &= m - 1) f(__builtin_ctz(m));
    }

    friend bool operator==(job_set a, job_set b) { return a.mask == b.mask; }
};

// All k-element subsets of base, ascending as masks (colex order).
std::vector<job_set> subsets_of_size(job_set base, int k);

// Position of sub within subsets_of_size(base, sub.size()); inverse of indexing
// into that vector. Used to address per-cardinality table slabs.
std::uint64_t subset_rank(job_set base, job_set sub);

// Binomial coefficient via Pascal's table, exact in uint64 for the sizes used.
std::uint64_t binomial(int n, int k);

}  // namespace qdpas
