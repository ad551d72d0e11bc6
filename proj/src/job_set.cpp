#include "qdpas/job_set.hpp"

#include <array>
#include <stdexcept>

namespace qdpas {

std::vector<job_set> subsets_of_size(job_set base, int k) {
    std::vector<job_set> out;
    const auto elems = base.elements();
    const int n = static_cast<int>(elems.size());
    if (k < 0 || k > n) return out;
    out.reserve(binomial(n, k));
    if (k == 0) {
        out.push_back(job_set::empty());
        return out;
    }
    // enumerate k-subsets of elems indices in colex order; since elems is
    // ascending, the produced masks are ascending too
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        job_set s;
        for (int i : idx) s.mask |= 1u << elems[i];
        out.push_back(s);
        // next colex combination
        int i = 0;
        while (i + 1 < k && idx[i] + 1 == idx[i + 1]) {
            idx[i] = i;
            ++i;
        }
        if (idx[i] + 1 >= n && i + 1 >= k) break;
        ++idx[i];
        if (idx[i] >= n) break;
    }
    return out;
}

std::uint64_t subset_rank(job_set base, job_set sub) {
    if (!sub.subset_of(base)) throw std::logic_error("subset_rank: not a subset");
    // colex rank: sum over chosen positions (by rank within base) of C(pos, i+1)
    std::uint64_t rank = 0;
    int pos_in_base = 0;
    int chosen = 0;
    base.for_each([&](int j) {
        if (sub.contains(j)) {
            ++chosen;
            rank += binomial(pos_in_base, chosen);
        }
        ++pos_in_base;
    });
    return rank;
}

std::uint64_t binomial(int n, int k) {
    static constexpr int cap = 40;
    static const auto table = [] {
        std::array<std::array<std::uint64_t, cap + 1>, cap + 1> t{};
        for (int i = 0; i <= cap; ++i) {
            t[i][0] = 1;
            for (int j = 1; j <= i; ++j)
                t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
        }
        return t;
    }();
    if (k < 0 || k > n) return 0;
    if (n > cap) throw std::logic_error("binomial: n too large");
    return table[n][k];
}

}  // namespace qdpas
