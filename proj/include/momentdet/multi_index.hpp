#ifndef MOMENTDET_MULTI_INDEX_HPP
#define MOMENTDET_MULTI_INDEX_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace momentdet {

/// Exponent multi-index alpha in N_0^d.
using MultiIndex = std::vector<int>;

inline int total_order(const MultiIndex& a) {
    return std::accumulate(a.begin(), a.end(), 0);
}

inline MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex c(a);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
}

/// All multi-indices of dimension d with total order <= max_order,
/// in graded lexicographic order (the canonical table order).
inline std::vector<MultiIndex> multi_indices_up_to(int d, int max_order) {
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<std::size_t>(d), 0);
    // enumerate all alpha with |alpha| = t, lexicographically, for t = 0..max_order
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == d - 1) {
            cur[pos] = remaining;
            out.push_back(cur);
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            cur[pos] = k;
            self(self, pos + 1, remaining - k);
        }
    };
    for (int t = 0; t <= max_order; ++t) rec(rec, 0, t);
    return out;
}

/// All multi-indices with |alpha| = order exactly (graded-lex slice).
inline std::vector<MultiIndex> multi_indices_of_order(int d, int order) {
    auto all = multi_indices_up_to(d, order);
    std::vector<MultiIndex> out;
    for (auto& a : all)
        if (total_order(a) == order) out.push_back(std::move(a));
    return out;
}

inline std::uint64_t binomial_u64(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace momentdet

#endif
