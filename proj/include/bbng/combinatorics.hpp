#pragma once

#include <cstdint>
#include <vector>

namespace bbng {

// C(n, k), clamped: anything above cap comes back as cap + 1.
inline std::int64_t binomial_capped(std::int64_t n, std::int64_t k, std::int64_t cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        c = c * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
        if (c > static_cast<unsigned __int128>(cap)) return cap + 1;
    }
    return static_cast<std::int64_t>(c);
}

// Advances idx (a k-subset of {0..n-1}, ascending) to the lexicographic
// successor. Returns false after the last combination.
inline bool next_combination(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Lexicographic rank -> k-subset of {0..n-1}.
inline std::vector<int> unrank_combination(int n, int k, std::int64_t rank) {
    std::vector<int> idx(k);
    int v = 0;
    for (int i = 0; i < k; ++i) {
        for (;;) {
            std::int64_t block = binomial_capped(n - v - 1, k - i - 1, rank);
            if (block > rank) break;
            rank -= block;
            ++v;
        }
        idx[i] = v++;
    }
    return idx;
}

} // namespace bbng
