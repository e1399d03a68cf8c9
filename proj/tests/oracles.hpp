#pragma once

// Independent brute-force oracles used to freeze expected values. These
// deliberately avoid the library's computation paths.

#include <cstdint>
#include <functional>
#include <vector>

namespace oracles {

// number of partitions of n with parts <= max_part, by direct recursion
inline long long count_partitions(int n, int max_part) {
    if (n == 0) return 1;
    if (n < 0 || max_part == 0) return 0;
    return count_partitions(n - max_part, max_part) + count_partitions(n, max_part - 1);
}

inline long long count_partitions(int n) { return count_partitions(n, n == 0 ? 1 : n); }

// number of size-j multisets on n elements, by enumerating nondecreasing picks
inline long long count_multisets(int n, int j, int min_elem = 0) {
    if (j == 0) return 1;
    long long total = 0;
    for (int e = min_elem; e < n; ++e) total += count_multisets(n, j - 1, e);
    return total;
}

// number of set partitions of {1..n} into exactly k blocks, by enumerating
// restricted-growth strings
inline long long count_set_partitions(int n, int k) {
    long long total = 0;
    std::vector<int> assign(static_cast<size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (i == n) {
            total += used == k;
            return;
        }
        for (int b = 0; b <= used && b < k; ++b) {
            assign[static_cast<size_t>(i)] = b;
            rec(i + 1, b == used ? used + 1 : used);
        }
    };
    rec(0, 0);
    return total;
}

// signed Stirling numbers of the first kind, s(n+1,k) = s(n,k-1) - n s(n,k)
inline std::vector<std::vector<long long>> stirling1_table(int n_max) {
    std::vector<std::vector<long long>> s(static_cast<size_t>(n_max) + 1,
                                          std::vector<long long>(static_cast<size_t>(n_max) + 1, 0));
    s[0][0] = 1;
    for (int n = 0; n < n_max; ++n)
        for (int k = 0; k <= n; ++k) {
            s[static_cast<size_t>(n) + 1][static_cast<size_t>(k) + 1] += s[static_cast<size_t>(n)][static_cast<size_t>(k)];
            s[static_cast<size_t>(n) + 1][static_cast<size_t>(k)] -= static_cast<long long>(n) * s[static_cast<size_t>(n)][static_cast<size_t>(k)];
        }
    return s;
}

// composite Simpson quadrature on [a, b]
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    double h = (b - a) / (2 * panels);
    double acc = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace oracles
