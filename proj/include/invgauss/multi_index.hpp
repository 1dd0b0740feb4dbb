#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace invgauss {

// Multi-index k in N^n.  Stored as a plain vector of non-negative integers.
using MultiIndex = std::vector<int>;

inline int mi_order(const MultiIndex& k) {
    return std::accumulate(k.begin(), k.end(), 0);
}

inline void mi_validate(const MultiIndex& k) {
    for (int c : k)
        if (c < 0) throw std::invalid_argument("multi-index component < 0");
}

// Componentwise k >= a (both of the same dimension).
inline bool mi_geq(const MultiIndex& k, const MultiIndex& a) {
    if (k.size() != a.size()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < k.size(); ++i)
        if (k[i] < a[i]) return false;
    return true;
}

inline bool mi_is_zero(const MultiIndex& k) {
    return std::all_of(k.begin(), k.end(), [](int c) { return c == 0; });
}

inline MultiIndex mi_add(const MultiIndex& k, const MultiIndex& a) {
    if (k.size() != a.size()) throw std::invalid_argument("dimension mismatch");
    MultiIndex r(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) r[i] = k[i] + a[i];
    return r;
}

inline MultiIndex mi_sub(const MultiIndex& k, const MultiIndex& a) {
    if (k.size() != a.size()) throw std::invalid_argument("dimension mismatch");
    MultiIndex r(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        r[i] = k[i] - a[i];
        if (r[i] < 0) throw std::invalid_argument("negative component in difference");
    }
    return r;
}

// Graded-lexicographic ordering: first by |k|, then lexicographically.
inline bool mi_graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
    int oa = mi_order(a), ob = mi_order(b);
    if (oa != ob) return oa < ob;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// All multi-indices of dimension n with |k| <= K, in graded-lexicographic order.
inline std::vector<MultiIndex> mi_enumerate(int n, int K) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (K < 0) throw std::invalid_argument("degree cap must be >= 0");
    std::vector<MultiIndex> out;
    // Enumerate per total degree d, lexicographically.
    MultiIndex k(static_cast<std::size_t>(n), 0);
    for (int d = 0; d <= K; ++d) {
        // First index of degree d in lex order: (0,...,0,d)? Lexicographic
        // smallest with sum d is (0,...,0,d).  Walk all compositions.
        std::fill(k.begin(), k.end(), 0);
        k.back() = d;
        while (true) {
            out.push_back(k);
            // next composition of d in lexicographic order
            // find rightmost position j < n-1 ... standard algorithm:
            int j = n - 2;
            while (j >= 0 && k[static_cast<std::size_t>(j + 1)] == 0) --j;
            if (j < 0) break;
            // move one unit from position j+1.. to increment k[j]
            int tail = 0;
            for (int i = j + 1; i < n; ++i) {
                tail += k[static_cast<std::size_t>(i)];
                k[static_cast<std::size_t>(i)] = 0;
            }
            k[static_cast<std::size_t>(j)] += 1;
            k.back() = tail - 1;
        }
        if (n == 1 && d < K) continue;  // single composition per degree
    }
    std::sort(out.begin(), out.end(), mi_graded_lex_less);
    return out;
}

inline std::string mi_to_string(const MultiIndex& k) {
    std::string s = "(";
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(k[i]);
    }
    return s + ")";
}

}  // namespace invgauss
