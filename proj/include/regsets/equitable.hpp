#pragma once

#include <gmpxx.h>

#include <numeric>

#include "regular.hpp"

namespace regsets {

/// 2x2 quotient matrix of an equitable two-part partition of a k-regular graph.
struct QuotientMatrix {
    long long entries[2][2] = {{0, 0}, {0, 0}};
    int k = 0;

    long long trace() const { return entries[0][0] + entries[1][1]; }
};

/// Quotient matrix for the partition {C, V\C}, or nullopt when not equitable.
inline std::optional<QuotientMatrix> quotient_matrix(const CayleyGraph& graph,
                                                     const ElementSet& c) {
    const auto cert = check_regular_set(graph, c);
    if (!cert) return std::nullopt;
    QuotientMatrix q;
    q.k = graph.degree();
    q.entries[0][0] = cert->a;
    q.entries[0][1] = q.k - cert->a;
    q.entries[1][0] = cert->b;
    q.entries[1][1] = q.k - cert->b;
    return q;
}

/// The non-k eigenvalue of the quotient matrix: trace(M) - k.
inline long long mu_from_quotient(const QuotientMatrix& m) { return m.trace() - m.k; }

/// Exact rational, normalized with positive denominator.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n) {}
    Rational(long long n, long long d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
};

/// Recover (a,b) from (k, mu, |C|, |V|) via
///   a = ((k - mu)|C| + mu|V|) / |V|,   b = ((k - mu)|C|) / |V|.
/// Evaluated exactly over the rationals; nullopt when either value is not an
/// integer (never rounded).
inline std::optional<std::pair<long long, long long>> ab_from_mu(long long k, Rational mu,
                                                                 long long size_c,
                                                                 long long size_v) {
    if (!(size_v > size_c && size_c > 0))
        throw std::invalid_argument("ab_from_mu: need |V| > |C| > 0");
    // work over denominator mu.den * size_v
    const long long k_minus_mu_num = k * mu.den - mu.num;  // (k - mu) * den
    const long long a_num = k_minus_mu_num * size_c + mu.num * size_v;
    const long long b_num = k_minus_mu_num * size_c;
    const long long denom = mu.den * size_v;
    if (a_num % denom != 0 || b_num % denom != 0) return std::nullopt;
    return std::make_pair(a_num / denom, b_num / denom);
}

/// Dense integer adjacency matrix of the Cayley graph.
inline std::vector<std::vector<long long>> adjacency_matrix(const CayleyGraph& graph) {
    const int n = graph.order();
    std::vector<std::vector<long long>> a(n, std::vector<long long>(n, 0));
    for (int v = 0; v < n; ++v)
        for (int u : graph.neighbors(v).elements()) a[u][v] = 1;
    return a;
}

namespace detail {

/// Fraction-free (Bareiss) elimination over a signed-128-bit matrix; returns
/// whether the determinant is zero. Entries must stay within the type, which
/// the caller guarantees via the Hadamard bit bound.
inline bool bareiss_singular_i128(std::vector<std::vector<__int128>> m) {
    const int n = static_cast<int>(m.size());
    __int128 prev = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) { pivot = r; break; }
        if (pivot < 0) return true;  // zero column => singular
        if (pivot != col) std::swap(m[pivot], m[col]);
        for (int r = col + 1; r < n; ++r) {
            for (int c = col + 1; c < n; ++c)
                m[r][c] = (m[col][col] * m[r][c] - m[r][col] * m[col][c]) / prev;
            m[r][col] = 0;
        }
        prev = m[col][col];
    }
    return m[n - 1][n - 1] == 0;
}

/// Same elimination over arbitrary-precision integers.
inline bool bareiss_singular_mpz(std::vector<std::vector<mpz_class>> m) {
    const int n = static_cast<int>(m.size());
    mpz_class prev = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) { pivot = r; break; }
        if (pivot < 0) return true;
        if (pivot != col) std::swap(m[pivot], m[col]);
        for (int r = col + 1; r < n; ++r) {
            for (int c = col + 1; c < n; ++c) {
                mpz_class t = m[col][col] * m[r][c] - m[r][col] * m[col][c];
                mpz_divexact(m[r][c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[r][col] = 0;
        }
        prev = m[col][col];
    }
    return m[n - 1][n - 1] == 0;
}

/// Upper bound on the bit length of any minor (Hadamard), integer-only.
inline int hadamard_bits(const std::vector<std::vector<long long>>& m) {
    int bits = 0;
    for (const auto& row : m) {
        unsigned long long norm2 = 0;
        for (long long v : row) norm2 += static_cast<unsigned long long>(v * v);
        int row_bits = 0;
        while (norm2 >> row_bits) ++row_bits;  // ceil(log2(norm2+1))
        bits += (row_bits + 1) / 2 + 1;
    }
    return bits;
}

}  // namespace detail

/// Exact singularity test for A - lambda*I over the integers (fraction-free
/// elimination; 128-bit fast path, arbitrary precision beyond it).
inline bool eigenvalue_membership(const CayleyGraph& graph, long long lambda) {
    const int n = graph.order();
    std::vector<std::vector<long long>> m = adjacency_matrix(graph);
    for (int i = 0; i < n; ++i) m[i][i] -= lambda;
    // the elimination multiplies two minors before dividing, so the minor
    // bound must fit in half of the 127 usable bits
    const bool small_entries = lambda < (1LL << 30) && lambda > -(1LL << 30);
    if (small_entries && detail::hadamard_bits(m) <= 62) {
        std::vector<std::vector<__int128>> w(n, std::vector<__int128>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w[i][j] = m[i][j];
        return detail::bareiss_singular_i128(std::move(w));
    }
    std::vector<std::vector<mpz_class>> w(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[i][j] = static_cast<long>(m[i][j]);
    return detail::bareiss_singular_mpz(std::move(w));
}

}  // namespace regsets
