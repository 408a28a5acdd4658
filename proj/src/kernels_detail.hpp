#pragma once

// Per-item bodies shared by the serial and OpenMP kernels, so the two
// backends differ only in how the outer loop is scheduled.

#include <array>

#include "tatecup/kernels.hpp"

namespace tatecup::kernels::detail {

inline constexpr int kMaxDegree = 16;

inline void decode_tuple(std::size_t index, std::size_t order, int length, uint32_t* digits) {
    for (int i = length - 1; i >= 0; --i) {
        digits[i] = static_cast<uint32_t>(index % order);
        index /= order;
    }
}

inline std::size_t encode_tuple(const uint32_t* digits, std::size_t order, int length) {
    std::size_t index = 0;
    for (int i = 0; i < length; ++i) index = index * order + digits[i];
    return index;
}

// acc += factor * (matrix * v)
inline void add_matrix_times(const IntMatrix& matrix, std::span<const Int> v, const Int& factor, std::span<Int> acc) {
    const std::size_t k = matrix.rows();
    for (std::size_t i = 0; i < k; ++i) {
        Int sum;
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            const Int& m = matrix(i, j);
            if (!m.is_zero() && !v[j].is_zero()) sum += m * v[j];
        }
        if (!sum.is_zero()) acc[i] += factor.is_one() ? sum : factor * sum;
    }
}

inline void add_scaled(std::span<const Int> v, long long factor, std::span<Int> acc) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (factor == 1) {
            acc[i] += v[i];
        } else if (factor == -1) {
            acc[i] -= v[i];
        } else {
            acc[i] += Int(factor) * v[i];
        }
    }
}

inline void column_update(IntVector& target, const IntVector& pivot, const Int& factor, std::span<const Int> moduli,
                          std::size_t first_row) {
    if (factor.is_zero()) return;
    for (std::size_t r = first_row; r < target.size(); ++r) {
        const Int& p = pivot[r];
        if (p.is_zero()) continue;
        target[r] -= factor * p;
        reduce_mod(target[r], moduli[r]);
    }
}

// One output tuple of d_r. `in` has order^r * k entries.
inline void coboundary_item(const ModuleView& m, int degree, std::span<const Int> in, std::span<Int> out,
                            std::size_t index) {
    const std::size_t n = m.group.order;
    const std::size_t k = m.gens();
    const int len = degree + 1;
    std::array<uint32_t, kMaxDegree + 1> x{};
    std::array<uint32_t, kMaxDegree + 1> y{};
    decode_tuple(index, n, len, x.data());

    std::span<Int> acc = out.subspan(index * k, k);
    for (auto& v : acc) v = Int(0);

    // x_1 . f(x_2, ..., x_{r+1})
    std::size_t tail = encode_tuple(x.data() + 1, n, degree);
    add_matrix_times((*m.action)[x[0]], in.subspan(tail * k, k), Int(1), acc);

    // sum_{i=1}^{r} (-1)^i f(x_1, ..., x_i x_{i+1}, ..., x_{r+1})
    for (int i = 1; i <= degree; ++i) {
        int w = 0;
        for (int t = 0; t < len; ++t) {
            if (t == i - 1) {
                y[w++] = m.group.table[x[t] * n + x[t + 1]];
                ++t;
            } else {
                y[w++] = x[t];
            }
        }
        std::size_t idx = encode_tuple(y.data(), n, degree);
        add_scaled(in.subspan(idx * k, k), (i % 2 == 0) ? 1 : -1, acc);
    }

    // (-1)^{r+1} f(x_1, ..., x_r)
    std::size_t head = encode_tuple(x.data(), n, degree);
    add_scaled(in.subspan(head * k, k), ((degree + 1) % 2 == 0) ? 1 : -1, acc);

    for (std::size_t c = 0; c < k; ++c) reduce_mod(acc[c], m.moduli[c]);
}

inline void cup_item(const GroupView& g, const ModuleView& right, const PairingView& p, int left_degree,
                     int right_degree, std::span<const Int> left, std::span<const Int> right_values,
                     std::span<Int> out, std::size_t index) {
    const std::size_t n = g.order;
    const std::size_t ka = p.left_gens;
    const std::size_t kb = p.right_gens;
    const std::size_t kc = p.out_moduli.size();
    std::array<uint32_t, kMaxDegree + 1> x{};
    decode_tuple(index, n, left_degree + right_degree, x.data());

    std::size_t fi = encode_tuple(x.data(), n, left_degree);
    std::size_t gi = encode_tuple(x.data() + left_degree, n, right_degree);
    uint32_t prod = 0;  // identity is index 0
    for (int t = 0; t < left_degree; ++t) prod = g.table[prod * n + x[t]];

    IntVector moved(kb);
    add_matrix_times((*right.action)[prod], right_values.subspan(gi * kb, kb), Int(1), moved);
    for (std::size_t b = 0; b < kb; ++b) reduce_mod(moved[b], right.moduli[b]);

    std::span<Int> acc = out.subspan(index * kc, kc);
    for (auto& v : acc) v = Int(0);
    std::span<const Int> fv = left.subspan(fi * ka, ka);
    for (std::size_t a = 0; a < ka; ++a) {
        if (fv[a].is_zero()) continue;
        for (std::size_t b = 0; b < kb; ++b) {
            if (moved[b].is_zero()) continue;
            Int coeff = fv[a] * moved[b];
            const IntVector& t = p.tensor[a * kb + b];
            for (std::size_t c = 0; c < kc; ++c) {
                if (!t[c].is_zero()) acc[c] += coeff * t[c];
            }
        }
    }
    for (std::size_t c = 0; c < kc; ++c) reduce_mod(acc[c], p.out_moduli[c]);
}

}  // namespace tatecup::kernels::detail
