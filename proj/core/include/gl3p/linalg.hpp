#pragma once

#include <optional>
#include <vector>

namespace gl3p {

// Dense exact linear algebra over a field type F (Rat or CycNumber).
template <class F>
using Matrix = std::vector<std::vector<F>>;

template <class F>
bool field_is_zero(const F& x) {
    if constexpr (requires { x.is_zero(); }) {
        return x.is_zero();
    } else {
        return x == 0;
    }
}

// In-place reduced row echelon form; returns pivot columns.
template <class F>
std::vector<int> rref(Matrix<F>& a) {
    std::vector<int> pivots;
    const int rows = static_cast<int>(a.size());
    if (rows == 0) return pivots;
    const int cols = static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i) {
            if (!field_is_zero(a[i][c])) {
                sel = i;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(a[sel], a[r]);
        F inv = F(1) / a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || field_is_zero(a[i][c])) continue;
            F f = a[i][c];
            for (int j = c; j < cols; ++j) {
                if (!field_is_zero(a[r][j])) a[i][j] = a[i][j] - f * a[r][j];
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Basis of {x : a x = 0}.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> a, int cols) {
    for (auto& row : a) row.resize(cols, F(0));
    auto piv = rref(a);
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<F>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<F> v(cols, F(0));
        v[free] = F(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of a x = b (free variables set to zero), if consistent.
template <class F>
std::optional<std::vector<F>> solve(Matrix<F> a, const std::vector<F>& b, int cols) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i].resize(cols, F(0));
        a[i].push_back(b[i]);
    }
    auto piv = rref(a);
    if (!piv.empty() && piv.back() == cols) return std::nullopt;
    std::vector<F> x(cols, F(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = a[r][cols];
    return x;
}

template <class F>
int rank(Matrix<F> a) {
    return static_cast<int>(rref(a).size());
}

template <class F>
F determinant(Matrix<F> a) {
    const std::size_t n = a.size();
    F det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = n;
        for (std::size_t i = c; i < n; ++i) {
            if (!field_is_zero(a[i][c])) {
                sel = i;
                break;
            }
        }
        if (sel == n) return F(0);
        if (sel != c) {
            std::swap(a[sel], a[c]);
            det = -det;
        }
        det = det * a[c][c];
        F inv = F(1) / a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (field_is_zero(a[i][c])) continue;
            F f = a[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) a[i][j] = a[i][j] - f * a[c][j];
        }
    }
    return det;
}

}  // namespace gl3p
