// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <cstddef>
#include <string>
#include <vector>

namespace recfuse {

// Dense row-major matrix of doubles. Vectors are 1 x n or n x 1 as convenient.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c, double fill_value = 0.0)
        : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c), fill_value) {}

    double& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    double* row(int r) { return a.data() + static_cast<size_t>(r) * cols; }
    const double* row(int r) const { return a.data() + static_cast<size_t>(r) * cols; }

    size_t size() const { return a.size(); }
    void fill(double v) { a.assign(a.size(), v); }
    void zero() { fill(0.0); }

    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

// y += alpha * x
inline void axpy(double alpha, const double* x, double* y, int n) {
    for (int i = 0; i < n; ++i) y[i] += alpha * x[i];
}

inline double dot(const double* x, const double* y, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

// out = W * x for row-major W (rows x cols), x of length cols.
inline void matvec(const Matrix& w, const double* x, double* out) {
    for (int r = 0; r < w.rows; ++r) out[r] = dot(w.row(r), x, w.cols);
}

// out += W^T * g, where g has length w.rows and out has length w.cols.
inline void matvec_transposed_add(const Matrix& w, const double* g, double* out) {
    for (int r = 0; r < w.rows; ++r) {
        const double gr = g[r];
        if (gr == 0.0) continue;
        axpy(gr, w.row(r), out, w.cols);
    }
}

// Named view of a parameter tensor, used for checkpoints, hashing and
// finite-difference sweeps.
struct NamedTensor {
    std::string name;
    Matrix* tensor;
};

// Kahan compensated sum; keeps metric aggregation order-stable.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        double y = v - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

}  // namespace recfuse
