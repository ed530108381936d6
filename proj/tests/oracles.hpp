// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

// Independent dense reference implementations used only by the tests. None of
// these call into the sparse/edge-wise library paths they are checking.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "glgcn/graph.hpp"
#include "glgcn/model.hpp"
#include "glgcn/numerics.hpp"

namespace glgcn::oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense to_dense(const DenseMatrix& m) {
    Dense d(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
    }
    return d;
}

inline Dense to_dense(const SparseMatrix& s) {
    Dense d(s.dim(), std::vector<double>(s.dim(), 0.0));
    for (std::size_t i = 0; i < s.dim(); ++i) {
        for (std::size_t j = 0; j < s.dim(); ++j) d[i][j] = s.at(i, j);
    }
    return d;
}

inline Dense matmul(const Dense& a, const Dense& b) {
    const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
    Dense out(n, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < inner; ++k) acc += a[i][k] * b[k][j];
            out[i][j] = acc;
        }
    }
    return out;
}

/// D^-1/2 (A + I) D^-1/2 evaluated entry by entry.
inline Dense renormalized_adjacency(const Dense& a) {
    const std::size_t n = a.size();
    Dense abar = a;
    for (std::size_t i = 0; i < n; ++i) abar[i][i] += 1.0;
    std::vector<double> deg(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) deg[i] += abar[i][j];
    }
    Dense out(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out[i][j] = abar[i][j] / std::sqrt(deg[i] * deg[j]);
    }
    return out;
}

/// sum_ij S_ij ||M_i - M_j||^2 by a double loop over all pairs.
inline double pairwise_penalty(const Dense& s, const Dense& m) {
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            double d2 = 0.0;
            for (std::size_t c = 0; c < m[i].size(); ++c) d2 += (m[i][c] - m[j][c]) * (m[i][c] - m[j][c]);
            total += s[i][j] * d2;
        }
    }
    return total;
}

/// 2 tr(M^T L M) with L = diag(rowsum S) - S built densely.
inline double trace_form(const Dense& s, const Dense& m) {
    const std::size_t n = s.size();
    Dense l(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            l[i][j] -= s[i][j];
            l[i][i] += s[i][j];
        }
    }
    const Dense lm = matmul(l, m);
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < m[i].size(); ++c) tr += m[i][c] * lm[i][c];
    }
    return 2.0 * tr;
}

/// Straight-line evaluation of the layer rule without dropout or bias:
/// X1 = relu(A X W0), ..., Z = softmax(A XK WK).
inline Dense gcn_forward(const Dense& a_hat, const Dense& x, const std::vector<Dense>& weights) {
    Dense h = x;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        Dense pre = matmul(a_hat, matmul(h, weights[k]));
        if (k + 1 < weights.size()) {
            for (auto& row : pre) {
                for (double& v : row) v = v > 0.0 ? v : 0.0;
            }
            h = pre;
        } else {
            for (auto& row : pre) {
                double mx = row[0];
                for (double v : row) mx = std::max(mx, v);
                double total = 0.0;
                for (double& v : row) {
                    v = std::exp(v - mx);
                    total += v;
                }
                for (double& v : row) v /= total;
            }
            return pre;
        }
    }
    return h;
}

inline DenseMatrix random_dense(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double lo = -1.0,
                                double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    DenseMatrix m(rows, cols);
    for (double& v : m.data()) v = u(rng);
    return m;
}

/// Random symmetric non-negative matrix with zero diagonal and the given
/// edge density.
inline SparseMatrix random_symmetric(std::size_t n, double density, std::mt19937_64& rng, double max_weight = 1.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (u(rng) < density) {
                const double w = max_weight * (0.1 + 0.9 * u(rng));
                t.push_back({i, j, w});
                t.push_back({j, i, w});
            }
        }
    }
    return SparseMatrix::from_triplets(n, std::move(t));
}

inline std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace glgcn::oracle
