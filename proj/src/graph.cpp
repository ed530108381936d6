// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#include "glgcn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace glgcn {

void LabeledGraph::validate() const {
    const std::size_t n = num_nodes();
    if (adjacency.dim() != n) throw std::invalid_argument("LabeledGraph: adjacency dim != node count");
    if (features.rows() != n) throw std::invalid_argument("LabeledGraph: feature rows != node count");
    if (num_classes < 1) throw std::invalid_argument("LabeledGraph: num_classes must be >= 1");
    for (std::size_t i = 0; i < n; ++i) {
        if (adjacency.at(i, i) != 0.0) throw std::invalid_argument("LabeledGraph: adjacency has a self-loop");
        const int y = labels[i];
        if (y != kUnlabeled && (y < 0 || y >= num_classes)) {
            throw std::invalid_argument("LabeledGraph: label of node " + std::to_string(i) + " out of range");
        }
    }
    if (!adjacency.is_symmetric()) throw std::invalid_argument("LabeledGraph: adjacency not symmetric");
}

double Dataset::label_rate() const {
    const std::size_t n = graph.num_nodes();
    return n == 0 ? 0.0 : static_cast<double>(train.size()) / static_cast<double>(n);
}

void Dataset::validate() const {
    graph.validate();
    const std::size_t n = graph.num_nodes();
    std::unordered_set<std::size_t> seen;
    auto check = [&](const std::vector<std::size_t>& split, const char* name) {
        for (std::size_t i : split) {
            if (i >= n) throw std::invalid_argument(std::string(name) + " split: index out of range");
            if (!seen.insert(i).second) {
                throw std::invalid_argument(std::string(name) + " split: node " + std::to_string(i) +
                                            " repeated or shared with another split");
            }
        }
    };
    check(train, "train");
    check(val, "val");
    check(test, "test");
    for (std::size_t i : train) {
        if (graph.labels[i] == kUnlabeled) {
            throw std::invalid_argument("train split: node " + std::to_string(i) + " is unlabeled");
        }
    }
}

SparseMatrix normalize_adjacency(const SparseMatrix& adjacency) {
    const std::size_t n = adjacency.dim();
    for (double v : adjacency.values()) {
        if (v < 0.0) throw std::invalid_argument("normalize_adjacency: negative edge weight");
    }
    std::vector<Triplet> t;
    t.reserve(adjacency.nnz() + n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto cols = adjacency.row_cols(r);
        const auto vals = adjacency.row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) t.push_back({r, cols[k], vals[k]});
        t.push_back({r, r, 1.0});
    }
    SparseMatrix with_loops = SparseMatrix::from_triplets(n, std::move(t));
    std::vector<double> inv_sqrt = with_loops.row_sums();
    for (double& d : inv_sqrt) d = 1.0 / std::sqrt(d);

    std::vector<double> values(with_loops.values());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = with_loops.row_offsets()[r]; k < with_loops.row_offsets()[r + 1]; ++k) {
            values[k] *= inv_sqrt[r] * inv_sqrt[with_loops.col_indices()[k]];
        }
    }
    return SparseMatrix(n, with_loops.row_offsets(), with_loops.col_indices(), std::move(values));
}

SparseMatrix build_similarity_adj(const SparseMatrix& adjacency, bool normalize) {
    if (!normalize) return adjacency;
    const SparseMatrix a_hat = normalize_adjacency(adjacency);
    std::vector<Triplet> t;
    t.reserve(a_hat.nnz());
    for (std::size_t r = 0; r < a_hat.dim(); ++r) {
        const auto cols = a_hat.row_cols(r);
        const auto vals = a_hat.row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (cols[k] != r) t.push_back({r, cols[k], vals[k]});
        }
    }
    return SparseMatrix::from_triplets(a_hat.dim(), std::move(t));
}

SparseMatrix build_similarity_knn(const DenseMatrix& features, std::size_t k, double sigma) {
    const std::size_t n = features.rows();
    if (k < 1 || k >= n) throw std::invalid_argument("build_similarity_knn: need 1 <= k < n");
    if (!(sigma > 0.0)) throw std::invalid_argument("build_similarity_knn: sigma must be positive");

    const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
    std::vector<double> weight_of(n * k);
    std::vector<std::size_t> neighbour_of(n * k);
    std::vector<std::pair<double, std::size_t>> dist(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto xi = features.row(i);
        std::size_t m = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const auto xj = features.row(j);
            double d2 = 0.0;
            for (std::size_t c = 0; c < xi.size(); ++c) {
                const double diff = xi[c] - xj[c];
                d2 += diff * diff;
            }
            dist[m++] = {d2, j};
        }
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
        for (std::size_t q = 0; q < k; ++q) {
            neighbour_of[i * k + q] = dist[q].second;
            weight_of[i * k + q] = std::exp(-dist[q].first * inv_two_sigma_sq);
        }
    }

    // Max-symmetrisation: collect both directions, keep the larger weight.
    std::vector<Triplet> t;
    t.reserve(2 * n * k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t q = 0; q < k; ++q) {
            const double w = weight_of[i * k + q];
            if (w == 0.0) continue;
            const std::size_t j = neighbour_of[i * k + q];
            t.push_back({i, j, w});
            t.push_back({j, i, w});
        }
    }
    std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Triplet> merged;
    for (const auto& e : t) {
        if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
            merged.back().value = std::max(merged.back().value, e.value);
        } else {
            merged.push_back(e);
        }
    }
    return SparseMatrix::from_triplets(n, std::move(merged));
}

SparseMatrix laplacian_from_similarity(const SparseMatrix& s) {
    const std::size_t n = s.dim();
    const std::vector<double> degree = s.row_sums();
    std::vector<Triplet> t;
    t.reserve(s.nnz() + n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto cols = s.row_cols(r);
        const auto vals = s.row_values(r);
        // Diagonal entries of S cancel against their share of the degree.
        double diag = degree[r];
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (cols[k] == r) {
                diag -= vals[k];
            } else {
                t.push_back({r, cols[k], -vals[k]});
            }
        }
        if (diag != 0.0) t.push_back({r, r, diag});
    }
    return SparseMatrix::from_triplets(n, std::move(t));
}

SparseMatrix label_correlation(std::span<const int> labels, std::span<const std::size_t> train_set,
                               double alpha) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("label_correlation: alpha must be >= 0");
    const std::size_t n = labels.size();
    std::vector<std::size_t> nodes(train_set.begin(), train_set.end());
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (std::size_t i : nodes) {
        if (i >= n) throw std::invalid_argument("label_correlation: train node out of range");
        if (labels[i] == kUnlabeled) {
            throw std::invalid_argument("label_correlation: train node " + std::to_string(i) + " is unlabeled");
        }
    }
    std::vector<Triplet> t;
    t.reserve(nodes.size() * nodes.size());
    for (std::size_t i : nodes) {
        for (std::size_t j : nodes) {
            if (i == j) continue;
            const double w = labels[i] == labels[j] ? 1.0 : -alpha;
            if (w != 0.0) t.push_back({i, j, w});
        }
    }
    return SparseMatrix::from_triplets(n, std::move(t));
}

std::vector<int> label_propagation(const SparseMatrix& similarity, std::span<const int> labels,
                                   std::span<const std::size_t> train_set, int num_classes,
                                   const PropagationOptions& options) {
    const std::size_t n = similarity.dim();
    if (labels.size() != n) throw DimensionError("label_propagation: labels size != similarity dim");
    if (train_set.empty()) throw std::invalid_argument("label_propagation: empty train set");
    if (num_classes < 1) throw std::invalid_argument("label_propagation: num_classes must be >= 1");
    const auto d = static_cast<std::size_t>(num_classes);

    std::vector<std::uint8_t> clamped(n, 0);
    DenseMatrix f(n, d, 1.0 / static_cast<double>(d));
    for (std::size_t i : train_set) {
        if (i >= n || labels[i] == kUnlabeled || labels[i] >= num_classes) {
            throw std::invalid_argument("label_propagation: train node " + std::to_string(i) +
                                        " has no valid label");
        }
        clamped[i] = 1;
        std::fill(f.row(i).begin(), f.row(i).end(), 0.0);
        f(i, static_cast<std::size_t>(labels[i])) = 1.0;
    }
    const std::vector<double> degree = similarity.row_sums();

    DenseMatrix next(n, d);
    for (std::size_t it = 0; it < options.max_iters; ++it) {
        double max_change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            auto out = next.row(i);
            if (clamped[i] || degree[i] == 0.0) {
                std::copy(f.row(i).begin(), f.row(i).end(), out.begin());
                continue;
            }
            std::fill(out.begin(), out.end(), 0.0);
            const auto cols = similarity.row_cols(i);
            const auto vals = similarity.row_values(i);
            for (std::size_t k = 0; k < cols.size(); ++k) {
                const auto src = f.row(cols[k]);
                const double w = vals[k] / degree[i];
                for (std::size_t c = 0; c < d; ++c) out[c] += w * src[c];
            }
            for (std::size_t c = 0; c < d; ++c) max_change = std::max(max_change, std::abs(out[c] - f(i, c)));
        }
        std::swap(f, next);
        if (max_change < options.tol) break;
    }

    std::vector<int> predicted(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = f.row(i);
        predicted[i] = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
    }
    return predicted;
}

}  // namespace glgcn
