// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "glgcn/numerics.hpp"

namespace glgcn {

inline constexpr int kUnlabeled = -1;

/// Node-attributed graph. `adjacency` is symmetric with an empty diagonal;
/// labels hold a class id in [0, num_classes) or kUnlabeled.
struct LabeledGraph {
    SparseMatrix adjacency;
    DenseMatrix features;
    std::vector<int> labels;
    int num_classes = 0;

    std::size_t num_nodes() const { return labels.size(); }
    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const;
};

/// A graph plus the transductive train/val/test node splits.
struct Dataset {
    std::string name;
    LabeledGraph graph;
    std::vector<std::size_t> train;
    std::vector<std::size_t> val;
    std::vector<std::size_t> test;
    std::vector<std::string> warnings;

    /// |train| / n.
    double label_rate() const;
    void validate() const;
};

/// D^-1/2 (A + I) D^-1/2 with D the row sums of A + I.
SparseMatrix normalize_adjacency(const SparseMatrix& adjacency);

/// S = A, or when `normalize` is set the off-diagonal part of
/// normalize_adjacency(A).
SparseMatrix build_similarity_adj(const SparseMatrix& adjacency, bool normalize);

/// Gaussian-weighted k-nearest-neighbour graph over the feature rows,
/// symmetrised by taking max(w_ij, w_ji). Distance ties go to the lower index.
SparseMatrix build_similarity_knn(const DenseMatrix& features, std::size_t k, double sigma);

/// L = diag(rowsum(S)) - S.
SparseMatrix laplacian_from_similarity(const SparseMatrix& s);

/// Pairwise label-agreement weights over the training nodes: +1 for the same
/// class, -alpha for different classes, zero elsewhere (diagonal included).
SparseMatrix label_correlation(std::span<const int> labels, std::span<const std::size_t> train_set,
                               double alpha);

struct PropagationOptions {
    std::size_t max_iters = 1000;
    double tol = 1e-9;
};

/// Iterative label propagation with clamped seeds. Returns one class id per
/// node; rows that stay tied resolve to the lowest class id.
std::vector<int> label_propagation(const SparseMatrix& similarity, std::span<const int> labels,
                                   std::span<const std::size_t> train_set, int num_classes,
                                   const PropagationOptions& options = {});

}  // namespace glgcn
