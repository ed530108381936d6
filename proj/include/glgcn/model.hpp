// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "glgcn/numerics.hpp"

namespace glgcn {

/// Weights W(0)..W(K) of a K-hidden-layer GCN, plus optional per-layer biases
/// (1 x out_dim each; the vector is empty when biases are disabled).
struct ModelParams {
    std::vector<DenseMatrix> weights;
    std::vector<DenseMatrix> biases;

    /// Glorot-initialised weights for input_dim -> hidden_dims... -> num_classes.
    /// Biases start at zero.
    static ModelParams init(std::size_t input_dim, std::span<const std::size_t> hidden_dims,
                            std::size_t num_classes, bool with_bias, std::mt19937_64& rng);

    std::size_t num_layers() const { return weights.size(); }
    std::size_t num_hidden() const { return weights.empty() ? 0 : weights.size() - 1; }
    bool has_bias() const { return !biases.empty(); }
    /// p, d_1, ..., d_K, d.
    std::vector<std::size_t> layer_dims() const;
    /// Throws DimensionError if shapes do not chain.
    void validate() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Everything the backward pass needs from one forward evaluation.
struct ForwardTrace {
    /// Layer inputs after dropout; inputs[0] is the (dropped) feature matrix.
    std::vector<DenseMatrix> inputs;
    /// Per-layer keep flags (empty when dropout was off for that call).
    std::vector<std::vector<std::uint8_t>> dropout_keep;
    double dropout_scale = 1.0;
    /// A_hat * input * W (+ b), one per layer; the last one holds the logits.
    std::vector<DenseMatrix> pre_activations;
    /// hidden[k] = ReLU(pre_activations[k]) = X^(k+1), before dropout.
    std::vector<DenseMatrix> hidden;
    std::vector<std::vector<std::uint8_t>> relu_masks;
    DenseMatrix z;

    const DenseMatrix& logits() const { return pre_activations.back(); }
    std::size_t num_layers() const { return pre_activations.size(); }
};

/// Full-batch GCN forward pass. `rng` may be null, which disables dropout
/// regardless of `dropout_rate`. Zero entries of the input features draw no
/// randomness.
ForwardTrace gcn_forward(const SparseMatrix& a_hat, const DenseMatrix& x, const ModelParams& params,
                         double dropout_rate, std::mt19937_64* rng);

/// Row-wise argmax, ties to the lowest class id.
std::vector<int> predict(const DenseMatrix& z);

}  // namespace glgcn
