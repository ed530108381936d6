// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#include "glgcn/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace glgcn {

ModelParams ModelParams::init(std::size_t input_dim, std::span<const std::size_t> hidden_dims,
                              std::size_t num_classes, bool with_bias, std::mt19937_64& rng) {
    ModelParams p;
    std::size_t prev = input_dim;
    for (std::size_t h : hidden_dims) {
        p.weights.push_back(glorot_init(prev, h, rng));
        prev = h;
    }
    p.weights.push_back(glorot_init(prev, num_classes, rng));
    if (with_bias) {
        for (const auto& w : p.weights) p.biases.emplace_back(1, w.cols());
    }
    return p;
}

std::vector<std::size_t> ModelParams::layer_dims() const {
    std::vector<std::size_t> dims;
    if (weights.empty()) return dims;
    dims.push_back(weights.front().rows());
    for (const auto& w : weights) dims.push_back(w.cols());
    return dims;
}

void ModelParams::validate() const {
    if (weights.empty()) throw DimensionError("ModelParams: no weight matrices");
    for (std::size_t k = 1; k < weights.size(); ++k) {
        if (weights[k].rows() != weights[k - 1].cols()) {
            throw DimensionError("ModelParams: W(" + std::to_string(k) + ") has " +
                                 std::to_string(weights[k].rows()) + " rows, previous layer outputs " +
                                 std::to_string(weights[k - 1].cols()));
        }
    }
    if (!biases.empty()) {
        if (biases.size() != weights.size()) throw DimensionError("ModelParams: bias count != layer count");
        for (std::size_t k = 0; k < biases.size(); ++k) {
            if (biases[k].rows() != 1 || biases[k].cols() != weights[k].cols()) {
                throw DimensionError("ModelParams: bias " + std::to_string(k) + " has shape " +
                                     shape_string(biases[k]));
            }
        }
    }
}

namespace {

DenseMatrix apply_dropout(const DenseMatrix& x, double rate, std::mt19937_64& rng,
                          std::vector<std::uint8_t>& keep, double scale) {
    std::bernoulli_distribution keep_dist(1.0 - rate);
    DenseMatrix out = x;
    keep.assign(x.size(), 0);
    auto& d = out.data();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0.0) continue;
        if (keep_dist(rng)) {
            keep[i] = 1;
            d[i] *= scale;
        } else {
            d[i] = 0.0;
        }
    }
    return out;
}

void add_bias(DenseMatrix& m, const DenseMatrix& bias) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto r = m.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) r[j] += bias(0, j);
    }
}

}  // namespace

ForwardTrace gcn_forward(const SparseMatrix& a_hat, const DenseMatrix& x, const ModelParams& params,
                         double dropout_rate, std::mt19937_64* rng) {
    params.validate();
    if (a_hat.dim() != x.rows()) {
        throw DimensionError("gcn_forward: A_hat dim " + std::to_string(a_hat.dim()) + " vs features " +
                             shape_string(x));
    }
    if (x.cols() != params.weights.front().rows()) {
        throw DimensionError("gcn_forward: features " + shape_string(x) + " vs W(0) " +
                             shape_string(params.weights.front()));
    }
    if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
        throw std::invalid_argument("gcn_forward: dropout rate must be in [0, 1)");
    }
    const bool dropout = rng != nullptr && dropout_rate > 0.0;
    const std::size_t layers = params.num_layers();

    ForwardTrace t;
    t.dropout_scale = dropout ? 1.0 / (1.0 - dropout_rate) : 1.0;
    t.inputs.reserve(layers);
    t.hidden.reserve(layers);
    t.dropout_keep.resize(layers);

    const DenseMatrix* layer_in = &x;
    for (std::size_t k = 0; k < layers; ++k) {
        if (dropout) {
            t.inputs.push_back(apply_dropout(*layer_in, dropout_rate, *rng, t.dropout_keep[k], t.dropout_scale));
        } else {
            t.inputs.push_back(*layer_in);
        }
        // A_hat (X W): the dense product first keeps the sparse pass narrow.
        DenseMatrix pre = spmm(a_hat, matmul_dense(t.inputs.back(), params.weights[k]));
        if (params.has_bias()) add_bias(pre, params.biases[k]);
        t.pre_activations.push_back(std::move(pre));
        if (k + 1 < layers) {
            ReluResult r = relu(t.pre_activations.back());
            t.hidden.push_back(std::move(r.output));
            t.relu_masks.push_back(std::move(r.mask));
            layer_in = &t.hidden.back();
        }
    }
    t.z = softmax_rows(t.pre_activations.back());
    return t;
}

std::vector<int> predict(const DenseMatrix& z) {
    std::vector<int> out(z.rows());
    for (std::size_t i = 0; i < z.rows(); ++i) {
        const auto r = z.row(i);
        out[i] = static_cast<int>(std::max_element(r.begin(), r.end()) - r.begin());
    }
    return out;
}

}  // namespace glgcn
