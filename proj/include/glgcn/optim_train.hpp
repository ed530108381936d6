// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "glgcn/graph.hpp"
#include "glgcn/loss_grad.hpp"
#include "glgcn/model.hpp"

namespace glgcn {

enum class FeatureRegGraph { kSimilarity, kCorrelation };
enum class SimilarityKind { kAdjacency, kKnn };

/// Every knob of a training run. Defaults follow the usual two-layer GCN
/// protocol on the citation benchmarks.
struct TrainConfig {
    Variant variant = Variant::kGcn;
    double lambda_label = 0.0;
    double lambda_feature = 0.0;
    double alpha = 1.0;
    FeatureRegGraph feature_graph = FeatureRegGraph::kSimilarity;
    SimilarityKind similarity = SimilarityKind::kAdjacency;
    bool normalize_similarity = false;
    std::size_t knn_k = 10;
    double knn_sigma = 1.0;
    std::size_t feature_layer = 0;  // 0 = last hidden layer
    LabelRegTarget label_target = LabelRegTarget::kProbabilities;
    std::vector<std::size_t> hidden_dims{16};
    bool bias = false;
    double dropout = 0.5;
    double learning_rate = 0.01;
    double weight_decay = 5e-4;  // on W(0) only
    std::size_t max_epochs = 200;
    std::size_t patience = 10;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
    Objective objective() const;

    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// Ã, S and the feature-penalty graph for `config` on `dataset`.
Operators build_operators(const Dataset& dataset, const TrainConfig& config);

struct AdamState {
    std::vector<DenseMatrix> m_weights, v_weights, m_biases, v_biases;
    std::uint64_t step = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// One bias-corrected Adam update. Moments are zero-initialised on first use.
void adam_step(ModelParams& params, const Gradients& grads, AdamState& state, double learning_rate);

struct EpochRecord {
    std::size_t epoch = 0;
    LossBreakdown train_loss;
    double train_accuracy = 0.0;
    double val_loss = 0.0;
    double val_accuracy = 0.0;

    friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct TrainReport {
    TrainConfig config;
    std::vector<EpochRecord> history;
    std::size_t best_epoch = 0;
    double best_val_loss = 0.0;
    double train_accuracy = 0.0;
    double val_accuracy = 0.0;
    double test_accuracy = 0.0;
    double wall_seconds = 0.0;
};

/// Compares every recorded number except wall-clock time and the config echo.
bool same_trajectory(const TrainReport& a, const TrainReport& b);

/// Raised when a loss or gradient turns non-finite mid-training.
class TrainingDiverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TrainResult {
    ModelParams params;
    TrainReport report;
};

/// Full-batch training with early stopping on validation cross-entropy. The
/// optimised objective is total_loss / |train| plus weight_decay/2 * ||W(0)||^2;
/// the report keeps the unscaled breakdown.
TrainResult train(const Dataset& dataset, const TrainConfig& config);

/// Fraction of `split` whose dropout-free prediction matches its label.
double evaluate(const ModelParams& params, const Dataset& dataset, const SparseMatrix& a_hat,
                std::span<const std::size_t> split);
double evaluate(const ModelParams& params, const Dataset& dataset, std::span<const std::size_t> split);

struct GridCell {
    double lambda = 0.0;
    double alpha = 0.0;
    double val_accuracy = 0.0;
    double test_accuracy = 0.0;
};

struct LambdaSearchResult {
    TrainConfig best;
    std::vector<GridCell> cells;
};

/// Applies `lambda` to every penalty the variant uses.
TrainConfig with_lambda(TrainConfig config, double lambda);

/// Trains one model per (lambda, alpha) cell and keeps the best validation
/// accuracy; ties go to the smaller lambda, then the smaller alpha. The alpha
/// grid only matters when the feature penalty uses the label-correlation graph;
/// otherwise it collapses to the base alpha.
LambdaSearchResult select_lambda(const Dataset& dataset, const TrainConfig& base, std::span<const double> lambda_grid,
                                 std::span<const double> alpha_grid);

std::vector<double> default_lambda_grid();
std::vector<double> default_alpha_grid();

}  // namespace glgcn
