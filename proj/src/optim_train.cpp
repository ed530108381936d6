// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#include "glgcn/optim_train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

namespace glgcn {

void TrainConfig::validate() const {
    auto need = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    };
    need(lambda_label >= 0.0, "lambda_label must be >= 0");
    need(lambda_feature >= 0.0, "lambda_feature must be >= 0");
    need(alpha >= 0.0, "alpha must be >= 0");
    need(knn_k >= 1, "knn_k must be >= 1");
    need(knn_sigma > 0.0, "knn_sigma must be > 0");
    need(dropout >= 0.0 && dropout < 1.0, "dropout must be in [0, 1)");
    need(learning_rate >= 0.0, "learning_rate must be >= 0");
    need(weight_decay >= 0.0, "weight_decay must be >= 0");
    need(max_epochs >= 1, "max_epochs must be >= 1");
    need(patience >= 1, "patience must be >= 1");
    for (std::size_t h : hidden_dims) need(h >= 1, "hidden_dims entries must be >= 1");
    if (uses_feature_reg(variant)) {
        need(!hidden_dims.empty(), "feature penalty needs at least one hidden layer");
        need(feature_layer <= hidden_dims.size(), "feature_layer exceeds the number of hidden layers");
    }
}

Objective TrainConfig::objective() const {
    Objective o;
    o.variant = variant;
    o.lambda_label = lambda_label;
    o.lambda_feature = lambda_feature;
    o.feature_layer = feature_layer;
    o.label_target = label_target;
    return o;
}

Operators build_operators(const Dataset& dataset, const TrainConfig& config) {
    const LabeledGraph& g = dataset.graph;
    Operators ops;
    ops.a_hat = normalize_adjacency(g.adjacency);
    const bool need_similarity =
        uses_label_reg(config.variant) ||
        (uses_feature_reg(config.variant) && config.feature_graph == FeatureRegGraph::kSimilarity);
    if (need_similarity) {
        ops.similarity = config.similarity == SimilarityKind::kKnn
                             ? build_similarity_knn(g.features, config.knn_k, config.knn_sigma)
                             : build_similarity_adj(g.adjacency, config.normalize_similarity);
    } else {
        ops.similarity = SparseMatrix(g.num_nodes());
    }
    if (uses_feature_reg(config.variant) && config.feature_graph == FeatureRegGraph::kCorrelation) {
        ops.feature_graph = label_correlation(g.labels, dataset.train, config.alpha);
    } else {
        ops.feature_graph = ops.similarity;
    }
    return ops;
}

namespace {

void adam_update(DenseMatrix& param, const DenseMatrix& grad, DenseMatrix& m, DenseMatrix& v,
                 const AdamState& s, double lr) {
    if (grad.rows() != param.rows() || grad.cols() != param.cols()) {
        throw DimensionError("adam_step: gradient " + shape_string(grad) + " vs parameter " + shape_string(param));
    }
    if (m.empty() && !param.empty()) {
        m = DenseMatrix(param.rows(), param.cols());
        v = DenseMatrix(param.rows(), param.cols());
    }
    const double correction1 = 1.0 - std::pow(s.beta1, static_cast<double>(s.step));
    const double correction2 = 1.0 - std::pow(s.beta2, static_cast<double>(s.step));
    auto& p = param.data();
    const auto& g = grad.data();
    auto& md = m.data();
    auto& vd = v.data();
    for (std::size_t i = 0; i < p.size(); ++i) {
        md[i] = s.beta1 * md[i] + (1.0 - s.beta1) * g[i];
        vd[i] = s.beta2 * vd[i] + (1.0 - s.beta2) * g[i] * g[i];
        const double m_hat = md[i] / correction1;
        const double v_hat = vd[i] / correction2;
        p[i] -= lr * m_hat / (std::sqrt(v_hat) + s.epsilon);
    }
}

}  // namespace

void adam_step(ModelParams& params, const Gradients& grads, AdamState& state, double learning_rate) {
    if (grads.weights.size() != params.weights.size() || grads.biases.size() != params.biases.size()) {
        throw DimensionError("adam_step: gradient tensor count does not match parameters");
    }
    state.m_weights.resize(params.weights.size());
    state.v_weights.resize(params.weights.size());
    state.m_biases.resize(params.biases.size());
    state.v_biases.resize(params.biases.size());
    ++state.step;
    for (std::size_t k = 0; k < params.weights.size(); ++k) {
        adam_update(params.weights[k], grads.weights[k], state.m_weights[k], state.v_weights[k], state,
                    learning_rate);
    }
    for (std::size_t k = 0; k < params.biases.size(); ++k) {
        adam_update(params.biases[k], grads.biases[k], state.m_biases[k], state.v_biases[k], state, learning_rate);
    }
}

bool same_trajectory(const TrainReport& a, const TrainReport& b) {
    return a.history == b.history && a.best_epoch == b.best_epoch && a.best_val_loss == b.best_val_loss &&
           a.train_accuracy == b.train_accuracy && a.val_accuracy == b.val_accuracy &&
           a.test_accuracy == b.test_accuracy;
}

namespace {

double accuracy_of(const std::vector<int>& predicted, const std::vector<int>& labels,
                   std::span<const std::size_t> split) {
    if (split.empty()) throw std::invalid_argument("evaluate: empty split");
    std::size_t hits = 0;
    for (std::size_t i : split) {
        if (labels[i] == kUnlabeled) {
            throw std::invalid_argument("evaluate: node " + std::to_string(i) + " is unlabeled");
        }
        if (predicted[i] == labels[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(split.size());
}

}  // namespace

double evaluate(const ModelParams& params, const Dataset& dataset, const SparseMatrix& a_hat,
                std::span<const std::size_t> split) {
    if (split.empty()) throw std::invalid_argument("evaluate: empty split");
    const ForwardTrace t = gcn_forward(a_hat, dataset.graph.features, params, 0.0, nullptr);
    return accuracy_of(predict(t.z), dataset.graph.labels, split);
}

double evaluate(const ModelParams& params, const Dataset& dataset, std::span<const std::size_t> split) {
    return evaluate(params, dataset, normalize_adjacency(dataset.graph.adjacency), split);
}

TrainResult train(const Dataset& dataset, const TrainConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    config.validate();
    if (dataset.train.empty()) throw std::invalid_argument("train: empty train split");
    if (dataset.val.empty()) throw std::invalid_argument("train: empty validation split");
    if (dataset.test.empty()) throw std::invalid_argument("train: empty test split");
    dataset.validate();

    const Operators ops = build_operators(dataset, config);
    const Objective objective = config.objective();
    const auto& x = dataset.graph.features;
    const auto& labels = dataset.graph.labels;
    const double loss_scale = 1.0 / static_cast<double>(dataset.train.size());

    std::mt19937_64 rng(config.seed);
    ModelParams params = ModelParams::init(x.cols(), config.hidden_dims,
                                           static_cast<std::size_t>(dataset.graph.num_classes), config.bias, rng);
    AdamState adam;

    TrainResult result;
    TrainReport& report = result.report;
    report.config = config;
    ModelParams best = params;
    bool have_best = false;

    for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
        const ForwardTrace trace = gcn_forward(ops.a_hat, x, params, config.dropout, &rng);
        EpochRecord rec;
        rec.epoch = epoch;
        rec.train_loss = total_loss(objective, trace, dataset, ops);
        if (!std::isfinite(rec.train_loss.total)) {
            throw TrainingDiverged("non-finite training loss at epoch " + std::to_string(epoch) +
                                   " (cross_entropy=" + std::to_string(rec.train_loss.cross_entropy) +
                                   ", reg_label=" + std::to_string(rec.train_loss.reg_label) +
                                   ", reg_feature=" + std::to_string(rec.train_loss.reg_feature) + ")");
        }

        Gradients grads = backward(objective, trace, params, dataset, ops);
        for (auto& g : grads.weights) {
            for (double& v : g.data()) v *= loss_scale;
        }
        for (auto& g : grads.biases) {
            for (double& v : g.data()) v *= loss_scale;
        }
        if (config.weight_decay > 0.0) add_in_place(grads.weights.front(), params.weights.front(), config.weight_decay);
        if (!grads.all_finite()) {
            throw TrainingDiverged("non-finite gradient at epoch " + std::to_string(epoch));
        }
        adam_step(params, grads, adam, config.learning_rate);

        const ForwardTrace eval = gcn_forward(ops.a_hat, x, params, 0.0, nullptr);
        const std::vector<int> predicted = predict(eval.z);
        rec.train_accuracy = accuracy_of(predicted, labels, dataset.train);
        rec.val_accuracy = accuracy_of(predicted, labels, dataset.val);
        rec.val_loss = cross_entropy_masked(eval.z, labels, dataset.val) / static_cast<double>(dataset.val.size());
        if (!std::isfinite(rec.val_loss)) {
            throw TrainingDiverged("non-finite validation loss at epoch " + std::to_string(epoch));
        }
        report.history.push_back(rec);

        if (!have_best || rec.val_loss < report.best_val_loss) {
            have_best = true;
            report.best_val_loss = rec.val_loss;
            report.best_epoch = epoch;
            best = params;
        } else if (epoch - report.best_epoch >= config.patience) {
            break;
        }
    }

    result.params = std::move(best);
    const ForwardTrace final_eval = gcn_forward(ops.a_hat, x, result.params, 0.0, nullptr);
    const std::vector<int> predicted = predict(final_eval.z);
    report.train_accuracy = accuracy_of(predicted, labels, dataset.train);
    report.val_accuracy = accuracy_of(predicted, labels, dataset.val);
    report.test_accuracy = accuracy_of(predicted, labels, dataset.test);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

TrainConfig with_lambda(TrainConfig config, double lambda) {
    if (uses_label_reg(config.variant)) config.lambda_label = lambda;
    if (uses_feature_reg(config.variant)) config.lambda_feature = lambda;
    return config;
}

LambdaSearchResult select_lambda(const Dataset& dataset, const TrainConfig& base, std::span<const double> lambda_grid,
                                 std::span<const double> alpha_grid) {
    if (lambda_grid.empty()) throw std::invalid_argument("select_lambda: empty lambda grid");
    if (alpha_grid.empty()) throw std::invalid_argument("select_lambda: empty alpha grid");
    std::vector<double> lambdas(lambda_grid.begin(), lambda_grid.end());
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

    std::vector<double> alphas{base.alpha};
    if (uses_feature_reg(base.variant) && base.feature_graph == FeatureRegGraph::kCorrelation) {
        alphas.assign(alpha_grid.begin(), alpha_grid.end());
        std::sort(alphas.begin(), alphas.end());
        alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    }

    LambdaSearchResult out;
    bool have = false;
    double best_acc = 0.0;
    for (double lambda : lambdas) {
        for (double alpha : alphas) {
            TrainConfig cfg = with_lambda(base, lambda);
            cfg.alpha = alpha;
            const TrainResult r = train(dataset, cfg);
            out.cells.push_back({lambda, alpha, r.report.val_accuracy, r.report.test_accuracy});
            // Ascending iteration plus strict '>' keeps the smaller lambda, then alpha, on ties.
            if (!have || r.report.val_accuracy > best_acc) {
                have = true;
                best_acc = r.report.val_accuracy;
                out.best = cfg;
            }
        }
    }
    return out;
}

std::vector<double> default_lambda_grid() { return {1e-4, 1e-3, 1e-2, 1e-1, 1.0}; }
std::vector<double> default_alpha_grid() { return {0.1, 0.5, 1.0}; }

}  // namespace glgcn
