// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "glgcn/data_io.hpp"
#include "glgcn/optim_train.hpp"

namespace glgcn {
namespace {

ModelParams small_params() {
    ModelParams p;
    p.weights = {DenseMatrix{{1.0, -2.0}, {0.5, 3.0}}};
    return p;
}

Gradients zero_grads(const ModelParams& p) {
    Gradients g;
    for (const auto& w : p.weights) g.weights.emplace_back(w.rows(), w.cols());
    return g;
}

TEST(Adam, ZeroGradientLeavesParamsUnchanged) {
    ModelParams p = small_params();
    const ModelParams before = p;
    AdamState state;
    for (int i = 0; i < 5; ++i) adam_step(p, zero_grads(p), state, 0.1);
    EXPECT_EQ(p, before);
    EXPECT_EQ(state.step, 5u);
}

TEST(Adam, FirstStepMovesByLearningRate) {
    ModelParams p = small_params();
    Gradients g = zero_grads(p);
    g.weights[0] = DenseMatrix{{2.0, -0.3}, {1e-3, -50.0}};
    AdamState state;
    adam_step(p, g, state, 0.01);
    const DenseMatrix want{{0.99, -1.99}, {0.49, 3.01}};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(p.weights[0].data()[i], want.data()[i], 1e-7);
}

TEST(Adam, DeterministicGivenSameSequence) {
    ModelParams a = small_params(), b = small_params();
    AdamState sa, sb;
    Gradients g = zero_grads(a);
    for (int i = 0; i < 10; ++i) {
        g.weights[0] = DenseMatrix{{0.1 * i, -1.0}, {0.3, 0.01 * i * i}};
        adam_step(a, g, sa, 0.05);
        adam_step(b, g, sb, 0.05);
    }
    EXPECT_EQ(a, b);
}

TEST(Adam, RejectsShapeMismatch) {
    ModelParams p = small_params();
    Gradients g;
    g.weights = {DenseMatrix(3, 2)};
    AdamState state;
    EXPECT_THROW(adam_step(p, g, state, 0.01), DimensionError);
}

Dataset fixture() {
    SynthOptions o;
    o.seed = 3;
    return synth_fixture(o);
}

TrainConfig fast_config(Variant v, double lambda) {
    TrainConfig c;
    c.variant = v;
    c.lambda_label = lambda;
    c.lambda_feature = lambda;
    c.dropout = 0.0;
    c.weight_decay = 0.0;
    c.max_epochs = 200;
    c.patience = 200;
    return c;
}

TEST(TrainConfig, ValidateNamesBadField) {
    TrainConfig c;
    c.dropout = 1.0;
    try {
        c.validate();
        FAIL() << "expected invalid_argument";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("dropout"), std::string::npos);
    }
    c = TrainConfig{};
    c.lambda_label = -0.1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = TrainConfig{};
    c.hidden_dims = {};
    EXPECT_NO_THROW(c.validate());
}

TEST(Train, OverfitsSmallFixtureForEveryVariant) {
    const Dataset d = fixture();
    for (Variant v : {Variant::kGcn, Variant::kFeature, Variant::kLabel, Variant::kFeatureLabel}) {
        TrainConfig c = fast_config(v, 0.01);
        c.max_epochs = 300;
        c.patience = 300;
        c.learning_rate = 0.05;
        const TrainResult r = train(d, c);
        const auto& last = r.report.history.back();
        EXPECT_EQ(last.train_accuracy, 1.0) << to_string(v);
        EXPECT_LT(last.train_loss.cross_entropy, r.report.history.front().train_loss.cross_entropy) << to_string(v);
    }
}

TEST(Train, DeterministicPerSeed) {
    const Dataset d = fixture();
    TrainConfig c = fast_config(Variant::kFeatureLabel, 0.01);
    c.dropout = 0.5;
    c.max_epochs = 30;
    const TrainResult a = train(d, c);
    const TrainResult b = train(d, c);
    EXPECT_TRUE(same_trajectory(a.report, b.report));
    EXPECT_EQ(a.params, b.params);
    c.seed = 1;
    EXPECT_FALSE(same_trajectory(a.report, train(d, c).report));
}

TEST(Train, ZeroLambdaReducesToGcn) {
    const Dataset d = fixture();
    TrainConfig c = fast_config(Variant::kGcn, 0.0);
    c.dropout = 0.5;
    c.weight_decay = 5e-4;
    c.max_epochs = 40;
    const TrainResult ref = train(d, c);
    for (Variant v : {Variant::kFeature, Variant::kLabel, Variant::kFeatureLabel}) {
        c.variant = v;
        const TrainResult r = train(d, c);
        EXPECT_TRUE(same_trajectory(r.report, ref.report)) << to_string(v);
        EXPECT_EQ(r.params, ref.params);
    }
}

TEST(Train, EarlyStoppingKeepsBestValidationEpoch) {
    const Dataset d = fixture();
    TrainConfig c = fast_config(Variant::kGcn, 0.0);
    c.learning_rate = 0.2;
    c.max_epochs = 300;
    c.patience = 5;
    const TrainResult r = train(d, c);
    const auto& h = r.report.history;
    ASSERT_FALSE(h.empty());
    const auto best = std::min_element(h.begin(), h.end(),
                                       [](const EpochRecord& a, const EpochRecord& b) { return a.val_loss < b.val_loss; });
    EXPECT_EQ(r.report.best_epoch, best->epoch);
    EXPECT_EQ(r.report.best_val_loss, best->val_loss);
    EXPECT_LE(h.size(), r.report.best_epoch + c.patience);
    EXPECT_DOUBLE_EQ(evaluate(r.params, d, d.val), best->val_accuracy);
}

TEST(Train, TrainLossMostlyDecreasesWithoutDropout) {
    const Dataset d = fixture();
    TrainConfig c = fast_config(Variant::kGcn, 0.0);
    c.max_epochs = 100;
    const TrainResult r = train(d, c);
    const auto& h = r.report.history;
    std::size_t increases = 0;
    for (std::size_t i = 1; i < h.size(); ++i) increases += h[i].train_loss.total > h[i - 1].train_loss.total;
    EXPECT_LT(increases, h.size() / 10 + 1);
    EXPECT_LT(h.back().train_loss.total, h.front().train_loss.total);
}

TEST(Evaluate, FractionOfCorrectPredictions) {
    Dataset d;
    d.graph.adjacency = SparseMatrix(4);
    d.graph.features = DenseMatrix{{1, 0}, {0, 1}, {1, 0}, {0, 1}};
    d.graph.labels = {0, 1, 1, 1};
    d.graph.num_classes = 2;
    d.train = {0, 1};
    d.val = {2, 3};
    ModelParams p;
    p.weights = {DenseMatrix::identity(2)};
    EXPECT_EQ(evaluate(p, d, d.train), 1.0);
    EXPECT_EQ(evaluate(p, d, d.val), 0.5);
    EXPECT_EQ(evaluate(p, d, std::vector<std::size_t>{2}), 0.0);
}

TEST(SelectLambda, SingleCellGridReturnsThatCell) {
    const Dataset d = fixture();
    TrainConfig c = fast_config(Variant::kLabel, 0.0);
    c.max_epochs = 20;
    const std::vector<double> lambdas{0.3};
    const LambdaSearchResult r = select_lambda(d, c, lambdas, default_alpha_grid());
    ASSERT_EQ(r.cells.size(), 1u);
    EXPECT_EQ(r.best.lambda_label, 0.3);
    EXPECT_EQ(r.best.lambda_feature, 0.0);
}

TEST(SelectLambda, PrefersZeroOverOverwhelmingPenalty) {
    const Dataset d = fixture();
    TrainConfig c = fast_config(Variant::kFeature, 0.0);
    c.max_epochs = 100;
    const std::vector<double> lambdas{1e6, 0.0};
    const LambdaSearchResult r = select_lambda(d, c, lambdas, default_alpha_grid());
    EXPECT_EQ(r.best.lambda_feature, 0.0);
    ASSERT_EQ(r.cells.size(), 2u);
    EXPECT_GE(r.cells[0].val_accuracy, r.cells[1].val_accuracy);
}

TEST(SelectLambda, SweepsAlphaOnlyForCorrelationGraph) {
    const Dataset d = fixture();
    TrainConfig c = fast_config(Variant::kFeature, 0.0);
    c.max_epochs = 10;
    const std::vector<double> lambdas{0.01, 0.1};
    EXPECT_EQ(select_lambda(d, c, lambdas, default_alpha_grid()).cells.size(), 2u);
    c.feature_graph = FeatureRegGraph::kCorrelation;
    EXPECT_EQ(select_lambda(d, c, lambdas, default_alpha_grid()).cells.size(), 6u);
}

TEST(WithLambda, SetsOnlyPenaltiesTheVariantUses) {
    const TrainConfig f = with_lambda(fast_config(Variant::kFeature, 0.0), 0.5);
    EXPECT_EQ(f.lambda_feature, 0.5);
    EXPECT_EQ(f.lambda_label, 0.0);
    const TrainConfig fl = with_lambda(fast_config(Variant::kFeatureLabel, 0.0), 0.5);
    EXPECT_EQ(fl.lambda_feature, 0.5);
    EXPECT_EQ(fl.lambda_label, 0.5);
}

}  // namespace
}  // namespace glgcn
