// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "glgcn/data_io.hpp"
#include "glgcn/loss_grad.hpp"
#include "glgcn/optim_train.hpp"
#include "oracles.hpp"

namespace glgcn {
namespace {

constexpr Variant kAllVariants[] = {Variant::kGcn, Variant::kFeature, Variant::kLabel, Variant::kFeatureLabel};

SparseMatrix unit_edge() { return SparseMatrix::from_triplets(2, {{0, 1, 1.0}, {1, 0, 1.0}}); }

TEST(Variant, StringRoundTrip) {
    for (Variant v : kAllVariants) EXPECT_EQ(parse_variant(to_string(v)), v);
    EXPECT_FALSE(parse_variant("glgcn").has_value());
}

TEST(CrossEntropy, PerfectPredictionIsZero) {
    const DenseMatrix z{{1, 0}, {0, 1}};
    const std::vector<int> labels{0, 1};
    EXPECT_EQ(cross_entropy_masked(z, labels, std::vector<std::size_t>{0, 1}), 0.0);
}

TEST(CrossEntropy, UniformPredictionIsMLnD) {
    const DenseMatrix z(5, 4, 0.25);
    const std::vector<int> labels{0, 1, 2, 3, 0};
    EXPECT_NEAR(cross_entropy_masked(z, labels, std::vector<std::size_t>{0, 2, 4}), 3 * std::log(4.0), 1e-14);
}

TEST(CrossEntropy, OnlyMaskedRowsCount) {
    const DenseMatrix z{{0.5, 0.5}, {1e-30, 1.0}};
    const std::vector<int> labels{0, 0};
    EXPECT_NEAR(cross_entropy_masked(z, labels, std::vector<std::size_t>{0}), std::log(2.0), 1e-15);
    // Clamped at 1e-12 rather than returning infinity.
    EXPECT_NEAR(cross_entropy_masked(z, labels, std::vector<std::size_t>{1}), -std::log(1e-12), 1e-9);
}

TEST(CrossEntropy, RejectsEmptyMask) {
    EXPECT_THROW(cross_entropy_masked(DenseMatrix(1, 2, 0.5), std::vector<int>{0}, std::vector<std::size_t>{}),
                 std::invalid_argument);
}

TEST(LaplacianReg, IdenticalRowsGiveZero) {
    std::mt19937_64 rng(3);
    const SparseMatrix s = oracle::random_symmetric(5, 0.6, rng);
    EXPECT_EQ(laplacian_reg(DenseMatrix(5, 3, 0.7), s), 0.0);
}

TEST(LaplacianReg, TwoNodeExample) {
    // Both ordered pairs count: 2 * ||[1,0] - [0,1]||^2 = 4.
    EXPECT_DOUBLE_EQ(laplacian_reg(DenseMatrix{{1, 0}, {0, 1}}, unit_edge()), 4.0);
}

TEST(LaplacianReg, EmptyGraphGivesZero) {
    std::mt19937_64 rng(3);
    EXPECT_EQ(laplacian_reg(oracle::random_dense(4, 2, rng), SparseMatrix(4)), 0.0);
}

TEST(LaplacianReg, MatchesBothOracles) {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 2 + rep % 11;
        const SparseMatrix s = oracle::random_symmetric(n, 0.4, rng);
        const DenseMatrix m = oracle::random_dense(n, 1 + rep % 5, rng);
        const double got = laplacian_reg(m, s);
        const double pairs = oracle::pairwise_penalty(oracle::to_dense(s), oracle::to_dense(m));
        const double trace = oracle::trace_form(oracle::to_dense(s), oracle::to_dense(m));
        EXPECT_NEAR(got, pairs, 1e-10 * std::max(1.0, pairs));
        EXPECT_NEAR(got, trace, 1e-10 * std::max(1.0, trace));
        EXPECT_GE(got, 0.0);
    }
}

TEST(LaplacianReg, HomogeneousOfDegreeTwo) {
    std::mt19937_64 rng(8);
    const SparseMatrix s = oracle::random_symmetric(7, 0.5, rng);
    const DenseMatrix m = oracle::random_dense(7, 3, rng);
    DenseMatrix scaled = m;
    for (double& v : scaled.data()) v *= -2.5;
    EXPECT_NEAR(laplacian_reg(scaled, s), 6.25 * laplacian_reg(m, s), 1e-10);
}

// Zero exactly when M is constant on each connected component.
TEST(LaplacianReg, ZeroIffConstantPerComponent) {
    const SparseMatrix s = SparseMatrix::from_triplets(
        5, {{0, 1, 1.0}, {1, 0, 1.0}, {1, 2, 0.5}, {2, 1, 0.5}, {3, 4, 2.0}, {4, 3, 2.0}});
    DenseMatrix m{{1, 2}, {1, 2}, {1, 2}, {-3, 0}, {-3, 0}};
    EXPECT_EQ(laplacian_reg(m, s), 0.0);
    m(4, 1) = 1e-3;
    EXPECT_GT(laplacian_reg(m, s), 0.0);
}

TEST(LaplacianRegGrad, MatchesQuadraticFormDerivative) {
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 20; ++rep) {
        const SparseMatrix s = oracle::random_symmetric(6, 0.5, rng);
        const DenseMatrix m = oracle::random_dense(6, 3, rng);
        const DenseMatrix g = laplacian_reg_grad(m, s);
        const DenseMatrix want = spmm(laplacian_from_similarity(s), m);
        for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g.data()[i], 4.0 * want.data()[i], 1e-12);
    }
}

TEST(LaplacianRegGrad, ZeroOnConstantRows) {
    std::mt19937_64 rng(12);
    const SparseMatrix s = oracle::random_symmetric(6, 0.5, rng);
    const DenseMatrix g = laplacian_reg_grad(DenseMatrix(6, 2, 1.25), s);
    for (double v : g.data()) EXPECT_EQ(v, 0.0);
}

ForwardTrace handmade_trace(DenseMatrix z, DenseMatrix hidden) {
    ForwardTrace t;
    t.pre_activations = {hidden, z};
    t.hidden = {std::move(hidden)};
    t.z = std::move(z);
    return t;
}

Dataset two_node_dataset() {
    Dataset d;
    d.graph.adjacency = unit_edge();
    d.graph.features = DenseMatrix::identity(2);
    d.graph.labels = {0, 1};
    d.graph.num_classes = 2;
    d.train = {0, 1};
    return d;
}

TEST(TotalLoss, UniformOutputAndSmoothPenalties) {
    const Dataset d = two_node_dataset();
    const Operators ops{normalize_adjacency(d.graph.adjacency), unit_edge(), unit_edge()};
    const ForwardTrace t = handmade_trace(DenseMatrix(2, 2, 0.5), DenseMatrix(2, 3, 1.0));
    for (Variant v : kAllVariants) {
        const LossBreakdown b = total_loss({v, 1.0, 1.0}, t, d, ops);
        EXPECT_NEAR(b.cross_entropy, 2 * std::log(2.0), 1e-15);
        EXPECT_EQ(b.reg_label, 0.0);
        EXPECT_EQ(b.reg_feature, 0.0);
        EXPECT_EQ(b.total, b.cross_entropy);
    }
}

TEST(TotalLoss, WeightsEachTerm) {
    const Dataset d = two_node_dataset();
    const Operators ops{normalize_adjacency(d.graph.adjacency), unit_edge(), unit_edge()};
    const ForwardTrace t = handmade_trace(DenseMatrix{{0.75, 0.25}, {0.25, 0.75}}, DenseMatrix{{1, 0}, {0, 1}});
    const LossBreakdown b = total_loss({Variant::kFeatureLabel, 0.5, 2.0}, t, d, ops);
    EXPECT_NEAR(b.cross_entropy, -2 * std::log(0.75), 1e-15);
    EXPECT_NEAR(b.reg_label, 2 * 0.5, 1e-15);  // 2 * (0.5^2 + 0.5^2)
    EXPECT_NEAR(b.reg_feature, 4.0, 1e-15);
    EXPECT_NEAR(b.total, b.cross_entropy + 0.5 * b.reg_label + 2.0 * b.reg_feature, 1e-15);

    const LossBreakdown gcn = total_loss({Variant::kGcn, 0.5, 2.0}, t, d, ops);
    EXPECT_EQ(gcn.reg_label, 0.0);
    EXPECT_EQ(gcn.lambda_label, 0.0);
    EXPECT_EQ(gcn.total, gcn.cross_entropy);
}

TEST(TotalLoss, RejectsNegativeLambda) {
    const Dataset d = two_node_dataset();
    const Operators ops{normalize_adjacency(d.graph.adjacency), unit_edge(), unit_edge()};
    const ForwardTrace t = handmade_trace(DenseMatrix(2, 2, 0.5), DenseMatrix(2, 3, 1.0));
    EXPECT_THROW(total_loss({Variant::kLabel, -1.0, 0.0}, t, d, ops), std::invalid_argument);
}

struct GradSetup {
    Dataset dataset;
    Operators ops;
    ModelParams params;
};

GradSetup make_setup(const TrainConfig& config, std::uint64_t seed) {
    GradSetup s{gradcheck_fixture(), {}, {}};
    s.ops = build_operators(s.dataset, config);
    std::mt19937_64 rng(seed);
    s.params = ModelParams::init(s.dataset.graph.features.cols(), config.hidden_dims,
                                 static_cast<std::size_t>(s.dataset.graph.num_classes), config.bias, rng);
    return s;
}

void expect_gradcheck(const TrainConfig& config, std::uint64_t seed = 1) {
    const GradSetup s = make_setup(config, seed);
    const FiniteDiffReport r = finite_diff_check(config.objective(), s.dataset, s.params, s.ops, 1e-5);
    EXPECT_GT(r.entries_checked, 0u);
    EXPECT_LT(r.max_rel_error, 1e-5) << to_string(config.variant) << " tensor " << r.worst_tensor << " offset "
                                     << r.worst_offset << " analytic " << r.worst_analytic << " numeric "
                                     << r.worst_numeric;
}

TrainConfig gradcheck_config(Variant v) {
    TrainConfig c;
    c.variant = v;
    c.lambda_label = 1.0;
    c.lambda_feature = 1.0;
    c.hidden_dims = {4};
    return c;
}

TEST(FiniteDiff, AllVariantsWithSimilarityGraph) {
    for (Variant v : kAllVariants) expect_gradcheck(gradcheck_config(v));
}

TEST(FiniteDiff, CorrelationGraphWithNegativeEntries) {
    for (double alpha : {0.0, 0.5, 1.0}) {
        TrainConfig c = gradcheck_config(Variant::kFeatureLabel);
        c.feature_graph = FeatureRegGraph::kCorrelation;
        c.alpha = alpha;
        expect_gradcheck(c);
    }
}

TEST(FiniteDiff, WithBias) {
    for (Variant v : kAllVariants) {
        TrainConfig c = gradcheck_config(v);
        c.bias = true;
        expect_gradcheck(c);
    }
}

TEST(FiniteDiff, TwoHiddenLayersAndEarlierFeatureLayer) {
    TrainConfig c = gradcheck_config(Variant::kFeatureLabel);
    c.hidden_dims = {5, 3};
    expect_gradcheck(c, 2);
    c.feature_layer = 1;
    expect_gradcheck(c, 2);
}

TEST(FiniteDiff, LogitTargetAndNormalizedSimilarity) {
    TrainConfig c = gradcheck_config(Variant::kLabel);
    c.label_target = LabelRegTarget::kLogits;
    expect_gradcheck(c);
    c.label_target = LabelRegTarget::kProbabilities;
    c.normalize_similarity = true;
    expect_gradcheck(c);
}

TEST(FiniteDiff, ReportsLocationOfWorstEntry) {
    const TrainConfig c = gradcheck_config(Variant::kGcn);
    const GradSetup s = make_setup(c, 1);
    const FiniteDiffReport r = finite_diff_check(c.objective(), s.dataset, s.params, s.ops, 1e-5);
    EXPECT_EQ(r.entries_checked, 4u * 4u + 4u * 2u);
    EXPECT_LT(r.worst_tensor, 2u);
    EXPECT_THROW(finite_diff_check(c.objective(), s.dataset, s.params, s.ops, 0.0), std::invalid_argument);
}

// lambda = 0 is the same computation as plain GCN, bit for bit.
TEST(Backward, ZeroLambdaMatchesGcnExactly) {
    const TrainConfig base = gradcheck_config(Variant::kGcn);
    const GradSetup s = make_setup(base, 3);
    std::mt19937_64 rng(5);
    const ForwardTrace t = gcn_forward(s.ops.a_hat, s.dataset.graph.features, s.params, 0.5, &rng);
    const Gradients ref = backward({Variant::kGcn, 0.0, 0.0}, t, s.params, s.dataset, s.ops);
    const LossBreakdown ref_loss = total_loss({Variant::kGcn, 0.0, 0.0}, t, s.dataset, s.ops);
    for (Variant v : kAllVariants) {
        const Objective o{v, 0.0, 0.0};
        const Gradients g = backward(o, t, s.params, s.dataset, s.ops);
        EXPECT_EQ(g.weights, ref.weights);
        EXPECT_EQ(total_loss(o, t, s.dataset, s.ops), ref_loss);
    }
}

}  // namespace
}  // namespace glgcn
