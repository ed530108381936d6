// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glgcn/graph.hpp"
#include "glgcn/model.hpp"
#include "glgcn/numerics.hpp"

namespace glgcn {

enum class Variant { kGcn, kFeature, kLabel, kFeatureLabel };

std::string_view to_string(Variant v);
/// Accepts "gcn", "glgcn-f", "glgcn-l", "glgcn-fl".
std::optional<Variant> parse_variant(std::string_view s);
bool uses_label_reg(Variant v);
bool uses_feature_reg(Variant v);

/// Where the label-side smoothness penalty is measured.
enum class LabelRegTarget { kProbabilities, kLogits };

/// The objective: which penalties are active and how strongly.
struct Objective {
    Variant variant = Variant::kGcn;
    double lambda_label = 0.0;
    double lambda_feature = 0.0;
    /// 1-based hidden layer whose output the feature penalty smooths; 0 means
    /// the last hidden layer X^(K).
    std::size_t feature_layer = 0;
    LabelRegTarget label_target = LabelRegTarget::kProbabilities;

    /// Throws std::invalid_argument on negative lambdas.
    void validate() const;
};

/// Graph operators shared by the forward pass and every penalty term.
struct Operators {
    SparseMatrix a_hat;
    SparseMatrix similarity;     // S for the label penalty
    SparseMatrix feature_graph;  // S or C for the feature penalty
};

/// total = cross_entropy + lambda_label * reg_label + lambda_feature * reg_feature.
/// A penalty the variant does not use, or whose lambda is zero, is reported as
/// 0 with lambda 0.
struct LossBreakdown {
    double cross_entropy = 0.0;
    double reg_label = 0.0;
    double reg_feature = 0.0;
    double total = 0.0;
    double lambda_label = 0.0;
    double lambda_feature = 0.0;

    friend bool operator==(const LossBreakdown&, const LossBreakdown&) = default;
};

/// d total / d W(k) and, when the model has biases, d total / d b(k).
struct Gradients {
    std::vector<DenseMatrix> weights;
    std::vector<DenseMatrix> biases;

    bool all_finite() const;
};

inline constexpr double kProbabilityFloor = 1e-12;

/// -sum over mask of ln z[i, y_i], with z clamped below at 1e-12.
double cross_entropy_masked(const DenseMatrix& z, std::span<const int> labels, std::span<const std::size_t> mask);

/// sum over ordered pairs (i, j) of S_ij * ||M_i - M_j||^2, visiting only the
/// stored entries of S.
double laplacian_reg(const DenseMatrix& m, const SparseMatrix& s);

/// Gradient of laplacian_reg with respect to M: 2 (L + L^T) M, i.e. 4 L M for
/// symmetric S.
DenseMatrix laplacian_reg_grad(const DenseMatrix& m, const SparseMatrix& s);

LossBreakdown total_loss(const Objective& objective, const ForwardTrace& trace, const Dataset& dataset,
                         const Operators& ops);

/// Analytic gradient of total_loss().total with respect to the parameters that
/// produced `trace`.
Gradients backward(const Objective& objective, const ForwardTrace& trace, const ModelParams& params,
                    const Dataset& dataset, const Operators& ops);

struct FiniteDiffReport {
    double max_rel_error = 0.0;
    std::size_t entries_checked = 0;
    /// Location of the worst entry: parameter tensor index (weights first, then
    /// biases) and flat offset inside it.
    std::size_t worst_tensor = 0;
    std::size_t worst_offset = 0;
    double worst_analytic = 0.0;
    double worst_numeric = 0.0;
};

/// Central-difference check of backward() over every parameter entry, with
/// dropout off. Error per entry is |a - n| / max(1e-8, |a| + |n|).
FiniteDiffReport finite_diff_check(const Objective& objective, const Dataset& dataset, const ModelParams& params,
                                   const Operators& ops, double epsilon);

}  // namespace glgcn
