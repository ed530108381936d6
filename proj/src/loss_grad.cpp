// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#include "glgcn/loss_grad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace glgcn {

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::kGcn: return "gcn";
        case Variant::kFeature: return "glgcn-f";
        case Variant::kLabel: return "glgcn-l";
        case Variant::kFeatureLabel: return "glgcn-fl";
    }
    return "unknown";
}

std::optional<Variant> parse_variant(std::string_view s) {
    for (Variant v : {Variant::kGcn, Variant::kFeature, Variant::kLabel, Variant::kFeatureLabel}) {
        if (s == to_string(v)) return v;
    }
    return std::nullopt;
}

bool uses_label_reg(Variant v) { return v == Variant::kLabel || v == Variant::kFeatureLabel; }
bool uses_feature_reg(Variant v) { return v == Variant::kFeature || v == Variant::kFeatureLabel; }

void Objective::validate() const {
    if (!(lambda_label >= 0.0)) throw std::invalid_argument("lambda_label must be >= 0");
    if (!(lambda_feature >= 0.0)) throw std::invalid_argument("lambda_feature must be >= 0");
}

bool Gradients::all_finite() const {
    auto ok = [](const DenseMatrix& m) { return m.all_finite(); };
    return std::all_of(weights.begin(), weights.end(), ok) && std::all_of(biases.begin(), biases.end(), ok);
}

double cross_entropy_masked(const DenseMatrix& z, std::span<const int> labels, std::span<const std::size_t> mask) {
    if (mask.empty()) throw std::invalid_argument("cross_entropy_masked: empty mask");
    if (labels.size() != z.rows()) throw DimensionError("cross_entropy_masked: labels size != rows of Z");
    double loss = 0.0;
    for (std::size_t i : mask) {
        const int y = labels[i];
        if (y < 0 || static_cast<std::size_t>(y) >= z.cols()) {
            throw std::invalid_argument("cross_entropy_masked: node " + std::to_string(i) + " has no valid label");
        }
        loss -= std::log(std::max(z(i, static_cast<std::size_t>(y)), kProbabilityFloor));
    }
    return loss;
}

double laplacian_reg(const DenseMatrix& m, const SparseMatrix& s) {
    if (s.dim() != m.rows()) {
        throw DimensionError("laplacian_reg: S dim " + std::to_string(s.dim()) + " vs M " + shape_string(m));
    }
    double total = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const auto cols = s.row_cols(i);
        const auto vals = s.row_values(i);
        const auto mi = m.row(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const auto mj = m.row(cols[k]);
            double d2 = 0.0;
            for (std::size_t c = 0; c < mi.size(); ++c) {
                const double diff = mi[c] - mj[c];
                d2 += diff * diff;
            }
            total += vals[k] * d2;
        }
    }
    return total;
}

DenseMatrix laplacian_reg_grad(const DenseMatrix& m, const SparseMatrix& s) {
    if (s.dim() != m.rows()) {
        throw DimensionError("laplacian_reg_grad: S dim " + std::to_string(s.dim()) + " vs M " + shape_string(m));
    }
    DenseMatrix g(m.rows(), m.cols());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const auto cols = s.row_cols(i);
        const auto vals = s.row_values(i);
        const auto mi = m.row(i);
        auto gi = g.row(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const std::size_t j = cols[k];
            if (j == i) continue;
            const auto mj = m.row(j);
            auto gj = g.row(j);
            const double w2 = 2.0 * vals[k];
            for (std::size_t c = 0; c < mi.size(); ++c) {
                const double diff = w2 * (mi[c] - mj[c]);
                gi[c] += diff;
                gj[c] -= diff;
            }
        }
    }
    return g;
}

namespace {

std::size_t feature_layer_index(const Objective& objective, const ForwardTrace& trace) {
    const std::size_t hidden = trace.hidden.size();
    if (hidden == 0) throw std::invalid_argument("feature penalty needs at least one hidden layer");
    const std::size_t l = objective.feature_layer == 0 ? hidden : objective.feature_layer;
    if (l > hidden) {
        throw std::invalid_argument("feature_layer " + std::to_string(l) + " exceeds hidden layer count " +
                                    std::to_string(hidden));
    }
    return l - 1;
}

const DenseMatrix& label_reg_input(const Objective& objective, const ForwardTrace& trace) {
    return objective.label_target == LabelRegTarget::kLogits ? trace.logits() : trace.z;
}

}  // namespace

LossBreakdown total_loss(const Objective& objective, const ForwardTrace& trace, const Dataset& dataset,
                         const Operators& ops) {
    objective.validate();
    // Terms the variant does not use, or whose weight is zero, are absent:
    // both their value and their lambda read as 0.
    LossBreakdown b;
    b.cross_entropy = cross_entropy_masked(trace.z, dataset.graph.labels, dataset.train);
    if (uses_label_reg(objective.variant) && objective.lambda_label != 0.0) {
        b.lambda_label = objective.lambda_label;
        b.reg_label = laplacian_reg(label_reg_input(objective, trace), ops.similarity);
    }
    if (uses_feature_reg(objective.variant) && objective.lambda_feature != 0.0) {
        b.lambda_feature = objective.lambda_feature;
        b.reg_feature = laplacian_reg(trace.hidden[feature_layer_index(objective, trace)], ops.feature_graph);
    }
    b.total = b.cross_entropy + b.lambda_label * b.reg_label + b.lambda_feature * b.reg_feature;
    return b;
}

Gradients backward(const Objective& objective, const ForwardTrace& trace, const ModelParams& params,
                    const Dataset& dataset, const Operators& ops) {
    objective.validate();
    params.validate();
    const std::size_t layers = params.num_layers();
    if (trace.num_layers() != layers || trace.inputs.size() != layers || trace.hidden.size() + 1 != layers) {
        throw DimensionError("backward: trace has " + std::to_string(trace.num_layers()) + " layers, params " +
                             std::to_string(layers));
    }
    for (std::size_t k = 0; k < layers; ++k) {
        if (trace.inputs[k].cols() != params.weights[k].rows() ||
            trace.pre_activations[k].cols() != params.weights[k].cols()) {
            throw DimensionError("backward: trace does not match W(" + std::to_string(k) + ")");
        }
    }

    const DenseMatrix& z = trace.z;
    const auto& labels = dataset.graph.labels;

    // Softmax + cross-entropy: Z - Y on the training rows.
    DenseMatrix d_pre(z.rows(), z.cols());
    for (std::size_t i : dataset.train) {
        const auto zi = z.row(i);
        auto gi = d_pre.row(i);
        for (std::size_t c = 0; c < zi.size(); ++c) gi[c] += zi[c];
        gi[static_cast<std::size_t>(labels[i])] -= 1.0;
    }

    if (uses_label_reg(objective.variant) && objective.lambda_label != 0.0) {
        DenseMatrix g = laplacian_reg_grad(label_reg_input(objective, trace), ops.similarity);
        if (objective.label_target == LabelRegTarget::kLogits) {
            add_in_place(d_pre, g, objective.lambda_label);
        } else {
            // Softmax Jacobian per row: Z_i * g_i - (g_i . Z_i) Z_i.
            for (std::size_t i = 0; i < z.rows(); ++i) {
                const auto zi = z.row(i);
                const auto gr = g.row(i);
                double dot = 0.0;
                for (std::size_t c = 0; c < zi.size(); ++c) dot += gr[c] * zi[c];
                auto out = d_pre.row(i);
                for (std::size_t c = 0; c < zi.size(); ++c) {
                    out[c] += objective.lambda_label * zi[c] * (gr[c] - dot);
                }
            }
        }
    }

    const bool feature_reg = uses_feature_reg(objective.variant) && objective.lambda_feature != 0.0;
    const std::size_t feature_idx = feature_reg ? feature_layer_index(objective, trace) : 0;

    Gradients grads;
    grads.weights.resize(layers);
    if (params.has_bias()) grads.biases.resize(layers);

    for (std::size_t k = layers; k-- > 0;) {
        if (params.has_bias()) {
            DenseMatrix db(1, d_pre.cols());
            for (std::size_t i = 0; i < d_pre.rows(); ++i) {
                const auto r = d_pre.row(i);
                for (std::size_t c = 0; c < r.size(); ++c) db(0, c) += r[c];
            }
            grads.biases[k] = std::move(db);
        }
        const DenseMatrix d_u = spmm_transposed(ops.a_hat, d_pre);
        grads.weights[k] = matmul_at_b(trace.inputs[k], d_u);
        if (k == 0) break;

        // Back into hidden[k - 1] = X^(k): undo dropout, add the feature
        // penalty if it sits here, then gate by the ReLU mask.
        DenseMatrix d_hidden = matmul_a_bt(d_u, params.weights[k]);
        const auto& keep = trace.dropout_keep[k];
        if (!keep.empty()) {
            auto& d = d_hidden.data();
            for (std::size_t e = 0; e < d.size(); ++e) d[e] = keep[e] ? d[e] * trace.dropout_scale : 0.0;
        }
        if (feature_reg && feature_idx == k - 1) {
            add_in_place(d_hidden, laplacian_reg_grad(trace.hidden[k - 1], ops.feature_graph),
                         objective.lambda_feature);
        }
        const auto& mask = trace.relu_masks[k - 1];
        auto& d = d_hidden.data();
        for (std::size_t e = 0; e < d.size(); ++e) {
            if (!mask[e]) d[e] = 0.0;
        }
        d_pre = std::move(d_hidden);
    }
    return grads;
}

FiniteDiffReport finite_diff_check(const Objective& objective, const Dataset& dataset, const ModelParams& params,
                                   const Operators& ops, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("finite_diff_check: epsilon must be positive");
    const ForwardTrace trace = gcn_forward(ops.a_hat, dataset.graph.features, params, 0.0, nullptr);
    const Gradients analytic = backward(objective, trace, params, dataset, ops);

    ModelParams probe = params;
    auto loss_at = [&]() {
        const ForwardTrace t = gcn_forward(ops.a_hat, dataset.graph.features, probe, 0.0, nullptr);
        return total_loss(objective, t, dataset, ops).total;
    };

    std::vector<DenseMatrix*> tensors;
    std::vector<const DenseMatrix*> grads;
    for (std::size_t k = 0; k < probe.weights.size(); ++k) {
        tensors.push_back(&probe.weights[k]);
        grads.push_back(&analytic.weights[k]);
    }
    for (std::size_t k = 0; k < probe.biases.size(); ++k) {
        tensors.push_back(&probe.biases[k]);
        grads.push_back(&analytic.biases[k]);
    }

    FiniteDiffReport report;
    for (std::size_t t = 0; t < tensors.size(); ++t) {
        auto& values = tensors[t]->data();
        for (std::size_t e = 0; e < values.size(); ++e) {
            const double saved = values[e];
            values[e] = saved + epsilon;
            const double plus = loss_at();
            values[e] = saved - epsilon;
            const double minus = loss_at();
            values[e] = saved;

            const double numeric = (plus - minus) / (2.0 * epsilon);
            const double a = grads[t]->data()[e];
            const double err = std::abs(a - numeric) / std::max(1e-8, std::abs(a) + std::abs(numeric));
            ++report.entries_checked;
            if (err > report.max_rel_error || report.entries_checked == 1) {
                report.max_rel_error = err;
                report.worst_tensor = t;
                report.worst_offset = e;
                report.worst_analytic = a;
                report.worst_numeric = numeric;
            }
        }
    }
    return report;
}

}  // namespace glgcn
