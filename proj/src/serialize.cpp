// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#include "glgcn/serialize.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace glgcn {

std::string_view to_string(FeatureRegGraph g) { return g == FeatureRegGraph::kCorrelation ? "C" : "S"; }
std::string_view to_string(SimilarityKind k) { return k == SimilarityKind::kKnn ? "knn" : "adjacency"; }
std::string_view to_string(LabelRegTarget t) {
    return t == LabelRegTarget::kLogits ? "logits" : "probabilities";
}

std::optional<FeatureRegGraph> parse_feature_graph(std::string_view s) {
    if (s == "S") return FeatureRegGraph::kSimilarity;
    if (s == "C") return FeatureRegGraph::kCorrelation;
    return std::nullopt;
}

std::optional<SimilarityKind> parse_similarity(std::string_view s) {
    if (s == "adjacency") return SimilarityKind::kAdjacency;
    if (s == "knn") return SimilarityKind::kKnn;
    return std::nullopt;
}

std::optional<LabelRegTarget> parse_label_target(std::string_view s) {
    if (s == "probabilities") return LabelRegTarget::kProbabilities;
    if (s == "logits") return LabelRegTarget::kLogits;
    return std::nullopt;
}

void to_json(nlohmann::json& j, const TrainConfig& c) {
    j = nlohmann::json{
        {"variant", std::string(to_string(c.variant))},
        {"lambda_label", c.lambda_label},
        {"lambda_feature", c.lambda_feature},
        {"alpha", c.alpha},
        {"feature_graph", std::string(to_string(c.feature_graph))},
        {"similarity", std::string(to_string(c.similarity))},
        {"normalize_similarity", c.normalize_similarity},
        {"knn_k", c.knn_k},
        {"knn_sigma", c.knn_sigma},
        {"feature_layer", c.feature_layer},
        {"label_target", std::string(to_string(c.label_target))},
        {"hidden_dims", c.hidden_dims},
        {"bias", c.bias},
        {"dropout", c.dropout},
        {"learning_rate", c.learning_rate},
        {"weight_decay", c.weight_decay},
        {"max_epochs", c.max_epochs},
        {"patience", c.patience},
        {"seed", c.seed},
    };
}

namespace {

template <typename T, typename Parse>
T parse_enum(const nlohmann::json& j, const char* key, Parse parse) {
    const auto s = j.at(key).get<std::string>();
    const auto v = parse(s);
    if (!v) throw std::invalid_argument(std::string("config: bad value '") + s + "' for " + key);
    return *v;
}

}  // namespace

void from_json(const nlohmann::json& j, TrainConfig& c) {
    static const std::set<std::string> known{
        "variant",     "lambda_label", "lambda_feature", "alpha",         "feature_graph", "similarity",
        "normalize_similarity",        "knn_k",          "knn_sigma",     "feature_layer", "label_target",
        "hidden_dims", "bias",         "dropout",        "learning_rate", "weight_decay",  "max_epochs",
        "patience",    "seed"};
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    TrainConfig out;
    if (j.contains("variant")) out.variant = parse_enum<Variant>(j, "variant", parse_variant);
    if (j.contains("feature_graph")) {
        out.feature_graph = parse_enum<FeatureRegGraph>(j, "feature_graph", parse_feature_graph);
    }
    if (j.contains("similarity")) out.similarity = parse_enum<SimilarityKind>(j, "similarity", parse_similarity);
    if (j.contains("label_target")) {
        out.label_target = parse_enum<LabelRegTarget>(j, "label_target", parse_label_target);
    }
    auto get = [&j](const char* key, auto& field) {
        if (j.contains(key)) j.at(key).get_to(field);
    };
    get("lambda_label", out.lambda_label);
    get("lambda_feature", out.lambda_feature);
    get("alpha", out.alpha);
    get("normalize_similarity", out.normalize_similarity);
    get("knn_k", out.knn_k);
    get("knn_sigma", out.knn_sigma);
    get("feature_layer", out.feature_layer);
    get("hidden_dims", out.hidden_dims);
    get("bias", out.bias);
    get("dropout", out.dropout);
    get("learning_rate", out.learning_rate);
    get("weight_decay", out.weight_decay);
    get("max_epochs", out.max_epochs);
    get("patience", out.patience);
    get("seed", out.seed);
    c = std::move(out);
}

void to_json(nlohmann::json& j, const LossBreakdown& b) {
    j = nlohmann::json{{"cross_entropy", b.cross_entropy}, {"reg_label", b.reg_label},
                       {"reg_feature", b.reg_feature},     {"total", b.total},
                       {"lambda_label", b.lambda_label},   {"lambda_feature", b.lambda_feature}};
}

void to_json(nlohmann::json& j, const EpochRecord& r) {
    j = nlohmann::json{{"epoch", r.epoch},
                       {"train_loss", r.train_loss},
                       {"train_accuracy", r.train_accuracy},
                       {"val_loss", r.val_loss},
                       {"val_accuracy", r.val_accuracy}};
}

void to_json(nlohmann::json& j, const TrainReport& r) {
    j = nlohmann::json{{"config", r.config},
                       {"best_epoch", r.best_epoch},
                       {"epochs_run", r.history.size()},
                       {"best_val_loss", r.best_val_loss},
                       {"train_accuracy", r.train_accuracy},
                       {"val_accuracy", r.val_accuracy},
                       {"test_accuracy", r.test_accuracy},
                       {"wall_seconds", r.wall_seconds},
                       {"history", r.history}};
}

}  // namespace glgcn
