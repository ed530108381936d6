// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>

#include "json.hpp"

#include "glgcn/loss_grad.hpp"
#include "glgcn/optim_train.hpp"

namespace glgcn {

inline constexpr int kReportSchemaVersion = 1;

std::string_view to_string(FeatureRegGraph g);
std::string_view to_string(SimilarityKind k);
std::string_view to_string(LabelRegTarget t);
std::optional<FeatureRegGraph> parse_feature_graph(std::string_view s);
std::optional<SimilarityKind> parse_similarity(std::string_view s);
std::optional<LabelRegTarget> parse_label_target(std::string_view s);

// nlohmann::json hooks. from_json for TrainConfig fills missing keys with
// defaults and rejects unknown keys and bad enum names.
void to_json(nlohmann::json& j, const TrainConfig& c);
void from_json(const nlohmann::json& j, TrainConfig& c);
void to_json(nlohmann::json& j, const LossBreakdown& b);
void to_json(nlohmann::json& j, const EpochRecord& r);
void to_json(nlohmann::json& j, const TrainReport& r);

}  // namespace glgcn
