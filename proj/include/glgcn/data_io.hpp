// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>

#include "glgcn/graph.hpp"
#include "glgcn/model.hpp"
#include "glgcn/optim_train.hpp"

namespace glgcn {

/// Malformed or inconsistent on-disk data. what() names the file and, where
/// there is one, the 1-based line.
class DataError : public std::runtime_error {
public:
    DataError(std::filesystem::path file, std::size_t line, const std::string& message);

    const std::filesystem::path& file() const { return file_; }
    std::size_t line() const { return line_; }

private:
    std::filesystem::path file_;
    std::size_t line_;
};

inline constexpr int kDatasetFormatVersion = 1;

/// Counts reported next to a loaded dataset.
struct DatasetStats {
    std::size_t nodes = 0;
    std::size_t features = 0;
    int classes = 0;
    std::size_t undirected_edges = 0;  // after dropping duplicates and self-loops
    std::size_t adjacency_nnz = 0;     // CSR entries, 2 * undirected_edges
    std::size_t labeled = 0;
    double label_rate = 0.0;
};

DatasetStats dataset_stats(const Dataset& dataset);

/// Reads a dataset directory:
///   meta.json      manifest (format_version, name, num_nodes, num_features,
///                  num_classes, num_edges, num_labeled, num_train, num_val,
///                  num_test; optional undirected_edges and notes)
///   edges.txt      "src dst" per line, 0-indexed, undirected
///   features.txt   one line per node of "idx:value" pairs; empty = zero row
///   labels.txt     "node_id class_id" per line
///   train.txt, val.txt, test.txt   one node id per line
/// Blank lines are ignored everywhere except features.txt. Self-loops are
/// dropped and recorded in Dataset::warnings.
Dataset load_dataset(const std::filesystem::path& dir);

/// Writes `dataset` in the layout load_dataset() reads. Each undirected edge
/// is written once as "i j" with i < j.
void save_dataset(const Dataset& dataset, const std::filesystem::path& dir);

struct SynthOptions {
    std::size_t n_per_class = 10;
    int classes = 2;
    std::size_t features = 8;
    double intra_edge_prob = 0.5;
    double inter_edge_prob = 0.05;
    double feature_signal = 1.0;
    double feature_noise = 1.0;
    double train_fraction = 0.5;
    double val_fraction = 0.25;
    std::uint64_t seed = 0;
};

/// Planted-partition graph. Nodes are laid out class by class; class c's
/// feature mean is `feature_signal` on every column j with j % classes == c.
/// Within each class a seeded shuffle assigns train, then val, then test.
Dataset synth_fixture(const SynthOptions& options);

/// Hand-built 6-node, 2-class, 4-feature graph used for gradient checks.
/// Train = {0, 1, 3, 4} covers both classes twice, so the label-correlation
/// graph has positive and negative entries.
Dataset gradcheck_fixture();

inline constexpr int kCheckpointVersion = 1;

/// Versioned text header (config echo and per-tensor shapes) followed by the
/// tensors as little-endian float64, layer by layer, row-major.
void save_checkpoint(const ModelParams& params, const TrainConfig& config, const std::filesystem::path& path);

struct Checkpoint {
    ModelParams params;
    TrainConfig config;
};

Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Throws DataError unless `params` has the layer widths `config` describes
/// for a model over `input_dim` features and `num_classes` classes.
void check_checkpoint_shapes(const ModelParams& params, const TrainConfig& config, std::size_t input_dim,
                             std::size_t num_classes, const std::filesystem::path& path);

}  // namespace glgcn
