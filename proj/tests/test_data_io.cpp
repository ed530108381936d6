// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "glgcn/data_io.hpp"
#include "glgcn/serialize.hpp"

namespace glgcn {
namespace {

namespace fs = std::filesystem;

class DataIoTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("glgcn_test_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path saved_fixture() {
        const fs::path d = dir_ / "ds";
        save_dataset(gradcheck_fixture(), d);
        return d;
    }

    static std::string read(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    static void write(const fs::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        out << text;
    }
    static void edit_manifest(const fs::path& d, const std::function<void(nlohmann::json&)>& f) {
        auto j = nlohmann::json::parse(read(d / "meta.json"));
        f(j);
        write(d / "meta.json", j.dump(2));
    }

    // Loads `d` and returns the DataError, failing the test if none is thrown.
    static DataError expect_error(const fs::path& d) {
        try {
            load_dataset(d);
        } catch (const DataError& e) {
            return e;
        }
        ADD_FAILURE() << "no DataError for " << d;
        return DataError(d, 0, "none");
    }

    fs::path dir_;
};

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

TEST_F(DataIoTest, RoundTripPreservesEverything) {
    const Dataset src = gradcheck_fixture();
    const fs::path d = saved_fixture();
    const Dataset back = load_dataset(d);
    EXPECT_EQ(back.graph.adjacency, src.graph.adjacency);
    EXPECT_EQ(back.graph.features, src.graph.features);
    EXPECT_EQ(back.graph.labels, src.graph.labels);
    EXPECT_EQ(back.graph.num_classes, src.graph.num_classes);
    EXPECT_EQ(back.train, src.train);
    EXPECT_EQ(back.val, src.val);
    EXPECT_EQ(back.test, src.test);
    EXPECT_TRUE(back.warnings.empty());
}

TEST_F(DataIoTest, RoundTripOfSynthFixture) {
    SynthOptions o;
    o.classes = 3;
    o.seed = 11;
    const Dataset src = synth_fixture(o);
    save_dataset(src, dir_ / "synth");
    const Dataset back = load_dataset(dir_ / "synth");
    EXPECT_EQ(back.graph.features, src.graph.features);
    EXPECT_EQ(back.graph.adjacency, src.graph.adjacency);
    const DatasetStats stats = dataset_stats(back);
    EXPECT_EQ(stats.nodes, 30u);
    EXPECT_EQ(stats.adjacency_nnz, 2 * stats.undirected_edges);
    EXPECT_DOUBLE_EQ(stats.label_rate, static_cast<double>(back.train.size()) / 30.0);
}

TEST_F(DataIoTest, DuplicateEdgesCollapse) {
    const fs::path d = saved_fixture();
    write(d / "edges.txt", read(d / "edges.txt") + "1 0\n0 1\n");
    edit_manifest(d, [](nlohmann::json& j) { j["num_edges"] = j["num_edges"].get<int>() + 2; });
    const Dataset back = load_dataset(d);
    EXPECT_EQ(back.graph.adjacency, gradcheck_fixture().graph.adjacency);
}

TEST_F(DataIoTest, SelfLoopDroppedWithWarning) {
    const fs::path d = saved_fixture();
    write(d / "edges.txt", read(d / "edges.txt") + "2 2\n");
    edit_manifest(d, [](nlohmann::json& j) { j["num_edges"] = j["num_edges"].get<int>() + 1; });
    const Dataset back = load_dataset(d);
    EXPECT_EQ(back.graph.adjacency.at(2, 2), 0.0);
    ASSERT_EQ(back.warnings.size(), 1u);
    EXPECT_TRUE(contains(back.warnings[0], "self-loop"));
}

TEST_F(DataIoTest, MissingFile) {
    const fs::path d = saved_fixture();
    fs::remove(d / "labels.txt");
    const DataError e = expect_error(d);
    EXPECT_EQ(e.file().filename(), "labels.txt");
    EXPECT_TRUE(contains(e.what(), "missing file"));
}

TEST_F(DataIoTest, MissingDirectory) {
    EXPECT_TRUE(contains(expect_error(dir_ / "nope").what(), "not found"));
}

TEST_F(DataIoTest, EdgeOutOfRangeNamesLine) {
    const fs::path d = saved_fixture();
    write(d / "edges.txt", "0 1\n0 6\n");
    edit_manifest(d, [](nlohmann::json& j) { j["num_edges"] = 2; });
    const DataError e = expect_error(d);
    EXPECT_EQ(e.file().filename(), "edges.txt");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_TRUE(contains(e.what(), "out of range"));
    EXPECT_TRUE(contains(e.what(), "edges.txt:2:"));
}

TEST_F(DataIoTest, MalformedFeatureToken) {
    const fs::path d = saved_fixture();
    std::string f = read(d / "features.txt");
    f.replace(f.find('\n') + 1, 0, "0:abc ");
    write(d / "features.txt", f);
    const DataError e = expect_error(d);
    EXPECT_EQ(e.file().filename(), "features.txt");
    EXPECT_EQ(e.line(), 2u);
}

TEST_F(DataIoTest, OverlappingSplits) {
    const fs::path d = saved_fixture();
    write(d / "val.txt", "0\n");
    const DataError e = expect_error(d);
    EXPECT_EQ(e.file().filename(), "val.txt");
    EXPECT_EQ(e.line(), 1u);
    EXPECT_TRUE(contains(e.what(), "overlap"));
}

TEST_F(DataIoTest, CountMismatchAgainstManifest) {
    const fs::path d = saved_fixture();
    edit_manifest(d, [](nlohmann::json& j) { j["num_train"] = 3; });
    const DataError e = expect_error(d);
    EXPECT_EQ(e.file().filename(), "meta.json");
    EXPECT_TRUE(contains(e.what(), "num_train"));
}

TEST_F(DataIoTest, UnlabeledTrainNode) {
    const fs::path d = saved_fixture();
    std::string labels = read(d / "labels.txt");
    std::string kept;
    std::istringstream in(labels);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("3 ", 0) != 0) kept += line + "\n";
    }
    write(d / "labels.txt", kept);
    edit_manifest(d, [](nlohmann::json& j) { j["num_labeled"] = 5; });
    const DataError e = expect_error(d);
    EXPECT_EQ(e.file().filename(), "train.txt");
    EXPECT_TRUE(contains(e.what(), "no entry in labels.txt"));
}

TEST_F(DataIoTest, UnsupportedFormatVersion) {
    const fs::path d = saved_fixture();
    edit_manifest(d, [](nlohmann::json& j) { j["format_version"] = 2; });
    EXPECT_TRUE(contains(expect_error(d).what(), "format_version"));
}

ModelParams params_for(const TrainConfig& c, std::size_t input_dim, std::size_t classes) {
    std::mt19937_64 rng(c.seed);
    return ModelParams::init(input_dim, c.hidden_dims, classes, c.bias, rng);
}

TEST_F(DataIoTest, CheckpointRoundTripIsExact) {
    TrainConfig c;
    c.variant = Variant::kFeatureLabel;
    c.lambda_label = 0.125;
    c.hidden_dims = {7, 3};
    c.bias = true;
    const ModelParams p = params_for(c, 5, 4);
    save_checkpoint(p, c, dir_ / "model.ckpt");
    const Checkpoint back = load_checkpoint(dir_ / "model.ckpt");
    EXPECT_EQ(back.params, p);
    EXPECT_EQ(back.config, c);
    EXPECT_NO_THROW(check_checkpoint_shapes(back.params, back.config, 5, 4, dir_ / "model.ckpt"));
}

TEST_F(DataIoTest, TruncatedCheckpoint) {
    TrainConfig c;
    const ModelParams p = params_for(c, 5, 2);
    const fs::path path = dir_ / "model.ckpt";
    save_checkpoint(p, c, path);
    const std::string full = read(path);
    write(path, full.substr(0, full.size() - 9));
    try {
        load_checkpoint(path);
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_TRUE(contains(e.what(), "truncated"));
    }
}

TEST_F(DataIoTest, CheckpointShapeMismatch) {
    TrainConfig c;
    c.hidden_dims = {16};
    const ModelParams p = params_for(c, 5, 2);
    TrainConfig wider = c;
    wider.hidden_dims = {32};
    try {
        check_checkpoint_shapes(p, wider, 5, 2, dir_ / "x.ckpt");
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_TRUE(contains(e.what(), "shape mismatch"));
    }
    EXPECT_THROW(check_checkpoint_shapes(p, c, 6, 2, dir_ / "x.ckpt"), DataError);
}

TEST(Serialize, ConfigJsonRoundTrip) {
    TrainConfig c;
    c.variant = Variant::kLabel;
    c.alpha = 0.5;
    c.feature_graph = FeatureRegGraph::kCorrelation;
    c.similarity = SimilarityKind::kKnn;
    c.label_target = LabelRegTarget::kLogits;
    c.hidden_dims = {8, 4};
    c.seed = 99;
    const nlohmann::json j = c;
    EXPECT_EQ(j.get<TrainConfig>(), c);
    EXPECT_EQ(nlohmann::json::object().get<TrainConfig>(), TrainConfig{});
    nlohmann::json bad = j;
    bad["lamda"] = 1.0;
    EXPECT_ANY_THROW(bad.get<TrainConfig>());
}

}  // namespace
}  // namespace glgcn
