// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#include "glgcn/data_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "glgcn/serialize.hpp"

namespace glgcn {

namespace fs = std::filesystem;

namespace {

std::string describe(const fs::path& file, std::size_t line, const std::string& message) {
    std::string out = file.string();
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + message;
}

}  // namespace

DataError::DataError(fs::path file, std::size_t line, const std::string& message)
    : std::runtime_error(describe(file, line, message)), file_(std::move(file)), line_(line) {}

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(path, 0, "missing file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Splits on '\n'; a trailing newline does not start a new line.
std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

bool is_blank(std::string_view line) { return tokens(line).empty(); }

template <typename T>
T parse_number(std::string_view tok, const fs::path& file, std::size_t line, const char* what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw DataError(file, line, std::string("cannot parse ") + what + " '" + std::string(tok) + "'");
    }
    return value;
}

std::size_t parse_index(std::string_view tok, std::size_t limit, const fs::path& file, std::size_t line,
                        const char* what) {
    const auto v = parse_number<std::size_t>(tok, file, line, what);
    if (v >= limit) {
        throw DataError(file, line,
                        std::string(what) + " " + std::to_string(v) + " out of range [0, " + std::to_string(limit) + ")");
    }
    return v;
}

struct Manifest {
    std::string name;
    std::size_t nodes = 0, features = 0, edges = 0, labeled = 0, train = 0, val = 0, test = 0;
    int classes = 0;
    std::optional<std::size_t> undirected_edges;
    std::vector<std::string> notes;
};

Manifest read_manifest(const fs::path& path) {
    const std::string text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(path, 0, std::string("invalid JSON: ") + e.what());
    }
    Manifest m;
    try {
        const int version = j.at("format_version").get<int>();
        if (version != kDatasetFormatVersion) {
            throw DataError(path, 0, "unsupported format_version " + std::to_string(version));
        }
        m.name = j.value("name", std::string());
        m.nodes = j.at("num_nodes").get<std::size_t>();
        m.features = j.at("num_features").get<std::size_t>();
        m.classes = j.at("num_classes").get<int>();
        m.edges = j.at("num_edges").get<std::size_t>();
        m.labeled = j.at("num_labeled").get<std::size_t>();
        m.train = j.at("num_train").get<std::size_t>();
        m.val = j.at("num_val").get<std::size_t>();
        m.test = j.at("num_test").get<std::size_t>();
        if (j.contains("undirected_edges")) m.undirected_edges = j.at("undirected_edges").get<std::size_t>();
        if (j.contains("notes")) m.notes = j.at("notes").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path, 0, std::string("bad manifest field: ") + e.what());
    }
    if (m.classes < 1) throw DataError(path, 0, "num_classes must be >= 1");
    return m;
}

void expect_count(const fs::path& manifest, const char* field, std::size_t expected, std::size_t actual,
                  const fs::path& source) {
    if (expected != actual) {
        throw DataError(manifest, 0,
                        std::string(field) + " = " + std::to_string(expected) + " but " + source.filename().string() +
                            " has " + std::to_string(actual));
    }
}

std::vector<std::size_t> read_split(const fs::path& path, std::size_t n,
                                    std::unordered_map<std::size_t, std::string>& owner) {
    const std::string text = read_file(path);
    std::vector<std::size_t> out;
    const auto lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto tok = tokens(lines[ln]);
        if (tok.empty()) continue;
        if (tok.size() != 1) throw DataError(path, ln + 1, "expected one node id");
        const std::size_t node = parse_index(tok[0], n, path, ln + 1, "node id");
        const auto [it, inserted] = owner.emplace(node, path.filename().string());
        if (!inserted) {
            throw DataError(path, ln + 1,
                            "node " + std::to_string(node) + " already listed in " + it->second +
                                " (splits overlap)");
        }
        out.push_back(node);
    }
    return out;
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

DatasetStats dataset_stats(const Dataset& dataset) {
    DatasetStats s;
    const auto& g = dataset.graph;
    s.nodes = g.num_nodes();
    s.features = g.features.cols();
    s.classes = g.num_classes;
    s.adjacency_nnz = g.adjacency.nnz();
    s.undirected_edges = s.adjacency_nnz / 2;
    s.labeled = static_cast<std::size_t>(
        std::count_if(g.labels.begin(), g.labels.end(), [](int y) { return y != kUnlabeled; }));
    s.label_rate = dataset.label_rate();
    return s;
}

Dataset load_dataset(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw DataError(dir, 0, "dataset directory not found");
    const fs::path manifest_path = dir / "meta.json";
    const Manifest m = read_manifest(manifest_path);
    const std::size_t n = m.nodes;
    const std::size_t p = m.features;

    Dataset ds;
    ds.name = m.name.empty() ? dir.filename().string() : m.name;

    // Edges.
    const fs::path edges_path = dir / "edges.txt";
    {
        const std::string text = read_file(edges_path);
        const auto lines = split_lines(text);
        std::vector<Triplet> t;
        std::unordered_set<std::uint64_t> seen;
        std::size_t edge_lines = 0;
        std::size_t self_loops = 0;
        for (std::size_t ln = 0; ln < lines.size(); ++ln) {
            const auto tok = tokens(lines[ln]);
            if (tok.empty()) continue;
            if (tok.size() != 2) throw DataError(edges_path, ln + 1, "expected 'src dst'");
            ++edge_lines;
            const std::size_t a = parse_index(tok[0], n, edges_path, ln + 1, "node id");
            const std::size_t b = parse_index(tok[1], n, edges_path, ln + 1, "node id");
            if (a == b) {
                ++self_loops;
                continue;
            }
            const std::uint64_t key = static_cast<std::uint64_t>(std::min(a, b)) * n + std::max(a, b);
            if (!seen.insert(key).second) continue;
            t.push_back({a, b, 1.0});
            t.push_back({b, a, 1.0});
        }
        expect_count(manifest_path, "num_edges", m.edges, edge_lines, edges_path);
        if (self_loops > 0) {
            ds.warnings.push_back(edges_path.string() + ": dropped " + std::to_string(self_loops) + " self-loop(s)");
        }
        ds.graph.adjacency = SparseMatrix::from_triplets(n, std::move(t));
        if (m.undirected_edges && *m.undirected_edges != seen.size()) {
            throw DataError(manifest_path, 0,
                            "undirected_edges = " + std::to_string(*m.undirected_edges) + " but edges.txt yields " +
                                std::to_string(seen.size()) + " distinct edges");
        }
    }

    // Features.
    const fs::path features_path = dir / "features.txt";
    {
        const std::string text = read_file(features_path);
        const auto lines = split_lines(text);
        expect_count(manifest_path, "num_nodes", n, lines.size(), features_path);
        ds.graph.features = DenseMatrix(n, p);
        for (std::size_t i = 0; i < n; ++i) {
            auto row = ds.graph.features.row(i);
            std::vector<std::uint8_t> set(p, 0);
            for (const auto tok : tokens(lines[i])) {
                const auto colon = tok.find(':');
                if (colon == std::string_view::npos) throw DataError(features_path, i + 1, "expected 'idx:value'");
                const std::size_t col = parse_index(tok.substr(0, colon), p, features_path, i + 1, "feature index");
                if (set[col]) {
                    throw DataError(features_path, i + 1, "feature index " + std::to_string(col) + " repeated");
                }
                set[col] = 1;
                row[col] = parse_number<double>(tok.substr(colon + 1), features_path, i + 1, "feature value");
            }
        }
    }

    // Labels.
    const fs::path labels_path = dir / "labels.txt";
    {
        const std::string text = read_file(labels_path);
        const auto lines = split_lines(text);
        ds.graph.labels.assign(n, kUnlabeled);
        ds.graph.num_classes = m.classes;
        std::size_t count = 0;
        for (std::size_t ln = 0; ln < lines.size(); ++ln) {
            const auto tok = tokens(lines[ln]);
            if (tok.empty()) continue;
            if (tok.size() != 2) throw DataError(labels_path, ln + 1, "expected 'node_id class_id'");
            const std::size_t node = parse_index(tok[0], n, labels_path, ln + 1, "node id");
            const std::size_t cls =
                parse_index(tok[1], static_cast<std::size_t>(m.classes), labels_path, ln + 1, "class id");
            if (ds.graph.labels[node] != kUnlabeled) {
                throw DataError(labels_path, ln + 1, "node " + std::to_string(node) + " labeled twice");
            }
            ds.graph.labels[node] = static_cast<int>(cls);
            ++count;
        }
        expect_count(manifest_path, "num_labeled", m.labeled, count, labels_path);
    }

    // Splits.
    std::unordered_map<std::size_t, std::string> owner;
    const fs::path train_path = dir / "train.txt";
    const fs::path val_path = dir / "val.txt";
    const fs::path test_path = dir / "test.txt";
    ds.train = read_split(train_path, n, owner);
    ds.val = read_split(val_path, n, owner);
    ds.test = read_split(test_path, n, owner);
    expect_count(manifest_path, "num_train", m.train, ds.train.size(), train_path);
    expect_count(manifest_path, "num_val", m.val, ds.val.size(), val_path);
    expect_count(manifest_path, "num_test", m.test, ds.test.size(), test_path);
    {
        const auto lines = split_lines(read_file(train_path));
        std::size_t k = 0;
        for (std::size_t ln = 0; ln < lines.size(); ++ln) {
            if (is_blank(lines[ln])) continue;
            if (ds.graph.labels[ds.train[k]] == kUnlabeled) {
                throw DataError(train_path, ln + 1,
                                "train node " + std::to_string(ds.train[k]) + " has no entry in labels.txt");
            }
            ++k;
        }
    }
    for (const auto& note : m.notes) ds.warnings.push_back("note: " + note);
    return ds;
}

void save_dataset(const Dataset& dataset, const fs::path& dir) {
    dataset.validate();
    fs::create_directories(dir);
    const auto& g = dataset.graph;
    const std::size_t n = g.num_nodes();

    auto open = [](const fs::path& path) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw DataError(path, 0, "cannot open for writing");
        return out;
    };

    std::size_t edges = 0;
    {
        auto out = open(dir / "edges.txt");
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j : g.adjacency.row_cols(i)) {
                if (j > i) {
                    out << i << ' ' << j << '\n';
                    ++edges;
                }
            }
        }
    }
    {
        auto out = open(dir / "features.txt");
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = g.features.row(i);
            bool first = true;
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (row[c] == 0.0) continue;
                if (!first) out << ' ';
                out << c << ':' << format_double(row[c]);
                first = false;
            }
            out << '\n';
        }
    }
    std::size_t labeled = 0;
    {
        auto out = open(dir / "labels.txt");
        for (std::size_t i = 0; i < n; ++i) {
            if (g.labels[i] == kUnlabeled) continue;
            out << i << ' ' << g.labels[i] << '\n';
            ++labeled;
        }
    }
    auto write_split = [&](const char* name, const std::vector<std::size_t>& split) {
        auto out = open(dir / name);
        for (std::size_t i : split) out << i << '\n';
    };
    write_split("train.txt", dataset.train);
    write_split("val.txt", dataset.val);
    write_split("test.txt", dataset.test);

    nlohmann::json manifest{
        {"format_version", kDatasetFormatVersion},
        {"name", dataset.name},
        {"num_nodes", n},
        {"num_features", g.features.cols()},
        {"num_classes", g.num_classes},
        {"num_edges", edges},
        {"undirected_edges", edges},
        {"num_labeled", labeled},
        {"num_train", dataset.train.size()},
        {"num_val", dataset.val.size()},
        {"num_test", dataset.test.size()},
        {"label_rate", dataset.label_rate()},
    };
    auto out = open(dir / "meta.json");
    out << manifest.dump(2) << '\n';
}

Dataset synth_fixture(const SynthOptions& o) {
    if (o.classes < 1 || o.n_per_class < 1) throw std::invalid_argument("synth_fixture: need >= 1 class and node");
    auto prob_ok = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob_ok(o.intra_edge_prob) || !prob_ok(o.inter_edge_prob)) {
        throw std::invalid_argument("synth_fixture: edge probabilities must lie in [0, 1]");
    }
    if (!(o.train_fraction > 0.0) || !(o.val_fraction >= 0.0) || o.train_fraction + o.val_fraction > 1.0) {
        throw std::invalid_argument("synth_fixture: bad split fractions");
    }
    const auto classes = static_cast<std::size_t>(o.classes);
    const std::size_t n = o.n_per_class * classes;
    std::mt19937_64 rng(o.seed);

    Dataset ds;
    ds.name = "synth";
    ds.graph.num_classes = o.classes;
    ds.graph.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) ds.graph.labels[i] = static_cast<int>(i / o.n_per_class);

    std::vector<Triplet> t;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double prob = ds.graph.labels[i] == ds.graph.labels[j] ? o.intra_edge_prob : o.inter_edge_prob;
            if (unit(rng) < prob) {
                t.push_back({i, j, 1.0});
                t.push_back({j, i, 1.0});
            }
        }
    }
    ds.graph.adjacency = SparseMatrix::from_triplets(n, std::move(t));

    std::normal_distribution<double> noise(0.0, o.feature_noise);
    ds.graph.features = DenseMatrix(n, o.features);
    for (std::size_t i = 0; i < n; ++i) {
        const auto cls = static_cast<std::size_t>(ds.graph.labels[i]);
        for (std::size_t c = 0; c < o.features; ++c) {
            const double mean = c % classes == cls ? o.feature_signal : 0.0;
            ds.graph.features(i, c) = mean + (o.feature_noise > 0.0 ? noise(rng) : 0.0);
        }
    }

    const auto n_train = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(o.train_fraction * static_cast<double>(o.n_per_class))));
    const auto n_val = std::min(o.n_per_class - std::min(n_train, o.n_per_class),
                                static_cast<std::size_t>(std::lround(o.val_fraction * static_cast<double>(o.n_per_class))));
    for (std::size_t cls = 0; cls < classes; ++cls) {
        std::vector<std::size_t> members(o.n_per_class);
        for (std::size_t k = 0; k < o.n_per_class; ++k) members[k] = cls * o.n_per_class + k;
        std::shuffle(members.begin(), members.end(), rng);
        for (std::size_t k = 0; k < members.size(); ++k) {
            if (k < n_train) {
                ds.train.push_back(members[k]);
            } else if (k < n_train + n_val) {
                ds.val.push_back(members[k]);
            } else {
                ds.test.push_back(members[k]);
            }
        }
    }
    std::sort(ds.train.begin(), ds.train.end());
    std::sort(ds.val.begin(), ds.val.end());
    std::sort(ds.test.begin(), ds.test.end());
    return ds;
}

Dataset gradcheck_fixture() {
    Dataset ds;
    ds.name = "gradcheck6";
    ds.graph.num_classes = 2;
    ds.graph.labels = {0, 0, 0, 1, 1, 1};
    std::vector<Triplet> t;
    for (auto [a, b] : {std::pair<std::size_t, std::size_t>{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}}) {
        t.push_back({a, b, 1.0});
        t.push_back({b, a, 1.0});
    }
    ds.graph.adjacency = SparseMatrix::from_triplets(6, std::move(t));
    ds.graph.features = DenseMatrix{
        {1.0, 0.2, 0.5, 0.1}, {0.8, 0.3, 0.4, 0.2}, {0.6, 0.5, 0.7, 0.3},
        {0.2, 0.9, 0.3, 0.8}, {0.1, 1.0, 0.2, 0.7}, {0.3, 0.7, 0.6, 0.9},
    };
    ds.train = {0, 1, 3, 4};
    ds.val = {2};
    ds.test = {5};
    return ds;
}

namespace {

constexpr std::string_view kCheckpointMagic = "glgcn-checkpoint";

void put_le(std::string& out, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
        out.push_back(static_cast<char>(bits & 0xffu));
        bits >>= 8;
    }
}

double get_le(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) bits = (bits << 8) | p[b];
    return std::bit_cast<double>(bits);
}

}  // namespace

void save_checkpoint(const ModelParams& params, const TrainConfig& config, const fs::path& path) {
    params.validate();
    std::string header;
    header += std::string(kCheckpointMagic) + " " + std::to_string(kCheckpointVersion) + "\n";
    header += "config " + nlohmann::json(config).dump() + "\n";
    header += "tensors " + std::to_string(params.weights.size() + params.biases.size()) + "\n";
    std::size_t bytes = 0;
    auto describe_tensor = [&](const char* kind, std::size_t k, const DenseMatrix& m) {
        header += std::string("tensor ") + kind + " " + std::to_string(k) + " " + std::to_string(m.rows()) + " " +
                  std::to_string(m.cols()) + "\n";
        bytes += m.size() * 8;
    };
    for (std::size_t k = 0; k < params.weights.size(); ++k) describe_tensor("weight", k, params.weights[k]);
    for (std::size_t k = 0; k < params.biases.size(); ++k) describe_tensor("bias", k, params.biases[k]);
    header += "payload " + std::to_string(bytes) + "\n";

    std::string payload;
    payload.reserve(bytes);
    for (const auto& w : params.weights) {
        for (double v : w.data()) put_le(payload, v);
    }
    for (const auto& b : params.biases) {
        for (double v : b.data()) put_le(payload, v);
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(path, 0, "cannot open for writing");
    out << header;
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw DataError(path, 0, "write failed");
}

Checkpoint load_checkpoint(const fs::path& path) {
    const std::string blob = read_file(path);
    std::size_t pos = 0;
    std::size_t line_no = 0;
    auto next_line = [&]() -> std::string_view {
        const std::size_t end = blob.find('\n', pos);
        ++line_no;
        if (end == std::string::npos) throw DataError(path, line_no, "truncated header");
        std::string_view line(blob.data() + pos, end - pos);
        pos = end + 1;
        return line;
    };
    auto expect_word = [&](std::string_view line, std::string_view word) {
        if (line.substr(0, word.size()) != word || line.size() <= word.size() || line[word.size()] != ' ') {
            throw DataError(path, line_no, "expected '" + std::string(word) + " ...'");
        }
        return line.substr(word.size() + 1);
    };

    const std::string_view version_str = expect_word(next_line(), kCheckpointMagic);
    const int version = parse_number<int>(version_str, path, line_no, "version");
    if (version != kCheckpointVersion) {
        throw DataError(path, line_no,
                        "checkpoint version " + std::to_string(version) + " (reader supports " +
                            std::to_string(kCheckpointVersion) + ")");
    }

    Checkpoint ck;
    {
        const std::string_view cfg = expect_word(next_line(), "config");
        try {
            ck.config = nlohmann::json::parse(cfg).get<TrainConfig>();
        } catch (const std::exception& e) {
            throw DataError(path, line_no, std::string("bad config: ") + e.what());
        }
    }
    const std::size_t count = parse_number<std::size_t>(expect_word(next_line(), "tensors"), path, line_no, "count");
    struct Shape {
        bool bias;
        std::size_t rows, cols;
    };
    std::vector<Shape> shapes;
    std::size_t expected_bytes = 0;
    for (std::size_t t = 0; t < count; ++t) {
        const auto tok = tokens(expect_word(next_line(), "tensor"));
        if (tok.size() != 4 || (tok[0] != "weight" && tok[0] != "bias")) {
            throw DataError(path, line_no, "expected 'tensor weight|bias index rows cols'");
        }
        const bool bias = tok[0] == "bias";
        const auto idx = parse_number<std::size_t>(tok[1], path, line_no, "tensor index");
        const std::size_t layer_count =
            static_cast<std::size_t>(std::count_if(shapes.begin(), shapes.end(), [&](const Shape& s) { return s.bias == bias; }));
        if (idx != layer_count) throw DataError(path, line_no, "tensor index out of order");
        Shape s{bias, parse_number<std::size_t>(tok[2], path, line_no, "rows"),
                parse_number<std::size_t>(tok[3], path, line_no, "cols")};
        expected_bytes += s.rows * s.cols * 8;
        shapes.push_back(s);
    }
    const std::size_t payload = parse_number<std::size_t>(expect_word(next_line(), "payload"), path, line_no, "payload");
    if (payload != expected_bytes) {
        throw DataError(path, line_no, "payload size " + std::to_string(payload) + " does not match tensor shapes (" +
                                           std::to_string(expected_bytes) + ")");
    }
    if (blob.size() - pos != payload) {
        throw DataError(path, 0,
                        "payload has " + std::to_string(blob.size() - pos) + " bytes, header declares " +
                            std::to_string(payload) + " (truncated or trailing data)");
    }

    const auto* bytes = reinterpret_cast<const unsigned char*>(blob.data() + pos);
    for (const Shape& s : shapes) {
        DenseMatrix m(s.rows, s.cols);
        for (double& v : m.data()) {
            v = get_le(bytes);
            bytes += 8;
        }
        (s.bias ? ck.params.biases : ck.params.weights).push_back(std::move(m));
    }
    try {
        ck.params.validate();
    } catch (const DimensionError& e) {
        throw DataError(path, 0, e.what());
    }
    const auto dims = ck.params.layer_dims();
    const std::vector<std::size_t> hidden(dims.begin() + 1, dims.end() - 1);
    if (hidden != ck.config.hidden_dims || ck.params.has_bias() != ck.config.bias) {
        throw DataError(path, 0, "tensor shapes disagree with the embedded config");
    }
    return ck;
}

void check_checkpoint_shapes(const ModelParams& params, const TrainConfig& config, std::size_t input_dim,
                             std::size_t num_classes, const fs::path& path) {
    std::vector<std::size_t> expected{input_dim};
    expected.insert(expected.end(), config.hidden_dims.begin(), config.hidden_dims.end());
    expected.push_back(num_classes);
    const auto actual = params.layer_dims();
    auto join = [](const std::vector<std::size_t>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "-" : "") + std::to_string(v[i]);
        return s;
    };
    if (actual != expected) {
        throw DataError(path, 0, "shape mismatch: checkpoint layers " + join(actual) + ", expected " + join(expected));
    }
    if (params.has_bias() != config.bias) {
        throw DataError(path, 0, "shape mismatch: checkpoint bias setting differs from config");
    }
}

}  // namespace glgcn
