// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "glgcn/data_io.hpp"
#include "glgcn/graph.hpp"
#include "glgcn/loss_grad.hpp"
#include "glgcn/optim_train.hpp"
#include "glgcn/serialize.hpp"

namespace glgcn::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// String-valued flags that map onto TrainConfig enums; resolved after parsing.
struct ConfigFlags {
    TrainConfig config;
    std::string variant;
    std::string feature_graph;
    std::string similarity;
    std::string label_target;
    double lambda_label = 0.0;
    double lambda_feature = 0.0;
    CLI::Option* variant_opt = nullptr;
    CLI::Option* lambda_label_opt = nullptr;
    CLI::Option* lambda_feature_opt = nullptr;

    bool lambda_pinned() const { return lambda_label_opt->count() > 0 || lambda_feature_opt->count() > 0; }

    TrainConfig resolve() {
        TrainConfig c = config;
        auto pick = [](const std::string& s, auto parse, const char* flag) {
            const auto v = parse(s);
            if (!v) throw UsageError(fmt::format("invalid value '{}' for {}", s, flag));
            return *v;
        };
        c.variant = pick(variant, parse_variant, "--variant");
        c.feature_graph = pick(feature_graph, parse_feature_graph, "--feature-graph");
        c.similarity = pick(similarity, parse_similarity, "--similarity");
        c.label_target = pick(label_target, parse_label_target, "--label-reg-target");
        c.lambda_label = lambda_label;
        // lambda_feature follows lambda_label unless given explicitly.
        c.lambda_feature = lambda_feature_opt->count() > 0 ? lambda_feature : lambda_label;
        try {
            c.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return c;
    }
};

void add_config_flags(CLI::App* app, ConfigFlags& f) {
    TrainConfig& c = f.config;
    f.variant = std::string(to_string(c.variant));
    f.feature_graph = std::string(to_string(c.feature_graph));
    f.similarity = std::string(to_string(c.similarity));
    f.label_target = std::string(to_string(c.label_target));
    f.lambda_label = c.lambda_label;
    f.lambda_feature = c.lambda_feature;

    f.variant_opt = app->add_option("--variant", f.variant, "gcn | glgcn-f | glgcn-l | glgcn-fl")
        ->check(CLI::IsMember({"gcn", "glgcn-f", "glgcn-l", "glgcn-fl"}))
        ->capture_default_str();
    f.lambda_label_opt = app->add_option("--lambda-label", f.lambda_label, "weight of the label-side penalty")
                             ->check(CLI::NonNegativeNumber)
                             ->capture_default_str();
    f.lambda_feature_opt =
        app->add_option("--lambda-feature", f.lambda_feature, "weight of the feature-side penalty (default: --lambda-label)")
            ->check(CLI::NonNegativeNumber);
    app->add_option("--alpha", c.alpha, "cross-class weight in the label-correlation graph")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app->add_option("--feature-graph", f.feature_graph, "graph for the feature penalty: S (similarity) | C (label correlation)")
        ->check(CLI::IsMember({"S", "C"}))
        ->capture_default_str();
    app->add_option("--similarity", f.similarity, "similarity graph S: adjacency | knn")
        ->check(CLI::IsMember({"adjacency", "knn"}))
        ->capture_default_str();
    app->add_flag("--normalize-similarity", c.normalize_similarity, "symmetrically normalise S built from the adjacency");
    app->add_option("--knn-k", c.knn_k, "neighbours per node for --similarity knn")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--knn-sigma", c.knn_sigma, "Gaussian kernel width for --similarity knn")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--feature-layer", c.feature_layer, "1-based hidden layer for the feature penalty (0 = last)")
        ->capture_default_str();
    app->add_option("--label-reg-target", f.label_target, "label penalty on: probabilities | logits")
        ->check(CLI::IsMember({"probabilities", "logits"}))
        ->capture_default_str();
    app->add_option("--hidden", c.hidden_dims, "hidden layer widths, comma separated")
        ->delimiter(',')
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_flag("--bias", c.bias, "add per-layer bias terms");
    app->add_option("--dropout", c.dropout, "dropout rate on every layer input")
        ->check(CLI::Range(0.0, 0.999999))
        ->capture_default_str();
    app->add_option("--lr", c.learning_rate, "Adam learning rate")->check(CLI::NonNegativeNumber)->capture_default_str();
    app->add_option("--weight-decay", c.weight_decay, "L2 coefficient on the first weight matrix")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app->add_option("--epochs", c.max_epochs, "maximum epochs")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--patience", c.patience, "epochs without validation-loss improvement before stopping")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--seed", c.seed, "seed for init and dropout (base seed for --seeds counts)")->capture_default_str();
}

enum class Format { kText, kJson, kMarkdown };

Format parse_format(const std::string& s) {
    if (s == "json") return Format::kJson;
    if (s == "markdown") return Format::kMarkdown;
    return Format::kText;
}

/// "--seeds 10" means ten consecutive seeds starting at --seed; "--seeds 3,7"
/// is an explicit list.
std::vector<std::uint64_t> parse_seeds(const std::string& spec, std::uint64_t base) {
    if (spec.empty()) return {base};
    std::vector<std::uint64_t> seeds;
    auto parse_one = [&](const std::string& tok) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || tok.empty() || tok[0] == '-') throw UsageError("invalid --seeds entry '" + tok + "'");
        return static_cast<std::uint64_t>(v);
    };
    if (spec.find(',') != std::string::npos) {
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) seeds.push_back(parse_one(tok));
    } else {
        const std::uint64_t count = parse_one(spec);
        if (count == 0) throw UsageError("--seeds count must be >= 1");
        for (std::uint64_t i = 0; i < count; ++i) seeds.push_back(base + i);
    }
    return seeds;
}

struct Summary {
    double mean = 0.0;
    double std = 0.0;
};

Summary summarize(const std::vector<double>& xs) {
    Summary s;
    if (xs.empty()) return s;
    s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(xs.size()));
    return s;
}

json summary_json(const Summary& s) { return json{{"mean", s.mean}, {"std", s.std}}; }

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw DataError(out_path, 0, "cannot open for writing");
    f << text;
}

json envelope(const char* command) { return json{{"schema_version", kReportSchemaVersion}, {"command", command}}; }

Dataset load_with_warnings(const std::string& dir, std::ostream& err) {
    Dataset ds = load_dataset(dir);
    for (const auto& w : ds.warnings) err << "warning: " << w << '\n';
    return ds;
}

// --- train -------------------------------------------------------------------

struct TrainArgs {
    ConfigFlags flags;
    std::string dataset;
    std::string seeds;
    std::string out;
    std::string format = "json";
    std::string checkpoint;
};

int cmd_train(TrainArgs& a, std::ostream& out, std::ostream& err) {
    const TrainConfig base = a.flags.resolve();
    const auto seeds = parse_seeds(a.seeds, base.seed);
    const Dataset ds = load_with_warnings(a.dataset, err);

    json runs = json::array();
    std::vector<double> test, train_acc, val;
    std::string text;
    for (std::size_t r = 0; r < seeds.size(); ++r) {
        TrainConfig cfg = base;
        cfg.seed = seeds[r];
        err << fmt::format("[train] {} variant={} seed={}\n", ds.name, to_string(cfg.variant), cfg.seed);
        const TrainResult res = train(ds, cfg);
        if (r == 0 && !a.checkpoint.empty()) save_checkpoint(res.params, cfg, a.checkpoint);
        runs.push_back(res.report);
        test.push_back(res.report.test_accuracy);
        train_acc.push_back(res.report.train_accuracy);
        val.push_back(res.report.val_accuracy);
        text += fmt::format("seed {:>4}  best_epoch {:>4}  train {:.4f}  val {:.4f}  test {:.4f}  ({:.2f}s)\n", cfg.seed,
                            res.report.best_epoch, res.report.train_accuracy, res.report.val_accuracy,
                            res.report.test_accuracy, res.report.wall_seconds);
    }
    const Summary ts = summarize(test);
    json report = envelope("train");
    report["dataset"] = ds.name;
    report["dataset_path"] = a.dataset;
    report["config"] = base;
    report["seeds"] = seeds;
    report["runs"] = runs;
    report["summary"] = json{{"train_accuracy", summary_json(summarize(train_acc))},
                             {"val_accuracy", summary_json(summarize(val))},
                             {"test_accuracy", summary_json(ts)}};

    if (parse_format(a.format) == Format::kJson) {
        emit(report.dump(2) + "\n", a.out, out);
    } else {
        text += fmt::format("mean test accuracy {:.4f} +- {:.4f} over {} seed(s)\n", ts.mean, ts.std, seeds.size());
        emit(text, a.out, out);
    }
    return kExitOk;
}

// --- eval --------------------------------------------------------------------

struct EvalArgs {
    std::string dataset;
    std::string checkpoint;
    std::string split = "test";
    std::string out;
    std::string format = "json";
};

int cmd_eval(EvalArgs& a, std::ostream& out, std::ostream& err) {
    const Dataset ds = load_with_warnings(a.dataset, err);
    const Checkpoint ck = load_checkpoint(a.checkpoint);
    check_checkpoint_shapes(ck.params, ck.config, ds.graph.features.cols(),
                            static_cast<std::size_t>(ds.graph.num_classes), a.checkpoint);
    const SparseMatrix a_hat = normalize_adjacency(ds.graph.adjacency);
    json acc = json::object();
    auto run_split = [&](const std::string& name, const std::vector<std::size_t>& split) {
        acc[name] = evaluate(ck.params, ds, a_hat, split);
    };
    if (a.split == "train" || a.split == "all") run_split("train", ds.train);
    if (a.split == "val" || a.split == "all") run_split("val", ds.val);
    if (a.split == "test" || a.split == "all") run_split("test", ds.test);

    if (parse_format(a.format) == Format::kJson) {
        json report = envelope("eval");
        report["dataset"] = ds.name;
        report["checkpoint"] = a.checkpoint;
        report["config"] = ck.config;
        report["accuracy"] = acc;
        emit(report.dump(2) + "\n", a.out, out);
    } else {
        std::string text;
        for (const auto& [k, v] : acc.items()) text += fmt::format("{} accuracy {:.4f}\n", k, v.get<double>());
        emit(text, a.out, out);
    }
    return kExitOk;
}

// --- gradcheck ---------------------------------------------------------------

struct GradcheckArgs {
    ConfigFlags flags;
    std::string dataset;
    double epsilon = 1e-5;
    double threshold = 1e-5;
    std::string out;
    std::string format = "text";
};

int cmd_gradcheck(GradcheckArgs& a, std::ostream& out, std::ostream& err) {
    const TrainConfig base = a.flags.resolve();
    const Dataset ds = a.dataset.empty() ? gradcheck_fixture() : load_with_warnings(a.dataset, err);
    std::vector<Variant> variants;
    if (a.flags.variant_opt->count() > 0) {
        variants = {base.variant};
    } else {
        variants = {Variant::kGcn, Variant::kFeature, Variant::kLabel, Variant::kFeatureLabel};
    }

    std::mt19937_64 rng(base.seed);
    const ModelParams params = ModelParams::init(ds.graph.features.cols(), base.hidden_dims,
                                                 static_cast<std::size_t>(ds.graph.num_classes), base.bias, rng);
    bool all_ok = true;
    json rows = json::array();
    std::string text;
    for (Variant v : variants) {
        TrainConfig cfg = base;
        cfg.variant = v;
        cfg.validate();
        const Operators ops = build_operators(ds, cfg);
        const FiniteDiffReport r = finite_diff_check(cfg.objective(), ds, params, ops, a.epsilon);
        const bool ok = r.max_rel_error < a.threshold;
        all_ok = all_ok && ok;
        rows.push_back(json{{"variant", std::string(to_string(v))},
                            {"max_rel_error", r.max_rel_error},
                            {"entries", r.entries_checked},
                            {"pass", ok}});
        text += fmt::format("{:<9} max_rel_error {:.3e}  entries {:>4}  {}\n", to_string(v), r.max_rel_error,
                            r.entries_checked, ok ? "PASS" : "FAIL");
    }
    if (parse_format(a.format) == Format::kJson) {
        json report = envelope("gradcheck");
        report["dataset"] = ds.name;
        report["config"] = base;
        report["epsilon"] = a.epsilon;
        report["threshold"] = a.threshold;
        report["variants"] = rows;
        report["pass"] = all_ok;
        emit(report.dump(2) + "\n", a.out, out);
    } else {
        emit(text, a.out, out);
    }
    return all_ok ? kExitOk : kExitFailure;
}

// --- lambda-search -----------------------------------------------------------

struct SearchArgs {
    ConfigFlags flags;
    std::string dataset;
    std::vector<double> lambda_grid = default_lambda_grid();
    std::vector<double> alpha_grid = default_alpha_grid();
    std::string out;
    std::string format = "json";
};

json cells_json(const std::vector<GridCell>& cells) {
    json arr = json::array();
    for (const auto& c : cells) {
        arr.push_back(json{{"lambda", c.lambda},
                           {"alpha", c.alpha},
                           {"val_accuracy", c.val_accuracy},
                           {"test_accuracy", c.test_accuracy}});
    }
    return arr;
}

int cmd_lambda_search(SearchArgs& a, std::ostream& out, std::ostream& err) {
    const TrainConfig base = a.flags.resolve();
    const Dataset ds = load_with_warnings(a.dataset, err);
    err << fmt::format("[lambda-search] {} variant={} cells={}x{}\n", ds.name, to_string(base.variant),
                       a.lambda_grid.size(), a.alpha_grid.size());
    const LambdaSearchResult r = select_lambda(ds, base, a.lambda_grid, a.alpha_grid);
    if (parse_format(a.format) == Format::kJson) {
        json report = envelope("lambda-search");
        report["dataset"] = ds.name;
        report["base_config"] = base;
        report["best_config"] = r.best;
        report["cells"] = cells_json(r.cells);
        emit(report.dump(2) + "\n", a.out, out);
    } else {
        std::string text = fmt::format("{:>10} {:>8} {:>8} {:>8}\n", "lambda", "alpha", "val", "test");
        for (const auto& c : r.cells) {
            text += fmt::format("{:>10g} {:>8g} {:>8.4f} {:>8.4f}\n", c.lambda, c.alpha, c.val_accuracy, c.test_accuracy);
        }
        text += fmt::format("best lambda_label={} lambda_feature={} alpha={}\n", r.best.lambda_label,
                            r.best.lambda_feature, r.best.alpha);
        emit(text, a.out, out);
    }
    return kExitOk;
}

// --- bench -------------------------------------------------------------------

struct BenchArgs {
    ConfigFlags flags;
    std::vector<std::string> datasets;
    std::vector<std::string> variants{"gcn", "glgcn-f", "glgcn-l", "glgcn-fl"};
    bool no_lp = false;
    std::string seeds = "10";
    std::vector<double> lambda_grid = default_lambda_grid();
    std::vector<double> alpha_grid = default_alpha_grid();
    std::string out;
    std::string format = "markdown";
};

std::string method_label(const std::string& key) {
    static const std::map<std::string, std::string> names{{"lp", "LP"},
                                                          {"gcn", "GCN"},
                                                          {"glgcn-f", "gLGCN-F"},
                                                          {"glgcn-l", "gLGCN-L"},
                                                          {"glgcn-fl", "gLGCN-F-L"}};
    const auto it = names.find(key);
    return it == names.end() ? key : it->second;
}

int cmd_bench(BenchArgs& a, std::ostream& out, std::ostream& err) {
    const TrainConfig base = a.flags.resolve();
    const auto seeds = parse_seeds(a.seeds, base.seed);
    const bool pinned = a.flags.lambda_pinned();

    std::vector<std::string> rows;
    if (!a.no_lp) rows.push_back("lp");
    for (const auto& v : {"gcn", "glgcn-f", "glgcn-l", "glgcn-fl"}) {
        if (std::find(a.variants.begin(), a.variants.end(), v) != a.variants.end()) rows.emplace_back(v);
    }

    std::vector<std::string> columns;
    std::map<std::pair<std::string, std::string>, json> cells;
    for (const auto& dir : a.datasets) {
        Dataset ds;
        try {
            ds = load_with_warnings(dir, err);
        } catch (const DataError& e) {
            err << "warning: skipping dataset: " << e.what() << '\n';
            continue;
        }
        columns.push_back(ds.name);
        for (const auto& row : rows) {
            json cell{{"dataset", ds.name}, {"method", method_label(row)}};
            if (row == "lp") {
                const std::vector<int> pred =
                    label_propagation(ds.graph.adjacency, ds.graph.labels, ds.train, ds.graph.num_classes);
                std::size_t hits = 0;
                for (std::size_t i : ds.test) hits += pred[i] == ds.graph.labels[i] ? 1 : 0;
                const double acc = static_cast<double>(hits) / static_cast<double>(ds.test.size());
                cell["test_accuracy"] = json{{"mean", 100.0 * acc}, {"std", 0.0}};
                cell["runs"] = json::array({acc});
                err << fmt::format("[bench] {} LP test {:.4f}\n", ds.name, acc);
            } else {
                TrainConfig cfg = base;
                cfg.variant = *parse_variant(row);
                if (cfg.variant != Variant::kGcn && !pinned) {
                    err << fmt::format("[bench] {} {} selecting lambda on validation\n", ds.name, row);
                    TrainConfig search_base = cfg;
                    search_base.seed = seeds.front();
                    const LambdaSearchResult sr = select_lambda(ds, search_base, a.lambda_grid, a.alpha_grid);
                    cfg.lambda_label = sr.best.lambda_label;
                    cfg.lambda_feature = sr.best.lambda_feature;
                    cfg.alpha = sr.best.alpha;
                    cell["lambda_search"] = cells_json(sr.cells);
                }
                std::vector<double> accs;
                for (std::uint64_t s : seeds) {
                    cfg.seed = s;
                    const TrainResult r = train(ds, cfg);
                    accs.push_back(r.report.test_accuracy);
                    err << fmt::format("[bench] {} {} seed={} test {:.4f}\n", ds.name, row, s, r.report.test_accuracy);
                }
                cfg.seed = seeds.front();
                std::vector<double> pct(accs.size());
                std::transform(accs.begin(), accs.end(), pct.begin(), [](double x) { return 100.0 * x; });
                cell["config"] = cfg;
                cell["seeds"] = seeds;
                cell["runs"] = accs;
                cell["test_accuracy"] = summary_json(summarize(pct));
            }
            cells[{row, ds.name}] = cell;
        }
    }
    if (columns.empty()) {
        err << "error: no dataset could be loaded\n";
        return kExitFailure;
    }

    const Format fmt_kind = parse_format(a.format);
    if (fmt_kind == Format::kJson) {
        json report = envelope("bench");
        report["datasets"] = columns;
        report["base_config"] = base;
        report["seeds"] = seeds;
        json table = json::array();
        for (const auto& row : rows) {
            json r{{"method", method_label(row)}, {"cells", json::array()}};
            for (const auto& col : columns) r["cells"].push_back(cells.at({row, col}));
            table.push_back(r);
        }
        report["rows"] = table;
        emit(report.dump(2) + "\n", a.out, out);
        return kExitOk;
    }

    std::string text = "| Method |";
    for (const auto& c : columns) text += " " + c + " |";
    text += "\n|---|";
    for (std::size_t i = 0; i < columns.size(); ++i) text += "---|";
    text += "\n";
    for (const auto& row : rows) {
        text += "| " + method_label(row) + " |";
        for (const auto& col : columns) {
            const json& acc = cells.at({row, col}).at("test_accuracy");
            text += fmt::format(" {:.1f} ± {:.1f} |", acc.at("mean").get<double>(), acc.at("std").get<double>());
        }
        text += "\n";
    }
    emit(text, a.out, out);
    return kExitOk;
}

void add_output_flags(CLI::App* app, std::string& out_path, std::string& format) {
    app->add_option("--out", out_path, "write results here instead of stdout");
    app->add_option("--format", format, "text | json | markdown")
        ->check(CLI::IsMember({"text", "json", "markdown"}))
        ->capture_default_str();
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Graph-Laplacian-regularised GCN for semi-supervised node classification", "glgcn"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "show help for every subcommand");

    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train", "train on a dataset directory");
    add_config_flags(train_cmd, train_args.flags);
    train_cmd->add_option("--dataset", train_args.dataset, "dataset directory")->required();
    train_cmd->add_option("--seeds", train_args.seeds, "seed count or comma-separated list");
    train_cmd->add_option("--checkpoint", train_args.checkpoint, "save the first run's best parameters here");
    add_output_flags(train_cmd, train_args.out, train_args.format);

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a checkpoint");
    eval_cmd->add_option("--dataset", eval_args.dataset, "dataset directory")->required();
    eval_cmd->add_option("--checkpoint", eval_args.checkpoint, "checkpoint file")->required();
    eval_cmd->add_option("--split", eval_args.split, "train | val | test | all")
        ->check(CLI::IsMember({"train", "val", "test", "all"}))
        ->capture_default_str();
    add_output_flags(eval_cmd, eval_args.out, eval_args.format);

    GradcheckArgs grad_args;
    grad_args.flags.config.lambda_label = 1.0;
    grad_args.flags.config.alpha = 0.5;
    grad_args.flags.config.feature_graph = FeatureRegGraph::kCorrelation;
    grad_args.flags.config.hidden_dims = {4};
    auto* grad_cmd = app.add_subcommand("gradcheck", "compare analytic gradients with central differences");
    add_config_flags(grad_cmd, grad_args.flags);
    grad_cmd->add_option("--dataset", grad_args.dataset, "dataset directory (default: built-in 6-node fixture)");
    grad_cmd->add_option("--epsilon", grad_args.epsilon, "finite-difference step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    grad_cmd->add_option("--threshold", grad_args.threshold, "maximum accepted relative error")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(grad_cmd, grad_args.out, grad_args.format);

    SearchArgs search_args;
    auto* search_cmd = app.add_subcommand("lambda-search", "grid-search lambda (and alpha) on validation accuracy");
    add_config_flags(search_cmd, search_args.flags);
    search_cmd->add_option("--dataset", search_args.dataset, "dataset directory")->required();
    search_cmd->add_option("--lambda-grid", search_args.lambda_grid, "comma-separated lambdas")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    search_cmd->add_option("--alpha-grid", search_args.alpha_grid, "comma-separated alphas (feature graph C only)")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_output_flags(search_cmd, search_args.out, search_args.format);

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "accuracy table over datasets x methods");
    add_config_flags(bench_cmd, bench_args.flags);
    bench_cmd->add_option("--dataset", bench_args.datasets, "dataset directory (repeatable)")->required();
    bench_cmd->add_option("--variants", bench_args.variants, "methods to run, comma separated")
        ->delimiter(',')
        ->check(CLI::IsMember({"gcn", "glgcn-f", "glgcn-l", "glgcn-fl"}))
        ->capture_default_str();
    bench_cmd->add_flag("--no-lp", bench_args.no_lp, "omit the label-propagation row");
    bench_cmd->add_option("--seeds", bench_args.seeds, "seed count or comma-separated list")->capture_default_str();
    bench_cmd->add_option("--lambda-grid", bench_args.lambda_grid, "comma-separated lambdas")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    bench_cmd->add_option("--alpha-grid", bench_args.alpha_grid, "comma-separated alphas (feature graph C only)")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_output_flags(bench_cmd, bench_args.out, bench_args.format);

    std::vector<std::string> argv_storage{"glgcn"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*train_cmd) return cmd_train(train_args, out, err);
        if (*eval_cmd) return cmd_eval(eval_args, out, err);
        if (*grad_cmd) return cmd_gradcheck(grad_args, out, err);
        if (*search_cmd) return cmd_lambda_search(search_args, out, err);
        if (*bench_cmd) return cmd_bench(bench_args, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const TrainingDiverged& e) {
        err << "error: training aborted: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace glgcn::cli
