// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

// Writes a planted-partition fixture in the dataset directory format.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "glgcn/data_io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generate a planted-partition dataset directory", "glgcn-synth"};
    glgcn::SynthOptions o;
    std::string out_dir;
    std::string name = "synth";
    app.add_option("out_dir", out_dir, "output directory")->required();
    app.add_option("--name", name, "dataset name in the manifest")->capture_default_str();
    app.add_option("--per-class", o.n_per_class, "nodes per class")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--classes", o.classes, "number of classes")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--features", o.features, "feature dimension")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--intra", o.intra_edge_prob, "within-class edge probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app.add_option("--inter", o.inter_edge_prob, "between-class edge probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app.add_option("--signal", o.feature_signal, "feature mean offset for a node's own class")->capture_default_str();
    app.add_option("--noise", o.feature_noise, "feature noise standard deviation")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_option("--seed", o.seed, "generator seed")->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    try {
        glgcn::Dataset ds = glgcn::synth_fixture(o);
        ds.name = name;
        glgcn::save_dataset(ds, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
