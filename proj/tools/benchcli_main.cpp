#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "itercur/bench.hpp"

namespace {

void add_common_options(CLI::App* sub, itercur::ExperimentConfig& cfg) {
    sub->add_option("--matrix", cfg.matrix_source,
                    "Matrix source: gen:<kind>:<args> or mm:<path>")
        ->required();
    sub->add_option("--b", cfg.b, "Block size");
    sub->add_option("--eps", cfg.epsilon, "Relative-error target");
    sub->add_option("--delta", cfg.delta, "Allowed overshoot factor (1 + delta)");
    sub->add_option("--alpha", cfg.alpha, "Failure probability for risk-adjusted stopping");
    sub->add_flag("--risk-adjust", cfg.risk_adjust, "Compare against xi * eps instead of eps");
    sub->add_option("--ranks", cfg.ranks, "Rank grid (ascending)")->delimiter(',');
    sub->add_option("--blocks", cfg.blocks, "Block-size grid")->delimiter(',');
    sub->add_option("--reps", cfg.reps, "Repetitions per configuration");
    sub->add_option("--seed", cfg.seed_base, "Base seed; run r uses seed + r");
    sub->add_option("--out", cfg.out_path, "Output CSV path")->required();
    sub->add_flag("--deterministic", cfg.deterministic,
                  "Force sequential execution (currently the only mode)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank-adaptive CUR benchmark harness"};
    app.require_subcommand(1);

    itercur::ExperimentConfig cfg;

    CLI::App* threshold = app.add_subcommand(
        "threshold", "Adaptive runs to a tolerance vs the fixed-rank baseline");
    add_common_options(threshold, cfg);

    CLI::App* fixed_rank =
        app.add_subcommand("fixed-rank", "Error/time sweep over a rank grid");
    add_common_options(fixed_rank, cfg);

    CLI::App* selection =
        app.add_subcommand("selection", "LUPP vs QRCP index selection over a rank grid");
    add_common_options(selection, cfg);

    CLI::App* block_size =
        app.add_subcommand("block-size", "Block-size sweep in pure rank mode");
    add_common_options(block_size, cfg);

    CLI11_PARSE(app, argc, argv);

    if (threshold->parsed())
        cfg.kind = itercur::ExperimentConfig::Kind::Threshold;
    else if (fixed_rank->parsed())
        cfg.kind = itercur::ExperimentConfig::Kind::FixedRank;
    else if (selection->parsed())
        cfg.kind = itercur::ExperimentConfig::Kind::SelectionMethods;
    else
        cfg.kind = itercur::ExperimentConfig::Kind::BlockSize;

    try {
        itercur::run_experiment(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
