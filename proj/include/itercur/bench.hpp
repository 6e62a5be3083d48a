#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "itercur/driver.hpp"

namespace itercur {

/// One benchmark experiment. All randomness derives from seed_base plus the
/// repetition index, so reruns with identical settings reproduce every CSV
/// column except the wall-time ones.
struct ExperimentConfig {
    enum class Kind { Threshold, FixedRank, SelectionMethods, BlockSize };

    Kind kind = Kind::Threshold;
    std::string matrix_source;  // "gen:<spec>" or "mm:<path>"
    Index b = 50;
    double epsilon = 1e-6;
    double delta = 0.0;
    double alpha = 0.05;
    bool risk_adjust = false;
    std::vector<Index> ranks;
    std::vector<Index> blocks;
    int reps = 1;
    std::uint64_t seed_base = 0;
    std::string out_path;  // empty: return the CSV without writing a file
    bool deterministic = false;
};

/// Resolve a matrix source string:
///   gen:lowrank:M,N,R
///   gen:lowrankpd:M,N,R[,DECAY]
///   gen:lehmer:N
///   gen:expdecay:N,RATIO
///   mm:<path>
MatrixHandle load_matrix(const std::string& source, std::uint64_t seed);

/// Adaptive runs of the iterative method against the fixed-rank baseline at
/// the rank the adaptive run found.
/// Header: method,rep,final_rank,rel_error_true,rel_error_sketched,wall_time_s
std::string run_threshold(const ExperimentConfig& cfg);

/// Error/time sweep over a rank grid for the iterative method (pure rank
/// mode), the one-shot baseline, and the truncated-SVD reference.
/// Header: method,rank,rep,rel_error,wall_time_s
std::string run_fixed_rank(const ExperimentConfig& cfg);

/// LUPP vs QRCP index selection over a rank grid, with the SVD reference.
/// Header: method,rank,rep,rel_error
std::string run_selection_methods(const ExperimentConfig& cfg);

/// Block-size sweep of the iterative method in pure rank mode.
/// Header: block_size,rank,rep,rel_error,wall_time_s
std::string run_block_size(const ExperimentConfig& cfg);

/// Dispatch on cfg.kind.
std::string run_experiment(const ExperimentConfig& cfg);

}  // namespace itercur
