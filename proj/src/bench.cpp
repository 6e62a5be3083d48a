#include "itercur/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "itercur/baselines.hpp"
#include "itercur/testmat.hpp"

namespace itercur {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_time(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void emit(const ExperimentConfig& cfg, const std::string& csv) {
    if (cfg.out_path.empty()) return;
    std::ofstream out(cfg.out_path);
    if (!out) throw std::runtime_error("cannot open '" + cfg.out_path + "' for writing");
    out << csv;
    if (!out) throw std::runtime_error("write failed for '" + cfg.out_path + "'");
}

std::vector<Index> parse_index_args(const std::string& args, std::size_t expected_min,
                                    std::size_t expected_max, const std::string& source) {
    std::vector<Index> out;
    std::istringstream ss(args);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad generator argument '" + token + "' in '" +
                                        source + "'");
        }
    }
    if (out.size() < expected_min || out.size() > expected_max)
        throw std::invalid_argument("wrong number of generator arguments in '" + source + "'");
    return out;
}

void validate_common(const ExperimentConfig& cfg) {
    if (cfg.reps < 1) throw std::invalid_argument("repetitions must be at least 1");
}

void validate_ranks(const ExperimentConfig& cfg, const MatrixHandle& A) {
    if (cfg.ranks.empty()) throw std::invalid_argument("rank list must not be empty");
    if (!std::is_sorted(cfg.ranks.begin(), cfg.ranks.end()))
        throw std::invalid_argument("rank list must be sorted ascending");
    const Index min_dim = std::min(A.rows(), A.cols());
    for (Index r : cfg.ranks) {
        if (r < 1) throw std::invalid_argument("ranks must be positive");
        if (r > min_dim)
            throw std::invalid_argument("rank " + std::to_string(r) + " exceeds min(m, n) = " +
                                        std::to_string(min_dim));
    }
}

StoppingConfig pure_rank_config(Index b, Index rank) {
    StoppingConfig sc;
    sc.epsilon = 0.0;
    sc.b = b;
    sc.max_rank = rank;
    return sc;
}

}  // namespace

MatrixHandle load_matrix(const std::string& source, std::uint64_t seed) {
    if (source.rfind("mm:", 0) == 0) return read_matrix_market(source.substr(3));
    if (source.rfind("gen:", 0) != 0)
        throw std::invalid_argument("matrix source must start with 'gen:' or 'mm:'");

    const std::string rest = source.substr(4);
    const std::size_t colon = rest.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("generator spec '" + source + "' needs arguments");
    const std::string kind = rest.substr(0, colon);
    const std::string args = rest.substr(colon + 1);

    if (kind == "lowrank") {
        const auto v = parse_index_args(args, 3, 3, source);
        return generate(GeneratorSpec::low_rank(v[0], v[1], v[2], seed));
    }
    if (kind == "lowrankpd") {
        // Optional trailing argument: decay ratio.
        std::vector<std::string> parts;
        std::istringstream ss(args);
        std::string token;
        while (std::getline(ss, token, ',')) parts.push_back(token);
        if (parts.size() != 3 && parts.size() != 4)
            throw std::invalid_argument("wrong number of generator arguments in '" + source + "'");
        const auto dims = parse_index_args(parts[0] + "," + parts[1] + "," + parts[2], 3, 3, source);
        double decay = 0.0;
        if (parts.size() == 4) decay = std::stod(parts[3]);
        return generate(GeneratorSpec::low_rank_pd(dims[0], dims[1], dims[2], decay, seed));
    }
    if (kind == "lehmer") {
        const auto v = parse_index_args(args, 1, 1, source);
        return generate(GeneratorSpec::lehmer(v[0]));
    }
    if (kind == "expdecay") {
        std::vector<std::string> parts;
        std::istringstream ss(args);
        std::string token;
        while (std::getline(ss, token, ',')) parts.push_back(token);
        if (parts.size() != 2)
            throw std::invalid_argument("wrong number of generator arguments in '" + source + "'");
        const auto v = parse_index_args(parts[0], 1, 1, source);
        return generate(GeneratorSpec::exp_decay(v[0], std::stod(parts[1]), seed));
    }
    throw std::invalid_argument("unknown generator kind '" + kind + "'");
}

std::string run_threshold(const ExperimentConfig& cfg) {
    validate_common(cfg);
    const MatrixHandle A = load_matrix(cfg.matrix_source, cfg.seed_base);

    StoppingConfig sc;
    sc.epsilon = cfg.epsilon;
    sc.b = cfg.b;
    sc.delta = cfg.delta;
    sc.alpha = cfg.alpha;
    sc.risk_adjust = cfg.risk_adjust;
    const SelectionMethod lupp{};

    struct Row {
        std::string method;
        int rep;
        Index final_rank;
        double err_true, err_sketched, wall;
    };
    std::vector<Row> rows;

    for (int rep = 0; rep < cfg.reps; ++rep) {
        const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(rep);

        auto t0 = Clock::now();
        const CurResult result = iterative_cur(A, sc, lupp, lupp, seed);
        const double iter_wall = seconds_since(t0);
        rows.push_back({"IterativeCUR", rep, result.factors.rank(),
                        true_relative_error(A, result.factors), result.trace.final_rho,
                        iter_wall});

        const Index found_rank = result.factors.rank();
        t0 = Clock::now();
        const CurFactors baseline = slupp_cur(A, found_rank, seed);
        const double slupp_wall = seconds_since(t0);
        // The sketched column reuses the adaptive run's estimator sketch,
        // which is independent of the baseline's own selection sketch.
        SketchState estimator = make_sketch(seed, cfg.b, A);
        const double sketched = downdate_col_residual(estimator, baseline);
        rows.push_back({"s-LUPP", rep, baseline.rank(), true_relative_error(A, baseline),
                        sketched, slupp_wall});
    }

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.method, a.rep) < std::tie(b.method, b.rep);
    });

    std::ostringstream csv;
    csv << "method,rep,final_rank,rel_error_true,rel_error_sketched,wall_time_s\n";
    for (const Row& r : rows)
        csv << r.method << "," << r.rep << "," << r.final_rank << "," << fmt_value(r.err_true)
            << "," << fmt_value(r.err_sketched) << "," << fmt_time(r.wall) << "\n";
    emit(cfg, csv.str());
    return csv.str();
}

std::string run_fixed_rank(const ExperimentConfig& cfg) {
    validate_common(cfg);
    const MatrixHandle A = load_matrix(cfg.matrix_source, cfg.seed_base);
    validate_ranks(cfg, A);
    const double a_norm = fro_norm(A);
    const SelectionMethod lupp{};

    struct Row {
        std::string method;
        Index rank;
        int rep;
        double err, wall;
    };
    std::vector<Row> rows;

    auto t0 = Clock::now();
    const SpectrumSummary spectrum = compute_spectrum(A);
    const double svd_wall = seconds_since(t0);

    for (Index rank : cfg.ranks) {
        rows.push_back({"TSVD", rank, 0, spectrum.tail_energy(rank) / a_norm, svd_wall});
        for (int rep = 0; rep < cfg.reps; ++rep) {
            const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(rep);

            t0 = Clock::now();
            const CurResult result =
                iterative_cur(A, pure_rank_config(cfg.b, rank), lupp, lupp, seed);
            const double iter_wall = seconds_since(t0);
            rows.push_back({"IterativeCUR", rank, rep, true_relative_error(A, result.factors),
                            iter_wall});

            t0 = Clock::now();
            const CurFactors baseline = slupp_cur(A, rank, seed);
            const double slupp_wall = seconds_since(t0);
            rows.push_back({"s-LUPP", rank, rep, true_relative_error(A, baseline), slupp_wall});
        }
    }

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.method, a.rank, a.rep) < std::tie(b.method, b.rank, b.rep);
    });

    std::ostringstream csv;
    csv << "method,rank,rep,rel_error,wall_time_s\n";
    for (const Row& r : rows)
        csv << r.method << "," << r.rank << "," << r.rep << "," << fmt_value(r.err) << ","
            << fmt_time(r.wall) << "\n";
    emit(cfg, csv.str());
    return csv.str();
}

std::string run_selection_methods(const ExperimentConfig& cfg) {
    validate_common(cfg);
    const MatrixHandle A = load_matrix(cfg.matrix_source, cfg.seed_base);
    validate_ranks(cfg, A);
    const double a_norm = fro_norm(A);

    struct Row {
        std::string method;
        Index rank;
        int rep;
        double err;
    };
    std::vector<Row> rows;

    const SpectrumSummary spectrum = compute_spectrum(A);
    const std::pair<std::string, PivotKind> methods[] = {{"LUPP", PivotKind::Lupp},
                                                         {"QRCP", PivotKind::Qrcp}};

    for (Index rank : cfg.ranks) {
        rows.push_back({"TSVD", rank, 0, spectrum.tail_energy(rank) / a_norm});
        for (const auto& [name, kind] : methods) {
            SelectionMethod method;
            method.kind = kind;
            for (int rep = 0; rep < cfg.reps; ++rep) {
                const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(rep);
                const CurResult result =
                    iterative_cur(A, pure_rank_config(cfg.b, rank), method, method, seed);
                rows.push_back({name, rank, rep, true_relative_error(A, result.factors)});
            }
        }
    }

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.method, a.rank, a.rep) < std::tie(b.method, b.rank, b.rep);
    });

    std::ostringstream csv;
    csv << "method,rank,rep,rel_error\n";
    for (const Row& r : rows)
        csv << r.method << "," << r.rank << "," << r.rep << "," << fmt_value(r.err) << "\n";
    emit(cfg, csv.str());
    return csv.str();
}

std::string run_block_size(const ExperimentConfig& cfg) {
    validate_common(cfg);
    const MatrixHandle A = load_matrix(cfg.matrix_source, cfg.seed_base);
    validate_ranks(cfg, A);
    if (cfg.blocks.empty()) throw std::invalid_argument("block list must not be empty");
    for (Index block : cfg.blocks)
        if (block < 1) throw std::invalid_argument("block sizes must be positive");
    const SelectionMethod lupp{};

    struct Row {
        Index block;
        Index rank;
        int rep;
        double err, wall;
    };
    std::vector<Row> rows;

    for (Index block : cfg.blocks) {
        for (Index rank : cfg.ranks) {
            for (int rep = 0; rep < cfg.reps; ++rep) {
                const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(rep);
                auto t0 = Clock::now();
                const CurResult result =
                    iterative_cur(A, pure_rank_config(block, rank), lupp, lupp, seed);
                const double wall = seconds_since(t0);
                rows.push_back({block, rank, rep, true_relative_error(A, result.factors), wall});
            }
        }
    }

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.block, a.rank, a.rep) < std::tie(b.block, b.rank, b.rep);
    });

    std::ostringstream csv;
    csv << "block_size,rank,rep,rel_error,wall_time_s\n";
    for (const Row& r : rows)
        csv << r.block << "," << r.rank << "," << r.rep << "," << fmt_value(r.err) << ","
            << fmt_time(r.wall) << "\n";
    emit(cfg, csv.str());
    return csv.str();
}

std::string run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.kind) {
        case ExperimentConfig::Kind::Threshold: return run_threshold(cfg);
        case ExperimentConfig::Kind::FixedRank: return run_fixed_rank(cfg);
        case ExperimentConfig::Kind::SelectionMethods: return run_selection_methods(cfg);
        case ExperimentConfig::Kind::BlockSize: return run_block_size(cfg);
    }
    throw std::logic_error("unknown experiment kind");
}

}  // namespace itercur
