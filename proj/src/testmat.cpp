#include "itercur/testmat.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <Eigen/QR>

#include "itercur/rng.hpp"

namespace itercur {

GeneratorSpec GeneratorSpec::low_rank(Index m, Index n, Index r, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.kind = Kind::LowRank;
    spec.rows = m;
    spec.cols = n;
    spec.rank = r;
    spec.seed = seed;
    return spec;
}

GeneratorSpec GeneratorSpec::low_rank_pd(Index m, Index n, Index r, double decay,
                                         std::uint64_t seed) {
    GeneratorSpec spec;
    spec.kind = Kind::LowRankPd;
    spec.rows = m;
    spec.cols = n;
    spec.rank = r;
    spec.decay = decay;
    spec.seed = seed;
    return spec;
}

GeneratorSpec GeneratorSpec::lehmer(Index n) {
    GeneratorSpec spec;
    spec.kind = Kind::Lehmer;
    spec.rows = n;
    spec.cols = n;
    return spec;
}

GeneratorSpec GeneratorSpec::exp_decay(Index n, double ratio, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.kind = Kind::ExpDecay;
    spec.rows = n;
    spec.cols = n;
    spec.ratio = ratio;
    spec.seed = seed;
    return spec;
}

namespace {

void check_dims(const GeneratorSpec& spec, bool needs_rank) {
    if (spec.rows < 1 || spec.cols < 1)
        throw std::invalid_argument("generator dimensions must be positive");
    if (needs_rank && (spec.rank < 1 || spec.rank > std::min(spec.rows, spec.cols)))
        throw std::invalid_argument("generator rank must lie in [1, min(m, n)]");
}

Eigen::MatrixXd low_rank_product(const GeneratorSpec& spec) {
    const Eigen::MatrixXd left =
        gaussian_matrix(spec.rows, spec.rank, spec.seed, RngStream::GenLeft);
    const Eigen::MatrixXd right =
        gaussian_matrix(spec.cols, spec.rank, spec.seed, RngStream::GenRight);
    return left * right.transpose();
}

Eigen::MatrixXd random_orthogonal(Index n, std::uint64_t seed, RngStream stream) {
    const Eigen::MatrixXd g = gaussian_matrix(n, n, seed, stream);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

MatrixHandle generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorSpec::Kind::LowRank: {
            check_dims(spec, true);
            return MatrixHandle(low_rank_product(spec));
        }
        case GeneratorSpec::Kind::LowRankPd: {
            check_dims(spec, true);
            Eigen::MatrixXd out = low_rank_product(spec);
            const Index d = std::min(spec.rows, spec.cols);
            double ratio = spec.decay;
            if (ratio <= 0.0)
                ratio = d > 1 ? std::pow(1e-12, 1.0 / static_cast<double>(d - 1)) : 1.0;
            if (ratio >= 1.0)
                throw std::invalid_argument("diagonal decay must lie in (0, 1)");
            double entry = 1.0;
            for (Index i = 0; i < d; ++i) {
                out(i, i) += entry;
                entry *= ratio;
            }
            return MatrixHandle(std::move(out));
        }
        case GeneratorSpec::Kind::Lehmer: {
            check_dims(spec, false);
            Eigen::MatrixXd out(spec.rows, spec.cols);
            for (Index j = 0; j < spec.cols; ++j)
                for (Index i = 0; i < spec.rows; ++i)
                    out(i, j) = static_cast<double>(std::min(i, j) + 1) /
                                static_cast<double>(std::max(i, j) + 1);
            return MatrixHandle(std::move(out));
        }
        case GeneratorSpec::Kind::ExpDecay: {
            check_dims(spec, false);
            if (!(spec.ratio > 0.0 && spec.ratio < 1.0))
                throw std::invalid_argument("singular-value ratio must lie in (0, 1)");
            const Index n = spec.rows;
            const Eigen::MatrixXd q1 = random_orthogonal(n, spec.seed, RngStream::GenLeft);
            const Eigen::MatrixXd q2 = random_orthogonal(n, spec.seed, RngStream::GenRight);
            Eigen::VectorXd sigma(n);
            double value = 1.0;
            for (Index i = 0; i < n; ++i) {
                sigma(i) = value;
                value *= spec.ratio;
            }
            return MatrixHandle(Eigen::MatrixXd(q1 * sigma.asDiagonal() * q2.transpose()));
        }
    }
    throw std::logic_error("unknown generator kind");
}

namespace {

[[noreturn]] void parse_error(const std::string& path, long line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

struct MmHeader {
    bool coordinate = false;
    bool symmetric = false;
};

MmHeader parse_banner(const std::string& path, const std::string& line) {
    std::istringstream ss(line);
    std::string tag, object, format, field, symmetry;
    ss >> tag >> object >> format >> field >> symmetry;
    if (tag != "%%MatrixMarket") parse_error(path, 1, "missing %%MatrixMarket banner");
    if (lowercase(object) != "matrix") parse_error(path, 1, "unsupported object '" + object + "'");

    MmHeader header;
    const std::string fmt = lowercase(format);
    if (fmt == "coordinate")
        header.coordinate = true;
    else if (fmt != "array")
        parse_error(path, 1, "unsupported format '" + format + "'");

    const std::string fld = lowercase(field);
    if (fld != "real" && fld != "integer")
        parse_error(path, 1, "unsupported field '" + field + "'");

    const std::string sym = lowercase(symmetry);
    if (sym == "symmetric")
        header.symmetric = true;
    else if (sym != "general")
        parse_error(path, 1, "unsupported symmetry '" + symmetry + "'");
    return header;
}

bool next_content_line(std::istream& in, std::string& line, long& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '%') continue;
        return true;
    }
    return false;
}

double parse_value(const std::string& path, long lineno, const std::string& token) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        parse_error(path, lineno, "malformed numeric value '" + token + "'");
    }
    if (used != token.size())
        parse_error(path, lineno, "malformed numeric value '" + token + "'");
    if (!std::isfinite(value)) parse_error(path, lineno, "non-finite value");
    return value;
}

MatrixHandle read_coordinate(const std::string& path, std::istream& in, bool symmetric,
                             long& lineno) {
    std::string line;
    if (!next_content_line(in, line, lineno)) parse_error(path, lineno, "missing size line");
    Index rows = 0, cols = 0, declared = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> rows >> cols >> declared) || rows < 0 || cols < 0 || declared < 0)
            parse_error(path, lineno, "malformed coordinate size line");
        std::string extra;
        if (ss >> extra) parse_error(path, lineno, "trailing tokens on size line");
    }
    if (symmetric && rows != cols)
        parse_error(path, lineno, "symmetric matrix must be square");

    std::vector<std::tuple<Index, Index, double>> entries;
    entries.reserve(static_cast<std::size_t>(declared) * (symmetric ? 2 : 1));
    for (Index k = 0; k < declared; ++k) {
        if (!next_content_line(in, line, lineno))
            parse_error(path, lineno, "expected " + std::to_string(declared) +
                                          " entries, file ended after " + std::to_string(k));
        std::istringstream ss(line);
        Index i = 0, j = 0;
        std::string value_token;
        if (!(ss >> i >> j >> value_token))
            parse_error(path, lineno, "malformed coordinate entry");
        std::string extra;
        if (ss >> extra) parse_error(path, lineno, "trailing tokens on entry");
        if (i < 1 || i > rows || j < 1 || j > cols)
            parse_error(path, lineno, "entry index (" + std::to_string(i) + ", " +
                                          std::to_string(j) + ") out of range");
        const double value = parse_value(path, lineno, value_token);
        entries.emplace_back(i - 1, j - 1, value);
        if (symmetric && i != j) entries.emplace_back(j - 1, i - 1, value);
    }
    if (next_content_line(in, line, lineno))
        parse_error(path, lineno, "unexpected data after the declared entries");

    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) {
                  return std::tie(std::get<0>(a), std::get<1>(a)) <
                         std::tie(std::get<0>(b), std::get<1>(b));
              });
    for (std::size_t k = 1; k < entries.size(); ++k)
        if (std::get<0>(entries[k]) == std::get<0>(entries[k - 1]) &&
            std::get<1>(entries[k]) == std::get<1>(entries[k - 1]))
            parse_error(path, lineno,
                        "duplicate entry at (" + std::to_string(std::get<0>(entries[k]) + 1) +
                            ", " + std::to_string(std::get<1>(entries[k]) + 1) + ")");

    std::vector<Index> row_ptr(static_cast<std::size_t>(rows) + 1, 0);
    std::vector<Index> col_idx(entries.size());
    std::vector<double> values(entries.size());
    for (const auto& [i, j, v] : entries) ++row_ptr[static_cast<std::size_t>(i) + 1];
    for (Index i = 0; i < rows; ++i)
        row_ptr[static_cast<std::size_t>(i) + 1] += row_ptr[static_cast<std::size_t>(i)];
    std::vector<Index> next(row_ptr.begin(), row_ptr.end() - 1);
    for (const auto& [i, j, v] : entries) {
        const Index slot = next[static_cast<std::size_t>(i)]++;
        col_idx[static_cast<std::size_t>(slot)] = j;
        values[static_cast<std::size_t>(slot)] = v;
    }
    return MatrixHandle(rows, cols, std::move(row_ptr), std::move(col_idx), std::move(values));
}

MatrixHandle read_array(const std::string& path, std::istream& in, bool symmetric,
                        long& lineno) {
    std::string line;
    if (!next_content_line(in, line, lineno)) parse_error(path, lineno, "missing size line");
    Index rows = 0, cols = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> rows >> cols) || rows < 0 || cols < 0)
            parse_error(path, lineno, "malformed array size line");
        std::string extra;
        if (ss >> extra) parse_error(path, lineno, "trailing tokens on size line");
    }
    if (symmetric && rows != cols)
        parse_error(path, lineno, "symmetric matrix must be square");

    // Array data is stored column by column; symmetric files hold only the
    // lower triangle.
    const Index expected = symmetric ? rows * (rows + 1) / 2 : rows * cols;
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(expected));
    while (next_content_line(in, line, lineno)) {
        std::istringstream ss(line);
        std::string token;
        while (ss >> token) {
            if (static_cast<Index>(data.size()) >= expected)
                parse_error(path, lineno, "unexpected data after the declared values");
            data.push_back(parse_value(path, lineno, token));
        }
    }
    if (static_cast<Index>(data.size()) < expected)
        parse_error(path, lineno,
                    "expected " + std::to_string(expected) + " values, found " +
                        std::to_string(data.size()));

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);
    std::size_t k = 0;
    for (Index j = 0; j < cols; ++j)
        for (Index i = symmetric ? j : Index{0}; i < rows; ++i) {
            out(i, j) = data[k];
            if (symmetric) out(j, i) = data[k];
            ++k;
        }
    return MatrixHandle(std::move(out));
}

}  // namespace

MatrixHandle read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");

    long lineno = 1;
    std::string banner;
    if (!std::getline(in, banner)) parse_error(path, 1, "empty file");
    const MmHeader header = parse_banner(path, banner);

    return header.coordinate ? read_coordinate(path, in, header.symmetric, lineno)
                             : read_array(path, in, header.symmetric, lineno);
}

void write_matrix_market(const std::string& path, const MatrixHandle& A) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    char buf[64];

    if (A.is_sparse()) {
        const CsrData& a = A.csr_data();
        out << "%%MatrixMarket matrix coordinate real general\n";
        out << a.rows << " " << a.cols << " " << a.values.size() << "\n";
        for (Index i = 0; i < a.rows; ++i)
            for (Index p = a.row_ptr[static_cast<std::size_t>(i)];
                 p < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++p) {
                std::snprintf(buf, sizeof(buf), "%.17g",
                              a.values[static_cast<std::size_t>(p)]);
                out << (i + 1) << " " << (a.col_idx[static_cast<std::size_t>(p)] + 1) << " "
                    << buf << "\n";
            }
    } else {
        const Eigen::MatrixXd& m = A.dense_data();
        out << "%%MatrixMarket matrix array real general\n";
        out << m.rows() << " " << m.cols() << "\n";
        for (Index j = 0; j < m.cols(); ++j)
            for (Index i = 0; i < m.rows(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
                out << buf << "\n";
            }
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace itercur
