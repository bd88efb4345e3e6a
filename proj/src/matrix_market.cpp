#include "sylv/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace sylv {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool parse_double(const std::string& tok, double& out) {
    errno = 0;
    char* end = nullptr;
    out = std::strtod(tok.c_str(), &end);
    return end == tok.c_str() + tok.size() && errno == 0;
}

bool parse_index(const std::string& tok, long& out) {
    errno = 0;
    char* end = nullptr;
    out = std::strtol(tok.c_str(), &end, 10);
    return end == tok.c_str() + tok.size() && errno == 0;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream is(line);
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

// Reads the next line that is neither blank nor a % comment. Returns false at EOF.
bool next_data_line(std::istream& in, std::string& line, long& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        const auto pos = line.find_first_not_of(" \t\r\n");
        if (pos == std::string::npos) continue;
        if (line[pos] == '%') continue;
        return true;
    }
    return false;
}

}  // namespace

MatrixMarketFile load_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError(path, 0, "cannot open file");

    long lineno = 0;
    std::string line;
    if (!std::getline(in, line)) throw IngestionError(path, 1, "empty file");
    ++lineno;

    auto toks = split_ws(lower(line));
    if (toks.size() != 5 || toks[0] != "%%matrixmarket" || toks[1] != "matrix") {
        throw IngestionError(path, lineno,
                             "malformed header, expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
    }
    const std::string& format = toks[2];
    const std::string& field = toks[3];
    const std::string& symmetry = toks[4];

    if (format != "coordinate" && format != "array")
        throw IngestionError(path, lineno, "unsupported format '" + format + "'");
    if (field != "real" && field != "integer")
        throw IngestionError(path, lineno, "non-real field '" + field + "'");
    if (symmetry != "general" && symmetry != "symmetric")
        throw IngestionError(path, lineno, "unsupported symmetry '" + symmetry + "'");

    MatrixMarketFile out;
    out.coordinate = format == "coordinate";
    out.symmetric = symmetry == "symmetric";

    if (!next_data_line(in, line, lineno)) throw IngestionError(path, lineno, "missing size line");
    auto size_toks = split_ws(line);

    long rows = 0, cols = 0, nnz = 0;
    if (out.coordinate) {
        if (size_toks.size() != 3 || !parse_index(size_toks[0], rows) ||
            !parse_index(size_toks[1], cols) || !parse_index(size_toks[2], nnz))
            throw IngestionError(path, lineno, "malformed coordinate size line");
    } else {
        if (size_toks.size() != 2 || !parse_index(size_toks[0], rows) ||
            !parse_index(size_toks[1], cols))
            throw IngestionError(path, lineno, "malformed array size line");
    }
    if (rows < 1 || cols < 1) throw IngestionError(path, lineno, "dimensions must be positive");
    if (out.symmetric && rows != cols)
        throw IngestionError(path, lineno, "symmetric header on a non-square matrix");

    out.matrix = Eigen::MatrixXd::Zero(rows, cols);

    if (out.coordinate) {
        for (long k = 0; k < nnz; ++k) {
            if (!next_data_line(in, line, lineno))
                throw IngestionError(path, lineno, "expected " + std::to_string(nnz) +
                                                       " entries, file ended after " + std::to_string(k));
            auto t = split_ws(line);
            long i = 0, j = 0;
            double v = 0.0;
            if (t.size() != 3 || !parse_index(t[0], i) || !parse_index(t[1], j) ||
                !parse_double(t[2], v))
                throw IngestionError(path, lineno, "malformed coordinate entry");
            if (i < 1 || i > rows || j < 1 || j > cols)
                throw IngestionError(path, lineno, "entry index (" + std::to_string(i) + "," +
                                                       std::to_string(j) + ") outside declared " +
                                                       std::to_string(rows) + "x" + std::to_string(cols));
            out.matrix(i - 1, j - 1) += v;
            if (out.symmetric && i != j) out.matrix(j - 1, i - 1) += v;
        }
    } else {
        // Array format is column-major; symmetric arrays store the lower triangle.
        for (long j = 0; j < cols; ++j) {
            for (long i = out.symmetric ? j : 0; i < rows; ++i) {
                if (!next_data_line(in, line, lineno))
                    throw IngestionError(path, lineno, "array data ended early");
                auto t = split_ws(line);
                double v = 0.0;
                if (t.size() != 1 || !parse_double(t[0], v))
                    throw IngestionError(path, lineno, "malformed array value");
                out.matrix(i, j) = v;
                if (out.symmetric && i != j) out.matrix(j, i) = v;
            }
        }
    }
    return out;
}

Eigen::VectorXd load_matrix_market_vector(const std::string& path) {
    MatrixMarketFile f = load_matrix_market(path);
    if (f.matrix.cols() != 1)
        throw IngestionError(path, 0, "expected a single-column vector, got " +
                                          std::to_string(f.matrix.cols()) + " columns");
    return f.matrix.col(0);
}

void write_matrix_market(const std::string& path, const Eigen::MatrixXd& m, MmFormat format) {
    std::ofstream out(path);
    if (!out) throw IngestionError(path, 0, "cannot open file for writing");
    out.precision(17);

    if (format == MmFormat::coordinate) {
        long nnz = 0;
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                if (m(i, j) != 0.0) ++nnz;
        out << "%%MatrixMarket matrix coordinate real general\n";
        out << m.rows() << " " << m.cols() << " " << nnz << "\n";
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                if (m(i, j) != 0.0) out << (i + 1) << " " << (j + 1) << " " << m(i, j) << "\n";
    } else {
        out << "%%MatrixMarket matrix array real general\n";
        out << m.rows() << " " << m.cols() << "\n";
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i) out << m(i, j) << "\n";
    }
    if (!out) throw IngestionError(path, 0, "write failed");
}

}  // namespace sylv
