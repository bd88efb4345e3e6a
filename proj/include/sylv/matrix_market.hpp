#pragma once

#include <string>

#include <Eigen/Dense>

#include "sylv/errors.hpp"

namespace sylv {

/// Parsed Matrix Market file, expanded to full dense storage. Symmetric
/// headers are mirrored; coordinate duplicates are summed.
struct MatrixMarketFile {
    Eigen::MatrixXd matrix;
    bool coordinate = false;  // source used the coordinate (sparse) format
    bool symmetric = false;   // header carried the symmetric qualifier
};

MatrixMarketFile load_matrix_market(const std::string& path);

/// Convenience for n-by-1 files; rejects anything wider.
Eigen::VectorXd load_matrix_market_vector(const std::string& path);

enum class MmFormat { coordinate, array };

/// Values are printed with 17 significant digits, so a load/write/load round
/// trip reproduces the matrix bit-exactly. Coordinate output drops exact
/// zeros.
void write_matrix_market(const std::string& path, const Eigen::MatrixXd& m,
                         MmFormat format = MmFormat::coordinate);

}  // namespace sylv
