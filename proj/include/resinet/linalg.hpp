#pragma once

#include <cstddef>
#include <vector>

namespace resinet {

/// Dense square matrix, row-major.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    [[nodiscard]] std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct EigenDecomposition {
    std::vector<double> values;                ///< ascending
    std::vector<std::vector<double>> vectors;  ///< vectors[k] pairs with values[k], unit norm
    int sweeps = 0;
};

struct JacobiOptions {
    double off_diagonal_tolerance = 1e-10;
    int max_sweeps = 100;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Only the upper
/// triangle is read.
EigenDecomposition jacobi_eigen(const SquareMatrix& a, const JacobiOptions& options = {});

}  // namespace resinet
