#pragma once

// Small dense nonnegative matrices and their Perron data.

#include <cstddef>
#include <vector>

namespace iflab {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const;
    std::vector<double> apply(const std::vector<double>& x) const;  // M x

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Strong connectivity of the directed graph with an edge i -> j wherever
// M(i, j) > 0.
bool irreducible(const Matrix& m);

struct PerronData {
    double root = 0.0;
    std::vector<double> vector;  // positive, summing to 1
    int iterations = 0;
};

// Perron root and right Perron vector by power iteration on a positively
// shifted M, which is primitive whenever M is irreducible. Stops once the
// Collatz-Wielandt bounds agree to 1e-13 relative. Throws Error{Reducible} for reducible or
// non-square input, Error{NonConvergence} after 1e5 iterations.
PerronData perron(const Matrix& m);

inline double spectral_radius(const Matrix& m) { return perron(m).root; }

}  // namespace iflab
