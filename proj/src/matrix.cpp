#include "iflab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "iflab/error.hpp"

namespace iflab {

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::vector<double> Matrix::apply(const std::vector<double>& x) const {
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* row = &data_[i * cols_];
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

namespace {

std::size_t reach_count(const Matrix& m, bool forward) {
    const std::size_t n = m.rows();
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < n; ++j) {
            const double w = forward ? m(i, j) : m(j, i);
            if (w > 0 && !seen[j]) {
                seen[j] = 1;
                ++count;
                stack.push_back(j);
            }
        }
    }
    return count;
}

}  // namespace

bool irreducible(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    return reach_count(m, true) == m.rows() && reach_count(m, false) == m.rows();
}

PerronData perron(const Matrix& m) {
    if (!irreducible(m)) throw Error(ErrorKind::Reducible, "matrix is not irreducible");
    const std::size_t n = m.rows();
    // Shift by half the largest row sum: keeps the iteration primitive while
    // the convergence criterion stays relative to the root itself.
    double shift = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += m(i, j);
        shift = std::max(shift, 0.5 * row);
    }
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    PerronData out;
    for (int it = 1; it <= 100'000; ++it) {
        std::vector<double> y = m.apply(x);
        double lo = INFINITY, hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += shift * x[i];
            const double q = y[i] / x[i];
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        const double sum = std::accumulate(y.begin(), y.end(), 0.0);
        for (double& v : y) v /= sum;
        x = std::move(y);
        if (hi - lo <= 1e-13 * (hi - shift)) {
            out.root = 0.5 * (lo + hi) - shift;
            out.vector = x;
            out.iterations = it;
            return out;
        }
    }
    throw Error(ErrorKind::NonConvergence, "power iteration did not converge");
}

}  // namespace iflab
