#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tscheme {

class DenseMatrix {
public:
    explicit DenseMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    static DenseMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    std::vector<double> multiply(std::span<const double> x) const;

private:
    std::size_t n_;
    std::vector<double> a_;
};

// Gaussian elimination with partial pivoting. A pivot below 1e-14 times the largest
// entry of A raises SolverFailure carrying the offending pivot magnitude.
std::vector<double> lu_solve(DenseMatrix a, std::vector<double> b);

}
