#include "tscheme/dense_lu.hpp"

#include "tscheme/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace tscheme {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
    if (x.size() != n_) {
        throw InvalidArgument("DenseMatrix::multiply: size mismatch");
    }
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            s += (*this)(i, j) * x[j];
        }
        y[i] = s;
    }
    return y;
}

std::vector<double> lu_solve(DenseMatrix a, std::vector<double> b) {
    const std::size_t n = a.size();
    if (b.size() != n) {
        throw InvalidArgument("lu_solve: right-hand side size mismatch");
    }
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            scale = std::max(scale, std::abs(a(i, j)));
        }
    }
    if (!std::isfinite(scale)) {
        throw SolverFailure("lu_solve: non-finite matrix entry", scale);
    }
    const double tiny = 1e-14 * scale;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > std::abs(a(p, k))) {
                p = i;
            }
        }
        const double pivot = a(p, k);
        if (!(std::abs(pivot) > tiny)) {
            throw SolverFailure("lu_solve: singular system, pivot " + std::to_string(pivot) + " in column " +
                                    std::to_string(k),
                                std::abs(pivot));
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(p, j));
            }
            std::swap(b[k], b[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / pivot;
            if (f == 0.0) {
                continue;
            }
            for (std::size_t j = k; j < n; ++j) {
                a(i, j) -= f * a(k, j);
            }
            b[i] -= f * b[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) {
            s -= a(k, j) * b[j];
        }
        b[k] = s / a(k, k);
    }
    return b;
}

}
