// Cyclic Jacobi eigensolver for dense complex Hermitian matrices.
#pragma once

#include <stdexcept>
#include <vector>

#include "mubx/matrix.hpp"

namespace mubx {

// thrown when an iterative routine fails to converge (CLI exit code 2)
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EigenSystem {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column j is the eigenvector of values[j]
};

// Eigenvalues of a Hermitian matrix, ascending. Input must be Hermitian
// within 1e-12 entrywise and finite, otherwise std::invalid_argument.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

EigenSystem hermitian_eigensystem(const Matrix& m);

double min_eigenvalue(const Matrix& m);

// true iff min eigenvalue >= -tol
bool is_psd(const Matrix& m, double tol = 1e-10);

}  // namespace mubx
