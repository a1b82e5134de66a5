#pragma once

#include <vector>

#include "eigenbound/error.hpp"

namespace eigenbound::la {

// Dense row-major square matrix helpers. Sizes here are desk scale (a few
// thousand at most), so everything is plain O(n^3) and deterministic.

// Full eigendecomposition of a symmetric matrix (row-major, n x n).
// On return evals is ascending and evecs holds the matching eigenvectors
// as COLUMNS (evecs[r*n + c] = component r of eigenvector c).
void sym_eigen(std::vector<double> a, int n, std::vector<double>& evals,
               std::vector<double>& evecs);

// In-place Cholesky of an SPD matrix; lower triangle of a becomes L.
// Returns false if the matrix is not positive definite.
bool cholesky(std::vector<double>& a, int n);

// Solve L y = b (forward) and L^T x = y (backward) with the lower factor.
void solve_lower(const std::vector<double>& l, int n, std::vector<double>& b);
void solve_lower_transposed(const std::vector<double>& l, int n, std::vector<double>& b);

std::vector<double> matvec(const std::vector<double>& a, int n, const std::vector<double>& x);

}  // namespace eigenbound::la
