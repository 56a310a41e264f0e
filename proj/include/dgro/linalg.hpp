#pragma once

#include <optional>
#include <vector>

#include "dgro/rational.hpp"

namespace dgro {

using Matrix = std::vector<std::vector<GQ>>;

Matrix zeroMatrix(std::size_t rows, std::size_t cols);
Matrix identityMatrix(std::size_t n);
Matrix matMul(const Matrix& a, const Matrix& b);
Matrix matAdd(const Matrix& a, const Matrix& b);
Matrix matScale(const Matrix& a, const GQ& s);
Matrix commutator(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
GQ trace(const Matrix& a);
bool isZero(const Matrix& a);

struct LinearSolution {
  bool consistent = false;
  // Free variables are set to zero.
  std::vector<GQ> x;
  // determined[j] is true when x[j] is the same in every solution.
  std::vector<bool> determined;
  std::size_t rank = 0;
};

// Solves A x = b exactly by Gauss-Jordan elimination.
LinearSolution solveLinear(const Matrix& a, const std::vector<GQ>& b);

std::size_t rank(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);

}  // namespace dgro
