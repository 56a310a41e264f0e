#include "dgro/linalg.hpp"

#include <stdexcept>

namespace dgro {

Matrix zeroMatrix(std::size_t rows, std::size_t cols) {
  return Matrix(rows, std::vector<GQ>(cols));
}

Matrix identityMatrix(std::size_t n) {
  Matrix m = zeroMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix matMul(const Matrix& a, const Matrix& b) {
  std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  Matrix c = zeroMatrix(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw std::invalid_argument("matMul: shape mismatch");
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].isZero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (!b[l][j].isZero()) c[i][j] += a[i][l] * b[l][j];
      }
    }
  }
  return c;
}

Matrix matAdd(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("matAdd: shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
  return c;
}

Matrix matScale(const Matrix& a, const GQ& s) {
  Matrix c = a;
  for (auto& row : c)
    for (auto& v : row) v *= s;
  return c;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  return matAdd(matMul(a, b), matScale(matMul(b, a), GQ(-1)));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  std::size_t ra = a.size(), ca = ra ? a[0].size() : 0;
  std::size_t rb = b.size(), cb = rb ? b[0].size() : 0;
  Matrix c = zeroMatrix(ra * rb, ca * cb);
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ca; ++j) {
      if (a[i][j].isZero()) continue;
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l) c[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
    }
  return c;
}

GQ trace(const Matrix& a) {
  GQ t;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

bool isZero(const Matrix& a) {
  for (const auto& row : a)
    for (const auto& v : row)
      if (!v.isZero()) return false;
  return true;
}

LinearSolution solveLinear(const Matrix& a, const std::vector<GQ>& b) {
  std::size_t rows = a.size();
  if (b.size() != rows) throw std::invalid_argument("solveLinear: rhs size");
  std::size_t cols = rows ? a[0].size() : 0;
  Matrix m = a;
  for (std::size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);

  std::vector<std::size_t> pivotCol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].isZero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    GQ inv = GQ(1) / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].isZero()) continue;
      GQ f = m[i][c];
      for (std::size_t j = c; j <= cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivotCol.push_back(c);
    ++r;
  }

  LinearSolution s;
  s.rank = r;
  s.consistent = true;
  for (std::size_t i = r; i < rows; ++i)
    if (!m[i][cols].isZero()) s.consistent = false;
  s.x.assign(cols, GQ());
  s.determined.assign(cols, false);
  std::vector<bool> isPivot(cols, false);
  for (std::size_t c : pivotCol) isPivot[c] = true;
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t c = pivotCol[i];
    s.x[c] = m[i][cols];
    bool det = true;
    for (std::size_t j = 0; j < cols; ++j)
      if (!isPivot[j] && !m[i][j].isZero()) det = false;
    s.determined[c] = det;
  }
  return s;
}

std::size_t rank(const Matrix& a) {
  return solveLinear(a, std::vector<GQ>(a.size())).rank;
}

std::optional<Matrix> inverse(const Matrix& a) {
  std::size_t n = a.size();
  Matrix inv = zeroMatrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<GQ> e(n);
    e[col] = 1;
    auto s = solveLinear(a, e);
    if (!s.consistent || s.rank < n) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) inv[i][col] = s.x[i];
  }
  return inv;
}

}  // namespace dgro
