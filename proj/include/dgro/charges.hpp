#pragma once

#include <array>
#include <string>
#include <vector>

#include "dgro/currents.hpp"
#include "dgro/liealgebra.hpp"
#include "dgro/linalg.hpp"
#include "dgro/rational.hpp"

namespace dgro {

struct ChargeVector {
  std::array<Q, 8> c{};

  // 1-based, c(1) is c1.
  Q& operator()(int j) { return c.at(j - 1); }
  const Q& operator()(int j) const { return c.at(j - 1); }
  bool operator==(const ChargeVector&) const = default;
  std::string str() const;
};

ChargeVector operator+(const ChargeVector& a, const ChargeVector& b);

ChargeVector theorem1Charges(const CentralParamsTable& k, int n, int p);
// Only c3, c4 and c6 are nonzero.
ChargeVector deltaShiftCharges(const Q& lambda, const CentralParamsTable& k, int n, int p);
ChargeVector theorem2Charges(const CentralParamsTable& k, int n, int p);

enum class Statistics { Fermionic, Bosonic };

// Parameters of the free-field realization on jets valued in M (x) rho.
CentralParamsTable krealParams(const LieAlgebraSpec& g, const RepSpec& rho, const RepSpec& m, int n,
                               int p, Statistics stats = Statistics::Fermionic);

// Per-stage parameters of a direct sum over jet orders p - i. Here cNp
// holds the coefficient c^(i) with c^(i)(N, p - i) = c^(i) C(N+p-i, N).
struct StagedParams {
  int r = 0;
  std::vector<CentralParamsTable> perStage;
};

// The thirteen staging conditions; returns the violated ones.
std::vector<std::string> theorem3Violations(const StagedParams& s);

// Alternating-binomial profiles with the coupled families solved
// recursively. Throws std::invalid_argument when the targets cannot be
// staged at this r (k3, k4, k6, d0 must vanish for r = 0, k4 for r = 1).
StagedParams theorem3Stage(int r, const CentralParamsTable& targets);

// Stage tables with cNp evaluated at the stage's jet order.
std::vector<CentralParamsTable> stageTables(const StagedParams& s, int n, int p);

// Closed form with C(N+p-r, N-r). Also sums the Theorem 1 charges stage by
// stage and throws std::logic_error if the two routes disagree.
ChargeVector theorem3Charges(const StagedParams& s, int n, int p);

struct SugawaraResult {
  bool solvable = false;
  Matrix gamma;
  // Residual of the defining relation; zero when solvable.
  Matrix residual;
  Q c;
  // Whether every solution of the defining relation gives the same c.
  bool cDetermined = false;
  bool dVanishes = false;
  // Set when k is invertible and k_MN f^NR_S f^SM_T = Q delta^R_T; gamma is
  // then k^-1 / (2 + Q). Otherwise gamma is one particular solution.
  bool casimirCondition = false;
  Q casimirQ;
  std::string note;
};

// [I^M, I^N] = i f^{MN}_R I^R with central matrix k^{MN}.
SugawaraResult sugawara(const std::vector<std::vector<std::vector<GQ>>>& f, const Matrix& k);

struct SugawaraBasis {
  std::vector<std::vector<std::vector<GQ>>> f;
  Matrix k;
  std::size_t dimM = 0;
  std::size_t jets = 0;
};

// U_M(g, N, p): I^{mA}_n acts as e_{mn} (x) A with A running over a basis of
// the matrix algebra generated by the image of g in M; k is the trace form.
SugawaraBasis uMBasis(const LieAlgebraSpec& g, const RepSpec& m, int n, int p);

struct DivergenceRow {
  int p = 0;
  ChargeVector charges;
};

struct DivergenceReport {
  std::vector<DivergenceRow> rows;
  // Degree in p of the parameter-proportional part of each charge, -1 when
  // it vanishes on the range. Needs at least exponent + 2 rows to be exact.
  std::array<int, 8> exponent{};
};

// Theorem 1 charges over p in [pMin, pMax] with the growth exponent found by
// repeated finite differencing.
DivergenceReport divergenceReport(const CentralParamsTable& k, int n, int pMin, int pMax);

}  // namespace dgro
