#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dgro/linalg.hpp"
#include "dgro/rational.hpp"

namespace dgro {

// Lie algebra with [J^a, J^b] = i f^{ab}_c J^c.
//
// A direct sum g + gl(N) keeps the g generators at 0..gDim-1 and puts
// T^mu_nu at gDim + mu*glN + nu. For a plain algebra glN == 0.
struct LieAlgebraSpec {
  std::string name;
  std::size_t dim = 0;
  // f[a][b][c]; gl(N) blocks are purely imaginary.
  std::vector<std::vector<std::vector<GQ>>> f;
  Matrix metric;
  std::vector<GQ> casimir;
  std::size_t gDim = 0;
  std::size_t glN = 0;

  std::size_t glIndex(std::size_t mu, std::size_t nu) const { return gDim + mu * glN + nu; }
  bool isGl(std::size_t a) const { return a >= gDim; }
  // (mu, nu) of a gl generator.
  std::pair<std::size_t, std::size_t> glPair(std::size_t a) const {
    return {(a - gDim) / glN, (a - gDim) % glN};
  }
  std::string generatorName(std::size_t a) const;
};

struct RepSpec {
  std::string name;
  std::size_t dim = 0;
  std::vector<Matrix> gens;
};

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Antisymmetry, Jacobi, f^{ab}_c delta^c = 0 and ad-invariance of the metric.
ValidationReport validateAlgebra(const LieAlgebraSpec& g);
// [J^a, J^b] = i f^{ab}_c J^c as a matrix identity.
ValidationReport validateRep(const LieAlgebraSpec& g, const RepSpec& rep);

LieAlgebraSpec u1Algebra(const Q& delta = Q(1));
LieAlgebraSpec su2Algebra();
LieAlgebraSpec glAlgebra(std::size_t n);
LieAlgebraSpec directSum(const LieAlgebraSpec& g, std::size_t n);
// g1 + g2 with block-diagonal metric; both inputs must be plain algebras.
LieAlgebraSpec sumAlgebras(const LieAlgebraSpec& a, const LieAlgebraSpec& b);

RepSpec trivialRep(const LieAlgebraSpec& g, std::size_t dim = 1);
RepSpec su2Fundamental();
RepSpec u1Rep(const Q& charge);
// T^mu_nu = e_{mu nu}.
RepSpec glVectorRep(std::size_t n);
// Representation of sumAlgebras(ga, gb) on a common space: the generator
// lists are concatenated. Only valid if the two sets commute.
RepSpec concatRep(const RepSpec& a, const RepSpec& b);

// Label of a truncated enveloping-algebra basis element: a sorted tuple of
// generator indices of length <= 2. The empty tuple is the unit.
struct EnvelopingLabel {
  std::vector<int> idx;

  EnvelopingLabel() = default;
  static EnvelopingLabel unit() { return {}; }
  static EnvelopingLabel single(int a);
  static EnvelopingLabel pair(int a, int b);

  std::size_t size() const { return idx.size(); }
  auto operator<=>(const EnvelopingLabel&) const = default;
  std::string str(const LieAlgebraSpec& g) const;
};

using LabelCoeffs = std::map<EnvelopingLabel, GQ>;

// I^A I^B = g^{AB}_C I^C with I^{(ab)} = (J^a J^b + J^b J^a) / 2.
// Throws std::out_of_range("truncation order exceeded") past 2-tuples.
LabelCoeffs envelopingProduct(const LieAlgebraSpec& g, const EnvelopingLabel& a,
                              const EnvelopingLabel& b);

// Image of I^A in a representation of g.
Matrix labelMatrix(const RepSpec& rep, const EnvelopingLabel& a);

struct TraceParams {
  Q k0, k1rho, k2rho, yM, zM, wM;
  std::size_t dimRho = 0, dimM = 0;
  // Parameters whose value the traces do not fix; they are reported as 0.
  std::vector<std::string> undetermined;
};

// Traces over M (x) rho, solved for the isotropic parameters. Throws
// std::invalid_argument("representation outside the ansatz: ...") when the
// traces do not have that form.
TraceParams traceParams(const LieAlgebraSpec& g, const RepSpec& m, std::size_t n, const RepSpec& rho);

GQ parseComplex(const nlohmann::json& j);
LieAlgebraSpec loadAlgebra(const nlohmann::json& j);
RepSpec loadRep(const nlohmann::json& j);
nlohmann::json toJson(const LieAlgebraSpec& g);

}  // namespace dgro
