#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "dgro/charges.hpp"
#include "dgro/currents.hpp"
#include "dgro/liealgebra.hpp"
#include "dgro/poly.hpp"

namespace dgro {

// Polynomials in x^1..x^N, stored as variables 0..N-1. The same variables
// are the positions q^mu of the trajectory, so a field evaluated at q is the
// polynomial itself.
using PolyVectorField = std::vector<Poly>;
// One component per generator of g.
using PolyGaugeMap = std::vector<Poly>;
// A Fourier polynomial f(t), read as f(t) d/dt.
using CircleField = Density;

enum class Variant { Theorem1, DeltaF, Theorem2, DirectSum };

struct RealizationConfig {
  int n = 1;
  int p = 0;
  // The plain algebra g; the engine works with g + gl(N).
  LieAlgebraSpec algebra;
  // One table for Theorem1, DeltaF and Theorem2; stages 0..r for DirectSum,
  // stage i at jet order p - i with its own evaluated c(N, p - i).
  std::vector<CentralParamsTable> stages;
  Variant variant = Variant::Theorem1;
  Q lambda;
  // Theorem 2 shifts: L_xi gets -(i s3/2) int div xi and J_X gets
  // -(i s6/2) int delta^a X_a, in units of 1/(2 pi i).
  Q shift3, shift6;
};

RealizationConfig theorem1Config(int n, int p, const LieAlgebraSpec& g, const CentralParamsTable& k);
RealizationConfig deltaFConfig(int n, int p, const LieAlgebraSpec& g, const CentralParamsTable& k,
                               const Q& lambda);
// Shifts chosen so that the printed exceptions would hold: s3 = c3 - 1 and
// s6 = c6 with c3, c6 from theorem2Charges.
RealizationConfig theorem2Config(int n, int p, const LieAlgebraSpec& g, const CentralParamsTable& k);
RealizationConfig directSumConfig(int n, int p, const LieAlgebraSpec& g, const StagedParams& s);

BracketEngine makeEngine(const RealizationConfig& cfg);

LocalOperator buildDiffeo(const PolyVectorField& xi, const RealizationConfig& cfg, bool includeTdXi = true);
LocalOperator buildGauge(const PolyGaugeMap& x, const RealizationConfig& cfg);
LocalOperator buildRepar(const CircleField& f, const RealizationConfig& cfg);

struct Generator {
  enum class Kind { Diffeo, Gauge, Repar };
  Kind kind = Kind::Diffeo;
  std::vector<Poly> field;
  CircleField f;

  static Generator diffeo(PolyVectorField xi) { return {Kind::Diffeo, std::move(xi), {}}; }
  static Generator gauge(PolyGaugeMap x) { return {Kind::Gauge, std::move(x), {}}; }
  static Generator repar(CircleField f) { return {Kind::Repar, {}, std::move(f)}; }
};

LocalOperator buildGenerator(const Generator& g, const RealizationConfig& cfg);

// xi^mu d_mu X_a
PolyGaugeMap gaugeAction(const PolyVectorField& xi, const PolyGaugeMap& x);
// [X, Y]_c = i f^{ab}_c X_a Y_b
PolyGaugeMap gaugeBracket(const LieAlgebraSpec& g, const PolyGaugeMap& x, const PolyGaugeMap& y);

struct GeneratorBracket {
  bool regularMatches = false;
  LocalOperator regular;
  LocalOperator expected;
  // Bracket extension minus the pure part of the expected generator.
  Density extension;
  std::string mismatch;
};

// Brackets two generators and compares the regular part with the generator
// of the expected right-hand side.
GeneratorBracket bracketGenerators(const Generator& a, const Generator& b, const RealizationConfig& cfg);
GeneratorBracket bracketGenerators(const Generator& a, const Generator& b, const RealizationConfig& cfg,
                                   const BracketEngine& engine);

// [L_xi, phi(q(t))] as a density.
Density diffeoOnDensity(const PolyVectorField& xi, const Density& phi, const RealizationConfig& cfg);

// Cocycle templates in units of 1/(2 pi i), without the charge factor.
Density templateC1(const PolyVectorField& xi, const PolyVectorField& eta, int n);
Density templateC2(const PolyVectorField& xi, const PolyVectorField& eta, int n);
Density templateC3(const CircleField& f, const PolyVectorField& xi, int n);
Density templateC4(const CircleField& f, const CircleField& g, int n);
Density templateC5(const LieAlgebraSpec& g, const PolyGaugeMap& x, const PolyGaugeMap& y, int n);
Density templateC6(const LieAlgebraSpec& g, const CircleField& f, const PolyGaugeMap& x, int n);
Density templateC7(const LieAlgebraSpec& g, const PolyVectorField& xi, const PolyGaugeMap& x, int n);
Density templateC8(const LieAlgebraSpec& g, const PolyGaugeMap& x, const PolyGaugeMap& y, int n);

struct TestPair {
  Generator a, b;
};

// The fixed test-field family of one sector: "LL", "LJ", "JJ", "RL", "RJ"
// or "RR", where R is a reparametrization.
std::vector<TestPair> testFamily(const std::string& sector, const RealizationConfig& cfg);

struct SectorFit {
  std::string sector;
  // Charge numbers fitted in this sector.
  std::vector<int> charges;
  std::vector<GQ> values;
  std::vector<bool> determined;
  bool consistent = false;
  // Fit of the reparametrization sectors to the separate f'' and -i f'
  // parts of the template; a shape mismatch shows up as unequal parts.
  std::vector<GQ> splitValues;
  bool splitConsistent = false;
  long brackets = 0;
};

struct ChargeExtraction {
  ChargeVector charges;
  std::array<bool, 8> determined{};
  bool consistent = false;
  std::vector<SectorFit> sectors;
  // Regular-part mismatches and sectors whose extension is not of cocycle
  // shape.
  std::vector<std::string> failures;

  bool ok() const { return consistent && failures.empty(); }
};

ChargeExtraction extractCharges(const RealizationConfig& cfg);
// Only the listed sectors.
ChargeExtraction extractCharges(const RealizationConfig& cfg, const std::vector<std::string>& sectors);

struct JetActionReport {
  long rowsChecked = 0;
  // Jet rows where the commutator of the two actions differs from the
  // action of [xi, eta].
  std::vector<std::string> failures;
  // Entries T^n_m with |n| > |m| that survive after the order-raising
  // terms cancel; expected empty.
  std::vector<std::string> orderRaising;
  bool ok() const { return failures.empty() && orderRaising.empty(); }
};

// The jet action [L_xi, phi_m] = -T^n_m(xi) phi_n with the gl(N) labels
// taken in rho, together with the action of xi on the q-dependence of the
// coefficients.
JetActionReport verifyJetAction(const PolyVectorField& xi, const PolyVectorField& eta, int n, int p,
                                const RepSpec& rho);

// The first-order operators xi^mu d_mu + d_nu xi^mu T^nu_mu close on
// rho-valued functions.
bool verifyLembClosure(const PolyVectorField& xi, const PolyVectorField& eta, const RepSpec& rho);

}  // namespace dgro
