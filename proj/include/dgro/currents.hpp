#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dgro/liealgebra.hpp"
#include "dgro/multiindex.hpp"
#include "dgro/poly.hpp"
#include "dgro/rational.hpp"

namespace dgro {

// Trajectory jet variables: the j-th time derivative of q^mu is polynomial
// variable j*N + mu.
int jetVar(int n, int order, int mu);
int maxJetOrder(int n);

// Finite sum of e^{ikt} P_k(q, q', q'', ...).
class Density {
 public:
  Density() = default;
  Density(const Poly& p);
  Density(const GQ& c);
  static Density mode(long k, const GQ& c = GQ(1));

  const std::map<long, Poly>& modes() const { return modes_; }
  bool isZero() const { return modes_.empty(); }
  // Highest jet order present, -1 if the density does not depend on q.
  int jetOrder(int n) const;

  void add(long k, const Poly& p);
  Density& operator+=(const Density& o);
  Density& operator-=(const Density& o);
  Density& operator*=(const GQ& c);

  bool operator==(const Density& o) const { return modes_ == o.modes_; }

  std::string str(int n) const;

 private:
  std::map<long, Poly> modes_;
};

Density operator+(Density a, const Density& b);
Density operator-(Density a, const Density& b);
Density operator-(Density a);
Density operator*(const Density& a, const Density& b);
Density operator*(Density a, const GQ& c);
Density operator*(const GQ& c, Density a);

// Total time derivative.
Density timeDerivative(const Density& d, int n, int times = 1);
// The polynomial phi(q) evaluated on the trajectory.
Density onTrajectory(const Poly& phi);

// Value of the integral over the circle divided by 2 pi. Throws
// std::invalid_argument if the density depends on the trajectory.
GQ circleIntegral(const Density& d);

// Variational derivatives E_mu plus the trajectory-independent zero mode.
// Two densities have equal integrals for every trajectory exactly when
// their images agree.
struct EulerImage {
  std::vector<Density> components;
  GQ constant;
  bool isZero() const;
  bool operator==(const EulerImage&) const = default;
};
EulerImage eulerImage(const Density& d, int n);
bool equalModTotalDerivatives(const Density& a, const Density& b, int n);

enum class DeltaSlot { S, T };

// Collapses the double integral of a(s) b(t) delta^(k)(s-t). With slot S
// the result is int a b^(k), with slot T it is (-1)^k int a^(k) b; the two
// differ by a total derivative. Throws std::invalid_argument for k > 3.
Density integrateDelta(const Density& a, const Density& b, int k, int n, DeltaSlot slot);

// I^{mA}_n at a given stage, or the Virasoro current F of a stage.
struct CurrentKey {
  enum class Kind : std::uint8_t { I, F };
  Kind kind = Kind::I;
  int stage = 0;
  MultiIndex m, n;
  EnvelopingLabel label;

  auto operator<=>(const CurrentKey&) const = default;
  std::string str(const LieAlgebraSpec& g) const;
};

CurrentKey currentE(int stage, const MultiIndex& m, const MultiIndex& n);
CurrentKey currentJ(int stage, const MultiIndex& m, const MultiIndex& n, int a);
// T^{m mu}_{n nu}, carrying the gl label T^mu_nu of g + gl(N).
CurrentKey currentT(const LieAlgebraSpec& g, int stage, const MultiIndex& m, const MultiIndex& n,
                    int mu, int nu);
CurrentKey currentF(int stage);

struct CentralParamsTable {
  Q k1, k2, k3, k4, k5, k6, k7, k8;
  Q d0, d1, d2;
  Q cNp;
  bool operator==(const CentralParamsTable&) const = default;
};

class CentralProvider {
 public:
  virtual ~CentralProvider() = default;
  virtual GQ k(int stage, const EnvelopingLabel& a, const EnvelopingLabel& b) const = 0;
  virtual GQ d(int stage, const EnvelopingLabel& a) const = 0;
  virtual Q c(int stage) const = 0;
};

// The isotropic ansatz with parameters k1..k8, d0..d2 and c(N,p), one
// table per stage. Labels outside the ansatz throw std::out_of_range.
class AnsatzCentral : public CentralProvider {
 public:
  AnsatzCentral(LieAlgebraSpec algebra, std::vector<CentralParamsTable> stages);
  GQ k(int stage, const EnvelopingLabel& a, const EnvelopingLabel& b) const override;
  GQ d(int stage, const EnvelopingLabel& a) const override;
  Q c(int stage) const override;

 private:
  const CentralParamsTable& table(int stage) const;
  LieAlgebraSpec g_;
  std::vector<CentralParamsTable> stages_;
};

// k^{AB} = tr(I^A I^B) and d^A = tr(I^A) in a representation; defined on
// every label of the truncated enveloping algebra.
class TraceCentral : public CentralProvider {
 public:
  TraceCentral(RepSpec rep, Q c);
  GQ k(int stage, const EnvelopingLabel& a, const EnvelopingLabel& b) const override;
  GQ d(int stage, const EnvelopingLabel& a) const override;
  Q c(int stage) const override;

 private:
  RepSpec rep_;
  Q c_;
};

// Result of [S1(s), S2(t)] as a sum over delta^(order)(s-t).
struct DeltaExpansion {
  struct Regular {
    GQ coeff;
    CurrentKey key;
    bool atS = true;
    int order = 0;
  };
  struct Central {
    // In units of 1/(2 pi i).
    GQ coeff;
    int order = 0;
  };
  std::vector<Regular> regular;
  std::vector<Central> central;
};

// Sum of smeared terms: current symbols with densities, the trajectory
// generators V(xi) and K(f), and a pure density in units of 1/(2 pi i).
struct LocalOperator {
  std::map<CurrentKey, Density> currents;
  std::vector<Poly> vfield;
  Density kfield;
  Density pure;

  void addCurrent(const CurrentKey& key, const Density& d);
  void addV(const std::vector<Poly>& xi);
  LocalOperator& operator+=(const LocalOperator& o);
  LocalOperator& operator*=(const GQ& c);
  bool isZero() const;
  // Equality of the current, V and K parts; the pure parts are ignored.
  bool sameRegular(const LocalOperator& o) const;
  std::string str(const LieAlgebraSpec& g, int n) const;
};

LocalOperator operator+(LocalOperator a, const LocalOperator& b);
LocalOperator operator-(LocalOperator a, const LocalOperator& b);
LocalOperator operator*(LocalOperator a, const GQ& c);

struct BracketResult {
  LocalOperator regular;
  // The current-independent part, in units of 1/(2 pi i).
  Density extension;
};

class BracketEngine {
 public:
  BracketEngine(int n, LieAlgebraSpec algebra, std::shared_ptr<const CentralProvider> central);

  int dimension() const { return n_; }
  const LieAlgebraSpec& algebra() const { return g_; }

  DeltaExpansion bracketSymbols(const CurrentKey& a, const CurrentKey& b) const;
  BracketResult bracket(const LocalOperator& a, const LocalOperator& b) const;

  // Action of V(xi) + K(f) on a density, extended by the Leibniz rule.
  Density act(const std::vector<Poly>& xi, const Density& f, const Density& d) const;

 private:
  int n_;
  LieAlgebraSpec g_;
  std::shared_ptr<const CentralProvider> central_;
};

// [xi, eta]^mu = xi^nu d_nu eta^mu - eta^nu d_nu xi^mu.
std::vector<Poly> vectorFieldBracket(const std::vector<Poly>& xi, const std::vector<Poly>& eta);
// [f, g] = f g' - f' g.
Density circleBracket(const Density& f, const Density& g);

struct CentralConditionReport {
  long checked = 0;
  long skipped = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Symmetry of k^{AB} and g^{AB}_D k^{DC} = g^{BC}_D k^{DA} = g^{CA}_D k^{DB}
// over the given labels. Triples that need an entry the provider does not
// define are counted as skipped.
CentralConditionReport checkCentralConditions(const LieAlgebraSpec& g, const CentralProvider& k,
                                              int stage, const std::vector<EnvelopingLabel>& labels);

}  // namespace dgro
