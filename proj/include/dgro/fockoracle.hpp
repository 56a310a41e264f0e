#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dgro/currents.hpp"
#include "dgro/liealgebra.hpp"
#include "dgro/linalg.hpp"
#include "dgro/rational.hpp"

namespace dgro {

// Periodic fermions have integer modes; the phi zero mode annihilates the
// vacuum and the pi zero mode creates. Antiperiodic fermions have
// half-integer modes.
enum class Moding { Periodic, Antiperiodic };

// Normal-ordered bilinear sum_r :pi_r X_{r,u} phi_u: over the internal space
// jets (x) M (x) rho. Keys are doubled mode labels (2r, 2u).
struct Bilinear {
  std::map<std::pair<long, long>, Matrix> terms;
};

// Mode k of :pi X phi: with every mode |r|, |u| <= cutoff. With weighted
// set, phi_u carries the factor -i u of a time derivative.
Bilinear currentMode(const Matrix& x, long k, int cutoff, Moding moding, bool weighted = false);

// Regular part :[X, Y]: and vacuum part <XY> - <YX> of the commutator.
Bilinear regularCommutator(const Bilinear& a, const Bilinear& b);
GQ vacuumCommutator(const Bilinear& a, const Bilinear& b, Moding moding);

struct FockSetup {
  LieAlgebraSpec g;
  RepSpec rho;
  RepSpec m;
  int n = 1;
  int p = 0;
  int cutoff = 3;
  Moding moding = Moding::Periodic;
};

struct CentralMeasurement {
  CentralParamsTable params;
  // k1..k8 then d0..d2.
  std::array<bool, 11> determined{};
  // Measured k^{AB} and d^A on the unit and single labels of g + gl(N).
  std::map<std::pair<EnvelopingLabel, EnvelopingLabel>, GQ> k;
  std::map<EnvelopingLabel, GQ> d;
  // Vacuum value of [E_1, E_-1] for trivial representations at N = 1,
  // p = 0, divided by the k4 = 1 it must represent.
  GQ calibration;
  long vacuumSums = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Fits the isotropic ansatz to the measured central terms at modes +-1 and
// +-2, checks the jet structure, the weight-one primary property and the
// symmetry conditions, and repeats at cutoff + 1.
CentralMeasurement measureCentralMatrix(const FockSetup& s);

struct VirasoroMeasurement {
  Q c;
  // -dim rho dim M C(N+p, N)
  Q predicted;
  // c / predicted, zero when predicted is zero.
  Q ratio;
  // Coefficients of k^3 and k in the vacuum part of [F_k, F_-k], in units
  // of the calibrated 1/12.
  Q cubic, linear;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

VirasoroMeasurement measureVirasoro(const FockSetup& s);

}  // namespace dgro
