#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dgro/rational.hpp"

namespace dgro {

// An N-tuple of non-negative integers labelling a partial derivative.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim) : c_(dim, 0) {}
  explicit MultiIndex(std::vector<int> comps);

  static MultiIndex unit(std::size_t dim, std::size_t mu);

  std::size_t dim() const { return c_.size(); }
  int order() const;
  int operator[](std::size_t i) const { return c_[i]; }
  const std::vector<int>& components() const { return c_; }

  MultiIndex operator+(const MultiIndex& o) const;
  // Componentwise difference; nullopt if some component would be negative.
  std::optional<MultiIndex> minus(const MultiIndex& o) const;
  bool leq(const MultiIndex& o) const;

  auto operator<=>(const MultiIndex&) const = default;

  std::string str() const;

 private:
  std::vector<int> c_;
};

// Product of componentwise binomials. Accepts arbitrary integer tuples so
// that shifted arguments like n - mu can be passed; out-of-range gives 0.
Z multibinom(const std::vector<int>& m, const std::vector<int>& n);
Z multibinom(const MultiIndex& m, const MultiIndex& n);

// All m with |m| <= p, grade first and lexicographic within a grade.
std::vector<MultiIndex> enumerateJets(std::size_t n, int p);

struct LemmaReport {
  long checked = 0;
  std::vector<std::string> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

// L0 product identity, L1 double-sum Leibniz rule, L2 recurrence and L3
// mixed identity over all indices with N <= maxN and |.| <= maxP, then
// `trials` random instances drawn from a larger range.
LemmaReport verifyBinomialLemmas(int maxN, int maxP, int trials, std::uint32_t seed = 1);

struct ClosedFormSums {
  Z A, B, Delta, D, E;
  // Needs two distinct directions; absent for N = 1.
  std::optional<Z> C;
};

// Computes each sum by enumeration and by closed form; throws
// std::logic_error if the two disagree.
ClosedFormSums closedFormSums(int n, int p);

// Tensor forms of the LB, LC and LE contractions, compared coefficient by
// coefficient on every component phi^{mu nu}_{rho sigma}.
LemmaReport verifyTensorLemmas(int n, int p);

// sum_i (-1)^i C(r,i) C(N+p-i, N) by direct summation.
Z alternatingJetSum(int r, int p, int n);

// G_{r,p,N}(k) = sum_i k^(i) C(N+p-i, N).
Q gSum(int r, int p, int n, const std::vector<Q>& k);

struct GSumReport {
  Q value;
  // (i): G of the profile (-1)^i C(r,i) k^(0) equals C(N+p-r, N-r) k^(0).
  bool stagedCollapse = false;
  // (ii): G_{r,p,N}(k) + G_{r-1,p-1,N}(kbar) = G_{r,p,N}(k^(i) + kbar^(i-1)).
  std::optional<bool> shiftMerge;
  // (iii): G_{r,p,N}(k) = G_{r-1,p,N-1}(prefix sums) when sum k = 0.
  std::optional<bool> dimensionReduction;
  std::string note;
};

// kbar has length r when given. (iii) is only evaluated when sum k = 0;
// otherwise `note` records the violated precondition.
GSumReport gSumProperties(int r, int p, int n, const std::vector<Q>& k,
                          const std::optional<std::vector<Q>>& kbar = std::nullopt);

}  // namespace dgro
