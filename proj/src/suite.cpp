#include "dgro/suite.hpp"

#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dgro/charges.hpp"
#include "dgro/dgro.hpp"
#include "dgro/fockoracle.hpp"
#include "dgro/multiindex.hpp"

namespace dgro {

using json = nlohmann::ordered_json;

json toJsonQ(const Q& q) { return toString(q); }

json toJsonGQ(const GQ& z) { return json::array({toString(z.re), toString(z.im)}); }

json CriterionResult::toJson() const {
  json j;
  j["id"] = id;
  j["name"] = name;
  j["status"] = pass() ? "pass" : "fail";
  j["checks"] = checks;
  j["details"] = details;
  j["failures"] = failures;
  return j;
}

namespace {

// Keeps reports readable when a whole grid fails.
constexpr std::size_t kMaxFailures = 12;

struct Ctx {
  CriterionResult& r;

  void check(bool ok, const std::function<std::string()>& what) {
    ++r.checks;
    if (ok || r.failures.size() >= kMaxFailures) return;
    // Multi-line term listings keep their first line only.
    std::string w = what();
    if (const auto nl = w.find('\n'); nl != std::string::npos) w.resize(nl);
    r.failures.push_back(w);
  }
};

std::string where(int n, int p) { return "N=" + std::to_string(n) + " p=" + std::to_string(p); }

Q bq(long a, long b) { return Q(binom(a, b)); }

CentralParamsTable randomTable(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  auto r = [&] {
    Q q(num(rng), den(rng));
    q.canonicalize();
    return q;
  };
  CentralParamsTable t;
  t.k1 = r(), t.k2 = r(), t.k3 = r(), t.k4 = r(), t.k5 = r(), t.k6 = r(), t.k7 = r(), t.k8 = r();
  t.d0 = r(), t.d1 = r(), t.d2 = r(), t.cNp = r();
  return t;
}

// Every tuple of n non-negative integers with sum <= p, built by nested
// recursion independently of enumerateJets.
void tuples(int n, int p, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= p; ++v) {
    cur.push_back(v);
    tuples(n, p - v, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> tuples(int n, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (p >= 0) tuples(n, p, cur, out);
  return out;
}

std::string chargeMismatch(int j, const Q& got, const Q& want) {
  return "c" + std::to_string(j) + " = " + toString(got) + ", expected " + toString(want);
}

// Every determined charge in `want` agrees; `required` must be determined.
void compareExtraction(Ctx& c, const ChargeExtraction& e, const std::vector<int>& compare,
                       const ChargeVector& want, const std::vector<int>& required, const std::string& tag) {
  c.check(e.ok(), [&] { return tag + ": " + (e.failures.empty() ? "inconsistent fit" : e.failures.front()); });
  for (int j : compare)
    if (e.determined[j - 1])
      c.check(e.charges(j) == want(j), [&] { return tag + ": " + chargeMismatch(j, e.charges(j), want(j)); });
  for (int j : required)
    c.check(e.determined[j - 1], [&] { return tag + ": c" + std::to_string(j) + " not determined"; });
}

void criterion1(CriterionResult& r) {
  Ctx c{r};
  const auto rep = verifyBinomialLemmas(3, 6, 10000, 20261016u);
  r.checks += rep.checked;
  for (const auto& ce : rep.counterexamples)
    if (r.failures.size() < kMaxFailures) r.failures.push_back("binomial lemma: " + ce);
  r.details["binomialInstances"] = rep.checked;

  long sums = 0, tensor = 0;
  for (int n = 1; n <= 4; ++n)
    for (int p = 0; p <= 6; ++p) {
      ClosedFormSums s;
      try {
        s = closedFormSums(n, p);
      } catch (const std::logic_error& e) {
        c.check(false, [&] { return where(n, p) + ": " + e.what(); });
        continue;
      }
      Z a = 0, b = 0, cc = 0, d = 0, e = 0, delta = 0;
      for (const auto& m : tuples(n, p)) {
        int order = 0;
        for (int v : m) order += v;
        a += 1;
        b += m[0] + 1;
        d += (m[0] + 1) * (m[0] + 1);
        e += (m[0] + 2) * (m[0] + 1);
        if (n > 1) cc += (m[0] + 1) * (m[1] + 1);
        // sum_k C(N+p-k, N) counts m once for each k <= p - |m|.
        delta += p - order + 1;
      }
      const std::string w = where(n, p);
      c.check(s.A == a, [&] { return w + ": A"; });
      c.check(s.B == b, [&] { return w + ": B"; });
      c.check(s.D == d, [&] { return w + ": D"; });
      c.check(s.E == e, [&] { return w + ": E"; });
      c.check(s.Delta == delta, [&] { return w + ": Delta"; });
      if (n > 1) c.check(s.C && *s.C == cc, [&] { return w + ": C"; });
      ++sums;

      const auto t = verifyTensorLemmas(n, p);
      r.checks += t.checked;
      tensor += t.checked;
      for (const auto& ce : t.counterexamples)
        if (r.failures.size() < kMaxFailures) r.failures.push_back(w + ": tensor lemma: " + ce);
    }
  r.details["closedFormGrid"] = sums;
  r.details["tensorComponents"] = tensor;
}

void criterion2(CriterionResult& r) {
  Ctx c{r};
  std::mt19937 rng(2026u);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 6);
  auto rat = [&] {
    Q v(num(rng), den(rng));
    v.canonicalize();
    return v;
  };
  long p1 = 0, p2 = 0;
  for (int n = 1; n <= 4; ++n)
    for (int p = 0; p <= 8; ++p)
      for (int rr = 0; rr <= std::min(p, 4); ++rr) {
        const std::string w = where(n, p) + " r=" + std::to_string(rr);
        // P1 against a jet count: C(N+p-i, N) = #{m : |m| <= p - i}.
        Z direct = 0;
        for (int i = 0; i <= rr; ++i)
          direct += (i % 2 ? -1 : 1) * binom(rr, i) * Z(static_cast<long>(tuples(n, p - i).size()));
        const Z v = alternatingJetSum(rr, p, n);
        c.check(v == direct, [&] { return w + ": P1 direct sum"; });
        c.check(v == binom(n + p - rr, n - rr), [&] { return w + ": P1 closed form"; });
        ++p1;
        if (rr == 0) continue;

        for (int trial = 0; trial < 3; ++trial) {
          std::vector<Q> k(rr + 1), kbar(rr);
          for (auto& x : k) x = rat();
          for (auto& x : kbar) x = rat();
          const auto rep = gSumProperties(rr, p, n, k, kbar);
          c.check(rep.stagedCollapse, [&] { return w + ": P2(i)"; });
          if (p >= 1)
            c.check(rep.shiftMerge.value_or(false), [&] { return w + ": P2(ii)"; });
          Q total = 0;
          for (int i = 0; i < rr; ++i) total += k[i];
          k[rr] = -total;
          const auto red = gSumProperties(rr, p, n, k);
          c.check(red.dimensionReduction.value_or(false), [&] { return w + ": P2(iii)"; });
          ++p2;
        }
      }
  r.details["p1Cases"] = p1;
  r.details["p2Cases"] = p2;
}

void criterion3(CriterionResult& r) {
  Ctx c{r};
  std::mt19937 rng(3u);
  const auto u1 = u1Algebra(), su2 = su2Algebra(), both = sumAlgebras(u1, su2);
  json det = json::object();
  for (int n = 1; n <= 2; ++n)
    for (int p = 0; p <= 2; ++p) {
      const auto t = randomTable(rng);
      ChargeVector want;
      want(5) = t.k5 * bq(n + p, n);
      want(8) = t.k8 * bq(n + p, n);
      const std::string w = where(n, p);
      // For N = 1 every qdot g(q) is a total derivative, so the gauge
      // cocycles are exact there and nothing can be fitted.
      const bool one = n == 1;
      compareExtraction(c, extractCharges(theorem1Config(n, p, su2, t), {"JJ"}), {5, 8}, want,
                        one ? std::vector<int>{} : std::vector<int>{5}, "su(2) " + w);
      compareExtraction(c, extractCharges(theorem1Config(n, p, both, t), {"JJ"}), {5, 8}, want,
                        one ? std::vector<int>{} : std::vector<int>{5, 8}, "u(1)+su(2) " + w);

      // For u(1) the two templates coincide and only c5 + c8 is visible.
      const auto cfg = theorem1Config(n, p, u1, t);
      const PolyGaugeMap a = {Poly::var(0)}, b = {Poly::var(n - 1) * Poly::var(0)};
      const auto br = bracketGenerators(Generator::gauge(a), Generator::gauge(b), cfg);
      c.check(br.regularMatches, [&] { return "u(1) " + w + ": " + br.mismatch; });
      const Density shape = templateC5(u1, a, b, n) * GQ(want(5) + want(8));
      c.check(equalModTotalDerivatives(br.extension, shape, n), [&] { return "u(1) " + w + ": c5 + c8"; });
      compareExtraction(c, extractCharges(cfg, {"JJ"}), {}, want, {}, "u(1) " + w);
    }
  det["N=1"] = "none (gauge cocycles are total derivatives)";
  det["su(2), N=2"] = "c5 (c8 template vanishes, delta^a = 0)";
  det["u(1), N=2"] = "c5 + c8";
  det["u(1)+su(2), N=2"] = "c5, c8";
  r.details["determined"] = det;
}

void criterion4(CriterionResult& r) {
  Ctx c{r};
  std::mt19937 rng(4u);
  long brackets = 0;
  for (int n = 1; n <= 2; ++n)
    for (int p = 0; p <= 2; ++p) {
      const auto t = randomTable(rng);
      ChargeVector want;
      want(1) = 1 - t.k1 * bq(n + p, n) - t.k4 * bq(n + p + 1, n + 2);
      want(2) = -t.k2 * bq(n + p, n) - 2 * t.k3 * bq(n + p, n + 1) - t.k4 * bq(n + p, n + 2);
      const auto e = extractCharges(theorem1Config(n, p, u1Algebra(), t), {"LL"});
      compareExtraction(c, e, {1, 2}, want, n == 1 ? std::vector<int>{} : std::vector<int>{1, 2},
                        where(n, p));
      for (const auto& sec : e.sectors) brackets += sec.brackets;
    }
  r.details["brackets"] = brackets;
  r.details["determined"] = json{{"N=1", "none (diffeomorphism cocycles are total derivatives)"},
                                 {"N=2", "c1, c2"}};
}

void criterion5(CriterionResult& r) {
  Ctx c{r};
  std::mt19937 rng(5u);
  const auto both = sumAlgebras(u1Algebra(), su2Algebra());
  for (int n = 1; n <= 2; ++n)
    for (int p = 0; p <= 2; ++p) {
      const auto t = randomTable(rng);
      const auto want = theorem1Charges(t, n, p);
      const std::string w = where(n, p);
      const auto cfg = theorem1Config(n, p, both, t);
      compareExtraction(c, extractCharges(cfg), {1, 2, 3, 4, 5, 6, 7, 8}, want,
                        n == 1 ? std::vector<int>{3, 4, 6} : std::vector<int>{3, 4, 6, 7}, w);

      // c4 from the Fourier pairs e^{+-imt}: the cocycle is i c4 (m^3 - m)/12.
      GQ v[3];
      for (long m = 1; m <= 2; ++m) {
        const auto br =
            bracketGenerators(Generator::repar(Density::mode(m)), Generator::repar(Density::mode(-m)), cfg);
        c.check(br.regularMatches, [&] { return w + ": Fourier pair " + br.mismatch; });
        v[m] = circleIntegral(br.extension);
      }
      c.check(v[1].isZero(), [&] { return w + ": m = 1 pair has a central term"; });
      c.check(v[2].re == 0, [&] { return w + ": m = 2 pair not imaginary"; });
      const Q c4 = 2 * v[2].im;
      c.check(c4 == 2 * n + t.cNp, [&] { return w + ": Fourier " + chargeMismatch(4, c4, 2 * n + t.cNp); });
    }
}

void criterion6(CriterionResult& r) {
  Ctx c{r};
  std::mt19937 rng(6u);
  const auto both = sumAlgebras(u1Algebra(), su2Algebra());
  for (const Q& lambda : {Q(1), Q(-2), Q(1, 2)})
    for (int n = 1; n <= 2; ++n)
      for (int p = 0; p <= 2; ++p) {
        const auto t = randomTable(rng);
        const auto want = theorem1Charges(t, n, p) + deltaShiftCharges(lambda, t, n, p);
        compareExtraction(c, extractCharges(deltaFConfig(n, p, both, t, lambda)), {1, 2, 3, 4, 5, 6, 7, 8},
                          want, {3, 4, 6}, "lambda=" + toString(lambda) + " " + where(n, p));
      }
  const std::size_t deltaFailures = r.failures.size();
  r.details["deltaShift"] = deltaFailures == 0 ? "pass" : "fail";

  // The Theorem 2 realization. Sectors without reparametrizations are
  // checked on their own so a failure there is told apart from the
  // reparametrization sectors.
  bool otherSectors = true, full = true;
  for (int n = 1; n <= 2; ++n)
    for (int p = 0; p <= 2; ++p) {
      const auto t = randomTable(rng);
      const auto want = theorem2Charges(t, n, p);
      const auto cfg = theorem2Config(n, p, both, t);
      const std::size_t before = r.failures.size();
      compareExtraction(c, extractCharges(cfg, {"LL", "LJ", "JJ", "RR"}), {1, 2, 4, 5, 7, 8}, want,
                        n == 1 ? std::vector<int>{4} : std::vector<int>{1, 2, 4, 5, 7, 8},
                        "theorem 2 unchanged charges " + where(n, p));
      otherSectors = otherSectors && r.failures.size() == before;
      const std::size_t mid = r.failures.size();
      compareExtraction(c, extractCharges(cfg), {1, 2, 3, 4, 5, 6, 7, 8}, want, {3, 4, 6},
                        "theorem 2 " + where(n, p));
      full = full && r.failures.size() == mid;
    }
  r.details["theorem2UnchangedCharges"] = otherSectors ? "pass" : "fail";
  r.details["theorem2Exceptions"] = full ? "pass" : "fail";
}

void criterion7(CriterionResult& r) {
  Ctx c{r};
  std::mt19937 rng(7u);
  for (int rr = 0; rr <= 3; ++rr)
    for (int n = 1; n <= 3; ++n) {
      auto t = randomTable(rng);
      // Targets the r = 0 and r = 1 stagings can reach.
      if (rr == 0) t.k3 = t.k4 = t.k6 = t.d0 = 0;
      if (rr == 1) t.k4 = 0;
      const auto s = theorem3Stage(rr, t);
      const auto v = theorem3Violations(s);
      const std::string tag = "r=" + std::to_string(rr) + " N=" + std::to_string(n);
      c.check(v.empty(), [&] { return tag + ": " + v.front(); });
      for (int p = rr; p <= 6; ++p) {
        ChargeVector ch;
        try {
          ch = theorem3Charges(s, n, p);
          ++r.checks;
        } catch (const std::logic_error& e) {
          c.check(false, [&] { return tag + " p=" + std::to_string(p) + ": " + e.what(); });
          continue;
        }
        if (n == rr)
          c.check(ch == theorem3Charges(s, n, p + 1), [&] { return tag + " p=" + std::to_string(p) + ": p-dependence"; });
        if (n < rr) {
          ChargeVector base;
          base(1) = 1;
          base(3) = 1;
          base(4) = 2 * n;
          c.check(ch == base, [&] { return tag + " p=" + std::to_string(p) + ": " + ch.str(); });
        }
      }
    }
}

void criterion8(CriterionResult& r) {
  Ctx c{r};
  auto record = [&](const std::string& label, const SugawaraResult& s, const Q& dimension) {
    c.check(s.solvable, [&] { return label + ": defining relation has no solution"; });
    c.check(isZero(s.residual), [&] { return label + ": nonzero residual"; });
    c.check(s.dVanishes, [&] { return label + ": d^R does not vanish"; });
    // Without the Casimir condition there is no Q; the value is compared
    // with the Q = 0 prefactor and the fact is reported.
    const Q q = s.casimirCondition ? s.casimirQ : Q(0);
    const Q predicted = Q(2) / (2 + q) * dimension;
    c.check(s.c == predicted, [&] { return label + ": c = " + toString(s.c) + ", expected " + toString(predicted); });
    json j;
    j["c"] = toJsonQ(s.c);
    j["predicted"] = toJsonQ(predicted);
    j["casimirCondition"] = s.casimirCondition;
    if (s.casimirCondition) j["Q"] = toJsonQ(s.casimirQ);
    j["cDetermined"] = s.cDetermined;
    r.details[label] = j;
  };

  const Matrix k = {{GQ(2), GQ(1)}, {GQ(1), GQ(3)}};
  const std::vector<std::vector<std::vector<GQ>>> f(2, std::vector<std::vector<GQ>>(2, std::vector<GQ>(2)));
  record("abelian toy", sugawara(f, k), Q(2));

  const auto b = uMBasis(su2Algebra(), su2Fundamental(), 1, 0);
  record("U_M(su(2),1,0)", sugawara(b.f, b.k), Q(static_cast<long>(b.dimM * b.jets)));
}

void criterion9(CriterionResult& r) {
  Ctx c{r};
  Q ratio;
  bool first = true;
  json rows = json::array();
  for (bool fundamental : {false, true})
    for (bool glVector : {false, true})
      for (int n = 1; n <= 2; ++n)
        for (int p = 0; p <= 1; ++p) {
          FockSetup s;
          s.g = su2Algebra();
          s.m = fundamental ? su2Fundamental() : trivialRep(su2Algebra());
          s.rho = glVector ? glVectorRep(static_cast<std::size_t>(n)) : trivialRep(glAlgebra(static_cast<std::size_t>(n)));
          s.n = n;
          s.p = p;
          const std::string w = std::string(fundamental ? "fundamental" : "trivial") + " M, " +
                                (glVector ? "vector" : "trivial") + " rho, " + where(n, p);
          const auto m = measureCentralMatrix(s);
          c.check(m.ok(), [&] { return w + ": " + (m.failures.empty() ? "" : m.failures.front()); });
          const auto want = krealParams(s.g, s.rho, s.m, n, p);
          auto got = m.params;
          // c(N, p) is compared through the Virasoro measurement below.
          got.cNp = want.cNp;
          c.check(got == want, [&] { return w + ": measured parameters differ from krealParams"; });

          const auto v = measureVirasoro(s);
          c.check(v.ok(), [&] { return w + ": " + (v.failures.empty() ? "" : v.failures.front()); });
          if (first) ratio = v.ratio;
          first = false;
          c.check(v.ratio == ratio, [&] { return w + ": Virasoro ratio " + toString(v.ratio); });
          rows.push_back(json{{"config", w}, {"c", toJsonQ(v.c)}, {"predicted", toJsonQ(v.predicted)}});
        }
  r.details["virasoroRatio"] = toJsonQ(ratio);
  r.details["configurations"] = rows;
}

const char* kNames[] = {"",
                        "binomial lemmas and closed-form sums",
                        "alternating jet sums and G properties",
                        "gauge-sector cocycle",
                        "diffeomorphism-sector cocycle",
                        "mixed and reparametrization sectors",
                        "variant realizations",
                        "staged direct sums",
                        "Sugawara construction",
                        "Fock oracle"};

}  // namespace

std::vector<int> suiteCriteria() { return {1, 2, 3, 4, 5, 6, 7, 8, 9}; }

CriterionResult runCriterion(int id) {
  static const std::function<void(CriterionResult&)> fns[] = {
      nullptr, criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8,
      criterion9};
  if (id < 1 || id > 9) throw std::invalid_argument("no criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.name = kNames[id];
  try {
    fns[id](r);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("exception: ") + e.what());
  }
  return r;
}

}  // namespace dgro
