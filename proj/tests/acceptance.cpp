// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dzeta/config.hpp"
#include "dzeta/zeta.hpp"
#include "oracles.hpp"

using namespace dzeta;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;
  void require(bool ok, const std::string& why) {
    if (!ok && pass) note = why;
    pass = pass && ok;
  }
};

FqElem random_elem(const FieldTower& K, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> digit(0, K.p() - 1);
  std::vector<std::uint32_t> c(K.degree());
  for (auto& x : c) x = digit(rng);
  return K.from_coeffs(c);
}

Poly random_fq_poly(const FieldTower& K, std::size_t deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, K.q() - 1);
  std::vector<FqElem> c;
  for (std::size_t i = 0; i <= deg; ++i) c.push_back(K.fq(d(rng)));
  return Poly(K, c);
}

DrinfeldModule random_module(const FieldTower& K, std::size_t n, std::mt19937_64& rng) {
  std::vector<FqElem> a;
  for (std::size_t k = 1; k < n; ++k) a.push_back(random_elem(K, rng));
  return DrinfeldModule(n, random_elem(K, rng), a);
}

/// A pair (source, target) whose membership is recomputed by the linear oracle.
struct Pair {
  std::shared_ptr<const FieldTower> tower;
  LevelData source, target;
  bool member;
};
std::vector<Pair> exercised;

struct ScanRecord {
  std::shared_ptr<const FieldTower> tower;
  LevelData x;
  Census census;
};
std::vector<ScanRecord> exercised_scans;

Census scan(const LevelData& x) {
  ScanOptions o;
  o.cap = 1'000'000;
  return scan_graphs(x, o);
}

using PairSet = std::set<std::pair<std::uint64_t, std::uint64_t>>;

// ---------------------------------------------------------------------------

Outcome companion_product() {
  Outcome out;
  std::mt19937_64 rng(101);
  double worst_ms = 0;
  for (std::uint32_t p : {2u, 3u}) {
    auto K = FieldTower::create(p, 1, 6);
    for (int k = 0; k < 10; ++k) {
      const DrinfeldModule dm = random_module(*K, 2, rng);
      const auto t0 = std::chrono::steady_clock::now();
      const CompanionPair cp = tau_n_matrix(dm);
      worst_ms = std::max(worst_ms, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
      Matrix expect = Matrix::identity(*K, 2);
      expect(0, 1) = -dm.a(1);
      out.require(cp.A == expect, "A(0,1) = -a_1^q, not -a_1, for a_1 outside F_q");
    }
  }
  out.require(worst_ms < 1.0, "tau_n_matrix slower than 1 ms");
  return out;
}

Outcome determinant_identity() {
  Outcome out;
  std::mt19937_64 rng(102);
  for (int k = 0; k < 100; ++k) {
    const std::uint32_t p = 2 + k % 2;
    const std::size_t n = 1 + (k / 2) % 3;
    auto K = FieldTower::create(p, 1, 6);
    const DrinfeldModule dm = random_module(*K, n, rng);
    const CompanionPair cp = tau_n_matrix(dm);
    Poly rhs = Poly::constant(K->one());
    for (std::size_t j = 0; j < n; ++j) rhs = rhs * Poly(*K, {-oracle::frob(dm.theta(), j), K->one()});
    out.require(oracle::det_laplace(oracle::entries({cp.B, cp.A})) == rhs, "det(At + B) mismatch");
  }
  return out;
}

Outcome nu_solver() {
  Outcome out;
  for (const char* name : {"example3_q2", "example3_q3", "example4_q3", "jets_rank2_q2", "example1_q3"}) {
    const Session s = oracle::fixture(name);
    const FieldTower& K = *s.tower;
    const std::size_t n = s.module.rank();
    const CompanionPair cp = tau_n_matrix(s.module);
    const NuSolution sol = solve_nu(cp, n);
    for (std::size_t r = 0; r < n; ++r) {
      Matrix row(K, 1, n), twisted(K, 1, n);
      for (std::size_t c = 0; c < n; ++c) row(0, c) = sol.nu(r, c), twisted(0, c) = oracle::frob(sol.nu(r, c), n);
      out.require(twisted == row * cp.A, std::string(name) + ": row does not solve");
    }
    // F_{q^n}-dimension n: the F_q-span has dimension n^2 and nu has rank n
    out.require(sol.fq_basis.size() == n * n, std::string(name) + ": F_q-dimension");
    std::vector<std::vector<FqElem>> rows;
    for (std::size_t r = 0; r < n; ++r) {
      rows.emplace_back();
      for (std::size_t c = 0; c < n; ++c) rows.back().push_back(sol.nu(r, c));
    }
    out.require(oracle::rank(rows) == n, std::string(name) + ": nu singular");
    if (n == 2) {
      // the relations as displayed, on the displayed A
      const FqElem a1 = s.module.a(1);
      CompanionPair displayed{Matrix::identity(K, 2), Matrix(K, 2, 2)};
      displayed.A(0, 1) = -a1;
      const NuSolution ps = solve_nu(displayed, 2);
      for (std::size_t r = 0; r < 2; ++r) {
        const FqElem n21 = ps.nu(r, 0), n11 = ps.nu(r, 1);
        out.require(oracle::frob(n21, 2) == n21, std::string(name) + ": nu_21 relation");
        out.require((oracle::frob(n11, 2) - n11 + a1 * n21).is_zero(), std::string(name) + ": nu_11 relation");
      }
    }
  }
  return out;
}

Outcome crt() {
  Outcome out;
  auto K = FieldTower::create(3, 1, 1);
  for (const char* d : {"0,1", "0:2"}) {
    const DivisorSpec div = DivisorSpec::parse(d);
    const Poly P = div.poly(*K);
    std::vector<std::vector<Poly>> tuples;
    for (std::uint64_t a = 0; a < 3; ++a)
      for (std::uint64_t b = 0; b < 3; ++b)
        tuples.push_back(div.size() == 2 ? std::vector<Poly>{Poly::constant(K->fq(a)), Poly::constant(K->fq(b))}
                                         : std::vector<Poly>{Poly(*K, {K->fq(a), K->fq(b)})});
    // local data of a residue, read off by evaluation (value and derivative at alpha)
    auto local = [&](const Poly& f) {
      std::vector<Poly> z;
      for (std::size_t i = 0; i < div.size(); ++i) {
        const FqElem a = div.alpha(*K, i);
        std::vector<FqElem> jet{f(a)};
        if (div.points()[i].r == 2) {
          FqElem der = K->zero();
          for (int k = 1; k <= f.degree(); ++k) der = der + K->fq(k % 3) * f.coeff(k) * oracle::power(a, k - 1);
          jet.push_back(der);
        }
        z.push_back(Poly(*K, jet));
      }
      return z;
    };
    std::set<std::vector<std::uint32_t>> images;
    for (const auto& x : tuples) {
      const Poly dx = crt_delta(*K, div, x);
      out.require(dx.degree() < 2, "delta not reduced");
      out.require(local(dx) == x, "delta is not inverse to localization");
      images.insert({dx.coeff(0).coeff(0), dx.coeff(1).coeff(0)});
      for (const auto& y : tuples) {
        const Poly dy = crt_delta(*K, div, y);
        std::vector<Poly> xy, xpy;
        const auto lx = local(dx), ly = local(dy);
        for (std::size_t i = 0; i < lx.size(); ++i) {
          xy.push_back((lx[i] * ly[i]).truncated(div.points()[i].r));
          xpy.push_back(lx[i] + ly[i]);
        }
        out.require(crt_delta(*K, div, xy) == (dx * dy).mod(P), std::string(d) + ": not multiplicative");
        out.require(crt_delta(*K, div, xpy) == dx + dy, std::string(d) + ": not additive");
      }
    }
    out.require(images.size() == 9, std::string(d) + ": not bijective");
    std::vector<Poly> ones;
    for (std::size_t i = 0; i < div.size(); ++i) ones.push_back(Poly::constant(K->one()));
    out.require(crt_delta(*K, div, ones) == Poly::constant(K->one()), "delta(1) != 1");
  }
  return out;
}

const std::vector<const char*> kFixtures = {"example1_q3", "example1_q5", "example2_q5", "example3_q2", "example3_q3",
                                            "example4_q2", "example4_q3", "jets_rank1_q3", "jets_rank2_q2"};

Outcome torsion() {
  Outcome out;
  for (const char* name : {"example1_q3", "example1_q5"}) {
    const Session s = oracle::fixture(name);
    const FieldTower& K = *s.tower;
    const TorsionData td = torsion_basis(s.module, s.divisor);
    const FqElem u = td.jets[0][0][0], v = td.jets[1][0][0];
    out.require(!u.is_zero() && oracle::ore_value(s.module.phi_t(), u).is_zero(), std::string(name) + ": u");
    out.require(oracle::ore_value(s.module.phi_t() - OrePoly::constant(K.one()), v).is_zero(), std::string(name) + ": v");
    out.require((oracle::power(u, K.q() - 1) - oracle::power(v, K.q() - 1) + K.one()).is_zero(),
                std::string(name) + ": u^(q-1) - v^(q-1) + 1");
  }
  for (const char* name : kFixtures) {
    const Session s = oracle::fixture(name);
    const OrePoly f = phi(s.module, s.divisor.poly(*s.tower));
    out.require(additive_kernel(f).size() == s.module.rank() * s.divisor.degree(), std::string(name) + ": dimension");
  }
  // full enumeration where the field is small
  const Session s = oracle::fixture("example1_q3");
  const auto roots = oracle::roots_by_enumeration(phi(s.module, s.divisor.poly(*s.tower)));
  out.require(roots.size() == 9, "example1_q3: root count");
  return out;
}

struct RandomCase {
  Session s;
  LevelData x;
};

Outcome homothety_inclusion() {
  Outcome out;
  std::mt19937_64 rng(106);
  int done = 0, attempts = 0;
  while (done < 50 && attempts < 500) {
    ++attempts;
    SessionConfig c;
    const std::uint64_t q = 2 + rng() % 2;
    c.set_q(q);
    c.params.n = 1 + rng() % 2;
    const std::size_t d = 1 + rng() % 3;
    // random divisor of degree d with distinct points
    std::vector<std::uint64_t> mult(q, 0);
    for (std::size_t k = 0; k < d; ++k) ++mult[rng() % q];
    c.divisor.clear();
    for (std::uint64_t a = 0; a < q; ++a)
      if (mult[a]) c.divisor += (c.divisor.empty() ? "" : ",") + std::to_string(a) + ":" + std::to_string(mult[a]);
    c.params.theta = "random:" + std::to_string(2 + rng() % 2);
    c.params.seed = rng();
    c.params.coeff_polys.clear();
    for (std::size_t k = 1; k < c.params.n; ++k) c.params.coeff_polys.push_back({rng() % q, rng() % q, rng() % q});
    c.max_degree = 36;
    std::optional<Session> s;
    try {
      s.emplace(open_session(c));
    } catch (const PreconditionError&) {
      continue;  // torsion field beyond the size budget
    }
    const FieldTower& K = *s->tower;
    const LevelData x = build_level_data(s->module, s->divisor);
    const std::size_t i = rng() % d;
    std::vector<Poly> units;
    for (const auto& sp : oracle::monic_polys(K, d - 1 - i))
      if (oracle::is_unit_mod(sp, K, s->divisor)) units.push_back(sp);
    if (units.empty()) continue;
    const Poly sp = units[rng() % units.size()];
    const std::size_t n = s->module.rank();
    const LevelData src = act_group(GroupElement::central(sp, n, s->divisor), act_frobenius(x, n * i));
    const bool m = zeta_member(src, x);
    out.require(m, "h_s F^(ni) graph rejected for " + c.divisor);
    exercised.push_back({s->tower, src, x, m});
    ++done;
  }
  out.require(done == 50, "only " + std::to_string(done) + " feasible cases");
  out.note += (out.note.empty() ? "" : "; ") + std::to_string(done) + " cases from " + std::to_string(attempts) + " draws";
  return out;
}

Outcome example1_census() {
  Outcome out;
  const Session s = oracle::fixture("example1_q3");
  const FieldTower& K = *s.tower;
  const LevelData x = build_level_data(s.module, s.divisor);
  const GroupEnumerator G(K, 1, s.divisor);
  const Census c = scan(x);
  exercised_scans.push_back({s.tower, x, c});
  // h_{t-c}, c != 0, 1, and the Frobenius graph
  PairSet want;
  for (std::uint64_t k = 0; k < K.q(); ++k) {
    if (k == 0 || k == 1) continue;
    const auto g = G.find(GroupElement::central(Poly(K, {-K.fq(k), K.one()}), 1, s.divisor));
    out.require(g.has_value(), "homothety outside the group");
    if (g) want.insert({*g, 0});
  }
  want.insert({*G.find(GroupElement::identity(K, 1, s.divisor)), 1});
  out.require(oracle::member_set(c) == want, "census differs");
  out.require(c.entries.size() == 2 * G.size(), "scan did not cover F^0 and F^1");
  return out;
}

Outcome example3_diagonal() {
  Outcome out;
  std::mt19937_64 rng(108);
  for (const char* name : {"example3_q2", "example3_q3"}) {
    const Session s = oracle::fixture(name);
    const FieldTower& K = *s.tower;
    const LevelData x = build_level_data(s.module, s.divisor);
    const bool diag = zeta_member(x, x);
    out.require(diag, std::string(name) + ": diagonal rejected");
    exercised.push_back({s.tower, x, x, diag});
    const GroupEnumerator G(K, 2, s.divisor);
    const std::uint64_t id = *G.find(GroupElement::identity(K, 2, s.divisor));
    std::uniform_int_distribution<std::uint64_t> pick(0, G.size() - 1);
    std::uniform_int_distribution<std::uint64_t> unit(1, K.q() - 1);
    for (int k = 0; k < 20; ++k) {
      std::uint64_t idx;
      do idx = pick(rng);
      while (idx == id);
      // a random representative of the class, not just the normalized one
      const GroupElement g =
          compose(GroupElement::scalar(K.fq(unit(rng)), 2, s.divisor), G.element(idx), s.divisor);
      const LevelData src = act_group(g, x);
      const bool m = zeta_member(src, x);
      out.require(!m, std::string(name) + ": non-identity g accepted");
      exercised.push_back({s.tower, src, x, m});
    }
  }
  return out;
}

Outcome example4_census() {
  Outcome out;
  for (const char* name : {"example4_q2", "example4_q3"}) {
    const Session s = oracle::fixture(name);
    const FieldTower& K = *s.tower;
    const LevelData x = build_level_data(s.module, s.divisor);
    const GroupEnumerator G(K, 2, s.divisor);
    const Census c = scan(x);
    exercised_scans.push_back({s.tower, x, c});
    // {h_{d+t} : d != 0} inside the group, and F^2
    PairSet want;
    for (std::uint64_t k = 1; k < K.q(); ++k)
      if (auto g = G.find(GroupElement::central(Poly(K, {K.fq(k), K.one()}), 2, s.divisor))) want.insert({*g, 0});
    want.insert({*G.find(GroupElement::identity(K, 2, s.divisor)), 2});
    out.require(oracle::member_set(c) == want, std::string(name) + ": census differs");
    out.require(c.entries.size() == 3 * G.size(), std::string(name) + ": scan did not cover F^0..F^2");
  }
  return out;
}

Outcome oracle_equivalence() {
  Outcome out;
  std::size_t checked = 0;
  for (const auto& pr : exercised) {
    const oracle::LinearMembership lin(pr.target);
    out.require(lin.member(pr.source) == pr.member, "random pair disagrees");
    ++checked;
  }
  for (const auto& rec : exercised_scans) {
    const FieldTower& K = rec.x.tower();
    const GroupEnumerator G(K, rec.x.rank(), rec.x.div);
    const oracle::LinearMembership lin(rec.x);
    std::vector<LevelData> twisted;
    for (std::uint64_t i = 0; i <= rec.census.entries.back().i; ++i) twisted.push_back(act_frobenius(rec.x, i));
    const auto& entries = rec.census.entries;
    long bad = 0;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : bad)
    for (long k = 0; k < static_cast<long>(entries.size()); ++k) {
      const auto& e = entries[static_cast<std::size_t>(k)];
      if (lin.member(act_group(G.element(e.g), twisted[e.i])) != e.member) ++bad;
    }
    out.require(bad == 0, std::to_string(bad) + " scanned pairs disagree");
    checked += entries.size();
  }
  out.note += (out.note.empty() ? "" : "; ") + std::to_string(checked) + " pairs";
  return out;
}

Outcome theta_identity() {
  Outcome out;
  std::size_t checked = 0;
  for (const char* name : {"example1_q3", "example1_q5", "example2_q5", "jets_rank1_q3"}) {
    const Session s = oracle::fixture(name);
    const LevelData x = build_level_data(s.module, s.divisor);
    const GroupEnumerator G(*s.tower, 1, s.divisor);
    for (std::uint64_t i = 0; i < s.divisor.degree(); ++i) {
      const LevelData xi = act_frobenius(x, i);
      for (std::uint64_t g = 0; g < G.size(); ++g) {
        const LevelData src = act_group(G.element(g), xi);
        out.require(theta_member_rank1(rank1_quotient(src, x)) == zeta_member(src, x), std::string(name) + ": disagree");
        ++checked;
      }
    }
  }
  out.note = std::to_string(checked) + " pairs";
  return out;
}

Outcome isogeny() {
  Outcome out;
  std::mt19937_64 rng(112);
  auto K = FieldTower::create(3, 1, 6);
  for (std::size_t n : {1u, 2u}) {
    const DrinfeldModule dm = random_module(*K, n, rng);
    for (int k = 0; k < 20; ++k) out.require(is_isogeny(phi(dm, random_fq_poly(*K, 1 + k % 4, rng)), dm, dm), "phi_b");
    out.require(is_isogeny(OrePoly::sigma(*K), dm, dm.twisted(1)), "sigma");
    for (int k = 0; k < 20; ++k) {
      // random u of sigma-degree 1 or 2 with a non-F_q constant term
      std::vector<FqElem> c;
      for (int j = 0; j <= 1 + k % 2; ++j) c.push_back(random_elem(*K, rng));
      c[0] = c[0] + K->generator();
      const OrePoly u(*K, c);
      const OrePoly lhs = u * dm.phi_t(), rhs = dm.phi_t() * u;
      out.require(!is_isogeny(u, dm, dm) || lhs == rhs, "accepted a non-commuting u");
      out.require(is_isogeny(u, dm, dm) == (lhs == rhs), "decision differs from direct comparison");
      const DrinfeldModule other = random_module(*K, n, rng);
      out.require(!is_isogeny(OrePoly::constant(K->one()), dm, other) || other == dm, "identity between distinct modules");
    }
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "companion product A = (1 -a_1; 0 1)", 1.0, companion_product},
      {2, "determinant identity", 1.0, determinant_identity},
      {3, "nu solver", 1.0, nu_solver},
      {4, "CRT ring isomorphism", 1.0, crt},
      {5, "torsion identities", 1.0, torsion},
      {6, "monic homothety inclusion", 5.0, homothety_inclusion},
      {7, "Example 1 census", 10.0, example1_census},
      {8, "Example 3 diagonal", 5.0, example3_diagonal},
      {9, "Example 4 census", 60.0, example4_census},
      {10, "linear oracle equivalence", 60.0, oracle_equivalence},
      {11, "theta identity", 60.0, theta_identity},
      {12, "isogenies", 1.0, isogeny},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) o.require(false, "over time budget");
    failed += !o.pass;
    std::printf("%s %2d %-38s %8.3f s%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.note.empty() ? "" : "  ",
                o.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
