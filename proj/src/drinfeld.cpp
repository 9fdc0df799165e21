#include "dzeta/drinfeld.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "dzeta/level.hpp"
#include "json.hpp"

namespace dzeta {

namespace {

std::string strip(const std::string& s) {
  std::string r;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) r.push_back(c);
  return r;
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ConfigError("expected a nonnegative integer for " + what + ", got '" + s + "'");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ConfigError("integer out of range for " + what + ": '" + s + "'");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// DivisorSpec

DivisorSpec::DivisorSpec(std::vector<DivisorPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw ConfigError("divisor must contain at least one point");
  std::set<std::uint64_t> seen;
  for (const auto& pt : points_) {
    if (pt.r == 0) throw ConfigError("divisor multiplicities must be positive");
    if (!seen.insert(pt.alpha).second) throw ConfigError("divisor points must be distinct");
  }
}

DivisorSpec DivisorSpec::parse(const std::string& text) {
  const std::string s = strip(text);
  std::vector<DivisorPoint> pts;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(',', start);
    if (end == std::string::npos) end = s.size();
    const std::string item = s.substr(start, end - start);
    if (item.empty()) throw ConfigError("empty entry in divisor '" + text + "'");
    const std::size_t colon = item.find(':');
    DivisorPoint pt{};
    if (colon == std::string::npos) {
      pt.alpha = parse_uint(item, "divisor point");
      pt.r = 1;
    } else {
      pt.alpha = parse_uint(item.substr(0, colon), "divisor point");
      pt.r = static_cast<std::uint32_t>(parse_uint(item.substr(colon + 1), "multiplicity"));
    }
    pts.push_back(pt);
    start = end + 1;
  }
  return DivisorSpec(std::move(pts));
}

std::size_t DivisorSpec::degree() const {
  std::size_t d = 0;
  for (const auto& pt : points_) d += pt.r;
  return d;
}

void DivisorSpec::check_against(std::uint64_t q) const {
  for (const auto& pt : points_)
    if (pt.alpha >= q)
      throw ConfigError("divisor point " + std::to_string(pt.alpha) + " is not an element index of F_" +
                        std::to_string(q));
}

Poly DivisorSpec::poly(const FieldTower& K) const {
  Poly p = Poly::constant(K.one());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Poly lin = Poly::linear(alpha(K, i));
    for (std::uint32_t k = 0; k < points_[i].r; ++k) p = p * lin;
  }
  return p;
}

std::string DivisorSpec::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < points_.size(); ++i) os << (i ? "," : "") << points_[i].alpha << ":" << points_[i].r;
  return os.str();
}

// ---------------------------------------------------------------------------
// DrinfeldModule

DrinfeldModule::DrinfeldModule(std::size_t n, FqElem theta, std::vector<FqElem> a)
    : n_(n), theta_(std::move(theta)), a_(std::move(a)) {
  if (n_ == 0) throw ConfigError("rank must be at least 1");
  if (a_.size() != n_ - 1) throw ConfigError("a rank-n module needs exactly n-1 coefficients");
  const FieldTower& K = theta_.tower();
  std::vector<FqElem> c(n_ + 1, K.zero());
  c[0] = theta_;
  for (std::size_t k = 1; k < n_; ++k) c[k] = a_[k - 1];
  c[n_] = K.one();
  phi_t_ = OrePoly(K, std::move(c));
}

DrinfeldModule DrinfeldModule::twisted(std::uint64_t k) const {
  const FieldTower& K = tower();
  std::vector<FqElem> a = a_;
  for (auto& x : a) x = K.frobenius(x, k);
  return DrinfeldModule(n_, K.frobenius(theta_, k), std::move(a));
}

OrePoly phi(const DrinfeldModule& dm, const Poly& a) {
  const FieldTower& K = dm.tower();
  if (!a.over_fq()) throw std::invalid_argument("phi: polynomial coefficients must lie in F_q");
  OrePoly acc(K);
  for (std::size_t k = a.coeffs().size(); k-- > 0;) {
    acc = ore_mul(acc, dm.phi_t());
    acc += OrePoly::constant(a.coeffs()[k]);
  }
  return acc;
}

std::size_t torsion_dimension(const DrinfeldModule& dm, const DivisorSpec& div) {
  return additive_kernel(phi(dm, div.poly(dm.tower()))).size();
}

TorsionData torsion_basis(const DrinfeldModule& dm, const DivisorSpec& div) {
  const FieldTower& K = dm.tower();
  div.check_against(K.q());
  const std::size_t n = dm.rank();
  if (div.poly(K)(dm.theta()).is_zero()) throw PreconditionError("characteristic meets divisor");
  if (torsion_dimension(dm, div) < n * div.degree()) throw AmbientTooSmall("torsion does not split");

  TorsionData td;
  for (std::size_t i = 0; i < div.size(); ++i) {
    const OrePoly f = dm.phi_t() - OrePoly::constant(div.alpha(K, i));
    std::vector<std::vector<FqElem>> jets;
    std::vector<FqElem> level = additive_kernel(f);
    if (level.size() < n) throw AmbientTooSmall("torsion does not split");
    jets.push_back(level);
    for (std::uint32_t h = 1; h < div.points()[i].r; ++h) {
      std::vector<FqElem> next;
      for (const FqElem& prev : jets.back()) {
        auto z = additive_preimage(f, prev);
        if (!z) throw AmbientTooSmall("torsion jets do not lift");
        next.push_back(*z);
      }
      jets.push_back(std::move(next));
    }
    td.jets.push_back(std::move(jets));
  }
  return td;
}

bool is_isogeny(const OrePoly& u, const DrinfeldModule& dm1, const DrinfeldModule& dm2) {
  if (&dm1.tower() != &dm2.tower() || &u.tower() != &dm1.tower())
    throw std::invalid_argument("is_isogeny: tower mismatch");
  return ore_mul(u, dm1.phi_t()) == ore_mul(dm2.phi_t(), u);
}

// ---------------------------------------------------------------------------
// Parameters and extension search

std::uint64_t ModuleParams::q() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) q *= p;
  return q;
}

namespace {

struct ThetaSpec {
  enum Kind { Degree, Fq, Random, Coords } kind;
  std::uint64_t value = 0;
  std::vector<std::uint32_t> coords;
};

ThetaSpec parse_theta(const std::string& raw) {
  const std::string s = strip(raw);
  if (s == "auto") return {ThetaSpec::Degree, 4, {}};
  if (!s.empty() && s.front() == '[') {
    ThetaSpec t{ThetaSpec::Coords, 0, {}};
    try {
      const auto j = nlohmann::json::parse(s);
      for (const auto& x : j) t.coords.push_back(x.get<std::uint32_t>());
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("bad theta coordinates: ") + e.what());
    }
    return t;
  }
  const std::size_t colon = s.find(':');
  if (colon == std::string::npos) throw ConfigError("unknown theta spec '" + raw + "'");
  const std::string kind = s.substr(0, colon);
  const std::uint64_t v = parse_uint(s.substr(colon + 1), "theta spec");
  if (kind == "degree") {
    if (v == 0) throw ConfigError("theta degree must be positive");
    return {ThetaSpec::Degree, v, {}};
  }
  if (kind == "fq") return {ThetaSpec::Fq, v, {}};
  if (kind == "random") return {ThetaSpec::Random, v, {}};
  throw ConfigError("unknown theta spec '" + raw + "'");
}

}  // namespace

std::uint32_t ModuleParams::theta_degree() const {
  const ThetaSpec t = parse_theta(theta);
  if (t.kind == ThetaSpec::Degree || t.kind == ThetaSpec::Random) return static_cast<std::uint32_t>(t.value);
  return 1;
}

FqElem resolve_theta(const FieldTower& K, const std::string& spec, std::uint64_t seed) {
  const ThetaSpec t = parse_theta(spec);
  switch (t.kind) {
    case ThetaSpec::Degree: {
      if (K.M() % t.value != 0)
        throw AmbientTooSmall("theta degree " + std::to_string(t.value) + " does not divide M");
      const std::size_t e = static_cast<std::size_t>(t.value) * K.m();
      const auto roots = K.roots_in_subfield(fp::canonical_modulus(K.p(), e), e);
      if (roots.empty()) throw std::logic_error("resolve_theta: no root found");
      return roots.front();
    }
    case ThetaSpec::Fq:
      if (t.value >= K.q()) throw ConfigError("theta index outside F_q");
      return K.fq(t.value);
    case ThetaSpec::Random: {
      if (K.M() < t.value) throw AmbientTooSmall("no element of the requested degree");
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::uint32_t> digit(0, K.p() - 1);
      std::vector<std::uint32_t> c(K.degree());
      for (int attempt = 0; attempt < 10000; ++attempt) {
        for (auto& x : c) x = digit(rng);
        const FqElem z = K.from_coeffs(c);
        if (K.degree_over_fq(z) >= t.value) return z;
      }
      throw AmbientTooSmall("no element of the requested degree found");
    }
    case ThetaSpec::Coords:
      if (t.coords.size() != K.degree())
        throw ConfigError("theta needs exactly " + std::to_string(K.degree()) + " coordinates");
      for (auto c : t.coords)
        if (c >= K.p()) throw ConfigError("theta coordinates must lie in [0, p)");
      return K.from_coeffs(t.coords);
  }
  throw std::logic_error("resolve_theta: unreachable");
}

DrinfeldModule instantiate(const ModuleParams& params, const FieldTower& K) {
  if (params.n == 0) throw ConfigError("rank must be at least 1");
  if (params.coeff_polys.size() > params.n - 1)
    throw ConfigError("too many coefficient polynomials for rank " + std::to_string(params.n));
  const FqElem theta = resolve_theta(K, params.theta, params.seed);
  std::vector<FqElem> a(params.n - 1, K.zero());
  for (std::size_t k = 0; k < params.coeff_polys.size(); ++k) {
    std::vector<FqElem> c;
    for (auto idx : params.coeff_polys[k]) {
      if (idx >= K.q()) throw ConfigError("coefficient index outside F_q");
      c.push_back(K.fq(idx));
    }
    a[k] = Poly(K, std::move(c))(theta);
  }
  return DrinfeldModule(params.n, theta, std::move(a));
}

ExtensionSearch sufficient_extension(const ModuleParams& params, const DivisorSpec& div, std::size_t max_degree) {
  div.check_against(params.q());
  const std::uint32_t base = std::lcm(params.theta_degree(), static_cast<std::uint32_t>(params.n));
  ExtensionSearch out{};
  for (std::uint32_t M = base; std::size_t(M) * params.m <= std::min(max_degree, kMaxDegree); M += base) {
    out.tried.push_back(M);
    auto K = FieldTower::create(params.p, params.m, M);
    try {
      const DrinfeldModule dm = instantiate(params, *K);
      torsion_basis(dm, div);
      solve_nu(tau_n_matrix(dm), dm.rank());
    } catch (const AmbientTooSmall&) {
      continue;
    }
    out.M = M;
    out.tower = std::move(K);
    return out;
  }
  throw PreconditionError("cap exceeded: no M with m*M <= " + std::to_string(max_degree) + " works");
}

}  // namespace dzeta
