#include "charsum/construct.hpp"

#include <cmath>

#include "charsum/jsonutil.hpp"

namespace charsum::construct {

using character::CharacterValue;
using character::DirichletCharacter;

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::logic_error(std::string("construction check failed: ") + what);
}

int chi_minus4(u64 p) { return p % 4 == 1 ? 1 : -1; }

}  // namespace

PsiArtifact build_psi(u64 g, u64 search_ceiling) {
  if (g < 2 || g % 2 != 0)
    throw std::invalid_argument("build_psi: g must be even and >= 2");
  u64 m = 0;
  for (u64 cand = g + 1; cand <= search_ceiling; cand += 2 * g) {
    if (arith::is_prime(cand)) {
      m = cand;
      break;
    }
  }
  if (m == 0)
    throw SearchExhausted("build_psi: no prime = g+1 (mod 2g) below ceiling");
  require((m - 1) / g % 2 == 1, "(m-1)/g odd");

  PsiArtifact art;
  art.g = g;
  art.m = m;
  art.alpha = arith::primitive_root(m);
  // psi(alpha) = e(1/g): exponent (m-1)/g on the generator
  art.psi = DirichletCharacter::from_exponents(m, {{m, {(m - 1) / g}}});
  require(art.psi.evaluate(i64(art.alpha)) ==
              CharacterValue::root_of_unity(1, g),
          "psi(alpha) = e(1/g)");
  art.profile = art.psi.profile();
  require(art.profile.order == g, "psi has order g");
  require(art.profile.odd, "psi is odd");
  require(art.profile.is_primitive, "psi is primitive");
  require(art.psi.evaluate(-1) == CharacterValue::root_of_unity(1, 2),
          "psi(-1) = e((m-1)/2g) = -1");
  return art;
}

PaleyArtifact build_paley(u64 N) {
  if (N < 3) throw std::invalid_argument("build_paley: N must be >= 3");
  PaleyArtifact art;
  art.N = N;
  std::vector<std::pair<i64, u64>> congruences{{-1, 8}};
  for (u64 p = 3; p <= N; p += 2) {
    if (!arith::is_prime(p)) continue;
    int target = chi_minus4(p);
    u64 qp = 1;
    while (arith::jacobi(i64(qp), p) != target) ++qp;
    art.residues.push_back({p, qp});
    congruences.push_back({i64(qp), p});
  }
  auto crt = arith::crt_solve(congruences);
  art.Q = crt.solution;
  require(art.Q % 8 == 7, "Q = -1 (mod 8)");

  art.chi = character::primitive_inducing(character::jacobi_character(art.Q));
  art.q = art.chi.modulus();

  // quadratic reciprocity consequences from the construction
  for (auto [p, qp] : art.residues) {
    require(arith::jacobi(i64(qp), p) == chi_minus4(p), "jacobi(Q_p, p)");
    require(arith::jacobi(i64(art.Q), p) == chi_minus4(p), "jacobi(Q, p)");
    require(arith::jacobi(i64(p), art.Q) == 1, "jacobi(p, Q) = 1");
  }
  require(arith::jacobi(2, art.Q) == 1, "jacobi(2, Q) = 1");
  require(arith::jacobi(-1, art.Q) == -1, "jacobi(-1, Q) = -1");

  for (u64 n = 1; n <= N; ++n)
    require(art.chi.evaluate(i64(n)) == CharacterValue::one(),
            "chi(n) = 1 for n <= N");
  auto prof = art.chi.profile();
  require(prof.odd, "chi is odd");
  require(prof.order == 2, "chi is quadratic");
  require(prof.is_primitive, "chi is primitive");
  require(art.q >= N, "q >= N");
  // N >= (1/2) log q, with outward rounding on the logarithm
  double log_q_up = std::nextafter(std::log(double(art.q)), HUGE_VAL);
  require(2.0 * double(N) >= log_q_up, "N >= (1/2) log q");

  art.log_Q_over_N = std::log(double(art.Q)) / double(N);
  art.log_Q_le_2N = std::log(double(art.Q)) <= 2.0 * double(N);
  return art;
}

ChiGArtifact build_chi_g(u64 g, u64 N) {
  ChiGArtifact art;
  art.g = g;
  art.psi = build_psi(g);
  art.paley = build_paley(N);
  DirichletCharacter product = character::multiply(art.paley.chi, art.psi.psi);
  if (product.is_principal())
    throw DegenerateProduct("build_chi_g: chi * psi_g is principal");
  art.chi_g = character::primitive_inducing(product);
  art.q_g = art.chi_g.modulus();

  auto prof = art.chi_g.profile();
  require(prof.order == g, "chi_g has order g");
  require(!prof.odd, "chi_g is even");
  require(prof.is_primitive, "chi_g is primitive");
  // conductor comparability: q_g / q within [1/m, m]
  require(art.q_g <= art.paley.q * art.psi.m, "q_g <= q * m");
  require(art.q_g * art.psi.m >= art.paley.q, "q_g >= q / m");
  art.qg_over_q = double(art.q_g) / double(art.paley.q);
  return art;
}

nlohmann::json to_manifest(const ChiGArtifact& art) {
  using jsonutil::hexfloat;
  nlohmann::json j;
  j["schema"] = "chi-g-manifest/1";
  j["g"] = art.g;
  j["N"] = art.paley.N;
  j["psi"] = {
      {"m", art.psi.m},
      {"alpha", art.psi.alpha},
      {"character", art.psi.psi.canonical_string()},
      {"order", art.psi.profile.order},
      {"odd", art.psi.profile.odd},
      {"conductor", art.psi.profile.conductor},
      {"primitive", art.psi.profile.is_primitive},
  };
  nlohmann::json residues = nlohmann::json::array();
  for (auto [p, qp] : art.paley.residues) residues.push_back({p, qp});
  j["paley"] = {
      {"N", art.paley.N},
      {"residues", residues},
      {"Q", art.paley.Q},
      {"q", art.paley.q},
      {"character", art.paley.chi.canonical_string()},
      {"log_Q_over_N", hexfloat(art.paley.log_Q_over_N)},
      {"log_Q_le_2N", art.paley.log_Q_le_2N},
  };
  j["chi_g"] = {
      {"q_g", art.q_g},
      {"character", art.chi_g.canonical_string()},
      {"qg_over_q", hexfloat(art.qg_over_q)},
  };
  return j;
}

ChiGArtifact from_manifest(const nlohmann::json& j) {
  if (j.value("schema", "") != "chi-g-manifest/1")
    throw std::invalid_argument("from_manifest: unknown schema");
  ChiGArtifact art;
  art.g = j.at("g").get<u64>();
  const auto& jp = j.at("psi");
  art.psi.g = art.g;
  art.psi.m = jp.at("m").get<u64>();
  art.psi.alpha = jp.at("alpha").get<u64>();
  art.psi.psi = character::DirichletCharacter::parse_canonical(
      jp.at("character").get<std::string>());
  art.psi.profile = art.psi.psi.profile();
  const auto& ja = j.at("paley");
  art.paley.N = ja.at("N").get<u64>();
  for (const auto& r : ja.at("residues"))
    art.paley.residues.push_back({r.at(0).get<u64>(), r.at(1).get<u64>()});
  art.paley.Q = ja.at("Q").get<u64>();
  art.paley.q = ja.at("q").get<u64>();
  art.paley.chi = character::DirichletCharacter::parse_canonical(
      ja.at("character").get<std::string>());
  art.paley.log_Q_over_N =
      jsonutil::parse_hexfloat(ja.at("log_Q_over_N").get<std::string>());
  art.paley.log_Q_le_2N = ja.at("log_Q_le_2N").get<bool>();
  const auto& jg = j.at("chi_g");
  art.q_g = jg.at("q_g").get<u64>();
  art.chi_g = character::DirichletCharacter::parse_canonical(
      jg.at("character").get<std::string>());
  art.qg_over_q = jsonutil::parse_hexfloat(jg.at("qg_over_q").get<std::string>());
  if (art.psi.psi.modulus() != art.psi.m || art.paley.chi.modulus() != art.paley.q ||
      art.chi_g.modulus() != art.q_g)
    throw std::invalid_argument("from_manifest: modulus mismatch");
  // deeper tampering (edited Q, wrong product character) is deliberately left
  // to the certify claims so it surfaces as a certificate failure, not a parse
  // error
  return art;
}

}  // namespace charsum::construct
