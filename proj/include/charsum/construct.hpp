#pragma once

#include <string>
#include <utility>
#include <vector>

#include "charsum/character.hpp"

#include "json.hpp"

namespace charsum::construct {

using arith::i64;
using arith::u64;

struct SearchExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateProduct : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Odd primitive character of even order g with prime conductor:
/// m is the smallest prime with m = g+1 (mod 2g), alpha the smallest
/// primitive root mod m, and psi(alpha) = e(1/g).
struct PsiArtifact {
  u64 g = 0;
  u64 m = 0;
  u64 alpha = 0;
  character::DirichletCharacter psi;
  character::CharacterProfile profile;
};

PsiArtifact build_psi(u64 g, u64 search_ceiling = 10'000'000);

/// Paley-style quadratic character: Q solves x = -1 (mod 8), x = Q_p (mod p)
/// for odd primes p <= N, where Q_p is the smallest positive integer with
/// jacobi(Q_p, p) equal to the nonprincipal character mod 4 at p. chi is the
/// primitive character inducing n -> jacobi(n, Q); it is odd, quadratic, and
/// equals 1 at every n <= N.
struct PaleyArtifact {
  u64 N = 0;
  std::vector<std::pair<u64, u64>> residues;  // (p, Q_p)
  u64 Q = 0;
  character::DirichletCharacter chi;
  u64 q = 0;  // conductor of chi
  double log_Q_over_N = 0.0;
  bool log_Q_le_2N = false;  // recorded, not asserted (asymptotic statement)
};

PaleyArtifact build_paley(u64 N);

/// Primitive character of order g inducing the product chi * psi_g.
struct ChiGArtifact {
  u64 g = 0;
  PsiArtifact psi;
  PaleyArtifact paley;
  character::DirichletCharacter chi_g;
  u64 q_g = 0;
  double qg_over_q = 0.0;
};

ChiGArtifact build_chi_g(u64 g, u64 N);

nlohmann::json to_manifest(const ChiGArtifact& art);
ChiGArtifact from_manifest(const nlohmann::json& j);

}  // namespace charsum::construct
