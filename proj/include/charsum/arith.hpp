#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace charsum::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

struct NonCoprimeModuli : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EvenModulus : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonCyclicGroup : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotAUnit : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct RangeExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

u64 gcd(i64 a, i64 b);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

/// Modular inverse of a mod m; requires gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);

struct CrtResult {
  u64 solution;  // in [0, modulus)
  u64 modulus;   // product of the input moduli
};

/// Solves x = r_i (mod m_i) for pairwise coprime moduli. Residues may be
/// negative; they are reduced into [0, m_i). Throws NonCoprimeModuli if two
/// moduli share a factor, RangeExceeded if the combined modulus overflows.
CrtResult crt_solve(const std::vector<std::pair<i64, u64>>& congruences);

/// Jacobi symbol (a/n) for odd n >= 1. Completely multiplicative in a;
/// equals the Legendre symbol when n is prime.
int jacobi(i64 a, u64 n);

/// Deterministic for all 64-bit n (fixed strong-probable-prime witness set).
bool is_prime(u64 n);

struct Factorization {
  u64 value = 1;
  std::vector<std::pair<u64, unsigned>> factors;  // (prime, exponent), prime ascending
};

Factorization factorize(u64 n);
u64 euler_phi(u64 n);

/// Smallest generator of the unit group mod m. Requires m in
/// {1, 2, 4, p^k, 2 p^k} with p an odd prime; throws NonCyclicGroup otherwise.
u64 primitive_root(u64 m);

/// Smallest j >= 0 with generator^j = x (mod modulus), where generator
/// generates the full unit group. Baby-step giant-step, O(sqrt(phi)).
u64 discrete_log(u64 x, u64 generator, u64 modulus);

/// Same, inside the cyclic subgroup generated by `generator` of the given
/// order. Throws NotAUnit if x is not in the subgroup.
u64 discrete_log_in_subgroup(u64 x, u64 generator, u64 order, u64 modulus);

}  // namespace charsum::arith
