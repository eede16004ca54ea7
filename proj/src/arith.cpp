#include "charsum/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace charsum::arith {

u64 gcd(i64 a, i64 b) {
  u64 x = a < 0 ? u64(-(a + 1)) + 1 : u64(a);
  u64 y = b < 0 ? u64(-(b + 1)) + 1 : u64(b);
  return std::gcd(x, y);
}

u64 mulmod(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 m) {
  // extended Euclid on (a mod m, m)
  i64 t = 0, newt = 1;
  i64 r = i64(m), newr = i64(a % m);
  while (newr != 0) {
    i64 q = r / newr;
    t = std::exchange(newt, t - q * newt);
    r = std::exchange(newr, r - q * newr);
  }
  if (r != 1) throw NotAUnit("invmod: argument not invertible");
  if (t < 0) t += i64(m);
  return u64(t);
}

CrtResult crt_solve(const std::vector<std::pair<i64, u64>>& congruences) {
  u64 x = 0, mod = 1;
  for (const auto& [res, m] : congruences) {
    if (m == 0) throw std::invalid_argument("crt_solve: zero modulus");
    u64 r = u64(((res % i64(m)) + i64(m)) % i64(m));
    if (std::gcd(mod, m) != 1)
      throw NonCoprimeModuli("crt_solve: moduli share a common factor");
    if (u128(mod) * m > u128(UINT64_MAX))
      throw RangeExceeded("crt_solve: combined modulus exceeds 64 bits");
    // x' = x + mod * k, k = (r - x) / mod (mod m)
    u64 diff = (r + m - x % m) % m;
    u64 k = m == 1 ? 0 : mulmod(diff, invmod(mod % m, m), m);
    x = x + mod * k;
    mod = mod * m;
  }
  return {x, mod};
}

int jacobi(i64 a, u64 n) {
  if (n % 2 == 0) throw EvenModulus("jacobi: even modulus");
  int result = 1;
  u64 x;
  if (a < 0) {
    if (n % 4 == 3) result = -result;
    x = u64(-(a + 1)) + 1;
  } else {
    x = u64(a);
  }
  x %= n;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      if (n % 8 == 3 || n % 8 == 5) result = -result;
    }
    std::swap(x, n);
    if (x % 4 == 3 && n % 4 == 3) result = -result;
    x %= n;
  }
  return n == 1 ? result : 0;
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) d /= 2, ++s;
  // witness set deterministic for all 64-bit integers
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (!miller_rabin_witness(n, a, d, s)) return false;
  return true;
}

namespace {

// Brent's cycle variant of the rho method. Deterministic: the polynomial
// increment steps through c = 1, 2, 3, ... until a factor splits off.
u64 rho_factor(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    u64 power = 1, lam = 1;
    auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      if (power == lam) {
        x = y;
        power *= 2;
        lam = 0;
      }
      y = step(y);
      ++lam;
      u64 diff = x > y ? x - y : y - x;
      if (diff == 0) break;  // cycle without factor; retry with next c
      d = std::gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_rec(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  u64 d = rho_factor(n);
  factor_rec(d, primes);
  factor_rec(n / d, primes);
}

}  // namespace

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization f;
  f.value = n;
  std::vector<u64> primes;
  for (u64 p = 2; p <= 1000000 && p * p <= n; p == 2 ? p = 3 : p += 2) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_rec(n, primes);
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    if (!f.factors.empty() && f.factors.back().first == p)
      ++f.factors.back().second;
    else
      f.factors.push_back({p, 1});
  }
  return f;
}

u64 euler_phi(u64 n) {
  u64 phi = 1;
  for (auto [p, k] : factorize(n).factors) {
    phi *= p - 1;
    for (unsigned i = 1; i < k; ++i) phi *= p;
  }
  return phi;
}

u64 primitive_root(u64 m) {
  if (m == 0) throw NonCyclicGroup("primitive_root: modulus 0");
  if (m == 1) return 0;
  if (m == 2) return 1;
  if (m == 4) return 3;
  auto f = factorize(m);
  bool ok = false;
  if (f.factors.size() == 1 && f.factors[0].first != 2) ok = true;
  if (f.factors.size() == 2 && f.factors[0] == std::pair<u64, unsigned>{2, 1})
    ok = true;
  if (!ok) throw NonCyclicGroup("primitive_root: unit group not cyclic");
  u64 phi = euler_phi(m);
  auto phi_factors = factorize(phi).factors;
  for (u64 g = 2;; ++g) {
    if (std::gcd(g, m) != 1) continue;
    bool gen = true;
    for (auto [r, k] : phi_factors) {
      (void)k;
      if (powmod(g, phi / r, m) == 1) {
        gen = false;
        break;
      }
    }
    if (gen) return g;
  }
}

u64 discrete_log_in_subgroup(u64 x, u64 generator, u64 order, u64 modulus) {
  x %= modulus;
  if (std::gcd(x, modulus) != 1)
    throw NotAUnit("discrete_log: argument shares a factor with the modulus");
  if (order == 1) {
    if (x == 1 % modulus) return 0;
    throw NotAUnit("discrete_log: element outside subgroup");
  }
  u64 m = u64(std::ceil(std::sqrt(double(order))));
  std::unordered_map<u64, u64> baby;
  baby.reserve(m);
  u64 cur = 1 % modulus;
  for (u64 b = 0; b < m; ++b) {
    baby.emplace(cur, b);  // keeps smallest b per residue
    cur = mulmod(cur, generator, modulus);
  }
  u64 giant = powmod(generator, order - (m % order), modulus);  // g^(-m)
  u64 gamma = x;
  for (u64 i = 0; i * m <= order; ++i) {
    auto it = baby.find(gamma);
    if (it != baby.end()) return i * m + it->second;
    gamma = mulmod(gamma, giant, modulus);
  }
  throw NotAUnit("discrete_log: element outside subgroup");
}

u64 discrete_log(u64 x, u64 generator, u64 modulus) {
  return discrete_log_in_subgroup(x, generator, euler_phi(modulus), modulus);
}

}  // namespace charsum::arith
