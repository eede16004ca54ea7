#include "charsum/arith.hpp"

#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

using namespace charsum::arith;

TEST_CASE("gcd basics") {
  CHECK(gcd(0, 5) == 5);
  CHECK(gcd(12, 18) == 6);
  CHECK(gcd(35, 64) == 1);
  CHECK(gcd(0, 0) == 0);
  CHECK(gcd(-12, 18) == 6);
  CHECK(gcd(INT64_MIN, 0) == u64(1) << 63);
}

TEST_CASE("gcd divides both arguments and dominates common divisors") {
  for (i64 a = -200; a <= 200; ++a) {
    for (i64 b = -200; b <= 200; ++b) {
      u64 g = gcd(a, b);
      if (g == 0) {
        CHECK(a == 0);
        CHECK(b == 0);
        continue;
      }
      CHECK(a % i64(g) == 0);
      CHECK(b % i64(g) == 0);
      for (u64 d = 1; d <= 20; ++d)
        if (a % i64(d) == 0 && b % i64(d) == 0) CHECK(g % d == 0);
    }
  }
}

TEST_CASE("crt_solve examples") {
  auto r = crt_solve({{-1, 8}, {2, 3}, {1, 5}, {3, 7}});
  CHECK(r.solution == 311);
  CHECK(r.modulus == 840);
  CHECK(311 % 8 == 7);
  CHECK(311 % 3 == 2);
  CHECK(311 % 5 == 1);
  CHECK(311 % 7 == 3);

  auto trivial = crt_solve({{0, 1}});
  CHECK(trivial.solution == 0);
  CHECK(trivial.modulus == 1);

  auto small = crt_solve({{1, 2}, {2, 3}});
  CHECK(small.solution == 5);
  CHECK(small.modulus == 6);

  CHECK(crt_solve({}).modulus == 1);
}

TEST_CASE("crt_solve rejects non-coprime moduli") {
  CHECK_THROWS_AS(crt_solve({{1, 6}, {2, 4}}), NonCoprimeModuli);
  CHECK_THROWS_AS(crt_solve({{0, 2}, {0, 2}}), NonCoprimeModuli);
}

TEST_CASE("crt_solve satisfies the congruences and is unique") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    // random pairwise coprime moduli with product <= 1e4
    std::vector<u64> pool = {3, 5, 7, 8, 9, 11, 13};
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::pair<i64, u64>> system;
    u64 prod = 1;
    for (u64 m : pool) {
      if (prod * m > 10000) break;
      bool coprime = true;
      for (auto& [r, mm] : system) coprime &= std::gcd(mm, m) == 1;
      if (!coprime) continue;
      system.push_back({i64(rng() % m), m});
      prod *= m;
    }
    auto res = crt_solve(system);
    CHECK(res.modulus == prod);
    for (auto& [r, m] : system) CHECK(res.solution % m == u64(r));
    // uniqueness by exhaustive scan
    u64 count = 0;
    for (u64 x = 0; x < prod; ++x) {
      bool all = true;
      for (auto& [r, m] : system) all &= x % m == u64(r);
      if (all) {
        ++count;
        CHECK(x == res.solution);
      }
    }
    CHECK(count == 1);
  }
}

TEST_CASE("jacobi examples") {
  for (i64 k : {-3, 0, 1, 7, 100}) CHECK(jacobi(k, 1) == 1);
  CHECK(jacobi(2, 7) == 1);
  CHECK(jacobi(2, 311) == 1);  // 311 = 7 (mod 8)
  CHECK(jacobi(3, 35) == 1);   // (3/5)(3/7) = (-1)(-1)
  CHECK(jacobi(0, 3) == 0);
  CHECK(jacobi(-1, 311) == -1);
  CHECK_THROWS_AS(jacobi(3, 4), EvenModulus);
}

TEST_CASE("jacobi matches the Euler criterion at odd primes") {
  for (u64 p = 3; p <= 200; p += 2) {
    if (!is_prime(p)) continue;
    for (u64 a = 0; a < p; ++a) {
      u64 e = powmod(a, (p - 1) / 2, p);
      int legendre = e == 0 ? 0 : (e == 1 ? 1 : -1);
      CHECK(jacobi(i64(a), p) == legendre);
    }
  }
}

TEST_CASE("jacobi is completely multiplicative in the numerator") {
  for (u64 n = 1; n <= 99; n += 2)
    for (i64 a = -50; a <= 50; ++a)
      for (i64 b = -50; b <= 50; ++b)
        CHECK(jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n));
}

TEST_CASE("is_prime matches trial division up to 1e6") {
  const u64 limit = 1000000;
  std::vector<bool> sieve(limit + 1, true);
  sieve[0] = sieve[1] = false;
  for (u64 p = 2; p * p <= limit; ++p)
    if (sieve[p])
      for (u64 m = p * p; m <= limit; m += p) sieve[m] = false;
  for (u64 n = 1; n <= limit; ++n) CHECK(is_prime(n) == sieve[n]);
}

TEST_CASE("is_prime on selected larger values") {
  CHECK(is_prime(311));
  CHECK_FALSE(is_prime(841));  // 29^2
  CHECK(is_prime(117911));
  CHECK_FALSE(is_prime(2039831));  // 29 * 31 * 2269
  CHECK_FALSE(is_prime(6123911));  // 23 * 449 * 593
  CHECK(is_prime(u64(1000000007)));
  CHECK(is_prime(u64(18446744073709551557ull)));  // largest 64-bit prime
  CHECK_FALSE(is_prime(u64(3215031751ull)));      // strong pseudoprime to 2,3,5,7
}

TEST_CASE("factorize examples") {
  CHECK(factorize(1).factors.empty());
  auto f840 = factorize(840);
  std::vector<std::pair<u64, unsigned>> expect840 = {
      {2, 3}, {3, 1}, {5, 1}, {7, 1}};
  CHECK(f840.factors == expect840);
  auto f311 = factorize(311);
  CHECK(f311.factors == std::vector<std::pair<u64, unsigned>>{{311, 1}});
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize round-trips and reports primes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    u64 n = 1 + rng() % 100000000;
    auto f = factorize(n);
    u64 prod = 1;
    u64 prev = 0;
    for (auto [p, k] : f.factors) {
      CHECK(p > prev);
      CHECK(is_prime(p));
      CHECK(k >= 1);
      for (unsigned i = 0; i < k; ++i) prod *= p;
      prev = p;
    }
    CHECK(prod == n);
  }
  // semiprime of two large-ish primes exercises the rho path
  auto f = factorize(u64(1000003) * 1000033);
  CHECK(f.factors == std::vector<std::pair<u64, unsigned>>{{1000003, 1},
                                                           {1000033, 1}});
}

TEST_CASE("primitive_root examples") {
  CHECK(primitive_root(3) == 2);
  CHECK(primitive_root(5) == 2);
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(2) == 1);
  CHECK(primitive_root(4) == 3);
  CHECK(primitive_root(9) == 2);
  CHECK(primitive_root(18) == 5);
  CHECK_THROWS_AS(primitive_root(8), NonCyclicGroup);
  CHECK_THROWS_AS(primitive_root(15), NonCyclicGroup);
  CHECK_THROWS_AS(primitive_root(12), NonCyclicGroup);
}

TEST_CASE("primitive_root powers enumerate every unit exactly once") {
  for (u64 m = 3; m <= 10000; ++m) {
    bool cyclic;
    auto f = factorize(m);
    if (f.factors.size() == 1)
      cyclic = f.factors[0].first != 2 || f.factors[0].second <= 2;
    else
      cyclic = f.factors.size() == 2 &&
               f.factors[0] == std::pair<u64, unsigned>{2, 1};
    if (!cyclic) continue;
    u64 g = primitive_root(m);
    u64 phi = euler_phi(m);
    std::set<u64> seen;
    u64 cur = 1;
    for (u64 j = 0; j < phi; ++j) {
      seen.insert(cur);
      cur = mulmod(cur, g, m);
    }
    CHECK(cur == 1);  // order exactly phi
    CHECK(seen.size() == phi);
    for (u64 u : seen) CHECK(std::gcd(u, m) == 1);
  }
}

TEST_CASE("primitive_root is the smallest generator") {
  for (u64 m : {3, 5, 7, 11, 13, 23, 25, 27, 49, 311, 1201}) {
    u64 g = primitive_root(m);
    u64 phi = euler_phi(m);
    for (u64 cand = 2; cand < g; ++cand) {
      if (std::gcd(cand, m) != 1) continue;
      u64 order = 1;
      u64 cur = cand;
      while (cur != 1) {
        cur = mulmod(cur, cand, m);
        ++order;
      }
      CHECK(order < phi);  // anything smaller must fail to generate
    }
  }
}

TEST_CASE("discrete_log examples") {
  CHECK(discrete_log(1, 2, 5) == 0);
  CHECK(discrete_log(4, 2, 5) == 2);
  CHECK(discrete_log(3, 2, 5) == 3);
  CHECK_THROWS_AS(discrete_log(10, 2, 5), NotAUnit);
}

TEST_CASE("discrete_log inverts exponentiation with the smallest exponent") {
  for (u64 m : {3, 5, 7, 23, 121, 343, 1009, 104729}) {
    u64 g = primitive_root(m);
    u64 phi = euler_phi(m);
    std::mt19937_64 rng(m);
    for (int trial = 0; trial < 50; ++trial) {
      u64 j = rng() % phi;
      u64 x = powmod(g, j, m);
      CHECK(discrete_log(x, g, m) == j);  // j < phi, hence smallest
    }
  }
}

TEST_CASE("discrete_log in a proper subgroup") {
  // powers of 5 mod 32: subgroup of order 8
  for (u64 t = 0; t < 8; ++t)
    CHECK(discrete_log_in_subgroup(powmod(5, t, 32), 5, 8, 32) == t);
  CHECK_THROWS_AS(discrete_log_in_subgroup(3, 5, 8, 32), NotAUnit);
}
