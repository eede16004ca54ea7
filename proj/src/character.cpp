#include "charsum/character.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace charsum::character {

using arith::discrete_log_in_subgroup;
using arith::euler_phi;
using arith::factorize;
using arith::mulmod;
using arith::primitive_root;

CharacterValue CharacterValue::root_of_unity(i64 num, u64 den) {
  if (den == 0) throw std::invalid_argument("root_of_unity: zero denominator");
  i64 r = num % i64(den);
  if (r < 0) r += i64(den);
  u64 a = u64(r);
  u64 g = std::gcd(a, den);
  if (a == 0) g = den;  // 0/d -> 0/1
  CharacterValue v;
  v.num_ = a / g;
  v.den_ = den / g;
  return v;
}

CharacterValue CharacterValue::operator*(const CharacterValue& o) const {
  if (zero_ || o.zero_) return zero();
  u128 num = u128(num_) * o.den_ + u128(o.num_) * den_;
  u128 den = u128(den_) * o.den_;
  num %= den;
  u128 a = num, b = den;
  while (b) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  u128 g = num == 0 ? den : a;
  return root_of_unity(i64(u64(num / g)), u64(den / g));
}

CharacterValue CharacterValue::conj() const {
  if (zero_) return zero();
  return root_of_unity(-i64(num_), den_);
}

std::complex<double> unit_complex(u64 num, u64 den) {
  num %= den;
  if ((4 * num) % den == 0) {
    switch (4 * num / den) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  double angle = 2.0 * std::numbers::pi * (double(num) / double(den));
  return {std::cos(angle), std::sin(angle)};
}

std::complex<double> CharacterValue::to_complex() const {
  if (zero_) return {0.0, 0.0};
  return unit_complex(num_, den_);
}

namespace {

Component make_component(u64 p, unsigned k) {
  Component c;
  c.p = p;
  c.k = k;
  c.pk = 1;
  for (unsigned i = 0; i < k; ++i) c.pk *= p;
  if (p == 2 && k >= 3) {
    c.split = true;
    c.generator = 5;
    c.group_order = c.pk / 4;  // order of 5 mod 2^k
  } else {
    c.split = false;
    c.generator = primitive_root(c.pk);
    c.group_order = euler_phi(c.pk);
  }
  return c;
}

std::vector<Component> make_components(u64 q) {
  std::vector<Component> comps;
  for (auto [p, k] : factorize(q).factors) comps.push_back(make_component(p, k));
  return comps;
}

// Order of the local character on one component.
u64 local_order(const Component& c) {
  u64 d = c.group_order / std::gcd(c.exp_gen, c.group_order);
  if (c.split && c.exp_minus1 == 1) d = std::lcm(d, u64(2));
  return d;
}

// Exact fraction accumulator for exponents mod 1.
struct Fraction {
  u64 num = 0, den = 1;
  void add(u64 a, u64 d) {
    u128 n = u128(num) * d + u128(a) * den;
    u128 dd = u128(den) * d;
    n %= dd;
    u128 x = n, y = dd;
    while (y) {
      u128 t = x % y;
      x = y;
      y = t;
    }
    u128 g = n == 0 ? dd : x;
    num = u64(n / g);
    den = u64(dd / g);
  }
};

}  // namespace

DirichletCharacter DirichletCharacter::principal(u64 q) {
  if (q == 0) throw std::invalid_argument("character: modulus must be positive");
  DirichletCharacter chi;
  chi.q_ = q;
  chi.comps_ = make_components(q);
  return chi;
}

DirichletCharacter DirichletCharacter::from_exponents(
    u64 q, const std::map<u64, std::vector<u64>>& exps) {
  DirichletCharacter chi = principal(q);
  for (auto& c : chi.comps_) {
    auto it = exps.find(c.p);
    if (it == exps.end()) continue;
    const auto& e = it->second;
    if (c.split) {
      if (e.size() != 2 || e[0] >= 2 || e[1] >= c.group_order)
        throw std::invalid_argument("from_exponents: bad split exponents");
      c.exp_minus1 = e[0];
      c.exp_gen = e[1];
    } else {
      if (e.size() != 1 || e[0] >= c.group_order)
        throw std::invalid_argument("from_exponents: bad exponent");
      c.exp_gen = e[0];
    }
  }
  return chi;
}

CharacterValue DirichletCharacter::evaluate(i64 n) const {
  if (q_ == 1) return CharacterValue::one();
  i64 r = n % i64(q_);
  if (r < 0) r += i64(q_);
  u64 u = u64(r);
  if (std::gcd(u, q_) != 1) return CharacterValue::zero();
  Fraction f;
  for (const auto& c : comps_) {
    u64 rp = u % c.pk;
    if (c.split) {
      bool neg = rp % 4 == 3;
      u64 v = neg ? c.pk - rp : rp;
      u64 t = discrete_log_in_subgroup(v, 5, c.group_order, c.pk);
      if (neg && c.exp_minus1) f.add(1, 2);
      f.add(mulmod(c.exp_gen, t, c.group_order), c.group_order);
    } else {
      if (c.group_order == 1) continue;
      u64 j = discrete_log_in_subgroup(rp, c.generator, c.group_order, c.pk);
      f.add(mulmod(c.exp_gen, j, c.group_order), c.group_order);
    }
  }
  return CharacterValue::root_of_unity(i64(f.num), f.den);
}

u64 DirichletCharacter::order() const {
  u64 d = 1;
  for (const auto& c : comps_) d = std::lcm(d, local_order(c));
  return d;
}

namespace {

// Smallest p^f through which the local character factors; returns the
// exponent f (0 means trivial).
unsigned local_conductor_exponent(const Component& c) {
  if (c.split) {
    u64 d5 = c.group_order / std::gcd(c.exp_gen, c.group_order);
    if (d5 == 1) return c.exp_minus1 ? 2 : 0;
    unsigned t = 0;
    while ((u64(1) << t) < d5) ++t;
    return t + 2;
  }
  u64 d = c.group_order / std::gcd(c.exp_gen, c.group_order);
  if (d == 1) return 0;
  u64 phi = 1;
  for (unsigned f = 1; f <= c.k; ++f) {
    phi = f == 1 ? c.p - 1 : phi * c.p;
    if (phi % d == 0) return f;
  }
  return c.k;  // unreachable: the character factors through its own modulus
}

}  // namespace

u64 DirichletCharacter::conductor() const {
  u64 cond = 1;
  for (const auto& c : comps_) {
    unsigned f = local_conductor_exponent(c);
    for (unsigned i = 0; i < f; ++i) cond *= c.p;
  }
  return cond;
}

bool DirichletCharacter::is_principal() const {
  for (const auto& c : comps_)
    if (c.exp_gen != 0 || c.exp_minus1 != 0) return false;
  return true;
}

CharacterProfile DirichletCharacter::profile() const {
  CharacterProfile p;
  p.order = order();
  p.odd = evaluate(-1) == CharacterValue::root_of_unity(1, 2);
  p.conductor = conductor();
  p.is_primitive = p.conductor == q_;
  return p;
}

DirichletCharacter DirichletCharacter::conjugate() const {
  DirichletCharacter chi = *this;
  for (auto& c : chi.comps_)
    c.exp_gen = c.exp_gen == 0 ? 0 : c.group_order - c.exp_gen;
  return chi;
}

DirichletCharacter DirichletCharacter::power(u64 e) const {
  DirichletCharacter chi = *this;
  for (auto& c : chi.comps_) {
    c.exp_gen = mulmod(c.exp_gen, e % c.group_order, c.group_order);
    if (c.split) c.exp_minus1 = c.exp_minus1 * e % 2;
  }
  return chi;
}

std::string DirichletCharacter::canonical_string() const {
  std::ostringstream os;
  os << q_;
  for (const auto& c : comps_) {
    os << '|' << c.p << '^' << c.k << ':';
    if (c.split)
      os << c.exp_minus1 << ',' << c.exp_gen;
    else
      os << c.exp_gen;
  }
  return os.str();
}

DirichletCharacter DirichletCharacter::parse_canonical(const std::string& s) {
  std::istringstream is(s);
  std::string tok;
  if (!std::getline(is, tok, '|')) throw std::invalid_argument("parse: empty");
  u64 q = std::stoull(tok);
  std::map<u64, std::vector<u64>> exps;
  while (std::getline(is, tok, '|')) {
    auto caret = tok.find('^');
    auto colon = tok.find(':');
    if (caret == std::string::npos || colon == std::string::npos)
      throw std::invalid_argument("parse: bad component: " + tok);
    u64 p = std::stoull(tok.substr(0, caret));
    std::string rest = tok.substr(colon + 1);
    auto comma = rest.find(',');
    if (comma == std::string::npos)
      exps[p] = {std::stoull(rest)};
    else
      exps[p] = {std::stoull(rest.substr(0, comma)),
                 std::stoull(rest.substr(comma + 1))};
  }
  return from_exponents(q, exps);
}

namespace {

// Local character of `chi` at prime p transported to modulus p^k (k >= v_p(q)).
// Returns {exp_minus1, exp_gen} in the coordinates of the target component.
std::pair<u64, u64> lift_local(const DirichletCharacter& chi,
                               const Component& target) {
  const Component* src = nullptr;
  for (const auto& c : chi.components())
    if (c.p == target.p) src = &c;
  if (src == nullptr || (src->exp_gen == 0 && src->exp_minus1 == 0))
    return {0, 0};
  if (src->k == target.k) return {src->exp_minus1, src->exp_gen};
  if (!target.split) {
    // cyclic -> cyclic (odd p, or 2^k with k <= 2)
    u64 dl = discrete_log_in_subgroup(target.generator % src->pk,
                                      src->generator, src->group_order,
                                      src->pk);
    u64 e = mulmod(src->exp_gen, dl, src->group_order) *
            (target.group_order / src->group_order);
    return {0, e};
  }
  // target 2^k, k >= 3
  if (src->k <= 1) return {0, 0};
  if (src->k == 2) return {src->exp_gen, 0};  // mod 4: generator 3 = -1
  return {src->exp_minus1,
          src->exp_gen * (target.group_order / src->group_order)};
}

}  // namespace

DirichletCharacter multiply(const DirichletCharacter& a,
                            const DirichletCharacter& b) {
  u128 l = u128(a.modulus()) / std::gcd(a.modulus(), b.modulus()) * b.modulus();
  if (l > u128(UINT64_MAX))
    throw arith::RangeExceeded("multiply: lcm of moduli exceeds 64 bits");
  u64 L = u64(l);
  DirichletCharacter base = DirichletCharacter::principal(L);
  std::map<u64, std::vector<u64>> exps;
  for (const auto& target : base.components()) {
    auto [a1, e1] = lift_local(a, target);
    auto [a2, e2] = lift_local(b, target);
    u64 e = (e1 + e2) % target.group_order;
    if (target.split)
      exps[target.p] = {(a1 + a2) % 2, e};
    else
      exps[target.p] = {e};
  }
  return DirichletCharacter::from_exponents(L, exps);
}

DirichletCharacter primitive_inducing(const DirichletCharacter& chi) {
  u64 newq = 1;
  std::map<u64, std::vector<u64>> exps;
  for (const auto& c : chi.components()) {
    unsigned f = local_conductor_exponent(c);
    if (f == 0) continue;
    u64 pf = 1;
    for (unsigned i = 0; i < f; ++i) pf *= c.p;
    newq *= pf;
    if (c.split) {
      if (f == 2) {
        exps[2] = {c.exp_minus1};
      } else {
        // 5-part of order 2^(f-2); divide out the redundant 2-power
        exps[2] = {c.exp_minus1, c.exp_gen / (c.pk / pf)};
      }
      continue;
    }
    if (f == c.k) {
      exps[c.p] = {c.exp_gen};
      continue;
    }
    // evaluate chi at the canonical generator of the smaller modulus
    u64 gf = primitive_root(pf);
    u64 nf = euler_phi(pf);
    u64 j = discrete_log_in_subgroup(gf % c.pk, c.generator, c.group_order,
                                     c.pk);
    u64 num = mulmod(c.exp_gen, j, c.group_order);
    u64 g = std::gcd(num, c.group_order);
    if (num == 0) g = c.group_order;
    u64 d = c.group_order / g;
    exps[c.p] = {(num / g) * (nf / d)};
  }
  return DirichletCharacter::from_exponents(newq, exps);
}

DirichletCharacter jacobi_character(u64 Q) {
  if (Q % 2 == 0) throw arith::EvenModulus("jacobi_character: even modulus");
  DirichletCharacter chi = DirichletCharacter::principal(Q);
  std::map<u64, std::vector<u64>> exps;
  for (const auto& c : chi.components()) {
    // (n / p^k) = legendre(n, p)^k; the Legendre symbol has exponent phi/2
    exps[c.p] = {c.k % 2 == 1 ? c.group_order / 2 : 0};
  }
  return DirichletCharacter::from_exponents(Q, exps);
}

std::vector<DirichletCharacter> all_characters(u64 q) {
  DirichletCharacter base = DirichletCharacter::principal(q);
  std::vector<u64> radix;
  for (const auto& c : base.components()) {
    if (c.split) radix.push_back(2);
    radix.push_back(c.group_order);
  }
  std::vector<u64> digits(radix.size(), 0);
  std::vector<DirichletCharacter> out;
  for (;;) {
    std::map<u64, std::vector<u64>> exps;
    std::size_t i = 0;
    for (const auto& c : base.components()) {
      if (c.split) {
        u64 a = digits[i++];
        u64 b = digits[i++];
        exps[c.p] = {a, b};
      } else {
        exps[c.p] = {digits[i++]};
      }
    }
    out.push_back(DirichletCharacter::from_exponents(q, exps));
    std::size_t pos = 0;
    while (pos < digits.size()) {
      if (++digits[pos] < radix[pos]) break;
      digits[pos++] = 0;
    }
    if (pos == digits.size()) break;
  }
  return out;
}

ValueTable::ValueTable(const DirichletCharacter& chi)
    : q_(chi.modulus()), denom_(chi.order()) {
  for (const auto& c : chi.components()) {
    Part part;
    part.pk = c.pk;
    part.tab.assign(c.pk, kZero);
    u64 g0 = std::gcd(c.exp_gen, c.group_order);
    u64 e = c.exp_gen / g0;        // reduced exponent
    u64 d = c.group_order / g0;    // order of the generator part
    u64 scale = denom_ / d;
    if (c.split) {
      u64 half = c.exp_minus1 ? denom_ / 2 : 0;
      for (u64 s = 0; s < 2; ++s) {
        u64 cur = 1 % c.pk;
        for (u64 t = 0; t < c.group_order; ++t) {
          u64 r = s ? c.pk - cur : cur;
          u64 val = (u64(u128(e) * t % d) * scale + s * half) % denom_;
          part.tab[r] = std::uint32_t(val);
          cur = mulmod(cur, 5, c.pk);
        }
      }
    } else {
      u64 cur = 1 % c.pk;
      for (u64 j = 0; j < c.group_order; ++j) {
        part.tab[cur] = std::uint32_t(u64(u128(e) * j % d) * scale);
        cur = mulmod(cur, c.generator, c.pk);
      }
    }
    parts_.push_back(std::move(part));
  }
}

CharacterValue ValueTable::value(u64 n) const {
  std::uint32_t e = exponent(n);
  if (e == kZero) return CharacterValue::zero();
  return CharacterValue::root_of_unity(i64(e), denom_);
}

std::complex<double> ValueTable::complex_value(u64 n) const {
  std::uint32_t e = exponent(n);
  if (e == kZero) return {0.0, 0.0};
  return unit_complex(e, denom_);
}

CharacterValue SieveValues::value(u64 n) const {
  std::uint32_t e = exps.at(n);
  if (e == ValueTable::kZero) return CharacterValue::zero();
  return CharacterValue::root_of_unity(i64(e), denominator);
}

SieveValues evaluate_range_sieve(const DirichletCharacter& chi, u64 limit,
                                 u64 budget) {
  if (limit > budget)
    throw arith::BudgetExceeded("evaluate_range_sieve: limit exceeds budget");
  ValueTable vt(chi);
  SieveValues sv;
  sv.limit = limit;
  sv.denominator = vt.denominator();
  sv.exps.assign(limit + 1, ValueTable::kZero);
  if (limit >= 1) sv.exps[1] = vt.exponent(1);
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  u64 denom = sv.denominator;
  auto combine = [denom](std::uint32_t x, std::uint32_t y) -> std::uint32_t {
    if (x == ValueTable::kZero || y == ValueTable::kZero)
      return ValueTable::kZero;
    return std::uint32_t((u64(x) + y) % denom);
  };
  for (u64 n = 2; n <= limit; ++n) {
    if (!composite[n]) {
      primes.push_back(std::uint32_t(n));
      sv.exps[n] = vt.exponent(n);
    }
    for (std::uint32_t p : primes) {
      if (u64(p) * n > limit) break;
      composite[p * n] = true;
      sv.exps[p * n] = combine(sv.exps[p], sv.exps[n]);
      if (n % p == 0) break;
    }
  }
  return sv;
}

}  // namespace charsum::character
