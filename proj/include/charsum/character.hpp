#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "charsum/arith.hpp"

namespace charsum::character {

using arith::i64;
using arith::u64;
using arith::u128;

/// Exact character value: zero, or the root of unity e(num/den) with the
/// exponent stored as a reduced fraction, 0 <= num < den.
class CharacterValue {
 public:
  static CharacterValue zero() {
    CharacterValue v;
    v.zero_ = true;
    return v;
  }
  static CharacterValue one() { return CharacterValue{}; }
  static CharacterValue root_of_unity(i64 num, u64 den);

  bool is_zero() const { return zero_; }
  u64 numerator() const { return num_; }
  u64 denominator() const { return den_; }

  CharacterValue operator*(const CharacterValue& o) const;
  CharacterValue conj() const;
  std::complex<double> to_complex() const;

  bool operator==(const CharacterValue&) const = default;

 private:
  bool zero_ = false;
  u64 num_ = 0;
  u64 den_ = 1;
};

/// e(num/den) with the four axis values (den | 4 cases) returned exactly.
std::complex<double> unit_complex(u64 num, u64 den);

/// One prime-power block of the unit group mod q. Odd p^k and 2, 4 are
/// cyclic with a canonical smallest generator; 2^k with k >= 3 splits as
/// <-1> x <5>.
struct Component {
  u64 p = 0;
  unsigned k = 0;
  u64 pk = 0;
  bool split = false;
  u64 generator = 0;    // cyclic generator, or 5 when split
  u64 group_order = 0;  // phi(pk) when cyclic; 2^(k-2) (order of 5) when split
  u64 exp_gen = 0;      // character exponent on the generator (or on 5)
  u64 exp_minus1 = 0;   // split only: exponent on -1, in {0, 1}

  bool operator==(const Component&) const = default;
};

struct CharacterProfile {
  u64 order = 1;
  bool odd = false;  // odd means chi(-1) = -1
  u64 conductor = 1;
  bool is_primitive = false;
};

class DirichletCharacter {
 public:
  static DirichletCharacter principal(u64 q);

  /// exps maps prime -> exponent list: {e} for a cyclic component, and
  /// {exp_minus1, exp_5} for 2^k with k >= 3. Missing primes get the
  /// principal local character.
  static DirichletCharacter from_exponents(
      u64 q, const std::map<u64, std::vector<u64>>& exps);

  u64 modulus() const { return q_; }
  const std::vector<Component>& components() const { return comps_; }

  CharacterValue evaluate(i64 n) const;
  CharacterValue operator()(i64 n) const { return evaluate(n); }

  CharacterProfile profile() const;
  u64 order() const;
  u64 conductor() const;
  bool is_primitive() const { return conductor() == q_; }
  bool is_principal() const;

  DirichletCharacter conjugate() const;
  DirichletCharacter power(u64 e) const;

  bool operator==(const DirichletCharacter&) const = default;

  /// Canonical text form: modulus then per-component "p^k:e" (cyclic) or
  /// "2^k:a,b" (split), components in prime order, separated by '|'.
  std::string canonical_string() const;
  static DirichletCharacter parse_canonical(const std::string& s);

 private:
  u64 q_ = 1;
  std::vector<Component> comps_;
};

/// Pointwise product character mod lcm(q1, q2).
DirichletCharacter multiply(const DirichletCharacter& a,
                            const DirichletCharacter& b);

/// The unique primitive character mod conductor(chi) agreeing with chi on
/// units of the original modulus.
DirichletCharacter primitive_inducing(const DirichletCharacter& chi);

/// n -> jacobi(n, Q) as a character mod Q (Q odd), possibly imprimitive.
DirichletCharacter jacobi_character(u64 Q);

/// All phi(q) characters mod q, in a fixed deterministic order.
std::vector<DirichletCharacter> all_characters(u64 q);

/// Per-component exponent tables for O(1) evaluation by residue. All values
/// are exponents over denominator() = order(chi); kZero marks non-units.
class ValueTable {
 public:
  static constexpr std::uint32_t kZero = UINT32_MAX;

  explicit ValueTable(const DirichletCharacter& chi);

  u64 modulus() const { return q_; }
  u64 denominator() const { return denom_; }

  std::uint32_t exponent(u64 n) const {
    u64 sum = 0;
    for (const auto& part : parts_) {
      std::uint32_t e = part.tab[n % part.pk];
      if (e == kZero) return kZero;
      sum += e;
    }
    return std::uint32_t(sum % denom_);
  }

  CharacterValue value(u64 n) const;
  std::complex<double> complex_value(u64 n) const;

 private:
  struct Part {
    u64 pk;
    std::vector<std::uint32_t> tab;
  };
  u64 q_;
  u64 denom_;
  std::vector<Part> parts_;
};

/// Result of evaluate_range_sieve: values for n = 1..limit as exponents
/// over a common denominator (the character order), kZero for non-units.
struct SieveValues {
  u64 limit = 0;
  u64 denominator = 1;
  std::vector<std::uint32_t> exps;  // index 0 unused; exps[n] for 1 <= n <= limit

  CharacterValue value(u64 n) const;
};

/// Values chi(1..limit) via a linear smallest-prime-factor sieve; chi is
/// evaluated only at primes (table lookup), composites fill in by complete
/// multiplicativity. Bit-identical to pointwise evaluation.
SieveValues evaluate_range_sieve(const DirichletCharacter& chi, u64 limit,
                                 u64 budget = 100'000'000);

}  // namespace charsum::character
