#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "charsum/construct.hpp"

#include "json.hpp"

namespace charsum::sums {

using arith::i64;
using arith::u64;

struct PrincipalCharacter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonPrimitive : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct OddCharacter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct CoefficientTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Compensated (Kahan) accumulator.
struct KahanSum {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

/// Prefix-sum maximum of a character: M = max over t <= q of the complex
/// modulus of sum_{n <= t} chi(n).
struct SumProfile {
  u64 q = 0;
  double M_value = 0.0;
  u64 argmax_t = 0;
  std::vector<std::pair<u64, double>> trace;  // down-sampled (t, |S(t)|)
};

struct MOptions {
  u64 budget = 100'000'000;
  u64 block_size = u64(1) << 20;
  unsigned threads = 1;
  u64 max_trace_points = 4096;
};

/// Streaming block scan; results are bit-identical for any thread count
/// given the same block size.
SumProfile compute_M(const character::DirichletCharacter& chi,
                     const MOptions& opts = {});

/// tau(chi) = sum_{n <= q} chi(n) e(n/q), by direct compensated summation.
std::complex<double> gauss_sum(const character::DirichletCharacter& chi,
                               u64 budget = 1'000'000);

/// Finitely supported coefficients a_n, n in Z \ {0} allowed on both signs.
using CoeffMap = std::map<i64, std::complex<double>>;

std::complex<double> theta_sum_at(const CoeffMap& coeffs, double theta);

struct RationalThetaMax {
  double max_value = 0.0;
  u64 argmax_b = 0;
};

/// Exact maximum of |sum_n a_n psi(n) e(b n / m)| over the m rational points
/// theta = b/m. This finite set carries the pigeonhole bound, so certified
/// inequalities need no continuous search.
RationalThetaMax rational_theta_max(const CoeffMap& coeffs,
                                    const character::DirichletCharacter& psi);

struct Certificate {
  std::string claim_id;
  std::string inputs_digest;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
  double tolerance = 0.0;
  bool pass = false;
};

Certificate make_certificate(std::string claim_id, std::string inputs,
                             double lhs, double rhs, double tolerance);

/// max_b |sum a_n psi(n) e(bn/m)| >= (sqrt(m)/phi(m)) |sum_{(n,m)=1} a_n|.
Certificate certify_lemma21(const CoeffMap& coeffs,
                            const character::DirichletCharacter& psi);

/// The exact inequality chain ending in
/// max_theta |sum_{1<=|n|<=x} chi(n) psi(n)/n e(n theta)|
///   >= (sqrt(m)/phi(m)) sum_{n<=x} 1/n,  x = (1/2) log q.
Certificate certify_eq33(const construct::ChiGArtifact& art);

/// |sum_{n<=t} chi(n) - truncated Fourier main term|; chi must be even and
/// primitive (the implemented expansion assumes both).
double polya_residual(const character::DirichletCharacter& chi, u64 t,
                      u64 cutoff, u64 gauss_budget = 1'000'000);

/// One-sided check of the truncation lemma: the max over N <= x dominates
/// the value at N = floor(x) on a shared theta grid. The slack records the
/// measured O(1) gap.
Certificate certify_lemma22_onesided(
    const std::function<std::complex<double>(i64)>& a, double x);

/// H(x) = sum_{n <= x} 1/n.
double harmonic(double x);

/// M / (sqrt(q_g) log log q_g); requires q_g >= 16.
double headline_ratio(double M, u64 q_g);

/// (1/2pi)(sqrt(m)/phi(m)) H((1/2) log q) / log log q_g - D / sqrt(q_g),
/// the rearranged inequality chain with measured residual constant D.
double chain_lower_bound(const construct::ChiGArtifact& art, double D);

nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SumProfile& p);

}  // namespace charsum::sums
