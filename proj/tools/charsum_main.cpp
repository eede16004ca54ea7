// Command-line front end: runs the character constructions, certifies the
// proved inequalities, and tabulates the headline ratio across N.
//
// Exit codes: 0 success, 1 certificate failure, 2 usage error,
// 3 budget/resource exhaustion.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "charsum/construct.hpp"
#include "charsum/jsonutil.hpp"
#include "charsum/sums.hpp"

namespace {

using namespace charsum;
using arith::i64;
using arith::u64;
using character::DirichletCharacter;

constexpr int kExitOk = 0;
constexpr int kExitCertFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// --- construct ---------------------------------------------------------

int cmd_construct(u64 g, u64 N, const std::string& out_path) {
  auto art = construct::build_chi_g(g, N);
  write_output(out_path, construct::to_manifest(art).dump(2));
  return kExitOk;
}

// --- certify -----------------------------------------------------------

sums::Certificate boolean_check(const std::string& claim,
                                const std::string& inputs, bool ok) {
  return sums::make_certificate(claim, inputs, ok ? 1.0 : 0.0, 1.0, 0.0);
}

sums::CoeffMap random_coeffs(std::mt19937_64& rng, i64 support) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  sums::CoeffMap coeffs;
  for (i64 n = -support; n <= support; ++n) {
    if (n == 0) continue;
    double r = unit(rng);
    double phase = 2.0 * 3.14159265358979323846 * unit(rng);
    coeffs[n] = std::polar(r, phase);
  }
  return coeffs;
}

std::vector<DirichletCharacter> lemma21_test_characters() {
  return {
      DirichletCharacter::from_exponents(3, {{3, {1}}}),  // Legendre mod 3
      DirichletCharacter::from_exponents(5, {{5, {1}}}),  // order 4 mod 5
      DirichletCharacter::from_exponents(7, {{7, {3}}}),  // Legendre mod 7
  };
}

int cmd_certify(const std::string& manifest_path, const std::string& out_path,
                u64 seed, u64 budget) {
  std::ifstream in(manifest_path);
  if (!in) throw CLI::ValidationError("cannot open manifest: " + manifest_path);
  nlohmann::json mj = nlohmann::json::parse(in);
  auto art = construct::from_manifest(mj);
  const std::string id = std::to_string(art.g) + "," +
                         std::to_string(art.paley.N) + "#" +
                         art.chi_g.canonical_string();

  if (art.q_g > budget)
    throw arith::BudgetExceeded("certify: q_g exceeds --budget-q");

  std::vector<sums::Certificate> certs;

  bool crt_ok = art.paley.Q % 8 == 7;
  for (auto [p, qp] : art.paley.residues) crt_ok &= art.paley.Q % p == qp % p;
  certs.push_back(boolean_check("manifest:crt", id, crt_ok));

  auto rebuilt = construct::build_chi_g(art.g, art.paley.N);
  certs.push_back(boolean_check(
      "manifest:rebuild", id,
      rebuilt.paley.Q == art.paley.Q && rebuilt.paley.q == art.paley.q &&
          rebuilt.q_g == art.q_g &&
          rebuilt.chi_g.canonical_string() == art.chi_g.canonical_string() &&
          rebuilt.psi.psi.canonical_string() ==
              art.psi.psi.canonical_string()));

  auto psi_prof = art.psi.psi.profile();
  certs.push_back(boolean_check("psi:order", id, psi_prof.order == art.g));
  certs.push_back(boolean_check("psi:odd", id, psi_prof.odd));
  certs.push_back(boolean_check("psi:primitive", id, psi_prof.is_primitive));

  auto chi_prof = art.paley.chi.profile();
  certs.push_back(boolean_check("chi:order", id, chi_prof.order == 2));
  certs.push_back(boolean_check("chi:odd", id, chi_prof.odd));
  certs.push_back(boolean_check("chi:primitive", id, chi_prof.is_primitive));
  bool small_ok = true;
  for (u64 n = 1; n <= art.paley.N; ++n)
    small_ok &=
        art.paley.chi.evaluate(i64(n)) == character::CharacterValue::one();
  certs.push_back(boolean_check("chi:ones-up-to-N", id, small_ok));
  certs.push_back(boolean_check(
      "chi:N-vs-half-log-q", id,
      2.0 * double(art.paley.N) >=
          std::nextafter(std::log(double(art.paley.q)), HUGE_VAL)));

  auto chig_prof = art.chi_g.profile();
  certs.push_back(boolean_check("chi-g:order", id, chig_prof.order == art.g));
  certs.push_back(boolean_check("chi-g:even", id, !chig_prof.odd));
  certs.push_back(
      boolean_check("chi-g:primitive", id, chig_prof.is_primitive));

  // |tau| = sqrt(modulus) for each primitive character in the artifact
  struct TauCheck {
    const char* claim;
    const DirichletCharacter* chi;
  };
  for (auto [claim, chi] : std::initializer_list<TauCheck>{
           {"gauss:psi", &art.psi.psi},
           {"gauss:chi", &art.paley.chi},
           {"gauss:chi-g", &art.chi_g}}) {
    double tau = std::abs(sums::gauss_sum(*chi, budget));
    double expect = std::sqrt(double(chi->modulus()));
    certs.push_back(sums::make_certificate(claim, id, tau, expect,
                                           1e-9 * expect));
    // two-sided: also require tau does not exceed sqrt(q)
    certs.back().pass =
        certs.back().pass && tau <= expect * (1.0 + 1e-9);
  }

  // Lemma 2.1 on seeded random coefficient vectors; worst slack per psi
  std::mt19937_64 rng(seed);
  for (const auto& psi : lemma21_test_characters()) {
    sums::Certificate worst;
    bool have = false;
    for (int trial = 0; trial < 100; ++trial) {
      auto cert = sums::certify_lemma21(random_coeffs(rng, 50), psi);
      if (!have || cert.slack < worst.slack) {
        worst = cert;
        have = true;
      }
    }
    worst.claim_id = "lemma-2.1:m=" + std::to_string(psi.modulus());
    certs.push_back(worst);
  }

  certs.push_back(sums::certify_eq33(art));

  nlohmann::json bundle;
  bundle["manifest_digest"] = jsonutil::digest(mj.dump());
  bundle["certificates"] = nlohmann::json::array();
  bool all_pass = true;
  std::vector<std::string> failures;
  for (const auto& c : certs) {
    bundle["certificates"].push_back(sums::to_json(c));
    if (!c.pass) {
      all_pass = false;
      failures.push_back(c.claim_id);
    }
  }
  bundle["all_pass"] = all_pass;
  write_output(out_path, bundle.dump(2));
  if (!all_pass) {
    for (const auto& f : failures)
      std::cerr << "certificate failed: " << f << "\n";
    return kExitCertFailure;
  }
  return kExitOk;
}

// --- scan --------------------------------------------------------------

struct ScanRow {
  u64 N = 0;
  bool ok = false;
  std::string error;
  u64 Q = 0, q = 0, q_g = 0;
  double M = 0, sqrt_qg = 0, loglog_qg = 0, ratio = 0;
  double eq33_lhs = 0, eq33_rhs = 0;
};

int cmd_scan(u64 g, const std::vector<u64>& n_list, const std::string& format,
             const std::string& out_path, u64 budget) {
  std::vector<u64> ns = n_list;
  std::sort(ns.begin(), ns.end());
  auto last = std::unique(ns.begin(), ns.end());
  if (last != ns.end()) {
    std::cerr << "warning: duplicate N values removed\n";
    ns.erase(last, ns.end());
  }

  std::vector<ScanRow> rows;
  for (u64 N : ns) {
    ScanRow row;
    row.N = N;
    try {
      auto art = construct::build_chi_g(g, N);
      sums::MOptions opts;
      opts.budget = budget;
      auto prof = sums::compute_M(art.chi_g, opts);
      auto eq33 = sums::certify_eq33(art);
      row.Q = art.paley.Q;
      row.q = art.paley.q;
      row.q_g = art.q_g;
      row.M = prof.M_value;
      row.sqrt_qg = std::sqrt(double(art.q_g));
      row.loglog_qg = std::log(std::log(double(art.q_g)));
      row.ratio = sums::headline_ratio(prof.M_value, art.q_g);
      row.eq33_lhs = eq33.lhs;
      row.eq33_rhs = eq33.rhs;
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
      std::cerr << "N=" << N << " failed: " << e.what() << "\n";
    }
    rows.push_back(row);
  }

  std::ostringstream os;
  if (format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json e;
      e["g"] = g;
      e["N"] = r.N;
      e["ok"] = r.ok;
      if (r.ok) {
        e["Q"] = r.Q;
        e["q"] = r.q;
        e["q_g"] = r.q_g;
        e["M"] = jsonutil::hexfloat(r.M);
        e["ratio"] = jsonutil::hexfloat(r.ratio);
        e["eq33_lhs"] = jsonutil::hexfloat(r.eq33_lhs);
        e["eq33_rhs"] = jsonutil::hexfloat(r.eq33_rhs);
      } else {
        e["error"] = r.error;
      }
      j.push_back(e);
    }
    os << j.dump(2);
  } else {
    os << "g,N,Q,q,q_g,M,sqrt_qg,loglog_qg,ratio,eq33_lhs,eq33_rhs\n";
    for (const auto& r : rows) {
      if (!r.ok) {
        os << g << ',' << r.N << ",,,,nan,nan,nan,nan,nan,nan\n";
        continue;
      }
      os << g << ',' << r.N << ',' << r.Q << ',' << r.q << ',' << r.q_g << ','
         << format_double(r.M) << ',' << format_double(r.sqrt_qg) << ','
         << format_double(r.loglog_qg) << ',' << format_double(r.ratio) << ','
         << format_double(r.eq33_lhs) << ',' << format_double(r.eq33_rhs)
         << '\n';
    }
  }
  write_output(out_path, os.str());

  bool any_ok = std::any_of(rows.begin(), rows.end(),
                            [](const ScanRow& r) { return r.ok; });
  return any_ok ? kExitOk : kExitBudget;
}

std::vector<u64> parse_n_list(const std::string& s) {
  std::vector<u64> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoull(tok));
  }
  if (out.empty()) throw CLI::ValidationError("--N list must not be empty");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constructs even order characters with large partial sums and "
               "certifies the inequalities behind them"};
  app.require_subcommand(1);

  u64 g = 2, N = 7, seed = 0, budget = 100'000'000;
  std::string out_path, manifest_path, format = "csv", n_list_raw;

  auto* c_construct =
      app.add_subcommand("construct", "build the chi_g artifact manifest");
  c_construct->add_option("--g", g, "even character order, >= 2")->required();
  c_construct->add_option("--N", N, "prime search bound, >= 3")->required();
  c_construct->add_option("--out", out_path, "output path (default stdout)");

  auto* c_certify =
      app.add_subcommand("certify", "verify a manifest and emit certificates");
  c_certify->add_option("--manifest", manifest_path, "manifest path")
      ->required();
  c_certify->add_option("--out", out_path, "output path (default stdout)");
  c_certify->add_option("--seed", seed, "seed for random coefficient trials");
  c_certify->add_option("--budget-q", budget, "largest modulus to sum over");

  auto* c_scan =
      app.add_subcommand("scan", "ratio table across N for fixed g");
  c_scan->add_option("--g", g, "even character order, >= 2")->required();
  c_scan->add_option("--N", n_list_raw, "comma-separated N list")->required();
  c_scan->add_option("--seed", seed, "seed (reserved for trial reruns)");
  c_scan->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  c_scan->add_option("--out", out_path, "output path (default stdout)");
  c_scan->add_option("--budget-q", budget, "largest modulus to sum over");

  try {
    app.parse(argc, argv);
    if ((c_construct->parsed() || c_scan->parsed()) && (g < 2 || g % 2 != 0))
      throw CLI::ValidationError("--g must be even and >= 2");
    if (c_construct->parsed()) {
      if (N < 3) throw CLI::ValidationError("--N must be >= 3");
      return cmd_construct(g, N, out_path);
    }
    if (c_certify->parsed())
      return cmd_certify(manifest_path, out_path, seed, budget);
    return cmd_scan(g, parse_n_list(n_list_raw), format, out_path, budget);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  } catch (const arith::BudgetExceeded& e) {
    std::cerr << nlohmann::json{{"error", "BudgetExceeded"},
                                {"detail", e.what()}}
                     .dump()
              << "\n";
    return kExitBudget;
  } catch (const arith::RangeExceeded& e) {
    std::cerr << nlohmann::json{{"error", "RangeExceeded"},
                                {"detail", e.what()}}
                     .dump()
              << "\n";
    return kExitBudget;
  } catch (const construct::SearchExhausted& e) {
    std::cerr << nlohmann::json{{"error", "SearchExhausted"},
                                {"detail", e.what()}}
                     .dump()
              << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << nlohmann::json{{"error", "InvalidArgument"},
                                {"detail", e.what()}}
                     .dump()
              << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "Internal"}, {"detail", e.what()}}
                     .dump()
              << "\n";
    return kExitCertFailure;
  }
}
