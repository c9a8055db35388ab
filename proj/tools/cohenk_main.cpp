// cohenk: batch front door for the group engine. Subcommands:
//   collect  parse a word and print its normal form
//   verify   run one verification claim or the whole battery
//   basis    print the ordered commutator basis of a context
//   perm     print division-count tables for permutations

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>

#include "CLI11.hpp"
#include "json.hpp"

#include "cohen/cache.hpp"
#include "cohen/collect.hpp"
#include "cohen/perm.hpp"
#include "cohen/verify.hpp"

namespace {

struct ModeFlags {
  std::string mode = "mod";
  std::uint32_t p = 3;
  std::uint32_t r = 2;

  cohen::CoeffMode resolve() const {
    if (mode == "z") return cohen::CoeffMode::integers();
    if (mode == "mod") return cohen::CoeffMode::mod_prime_power(p, r);
    throw CLI::ValidationError("--mode must be z or mod");
  }
};

std::string resolve_cache_dir(const std::string& flag_value) {
  if (const char* env = std::getenv("COHEN_CACHE_DIR"); env && *env) return env;
  return flag_value;
}

void add_mode_flags(CLI::App* cmd, ModeFlags& mf) {
  cmd->add_option("--mode", mf.mode, "coefficient mode: z or mod")->default_str("mod");
  cmd->add_option("--p", mf.p, "odd prime p for mod mode")->default_str("3");
  cmd->add_option("--r", mf.r, "exponent r for mod mode")->default_str("2");
}

int run_collect(int n, const ModeFlags& mf, const std::string& expr_text,
                const std::string& cache_dir) {
  auto ctx = cohen::make_context(n, mf.resolve());
  std::string dir = resolve_cache_dir(cache_dir);
  if (!dir.empty()) {
    try {
      cohen::load_structure_cache(*ctx, dir + "/" + cohen::cache_file_name(*ctx));
    } catch (const std::exception&) {
      // cold cache; recompute and save below
    }
  }
  auto expr = cohen::words::parse(expr_text, n);
  cohen::NormalForm nf = cohen::collect(*expr, *ctx);
  std::cout << cohen::print_normal_form(nf, *ctx) << "\n";
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (const auto& [idx, e] : nf.coeffs) coeffs.push_back({idx, e});
  std::cout << coeffs.dump() << "\n";
  if (!dir.empty())
    cohen::save_structure_cache(*ctx, dir + "/" + cohen::cache_file_name(*ctx));
  return 0;
}

int run_verify(const cohen::verify::Options& opt, const std::string& json_path) {
  cohen::verify::RunManifest manifest = cohen::verify::run(opt);
  for (const auto& report : manifest.reports) {
    std::string kind = report.value("kind", "?");
    std::string status =
        kind == "error" ? "error" : report.value("status", "?");
    std::string claim = report.value("claim", kind);
    if (kind == "error") claim += ": " + report.value("what", "");
    std::string params;
    if (report.contains("parameters"))
      for (const auto& [k, v] : report["parameters"].items())
        params += " " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    std::cout << "[" << status << "] " << claim << params;
    if (report.contains("note") && !report["note"].get<std::string>().empty())
      std::cout << "  (" << report["note"].get<std::string>() << ")";
    std::cout << "\n";
  }
  std::cout << "overall: " << manifest.overall << "  verified=" << manifest.verified
            << " falsified=" << manifest.falsified
            << " inconclusive=" << manifest.inconclusive << " errors=" << manifest.errors
            << "\n";
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "cannot write " << json_path << "\n";
      return 2;
    }
    out << cohen::verify::manifest_string(manifest);
  }
  return cohen::verify::exit_code(manifest);
}

int run_basis(int n, const ModeFlags& mf) {
  auto ctx = cohen::make_context(n, mf.resolve());
  for (std::uint32_t idx = 0; idx < ctx->basis_size(); ++idx)
    std::cout << idx << "\t" << ctx->weight_of(idx) << "\t"
              << ctx->basis_at(idx).to_string() << "\n";
  std::cout << "basis size: " << ctx->basis_size() << "\n";
  return 0;
}

std::string perm_string(const cohen::perm::Perm& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i]);
  }
  return s + ")";
}

int run_perm(int n, int l, int first, const std::string& json_path) {
  cohen::perm::Perm p(n);
  std::iota(p.begin(), p.end(), 1);
  long long sum = 0;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  do {
    if (first > 0 && p.front() != first) continue;
    long long d = cohen::perm::count_divisions(p, l);
    sum += d;
    std::cout << perm_string(p) << "\t" << d << "\n";
    rows.push_back(nlohmann::ordered_json{{"perm", p}, {"l", l}, {"d", d}});
  } while (std::next_permutation(p.begin(), p.end()));

  std::cout << "sum of d over the listed permutations: " << sum << "\n";
  cohen::BigInt fact_l1 = cohen::factorial(l - 1);
  if (first <= 0) {
    cohen::BigInt expected = cohen::factorial(l) * cohen::perm::stirling2(n, l);
    std::cout << "l!*S(n,l) = " << expected.to_string() << "\n";
  } else {
    if (first == 1)
      std::cout << "S(n,l)*(l-1)! = "
                << (cohen::perm::stirling2(n, l) * fact_l1).to_string() << "\n";
    if (first == n)
      std::cout << "S(n-1,l-1)*(l-1)! = "
                << (cohen::perm::stirling2(n - 1, l - 1) * fact_l1).to_string() << "\n";
    bool forward = cohen::BigInt(sum).divisible_by(
        static_cast<std::uint32_t>(fact_l1.to_int64()));
    bool reverse = sum != 0 && fact_l1.mod_u32(static_cast<std::uint32_t>(sum)) == 0;
    std::cout << "(l-1)! divides the sum: " << (forward ? "true" : "false") << "\n";
    std::cout << "the sum divides (l-1)!: " << (reverse ? "true" : "false") << "\n";
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "cannot write " << json_path << "\n";
      return 2;
    }
    out << rows.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact engine for reduced free groups with torsion generators"};
  app.set_version_flag("--version", cohen::verify::kToolVersion);
  app.require_subcommand(1);

  // collect
  auto* collect_cmd = app.add_subcommand("collect", "parse a word and print its normal form");
  int collect_n = 2;
  ModeFlags collect_mode;
  std::string collect_expr, collect_cache;
  collect_cmd->add_option("--n", collect_n, "number of generators")->required();
  add_mode_flags(collect_cmd, collect_mode);
  collect_cmd->add_option("--expr", collect_expr, "word in the expression grammar")->required();
  collect_cmd->add_option("--cache", collect_cache, "structure-constant cache directory");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run verification claims");
  cohen::verify::Options vopt;
  std::string verify_json, verify_cache;
  verify_cmd->add_option("--claim", vopt.claim,
                         "q1 q2 engel shuffle pr lemma22 lemma23 lemma25 lemma26 "
                         "prop27-np2 prop27-np1 cor28 remark-r1 consistency all")
      ->default_str("all");
  verify_cmd->add_option("--n", vopt.n, "restrict the rank (0 = claim default)");
  auto* popt = verify_cmd->add_option("--p", vopt.p, "odd prime p");
  auto* ropt = verify_cmd->add_option("--r", vopt.r, "exponent r");
  verify_cmd->add_option("--mode", vopt.mode, "restrict to one coefficient mode: z or mod");
  verify_cmd->add_option("--kmax", vopt.kmax, "largest power k for q1/q2")->default_str("12");
  verify_cmd->add_option("--l", vopt.l, "restrict the block count l");
  verify_cmd->add_option("--jobs", vopt.jobs, "case-level parallelism")->default_str("1");
  verify_cmd->add_option("--trials", vopt.trials, "randomized trials for consistency")
      ->default_str("500");
  verify_cmd->add_option("--seed", vopt.seed, "seed for randomized cases");
  verify_cmd->add_option("--json", verify_json, "write the run manifest to this path");
  verify_cmd->add_option("--cache", verify_cache, "structure-constant cache directory");

  // basis
  auto* basis_cmd = app.add_subcommand("basis", "print the ordered commutator basis");
  int basis_n = 2;
  ModeFlags basis_mode;
  basis_cmd->add_option("--n", basis_n, "number of generators")->required();
  add_mode_flags(basis_cmd, basis_mode);

  // perm
  auto* perm_cmd = app.add_subcommand("perm", "print division-count tables");
  int perm_n = 3, perm_l = 2, perm_first = 0;
  std::string perm_json;
  perm_cmd->add_option("--n", perm_n, "number of letters")->required();
  perm_cmd->add_option("--l", perm_l, "number of increasing blocks")->required();
  perm_cmd->add_option("--first", perm_first, "restrict to permutations starting with i");
  perm_cmd->add_option("--json", perm_json, "write the table to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (collect_cmd->parsed())
      return run_collect(collect_n, collect_mode, collect_expr,
                         collect_cache);
    if (verify_cmd->parsed()) {
      vopt.profile_explicit = popt->count() > 0 || ropt->count() > 0;
      if (!vopt.mode.empty() && vopt.mode != "z" && vopt.mode != "mod") {
        std::cerr << "verify: --mode must be z or mod\n";
        return 2;
      }
      vopt.cache_dir = resolve_cache_dir(verify_cache);
      return run_verify(vopt, verify_json);
    }
    if (basis_cmd->parsed()) return run_basis(basis_n, basis_mode);
    if (perm_cmd->parsed()) {
      if (perm_n > 10) {
        std::cerr << "perm: n up to 10 is supported (the scan is exhaustive)\n";
        return 2;
      }
      if (perm_l < 1 || perm_l > perm_n || perm_n < 1) {
        std::cerr << "perm: need 1 <= l <= n\n";
        return 2;
      }
      if (perm_first < 0 || perm_first > perm_n) {
        std::cerr << "perm: --first out of range\n";
        return 2;
      }
      return run_perm(perm_n, perm_l, perm_first, perm_json);
    }
  } catch (const cohen::words::parse_error& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "invalid parameters: " << ex.what() << "\n";
    return 2;
  } catch (const std::out_of_range& ex) {
    std::cerr << "invalid parameters: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
