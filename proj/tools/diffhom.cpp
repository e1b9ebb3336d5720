#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "diffhom.hpp"

using namespace diffhom;
using nlohmann::json;

namespace {

// Exit codes: 0 all checks passed, 1 a check failed, 2 bad input/config.
constexpr int kFail = 1;
constexpr int kConfig = 2;

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  out << text;
}

std::string pass_fail(bool ok) { return ok ? "pass" : "fail"; }

KernelRoute parse_route(const std::string& s) {
  if (s == "series") return KernelRoute::SeriesAction;
  if (s == "infinitesimal") return KernelRoute::Infinitesimal;
  throw ConfigError("route must be 'series' or 'infinitesimal'");
}

Limits env_limits() {
  SuiteConfig cfg;
  apply_environment(cfg);
  return cfg.limits;
}

int cmd_dim(int N, int d, int k, bool basis, bool as_json, const std::string& route) {
  const auto b = diff_homog_basis(JetContext{N, k, d}, env_limits(), parse_route(route));
  if (as_json) {
    json j{{"N", N}, {"d", d}, {"k", k}, {"dimension", b.dimension()}, {"basis", json::array()}};
    if (basis)
      for (const auto& p : b.elements) j["basis"].push_back(to_string(p));
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "dim (V_" << d << "^(" << k << "))^Diff for N=" << N << ": " << b.dimension() << "\n";
  if (basis)
    for (const auto& p : b.elements) std::cout << "  " << to_string(p) << "\n";
  return 0;
}

int cmd_tensor(int k, int d, bool basis) {
  const auto b = invariant_tensor_basis(k, d, env_limits());
  std::cout << "dim (F_" << k << "^" << d << ")^U = " << b.size() << "\n";
  if (basis)
    for (const auto& t : b) std::cout << "  " << to_string(t) << "   ->   " << to_string(to_harmonic(t)) << "\n";
  return 0;
}

int cmd_harmonic(int d, int k, bool as_json) {
  const Limits lim = env_limits();
  const std::size_t perp = perp_basis(ik_ideal(d, k), k, lim).size();
  const std::size_t quot = quotient_dimension(d, k, lim);
  const Integer formula = harmonic_dimension_formula(d, k);
  const bool ok = perp == quot && Integer(perp) == formula;
  if (as_json) {
    json j{{"d", d},
           {"k", k},
           {"mu", to_string(mu_k(d, k))},
           {"checks",
            {{{"check", "perp-dimension"}, {"expected", formula.get_str()}, {"computed", perp},
              {"status", pass_fail(Integer(perp) == formula)}},
             {{"check", "quotient-dimension"}, {"expected", perp}, {"computed", quot},
              {"status", pass_fail(perp == quot)}}}}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "mu_k = " << to_string(mu_k(d, k)) << "\n"
              << "dim I_k-perp        = " << perp << "\n"
              << "dim C[Z]/I_k        = " << quot << "\n"
              << "closed form         = " << formula.get_str() << "\n"
              << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? 0 : kFail;
}

int cmd_dcp(int d, int k, int cap, bool as_json) {
  if (cap == 0) cap = d * (k + 1);
  const auto rep = verify_dcp_equality(d, k, cap, env_limits());
  if (as_json) {
    json j{{"d", d},
           {"k", k},
           {"cap", cap},
           {"mu", rep.mu},
           {"ikGenerators", rep.ik_generators},
           {"dcpGenerators", rep.dcp_generators},
           {"ikNotInDcp", rep.ik_not_in_dcp},
           {"dcpNotInIk", rep.dcp_not_in_ik},
           {"status", pass_fail(rep.pass())}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "I_" << k << " vs DCP ideal of " << rep.mu << " (d=" << d << ", degree cap " << cap << ")\n"
              << "  " << rep.ik_generators << " generators of I_k, " << rep.dcp_generators << " of I_mu\n";
    for (const auto& g : rep.ik_not_in_dcp) std::cout << "  not certified in I_mu: " << g << "\n";
    for (const auto& g : rep.dcp_not_in_ik) std::cout << "  not certified in I_k:  " << g << "\n";
    std::cout << (rep.pass() ? "PASS" : "FAIL") << "\n";
  }
  return rep.pass() ? 0 : kFail;
}

int cmd_tableaux(const std::string& mu_text, bool as_json) {
  const Partition mu = Partition::parse(mu_text);
  const Limits lim = env_limits();
  const auto ts = enum_standard_tableaux(mu, lim);
  const auto rep = verify_spanning(mu, lim);
  if (as_json) {
    json j{{"mu", to_string(mu)}, {"tableaux", json::array()}};
    for (const auto& t : ts) j["tableaux"].push_back({{"tableau", to_string(t)}, {"delta", to_string(delta_T(t))}});
    j["spanning"] = {{"rank", rep.rank},
                     {"dimension", rep.dimension},
                     {"multinomial", rep.multinomial.get_str()},
                     {"status", pass_fail(rep.pass())}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << ts.size() << " standard tableaux of shape " << to_string(mu) << "\n";
    for (const auto& t : ts) std::cout << "  " << to_string(t) << "   Delta = " << to_string(delta_T(t)) << "\n";
    std::cout << "spanning: rank " << rep.rank << ", dim I_mu-perp " << rep.dimension << ", d!/prod(mu_i!) "
              << rep.multinomial.get_str() << "  " << (rep.pass() ? "PASS" : "FAIL") << "\n";
  }
  return rep.pass() ? 0 : kFail;
}

json catalog_json(const GeneratorCatalog& cat) {
  json fams = json::array();
  for (const auto& f : cat.families) {
    int order = 0;
    json gens = json::array();
    for (const auto& g : f.generators) {
      order = std::max(order, g.order);
      gens.push_back({{"index", to_string(g.index)}, {"poly", to_string(g.poly)}});
    }
    fams.push_back({{"degree", f.degree}, {"order", order}, {"count", f.generators.size()}, {"generators", gens}});
  }
  return {{"N", cat.N}, {"k", cat.k}, {"families", fams}};
}

int cmd_generators(int N, int k, const std::string& json_out, bool csv) {
  const auto cat = build_catalog(N, k, env_limits());
  if (!json_out.empty()) write_or_print(json_out, catalog_json(cat).dump(2) + "\n");
  if (csv) {
    std::cout << "degree,formula,computed\n";
    for (const auto& f : cat.families)
      std::cout << f.degree << ',' << sigma_bar_count_formula(N, f.degree).get_str() << ',' << f.generators.size()
                << '\n';
    return 0;
  }
  if (json_out == "-") return 0;
  for (const auto& f : cat.families) {
    std::cout << "degree " << f.degree << ": " << f.generators.size() << " generators\n";
    for (const auto& g : f.generators)
      std::cout << "  " << to_string(g.index) << "  order " << g.order << "  " << to_string(g.poly) << "\n";
  }
  return 0;
}

int cmd_verify(int N, int k, int dmax, const std::string& route_name) {
  const Limits lim = env_limits();
  const KernelRoute route = parse_route(route_name);
  bool ok = true;
  for (int d = 2; d <= std::min(dmax, k + 1); ++d) {
    const auto q = verify_quotient_basis(N, d, lim, route);
    std::cout << "quotient basis d=" << d << ": " << q.full_dimension << " - " << q.low_dimension << " = "
              << q.generators << "  " << (q.pass() ? "PASS" : "FAIL") << "\n";
    ok = ok && q.pass();
  }
  const auto fg = verify_finite_generation(N, k, dmax, lim, route);
  for (const auto& g : fg.degrees)
    std::cout << "finite generation d=" << g.degree << ": rank " << g.rank << " of " << g.dimension << "  "
              << (g.pass() ? "PASS" : "FAIL") << "\n";
  ok = ok && fg.pass();
  const auto mn = verify_minimality(N, k, lim, route);
  std::cout << "minimality: " << (mn.pass() ? "PASS" : "FAIL") << "\n";
  ok = ok && mn.pass();
  return ok ? 0 : kFail;
}

int cmd_sigma(int d, int N, bool csv) {
  const Limits lim = env_limits();
  if (csv) {
    std::cout << "set,d,N,formula,computed\n";
    if (d >= 2) std::cout << "Sigma," << d << ",," << sigma_count_formula(d).get_str() << ',' << enum_sigma_d(d, lim).size() << '\n';
    if (N > 0)
      std::cout << "SigmaBar," << d << ',' << N << ',' << sigma_bar_count_formula(N, d).get_str() << ','
                << enum_sigma_bar(N, d, lim).size() << '\n';
    return 0;
  }
  bool ok = true;
  if (d >= 2) {
    const auto s = enum_sigma_d(d, lim);
    std::cout << "Sigma_" << d << ": " << s.size() << " (d!/2 = " << sigma_count_formula(d).get_str() << ")\n";
    ok = ok && Integer(s.size()) == sigma_count_formula(d);
    for (const auto& t : s) {
      std::cout << "  (";
      for (std::size_t i = 0; i < t.alpha.size(); ++i) std::cout << (i ? "," : "") << t.alpha[i];
      std::cout << ")  class " << t.cls << "\n";
    }
  }
  if (N > 0) {
    const auto s = enum_sigma_bar(N, d, lim);
    std::cout << "Sigma-bar_" << d << " for N=" << N << ": " << s.size() << " (formula "
              << sigma_bar_count_formula(N, d).get_str() << ")\n";
    ok = ok && Integer(s.size()) == sigma_bar_count_formula(N, d);
    for (const auto& x : s) std::cout << "  " << to_string(x) << "  class " << x.cls << "\n";
  }
  return ok ? 0 : kFail;
}

int cmd_verify_all(const std::string& config_path, const std::string& out, const std::string& format,
                   bool timing) {
  SuiteConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read " + config_path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("invalid JSON in ") + config_path + ": " + e.what());
    }
    cfg = SuiteConfig::from_json(j);
  }
  apply_environment(cfg);
  if (!format.empty()) cfg.format = format;
  else if (!out.empty() && out.size() > 5 && out.ends_with(".json")) cfg.format = "json";
  else if (!out.empty() && out.size() > 4 && out.ends_with(".csv")) cfg.format = "csv";
  if (timing) cfg.include_timing = true;
  cfg.validate();
  const auto report = run_suite(cfg);
  write_or_print(out, export_report(report, cfg.format));
  if (!out.empty() && out != "-")
    std::cerr << report.count(CheckStatus::Pass) << " passed, " << report.count(CheckStatus::Fail) << " failed, "
              << report.count(CheckStatus::Skipped) << " skipped\n";
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially homogeneous polynomials: exact computations and checks"};
  app.require_subcommand(1);

  int N = 1, d = 2, k = 1, cap = 0, dmax = 3;
  bool basis = false, as_json = false, csv = false, timing = false;
  std::string route = "infinitesimal", mu, json_out, config, out, format;

  auto* dim = app.add_subcommand("dim", "dimension of (V_d^(k))^Diff");
  dim->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  dim->add_option("--d", d)->required()->check(CLI::PositiveNumber);
  dim->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
  dim->add_flag("--basis", basis, "print the basis");
  dim->add_flag("--json", as_json);
  dim->add_option("--route", route, "series | infinitesimal")->capture_default_str();

  auto* tinv = app.add_subcommand("tensor-inv", "U-invariants of F_k^{(x)d}");
  tinv->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
  tinv->add_option("--d", d)->required()->check(CLI::PositiveNumber);
  tinv->add_flag("--basis", basis);

  auto* harm = app.add_subcommand("harmonic", "I_k-harmonic dimensions");
  harm->add_option("--d", d)->required()->check(CLI::PositiveNumber);
  harm->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
  harm->add_flag("--json", as_json);

  auto* dcp = app.add_subcommand("dcp", "compare I_k with the DeConcini-Procesi ideal of mu_k");
  dcp->add_option("--d", d)->required()->check(CLI::PositiveNumber);
  dcp->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
  dcp->add_option("--cap", cap, "degree cap (default d(k+1))")->check(CLI::NonNegativeNumber);
  dcp->add_flag("--json", as_json);

  auto* tab = app.add_subcommand("tableaux", "standard tableaux and Delta(T)");
  tab->add_option("--mu", mu, "partition, e.g. 2,2")->required();
  tab->add_flag("--json", as_json);

  auto* gen = app.add_subcommand("generators", "Wronskian generator catalog");
  gen->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  gen->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--json", json_out, "write the catalog as JSON ('-' for stdout)");
  gen->add_flag("--csv", csv, "count table as CSV");

  auto* ver = app.add_subcommand("verify", "quotient basis, finite generation and minimality");
  ver->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  ver->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
  ver->add_option("--dmax", dmax)->required()->check(CLI::PositiveNumber);
  ver->add_option("--route", route)->capture_default_str();

  auto* sig = app.add_subcommand("sigma", "enumerate Sigma_d and Sigma-bar_d");
  sig->add_option("--d", d)->required()->check(CLI::PositiveNumber);
  int sigma_N = 0;
  sig->add_option("--N", sigma_N, "also enumerate Sigma-bar_d")->check(CLI::NonNegativeNumber);
  sig->add_flag("--csv", csv);

  auto* all = app.add_subcommand("verify-all", "run the full verification suite");
  all->add_option("--config", config, "JSON suite configuration");
  all->add_option("--out", out, "report file (default stdout)");
  all->add_option("--format", format, "text | json | csv");
  all->add_flag("--timing", timing, "include per-check elapsed time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfig;
  }

  try {
    if (*dim) return cmd_dim(N, d, k, basis, as_json, route);
    if (*tinv) return cmd_tensor(k, d, basis);
    if (*harm) return cmd_harmonic(d, k, as_json);
    if (*dcp) return cmd_dcp(d, k, cap, as_json);
    if (*tab) return cmd_tableaux(mu, as_json);
    if (*gen) return cmd_generators(N, k, json_out, csv);
    if (*ver) return cmd_verify(N, k, dmax, route);
    if (*sig) return cmd_sigma(d, sigma_N, csv);
    if (*all) return cmd_verify_all(config, out, format, timing);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return 0;
}
