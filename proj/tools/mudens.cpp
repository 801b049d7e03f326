// mudens: Mobius partial sums over prime-set-restricted minimal divisors.
//
// Subcommands:
//   sum        checkpointed -sum mu(a)/N(a) over a with p_min(a) in S
//   sato-tate  the same sum for a Sato-Tate angle window of a curve
//   verify     duality / consistency / diagnostics check suite
//
// Exit codes: 0 ok, 2 config error, 3 resource error, 4 precision error,
// 5 failed verification check.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mudens/errors.hpp"
#include "mudens/ideal.hpp"
#include "mudens/li.hpp"
#include "mudens/partial_sums.hpp"
#include "mudens/prime_set.hpp"
#include "mudens/sieve.hpp"
#include "mudens/trace_io.hpp"

namespace {

using mudens::config_error;
using u64 = std::uint64_t;

u64 parse_limit(const std::string& text) {
  try {
    if (text.find_first_of("eE.") != std::string::npos) {
      const double v = std::stod(text);
      if (!(v >= 2 && v <= 9e15) || v != std::floor(v))
        throw config_error("limit '" + text + "' is not a whole number in range");
      return static_cast<u64>(v);
    }
    return std::stoull(text);
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    throw config_error("bad limit '" + text + "'");
  }
}

std::vector<u64> parse_checkpoints(const std::string& text, u64 limit) {
  std::vector<u64> cps;
  if (text == "decades") {
    for (u64 x = 10; x <= limit; x *= 10) {
      cps.push_back(x);
      if (x > limit / 10) break;
    }
    if (cps.empty() || cps.back() != limit) cps.push_back(limit);
    return cps;
  }
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) cps.push_back(parse_limit(tok));
  if (cps.empty()) throw config_error("no checkpoints given");
  return cps;
}

struct CommonArgs {
  std::string set = "all";
  std::string field;
  std::string limit = "10000";
  std::string checkpoints = "decades";
  std::string out;
  std::string format = "table";
  std::string config;
  int workers = 0;
  double density = -1.0;  // <0 = not declared
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_set) {
  if (with_set) cmd->add_option("--set", a.set, "prime set spec (see README)");
  cmd->add_option("--field", a.field, "number field description file (default Q)");
  cmd->add_option("--limit", a.limit, "norm bound X (accepts 1e7 style)");
  cmd->add_option("--checkpoints", a.checkpoints, "comma list or 'decades'");
  cmd->add_option("--workers", a.workers, "worker threads (0 = all)");
  cmd->add_option("--out", a.out, "write CSV here");
  cmd->add_option("--format", a.format, "stdout format: table or csv")
      ->check(CLI::IsMember({"table", "csv"}));
  cmd->add_option("--density", a.density, "declared density for split/cycletype/and");
  cmd->add_option("--config", a.config, "JSON config file; flags override it");
}

void merge_json_config(const CLI::App* cmd, CommonArgs& a,
                       std::string* curve, std::string* interval) {
  if (a.config.empty()) return;
  std::ifstream in(a.config);
  if (!in) throw config_error("cannot open config '" + a.config + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw config_error(std::string("bad JSON config: ") + e.what());
  }
  auto absent = [&](const char* flag) {
    const auto* opt = cmd->get_option_no_throw(flag);
    return opt == nullptr || opt->count() == 0;
  };
  auto pull_str = [&](const char* key, const char* flag, std::string& slot) {
    if (j.contains(key) && absent(flag)) slot = j[key].get<std::string>();
  };
  pull_str("set", "--set", a.set);
  pull_str("field", "--field", a.field);
  pull_str("out", "--out", a.out);
  pull_str("format", "--format", a.format);
  if (j.contains("limit") && absent("--limit"))
    a.limit = j["limit"].is_string() ? j["limit"].get<std::string>()
                                     : std::to_string(j["limit"].get<u64>());
  if (j.contains("checkpoints") && absent("--checkpoints")) {
    if (j["checkpoints"].is_string()) {
      a.checkpoints = j["checkpoints"].get<std::string>();
    } else {
      std::string list;
      for (const auto& v : j["checkpoints"])
        list += (list.empty() ? "" : ",") + std::to_string(v.get<u64>());
      a.checkpoints = list;
    }
  }
  if (j.contains("workers") && absent("--workers")) a.workers = j["workers"].get<int>();
  if (j.contains("density") && absent("--density"))
    a.density = j["density"].get<double>();
  if (curve && j.contains("curve") && absent("--curve"))
    *curve = j["curve"].get<std::string>();
  if (interval && j.contains("interval") && absent("--interval"))
    *interval = j["interval"].get<std::string>();
}

mudens::NumberField load_field(const std::string& path) {
  if (path.empty()) return mudens::NumberField::rationals();
  return mudens::NumberField::load(path);
}

void emit_trace(const mudens::SumTrace& trace, const CommonArgs& a) {
  if (!a.out.empty()) {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw config_error("cannot write '" + a.out + "'");
    mudens::write_sum_trace_csv(out, trace);
  }
  if (a.format == "csv")
    mudens::write_sum_trace_csv(std::cout, trace);
  else
    std::cout << mudens::render_sum_table(trace);
}

int cmd_sum(const CLI::App* cmd, CommonArgs& a) {
  merge_json_config(cmd, a, nullptr, nullptr);
  const auto K = load_field(a.field);
  auto S = mudens::PrimeSetSpec::parse(a.set);
  if (a.density >= 0.0) S = S.with_declared_density(a.density);
  const u64 X = parse_limit(a.limit);
  const auto cps = parse_checkpoints(a.checkpoints, X);
  mudens::SumOptions opt;
  opt.workers = a.workers;
  const auto trace = mudens::partial_sum(K, S, X, cps, opt);
  emit_trace(trace, a);
  return 0;
}

int cmd_sato_tate(const CLI::App* cmd, CommonArgs& a, std::string& curve_s,
                  std::string& interval_s) {
  merge_json_config(cmd, a, &curve_s, &interval_s);
  if (curve_s.empty()) throw config_error("sato-tate: --curve A,B[,cm] is required");
  const auto comma = interval_s.find(',');
  if (comma == std::string::npos)
    throw config_error("sato-tate: --interval needs two angles");
  const double a1 = mudens::parse_angle(interval_s.substr(0, comma));
  const double a2 = mudens::parse_angle(interval_s.substr(comma + 1));
  const auto curve = mudens::Curve::parse(curve_s);
  mudens::PrimeSetSpec S(mudens::sets::SatoTate{curve, a1, a2},
                         "satotate:" + curve_s + ":" + interval_s);
  const auto K = mudens::NumberField::rationals();
  const u64 X = parse_limit(a.limit);
  const auto cps = parse_checkpoints(a.checkpoints, X);
  mudens::SumOptions opt;
  opt.workers = a.workers;
  const auto trace = mudens::partial_sum(K, S, X, cps, opt);
  emit_trace(trace, a);
  std::cout.setf(std::ios::fixed);
  std::cout.precision(5);
  std::cout << "theoretical Sato-Tate measure of [" << interval_s
            << "] = " << mudens::sato_tate_measure(a1, a2) << "\n";
  std::cout.unsetf(std::ios::fixed);
  return 0;
}

// The verification suite: Lemma-2.2 duality sweeps, the two-path Q_S sum
// consistency, and density diagnostics. --corrupt-mu flips one mu value in
// the duality sweep as a negative control of the reporting path.
int cmd_verify(const CLI::App* cmd, CommonArgs& a, bool corrupt_mu) {
  merge_json_config(cmd, a, nullptr, nullptr);
  const u64 X = parse_limit(a.limit);
  int failures = 0;
  auto report = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS  " : "FAIL  ") << name << "\n";
    if (!ok) ++failures;
  };

  const std::vector<std::string> set_names = {"all", "ap:4,1", "finite:2,5"};
  std::vector<mudens::PrimeSetSpec> sets;
  for (const auto& n : set_names) sets.push_back(mudens::PrimeSetSpec::parse(n));

  // duality over Q
  {
    const u64 lim = std::min<u64>(X, 10000);
    const auto table = mudens::sieve_spf(2, lim + 1);
    for (std::size_t si = 0; si < sets.size(); ++si) {
      bool ok = true;
      u64 bad_n = 0;
      for (u64 n = 2; n <= lim; ++n) {
        auto ideal = mudens::factor_rational(n, table);
        auto check = mudens::verify_duality(ideal, sets[si]);
        if (corrupt_mu && n == 30) check.lhs = -check.lhs;  // negative control
        if (check.lhs != check.rhs) {
          ok = false;
          bad_n = n;
          break;
        }
      }
      std::ostringstream name;
      name << "duality over Q, n <= " << lim << ", S=" << set_names[si];
      if (!ok) name << "  (first failure at n=" << bad_n << ")";
      report(name.str(), ok);
    }
  }

  // duality over the configured field, when one is given
  if (!a.field.empty()) {
    const auto K = load_field(a.field);
    const u64 lim = std::min<u64>(X, 2000);
    const mudens::PrimeIdealTable table(K, lim);
    for (std::size_t si = 0; si < sets.size(); ++si) {
      bool ok = true;
      mudens::enumerate_ideals(table, lim, [&](const auto& fs, u64 norm) {
        if (norm < 2 || !ok) return;
        const auto ideal = mudens::IdealFactorization::from_factors(fs);
        const auto check = mudens::verify_duality(ideal, sets[si]);
        if (check.lhs != check.rhs) ok = false;
      });
      report("duality over " + K.name + ", norm <= " + std::to_string(lim) +
                 ", S=" + set_names[si],
             ok);
    }
  }

  // q_sum two-path consistency
  {
    const u64 lim = std::min<u64>(X, 10000);
    const auto K = load_field(a.field);
    for (std::size_t si = 0; si < sets.size(); ++si) {
      const u64 direct = mudens::q_sum(K, sets[si], lim);
      const u64 smooth = mudens::q_sum_via_smooth(K, sets[si], lim);
      std::ostringstream name;
      name << "q_sum consistency over " << K.name << " at X=" << lim
           << ", S=" << set_names[si] << " (" << direct << " vs " << smooth << ")";
      report(name.str(), direct == smooth);
    }
  }

  // density diagnostics: e_S monotone, v_S antitone, count ratio sane
  {
    const auto K = load_field(a.field);
    std::vector<u64> grid;
    for (u64 x = 100; x <= X; x *= 10) grid.push_back(x);
    if (grid.empty()) grid.push_back(X);
    for (const auto& spec_name : {std::string("all"), std::string("ap:4,1")}) {
      const auto S = mudens::PrimeSetSpec::parse(spec_name);
      const auto diag = mudens::density_diagnostics(K, S, grid);
      bool mono = true;
      for (std::size_t i = 1; i < diag.rows.size(); ++i) {
        if (diag.rows[i].e_s < diag.rows[i - 1].e_s) mono = false;
        if (diag.rows[i].v_s > diag.rows[i - 1].v_s) mono = false;
      }
      const auto& last = diag.rows.back();
      const double ratio =
          static_cast<double>(last.pi_s) / static_cast<double>(last.pi_all);
      const bool ratio_ok = std::abs(ratio - diag.density) < 0.05;
      report("diagnostics " + spec_name + " over " + K.name + " (ratio " +
                 std::to_string(ratio) + " vs density " +
                 std::to_string(diag.density) + ")",
             mono && ratio_ok);
    }
  }

  if (failures > 0) {
    std::cout << failures << " check(s) failed\n";
    throw mudens::check_failure("verification failed");
  }
  std::cout << "all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mobius partial sums over ideals with restricted minimal prime"};
  app.require_subcommand(1);

  CommonArgs sum_args, st_args, verify_args;
  std::string curve = "-1,1";
  std::string interval = "pi/3,2pi/3";
  bool corrupt_mu = false;

  auto* sum = app.add_subcommand("sum", "checkpointed partial sums");
  add_common(sum, sum_args, true);

  auto* st = app.add_subcommand("sato-tate", "Sato-Tate interval partial sums");
  add_common(st, st_args, false);
  st->add_option("--curve", curve, "curve 'A,B[,cm]' for y^2 = x^3 + Ax + B");
  st->add_option("--interval", interval, "angle window, e.g. 'pi/3,2pi/3'");

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  add_common(verify, verify_args, false);
  verify->add_flag("--corrupt-mu", corrupt_mu,
                   "test mode: inject a corrupted mu value (must fail)");

  try {
    app.parse(argc, argv);
    if (sum->parsed()) return cmd_sum(sum, sum_args);
    if (st->parsed()) return cmd_sato_tate(st, st_args, curve, interval);
    if (verify->parsed()) return cmd_verify(verify, verify_args, corrupt_mu);
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mudens::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const mudens::precision_error& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return 4;
  } catch (const mudens::check_failure& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
