// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "trace_repair/commands.hpp"

using namespace trace_repair;

namespace {

struct TowerFlags {
  std::uint32_t p = 2, m = 1, t = 4;
  void add(CLI::App* app) {
    app->add_option("--p", p, "characteristic");
    app->add_option("--m", m, "subfield degree over GF(p)");
    app->add_option("--t", t, "extension degree over the subfield");
  }
  FieldTower make() const { return FieldTower(p, m, t, max_field_from_env()); }
};

int run_repair(const std::optional<std::string>& config, const std::map<std::string, std::string>& flags) {
  Scenario sc = config ? load_scenario(*config) : Scenario{};
  for (const auto& [k, v] : flags) scenario_set(sc, k, v);
  std::ofstream tfile;
  std::ostream* tr = nullptr;
  if (sc.transcript) {
    tfile.open(*sc.transcript);
    if (!tfile) throw ParseError("cannot write transcript file '" + *sc.transcript + "'");
    tr = &tfile;
  }
  const auto rep = cmd_repair(sc, tr);
  if (sc.out) {
    std::ofstream out(*sc.out);
    if (!out) throw ParseError("cannot write report file '" + *sc.out + "'");
    write_report_csv(out, rep);
  } else {
    write_report_csv(std::cout, rep);
  }
  write_report_summary(std::cerr, rep);
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace repair of full-length Reed-Solomon codes"};
  app.require_subcommand(1);

  auto* repair_cmd = app.add_subcommand("repair", "run a repair scenario and report bandwidth per trial");
  std::optional<std::string> config;
  std::map<std::string, std::string> flags;
  repair_cmd->add_option("--config", config, "key=value scenario file; flags override it");
  for (const char* key : {"p", "m", "t", "k", "erasures", "scheme", "trials", "seed", "message", "out", "transcript"}) {
    repair_cmd->add_option_function<std::string>(
        std::string("--") + key, [&flags, key](const std::string& v) { flags[key] = v; }, key);
  }

  auto* count_cmd = app.add_subcommand("count-triples", "count correctable three-erasure patterns");
  TowerFlags count_tower;
  count_tower.add(count_cmd);
  std::string alpha = "0", beta = "1";
  bool all_towers = false;
  count_cmd->add_option("--alpha", alpha, "first fixed point (element notation)");
  count_cmd->add_option("--beta", beta, "second fixed point (element notation)");
  count_cmd->add_flag("--all,--full", all_towers, "every reference tower, checked against the reference counts");

  auto* compare_cmd = app.add_subcommand("compare", "bandwidth of each scheme against baselines");
  TowerFlags compare_tower;
  compare_tower.add(compare_cmd);
  std::optional<std::size_t> compare_k;
  compare_cmd->add_option("--k", compare_k, "code dimension (default n(1-1/|B|))");

  auto* selftest_cmd = app.add_subcommand("selftest", "regenerate the reference check rows, census and toy transcript");

  CLI11_PARSE(app, argc, argv);

  try {
    if (repair_cmd->parsed()) return run_repair(config, flags);
    if (count_cmd->parsed()) {
      if (!all_towers) {
        const auto tw = count_tower.make();
        cmd_count_triples(tw, std::cout, tw.parse(alpha), tw.parse(beta));
        return 0;
      }
      bool ok = true;
      write_census_header(std::cout);
      for (const auto& row : reference_census()) {
        const FieldTower tw(row.p, row.m, row.t, max_field_from_env());
        const auto c = cmd_count_triples(tw, std::cout, {}, {}, false);
        if (c.correctable != row.correctable || c.total != row.total) {
          std::cerr << "mismatch " << tw.name() << ": expected " << row.correctable << "/" << row.total << '\n';
          ok = false;
        }
      }
      return ok ? 0 : 1;
    }
    if (compare_cmd->parsed()) {
      const auto tw = compare_tower.make();
      const CodeParams params = compare_k ? CodeParams(tw, *compare_k) : CodeParams(tw);
      cmd_compare(tw, params.k, std::cout);
      return 0;
    }
    if (selftest_cmd->parsed()) return cmd_selftest(std::cout) ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
