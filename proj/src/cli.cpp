#include "tslice/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tslice/report.hpp"

namespace tslice {

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Report unreadable(const std::string& path) {
  Report r;
  r.diagnostics.push_back({Severity::Error, "cannot read file", 1, 1, path});
  return r;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal-slice calculus for plural collections: check worlds, evaluate scripts, "
               "decide de re / de dicto readings.",
               "tslice"};
  app.require_subcommand(1);

  std::string format_name = "text";
  std::string policy_name = "strict";
  std::uint64_t seed = 0;
  app.add_option("--format", format_name, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--policy", policy_name, "Slicing policy outside life spans")
      ->check(CLI::IsMember({"strict", "lenient"}))
      ->capture_default_str();
  app.add_option("--seed", seed, "Seed for generated-world testing (reserved)");

  std::string world_path, script_path, statement_id;

  auto* check = app.add_subcommand("check", "Parse and validate a world file");
  check->add_option("WORLD", world_path, "World file (.tcw)")->required();

  auto* eval = app.add_subcommand("eval", "Run the evals and asserts of a script against a world");
  eval->add_option("WORLD", world_path, "World file (.tcw)")->required();
  eval->add_option("SCRIPT", script_path, "Script file (.tcq)")->required();

  auto* disamb = app.add_subcommand("disambiguate", "Decide de re / de dicto for a statement");
  disamb->add_option("WORLD", world_path, "World file (.tcw)")->required();
  disamb->add_option("STMT_ID", statement_id, "Statement id")->required();

  auto* expl = app.add_subcommand("explain", "Decide a statement and evaluate every licensed reading");
  expl->add_option("WORLD", world_path, "World file (.tcw)")->required();
  expl->add_option("STMT_ID", statement_id, "Statement id")->required();

  for (auto* sub : {check, eval, disamb, expl}) sub->fallthrough();

  // CLI11 expects reversed argv-style input
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "tslice: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  const Format format = format_name == "json" ? Format::Json : Format::Text;
  const Policy policy = policy_name == "lenient" ? Policy::Lenient : Policy::Strict;

  Report report;
  auto world_text = read_file(world_path);
  if (!world_text) {
    report = unreadable(world_path);
  } else if (check->parsed()) {
    report = check_world(*world_text, world_path);
  } else if (eval->parsed()) {
    auto script_text = read_file(script_path);
    report = script_text ? run_script(*world_text, world_path, *script_text, script_path, policy)
                         : unreadable(script_path);
  } else {
    report = run_statement(*world_text, world_path, statement_id, expl->parsed(), policy);
  }

  out << format_report(report, format);
  return report.exit_code();
}

} // namespace tslice
