// Command-line front end: validate / lift / chi-inv / analyze / uniformize /
// tate-ranks over a JSON or TOML input document. JSON report on stdout (sorted
// keys, byte-stable), human summary on stderr, optional --json FILE copy.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "drinfeld/engine.hpp"

namespace {

using drinfeld::ErrKind;
using json = nlohmann::json;

int g_log_level = 0;  // 0 off, 1 info, 2 debug

void read_log_env() {
  const char* v = std::getenv("DRINFELD_LOG");
  if (!v) return;
  std::string s(v);
  if (s == "info")
    g_log_level = 1;
  else if (s == "debug")
    g_log_level = 2;
}

void log_info(const std::string& msg) {
  if (g_log_level >= 1) std::cerr << "[drinfeld] " << msg << "\n";
}

int exit_code_for(ErrKind k) {
  switch (k) {
    case ErrKind::ParseError:
    case ErrKind::BadReduction:
    case ErrKind::NotADrinfeldModule:
    case ErrKind::FieldMismatch:
      return 1;
    case ErrKind::RankInconsistent:
      return 2;
    case ErrKind::ResidualTooLarge:
      return 4;
    default:
      return 3;  // precision / convergence / internal arithmetic trouble
  }
}

// Resolved optional parameter: an explicit CLI value wins, then the document,
// then auto (= absent). "--depth auto" forces auto-mode over the document.
std::optional<long long> resolve_param(bool flag_given, const std::string& flag_value,
                                       const std::optional<long long>& doc_value,
                                       const char* name) {
  if (flag_given) {
    if (flag_value == "auto") return std::nullopt;
    try {
      std::size_t used = 0;
      long long v = std::stoll(flag_value, &used);
      if (used != flag_value.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      drinfeld::fail(ErrKind::ParseError, std::string("--") + name + " must be an integer or 'auto'");
    }
  }
  return doc_value;
}

}  // namespace

int main(int argc, char** argv) {
  read_log_env();

  CLI::App app{"Exact analyzer for Drinfeld F_p[t]-modules over k((pi))"};
  app.require_subcommand(1);

  std::string input_path, depth_s, prec_s, bound_s, json_path;
  bool verify = false;

  auto add_common = [&](CLI::App* sub, bool with_bound) {
    sub->add_option("--input", input_path, "Input document (JSON or TOML)")->required();
    sub->add_option("--depth", depth_s, "Truncation depth (integer or 'auto')");
    sub->add_option("--prec", prec_s, "Working pi-adic precision (integer or 'auto')");
    if (with_bound) sub->add_option("--bound", bound_s, "Valuation bound B (rational or 'auto')");
    sub->add_flag("--verify", verify, "Replay invariant checks; include a pass/fail matrix");
    sub->add_option("--json", json_path, "Also write the JSON report to this file");
  };

  CLI::App* c_validate = app.add_subcommand("validate", "Check the module (and lattice) inputs");
  CLI::App* c_lift = app.add_subcommand("lift", "Canonical intertwiner between psi and its reduction");
  CLI::App* c_chi = app.add_subcommand("chi-inv", "Classes chi^{-1}(m) of the lattice generators");
  CLI::App* c_analyze = app.add_subcommand("analyze", "Full inertia-image structure report");
  CLI::App* c_uni = app.add_subcommand("uniformize", "Analytic quotient by the lattice");
  CLI::App* c_tate = app.add_subcommand("tate-ranks", "Tate module rank table");
  for (CLI::App* sub : {c_validate, c_lift, c_chi, c_analyze, c_tate}) add_common(sub, false);
  add_common(c_uni, true);

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();

  int code = 0;
  json report;
  try {
    std::ifstream in(input_path);
    if (!in) drinfeld::fail(ErrKind::ParseError, "cannot open input file '" + input_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    log_info("parsing " + input_path);
    const auto doc = drinfeld::parse_document(buf.str());

    drinfeld::RunParams par;
    par.depth = resolve_param(sub->count("--depth") > 0, depth_s, doc.depth, "depth");
    par.prec = resolve_param(sub->count("--prec") > 0, prec_s, doc.prec, "prec");
    par.verify = verify;
    if (sub->get_option_no_throw("--bound") && sub->count("--bound") > 0) {
      if (bound_s != "auto") par.bound = drinfeld::parse_rat_text(bound_s, "--bound");
    } else {
      par.bound = doc.bound;
    }

    const std::string name = sub->get_name();
    log_info("running " + name);
    bool all_pass = true;
    report = drinfeld::run_command(name, doc, par, &std::cerr, all_pass);
    if (!all_pass) code = 3;
  } catch (const drinfeld::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  const std::string out = report.dump(2) + "\n";
  std::cout << out;
  if (!json_path.empty()) {
    std::ofstream jf(json_path);
    if (!jf) {
      std::cerr << "error: cannot write '" << json_path << "'\n";
      return 1;
    }
    jf << out;
  }
  return code;
}
