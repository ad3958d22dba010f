#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "drinfeld/io.hpp"

namespace drinfeld {

// Resolved run parameters: absent means auto.
struct RunParams {
  std::optional<long long> depth;
  std::optional<long long> prec;
  std::optional<Rat> bound;
  bool verify = false;
};

// Executes one command — "validate", "lift", "chi-inv", "analyze",
// "uniformize" or "tate-ranks" — on a parsed document and returns the JSON
// report. One-line human summaries go to *summary when it is non-null. With
// par.verify the report gains a {"checks": [...], "all_pass": bool} block
// under "verify" and all_pass mirrors it; otherwise all_pass stays true.
// Shared by the CLI and the python bindings so both emit identical reports.
nlohmann::json run_command(const std::string& command, const InputDocument& doc,
                           const RunParams& par, std::ostream* summary, bool& all_pass);

}  // namespace drinfeld
