#pragma once

#include <string>

#include <json.hpp>

#include "drinfeld/kummer.hpp"
#include "drinfeld/uniformizer.hpp"

namespace drinfeld {

// Parsed input document: field + module, optional lattice, optional params.
struct InputDocument {
  FieldPtr F;
  DrinfeldModule module;
  LatticeSpec lattice;
  bool has_lattice = false;
  std::optional<long long> depth;  // absent = auto
  std::optional<long long> prec;   // absent = auto
  std::optional<Rat> bound;        // absent = auto
};

// Accepts JSON (first non-space byte '{') or a TOML subset: [section.path]
// headers, key = value with integers, quoted strings, booleans, arrays, and
// inline tables. Errors are reported as ParseError.
InputDocument parse_document(const std::string& text);

// Series literal: {"terms": [[num, level, ff], ...], "prec": "EXACT"|N|[num, level]}
// where ff is an integer or an array of [k : F_p]-coordinates.
LaurentElement parse_series(const nlohmann::json& j, const FieldPtr& F);

// "a" or "a/b" as a rational; ParseError mentions `where` on failure.
Rat parse_rat_text(const std::string& s, const std::string& where);

// ---- report serialization (display forms; deterministic) ----
nlohmann::json rat_json(const Rat& q);                      // "a" or "a/b"
nlohmann::json opt_rat_json(const std::optional<Rat>& q);   // "inf" when absent
nlohmann::json series_json(const LaurentElement& x);        // display string
nlohmann::json ore_json(const OrePolyL& f);                 // {"deg": series-string}
nlohmann::json ore_k_json(const OrePolyK& f);               // {"deg": ff-string}
nlohmann::json tau_series_json(const TauSeries& x);         // {"deg": series-string}
nlohmann::json class_json(const PrincipalClass& c);         // {"j": [[nu, ff-string],...]}
nlohmann::json echelon_json(const EchelonForm& e);
nlohmann::json tate_json(const TateRankTable& t);
nlohmann::json independence_json(const IndependenceCheck& c);
nlohmann::json inertia_json(const InertiaReport& rep);
nlohmann::json quotient_json(const AnalyticQuotient& q);

}  // namespace drinfeld
