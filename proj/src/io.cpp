#include "drinfeld/io.hpp"

#include <cctype>

namespace drinfeld {

using nlohmann::json;

namespace {

// ---------------- TOML subset -> json tree ----------------

class TomlParser {
 public:
  explicit TomlParser(const std::string& text) : s_(text) {}

  json parse() {
    json root = json::object();
    std::vector<std::string> section;  // current [a.b.c] path
    for (;;) {
      skip_space(true);
      if (i_ >= s_.size()) break;
      if (s_[i_] == '[') {
        ++i_;
        section = dotted_path();
        skip_space(false);
        expect(']');
        resolve(root, section);  // create the table even if empty
      } else {
        std::string key = read_key();
        skip_space(false);
        expect('=');
        skip_space(false);
        json v = value();
        json& sec = resolve(root, section);
        if (sec.contains(key)) err("duplicate key '" + key + "'");
        sec[key] = std::move(v);
      }
    }
    return root;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  [[noreturn]] void err(const std::string& msg) { fail(ErrKind::ParseError, "toml: " + msg); }

  void skip_space(bool newlines) {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else if (c == '\n' || c == '\r') {
        if (!newlines) return;
        ++i_;
      } else if (c == ' ' || c == '\t') {
        ++i_;
      } else {
        return;
      }
    }
  }

  void expect(char c) {
    if (i_ >= s_.size() || s_[i_] != c) err(std::string("expected '") + c + "'");
    ++i_;
  }

  static bool bare_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::string read_key() {
    if (i_ < s_.size() && s_[i_] == '"') return string_value();
    std::string k;
    while (i_ < s_.size() && bare_char(s_[i_])) k += s_[i_++];
    if (k.empty()) err("expected a key");
    return k;
  }

  std::vector<std::string> dotted_path() {
    std::vector<std::string> path;
    for (;;) {
      skip_space(false);
      path.push_back(read_key());
      skip_space(false);
      if (i_ < s_.size() && s_[i_] == '.') {
        ++i_;
        continue;
      }
      return path;
    }
  }

  json& resolve(json& root, const std::vector<std::string>& path) {
    json* cur = &root;
    for (const auto& k : path) {
      if (!cur->contains(k)) (*cur)[k] = json::object();
      cur = &(*cur)[k];
      if (!cur->is_object()) err("path component '" + k + "' is not a table");
    }
    return *cur;
  }

  std::string string_value() {
    expect('"');
    std::string v;
    while (i_ < s_.size() && s_[i_] != '"') {
      char c = s_[i_++];
      if (c == '\\') {
        if (i_ >= s_.size()) err("dangling escape");
        char e = s_[i_++];
        if (e == '"' || e == '\\')
          v += e;
        else
          err("unsupported escape");
      } else if (c == '\n') {
        err("newline in string");
      } else {
        v += c;
      }
    }
    expect('"');
    return v;
  }

  json value() {
    skip_space(true);
    if (i_ >= s_.size()) err("expected a value");
    char c = s_[i_];
    if (c == '"') return string_value();
    if (c == '[') {
      ++i_;
      json arr = json::array();
      skip_space(true);
      if (i_ < s_.size() && s_[i_] == ']') {
        ++i_;
        return arr;
      }
      for (;;) {
        arr.push_back(value());
        skip_space(true);
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          skip_space(true);
          if (i_ < s_.size() && s_[i_] == ']') {  // trailing comma
            ++i_;
            return arr;
          }
          continue;
        }
        expect(']');
        return arr;
      }
    }
    if (c == '{') {
      ++i_;
      json obj = json::object();
      skip_space(true);
      if (i_ < s_.size() && s_[i_] == '}') {
        ++i_;
        return obj;
      }
      for (;;) {
        skip_space(true);
        std::string key = read_key();
        skip_space(false);
        expect('=');
        json v = value();
        if (obj.contains(key)) err("duplicate key '" + key + "'");
        obj[key] = std::move(v);
        skip_space(true);
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        expect('}');
        return obj;
      }
    }
    if (c == 't' || c == 'f') {
      if (s_.compare(i_, 4, "true") == 0) {
        i_ += 4;
        return true;
      }
      if (s_.compare(i_, 5, "false") == 0) {
        i_ += 5;
        return false;
      }
      err("unrecognized literal");
    }
    if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      if (c == '+' || c == '-') ++i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (i_ == start + (s_[start] == '+' || s_[start] == '-' ? 1u : 0u)) err("bad number");
      if (i_ < s_.size() && (s_[i_] == '.' || s_[i_] == 'e' || s_[i_] == 'E'))
        err("only integer numbers are supported");
      return json(std::stoll(s_.substr(start, i_ - start)));
    }
    err("unrecognized value");
  }
};

// ---------------- schema helpers ----------------

[[noreturn]] void bad(const std::string& msg) { fail(ErrKind::ParseError, msg); }

const json& member(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) bad(where + " must be a table/object");
  auto it = j.find(key);
  if (it == j.end()) bad(where + " is missing required key '" + key + "'");
  return *it;
}

long long as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) bad(where + " must be an integer");
  return j.get<long long>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) bad(where + " must be a table/object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) bad(where + " has unknown key '" + it.key() + "'");
  }
}

Rat parse_rat_string(const std::string& s, const std::string& where) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    bad(where + ": cannot parse rational '" + s + "'");
  }
}

FFElem parse_ff(const json& j, const FieldPtr& F, const std::string& where) {
  if (j.is_number_integer() || j.is_number_unsigned())
    return FFElem::from_int(F, j.get<long long>());
  if (j.is_array()) {
    if (static_cast<long long>(j.size()) > F->d())
      bad(where + ": coefficient vector longer than the field degree");
    FFElem acc = FFElem::zero(F);
    FFElem zpow = FFElem::one(F);
    const FFElem z = FFElem::gen(F);
    for (const auto& e : j) {
      acc = acc + FFElem::from_int(F, as_int(e, where + " coefficient")) * zpow;
      zpow = zpow * z;
    }
    return acc;
  }
  bad(where + ": field element must be an integer or coordinate array");
}

FieldPtr parse_field(const json& j) {
  check_keys(j, {"p", "g"}, "field");
  const long long p = as_int(member(j, "p", "field"), "field.p");
  if (!j.contains("g")) return Field::prime(p);
  const json& gj = j.at("g");
  if (!gj.is_array()) bad("field.g must be an array of F_p coefficients");
  std::vector<long long> g;
  for (const auto& e : gj) g.push_back(as_int(e, "field.g entry"));
  return Field::make(p, g);
}

OrePolyL parse_ore(const json& j, const FieldPtr& F, const std::string& where) {
  if (!j.is_object()) bad(where + " must map tau-exponents to series literals");
  OrePolyL f;
  for (auto it = j.begin(); it != j.end(); ++it) {
    long long e = 0;
    try {
      std::size_t used = 0;
      e = std::stoll(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      bad(where + ": key '" + it.key() + "' is not a tau-exponent");
    }
    if (e < 0) bad(where + ": negative tau-exponent");
    LaurentElement c = parse_series(*it, F);
    if (!c.is_exact_zero()) f.set(e, std::move(c));
  }
  return f;
}

LatticeSpec parse_lattice(const json& j, const FieldPtr& F) {
  check_keys(j, {"generators", "declared_rank", "independence_bound"}, "lattice");
  LatticeSpec L;
  if (j.contains("generators")) {
    const json& g = j.at("generators");
    if (!g.is_array()) bad("lattice.generators must be an array");
    for (const auto& e : g) L.generators.push_back(parse_series(e, F));
  }
  L.declared_rank = j.contains("declared_rank")
                        ? as_int(j.at("declared_rank"), "lattice.declared_rank")
                        : static_cast<long long>(L.generators.size());
  L.independence_bound =
      j.contains("independence_bound") ? as_int(j.at("independence_bound"), "lattice.independence_bound") : 2;
  return L;
}

}  // namespace

Rat parse_rat_text(const std::string& s, const std::string& where) {
  return parse_rat_string(s, where);
}

LaurentElement parse_series(const json& j, const FieldPtr& F) {
  if (!j.is_object()) bad("series literal must be an object with 'terms'");
  check_keys(j, {"terms", "prec"}, "series literal");
  LaurentElement acc = LaurentElement::zero(F);
  if (j.contains("terms")) {
    const json& terms = j.at("terms");
    if (!terms.is_array()) bad("series 'terms' must be an array of [num, level, ff] triples");
    for (const auto& t : terms) {
      if (!t.is_array() || t.size() != 3) bad("series term must be a [num, level, ff] triple");
      const long long num = as_int(t[0], "series term exponent numerator");
      const long long level = as_int(t[1], "series term level");
      if (level < 0 || level > 32) bad("series term level must be in [0, 32]");
      FFElem c = parse_ff(t[2], F, "series term coefficient");
      acc = acc + LaurentElement::monomial(c, num, level);
    }
  }
  if (j.contains("prec")) {
    const json& pr = j.at("prec");
    if (pr.is_string()) {
      if (pr.get<std::string>() != "EXACT") bad("series 'prec' string must be \"EXACT\"");
    } else if (pr.is_array()) {
      if (pr.size() != 2) bad("series 'prec' pair must be [num, level]");
      const long long num = as_int(pr[0], "series prec numerator");
      const long long level = as_int(pr[1], "series prec level");
      if (level < 0) bad("series prec level must be nonnegative");
      long long den = 1;
      for (long long k = 0; k < level; ++k) {
        if (den > (1LL << 60) / F->p()) bad("series prec level too large");
        den *= F->p();
      }
      acc = truncate_at(acc, Rat(num, den));
    } else {
      acc = truncate_at(acc, Rat(as_int(pr, "series prec")));
    }
  }
  return acc;
}

InputDocument parse_document(const std::string& text) {
  json root;
  std::size_t k = 0;
  while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
  if (k >= text.size()) bad("empty input document");
  if (text[k] == '{') {
    try {
      root = json::parse(text);
    } catch (const std::exception& e) {
      bad(std::string("json: ") + e.what());
    }
  } else {
    root = TomlParser(text).parse();
  }

  check_keys(root, {"field", "module", "lattice", "params"}, "document");
  InputDocument doc;
  doc.F = parse_field(member(root, "field", "document"));

  const json& mod = member(root, "module", "document");
  check_keys(mod, {"psi_t"}, "module");
  doc.module.F = doc.F;
  doc.module.psi_t = parse_ore(member(mod, "psi_t", "module"), doc.F, "module.psi_t");

  if (root.contains("lattice")) {
    doc.has_lattice = true;
    doc.lattice = parse_lattice(root.at("lattice"), doc.F);
  }

  if (root.contains("params")) {
    const json& par = root.at("params");
    check_keys(par, {"depth", "prec", "bound"}, "params");
    auto opt_int = [&](const char* key, std::optional<long long>& slot) {
      if (!par.contains(key)) return;
      const json& v = par.at(key);
      if (v.is_string()) {
        if (v.get<std::string>() != "auto") bad(std::string("params.") + key + " must be an integer or \"auto\"");
        return;
      }
      slot = as_int(v, std::string("params.") + key);
    };
    opt_int("depth", doc.depth);
    opt_int("prec", doc.prec);
    if (par.contains("bound")) {
      const json& v = par.at("bound");
      if (v.is_string()) {
        if (v.get<std::string>() != "auto")
          doc.bound = parse_rat_string(v.get<std::string>(), "params.bound");
      } else {
        doc.bound = Rat(as_int(v, "params.bound"));
      }
    }
  }
  return doc;
}

// ---------------- serialization ----------------

json rat_json(const Rat& q) { return q.str(); }

json opt_rat_json(const std::optional<Rat>& q) { return q ? json(q->str()) : json("inf"); }

json series_json(const LaurentElement& x) { return x.str(); }

json ore_json(const OrePolyL& f) {
  json o = json::object();
  for (const auto& [i, v] : f.c) o[std::to_string(i)] = v.str();
  return o;
}

json ore_k_json(const OrePolyK& f) {
  json o = json::object();
  for (const auto& [i, v] : f.c) o[std::to_string(i)] = v.str();
  return o;
}

json tau_series_json(const TauSeries& x) {
  json o = json::object();
  for (const auto& [j, v] : x.c) o[std::to_string(j)] = v.str();
  return o;
}

json class_json(const PrincipalClass& c) {
  json o = json::object();
  for (const auto& [j, fj] : c.decomp) {
    json terms = json::array();
    for (const auto& [nu, v] : fj.c) terms.push_back(json::array({nu, v.str()}));
    o[std::to_string(j)] = std::move(terms);
  }
  return o;
}

json echelon_json(const EchelonForm& e) {
  json rows = json::array();
  for (const auto& r : e.rows) rows.push_back(class_json(r));
  json cert = json::array();
  for (const auto& op : e.certificate) {
    json entry = {{"op", op.kind}, {"row", op.row}};
    if (op.kind == "scale")
      entry["shift"] = op.shift;
    else {
      entry["other"] = op.other;
      entry["q"] = ore_k_json(op.q);
    }
    cert.push_back(std::move(entry));
  }
  return json{{"rows", std::move(rows)}, {"pivots", e.pivots}, {"certificate", std::move(cert)}};
}

json tate_json(const TateRankTable& t) {
  return json{{"reduction_prime", t.reduction_prime},
              {"rank_at_reduction_prime", t.rank_at_reduction_prime},
              {"rank_elsewhere", t.rank_elsewhere}};
}

json independence_json(const IndependenceCheck& c) {
  return json{{"degree_bound", c.D},
              {"relation_found", c.relation_found},
              {"combinations", c.combinations}};
}

json inertia_json(const InertiaReport& rep) {
  json filt = json::array();
  for (const auto& row : rep.filtration)
    filt.push_back(json{{"i", row.i}, {"rank", row.rank}, {"classification", row.classification}});
  json gens = json::array();
  for (const auto& c : rep.gen_classes) gens.push_back(class_json(c));
  return json{
      {"d", rep.d},
      {"r_psi", rep.r_psi},
      {"h", rep.h},
      {"pres", rep.pres},
      {"w", opt_rat_json(rep.w)},
      {"S", rep.S},
      {"rank_R", rep.rank_R},
      {"conductor", rep.conductor},
      {"image_rank", rep.image_rank},
      {"open", rep.open},
      {"declared_rank", rep.declared_rank},
      {"filtration", std::move(filt)},
      {"tate", tate_json(rep.tate)},
      {"bounds",
       json{{"j_set_of_generators", rep.bounds.j_set_of_generators},
            {"iRankBound_ok", rep.bounds.iRankBound_ok},
            {"iOpenness_sufficient", rep.bounds.iOpenness_sufficient},
            {"iMJump_breaks", rep.bounds.iMJump_breaks},
            {"j_lower_bound_strict", rep.bounds.j_lower_bound_strict}}},
      {"grJK_rule", rep.grJK_rule},
      {"independence", independence_json(rep.independence)},
      {"gen_classes", std::move(gens)},
      {"echelon", echelon_json(rep.echelon)}};
}

json quotient_json(const AnalyticQuotient& q) {
  json pts = json::array();
  for (const auto& m : q.exp.lattice.points) pts.push_back(m.str());
  return json{{"bound", rat_json(q.exp.lattice.B)},
              {"degree_bound", q.exp.lattice.degree_bound},
              {"cancellation_warning", q.exp.lattice.cancellation_warning},
              {"points", std::move(pts)},
              {"e_B", ore_json(q.exp.e_B)},
              {"phi_t", ore_json(q.phi_t)},
              {"phi_t_degree_certified", q.phi_t_degree_certified},
              {"residual_valuation", opt_rat_json(q.residual_valuation)}};
}

}  // namespace drinfeld
