#include "drinfeld/engine.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "drinfeld/kummer.hpp"
#include "drinfeld/uniformizer.hpp"

namespace drinfeld {
namespace {

using json = nlohmann::json;
using Checks = std::vector<std::pair<std::string, bool>>;

std::string joined(const std::vector<long long>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << "]";
  return os.str();
}

json cmd_validate(const InputDocument& doc, Checks& checks, std::ostream* summary) {
  validate_module(doc.module);
  const auto inv = reduction_invariants(doc.module);
  const auto w = reduction_gap(doc.module);
  json rep{{"command", "validate"},
           {"ok", true},
           {"d", inv.d},
           {"r", inv.r},
           {"h", inv.h},
           {"pres", inv.p_res},
           {"w", opt_rat_json(w)},
           {"psi_t", ore_json(doc.module.psi_t)}};
  if (doc.has_lattice) {
    validate_lattice(doc.module, doc.lattice);
    json gens = json::array();
    for (const auto& m : doc.lattice.generators) gens.push_back(m.str());
    rep["lattice"] = json{{"generators", std::move(gens)},
                          {"declared_rank", doc.lattice.declared_rank},
                          {"independence_bound", doc.lattice.independence_bound}};
  }
  checks.emplace_back("module_valid", true);
  if (summary)
    *summary << "valid: r = " << inv.r << ", h = " << inv.h << ", d = " << inv.d
             << ", pres = " << joined(inv.p_res) << "\n";
  return rep;
}

json cmd_lift(const InputDocument& doc, const RunParams& par, Checks& checks,
              std::ostream* summary) {
  const long long J = par.depth.value_or(5);
  const long long N = par.prec.value_or(std::max<long long>(16, 2 * (J + 4)));
  if (J < 0 || N <= 0) fail(ErrKind::ParseError, "lift needs depth >= 0 and prec >= 1");
  const auto x = canonical_lift(doc.module, J, N);
  const auto res = lift_residual(doc.module, x);
  json rep{{"command", "lift"},
           {"depth", J},
           {"prec", N},
           {"w", opt_rat_json(reduction_gap(doc.module))},
           {"x", tau_series_json(x)},
           {"residual_ok", res.ok},
           {"residual_worst", opt_rat_json(res.worst)}};
  if (par.verify) {
    checks.emplace_back("commutation_residual", res.ok);
    bool inv_ok = false;
    try {
      const auto y = series_inverse(x, J);
      inv_ok = series_mul(x, y, J).is_one(doc.F);
    } catch (const Error&) {
      inv_ok = false;
    }
    checks.emplace_back("x_times_xinv_is_one", inv_ok);
  }
  if (summary)
    *summary << "lift: depth " << J << ", prec " << N << ", residual "
             << (res.ok ? "clean" : "NONZERO") << "\n";
  return rep;
}

json cmd_chi_inv(const InputDocument& doc, const RunParams& par, Checks& checks,
                 std::ostream* summary) {
  if (!doc.has_lattice) fail(ErrKind::ParseError, "chi-inv requires a lattice block");
  KummerOptions opt{par.depth, par.prec};
  const auto classes = build_Mbar(doc.module, doc.lattice, opt);
  json cj = json::array(), gens = json::array();
  for (const auto& c : classes) cj.push_back(class_json(c));
  for (const auto& m : doc.lattice.generators) gens.push_back(m.str());
  json rep{{"command", "chi-inv"}, {"generators", std::move(gens)}, {"classes", std::move(cj)}};
  if (par.verify) {
    const auto full = inertia_report(doc.module, doc.lattice, opt);
    for (const auto& chk : verify_inertia(doc.module, doc.lattice, full, opt))
      checks.push_back(chk);
  }
  if (summary) *summary << "chi-inv: " << classes.size() << " generator class(es)\n";
  return rep;
}

json cmd_analyze(const InputDocument& doc, const RunParams& par, Checks& checks,
                 std::ostream* summary) {
  if (!doc.has_lattice) fail(ErrKind::ParseError, "analyze requires a lattice block");
  KummerOptions opt{par.depth, par.prec};
  const auto rep = inertia_report(doc.module, doc.lattice, opt);
  json j = inertia_json(rep);
  j["command"] = "analyze";
  if (par.verify)
    for (const auto& chk : verify_inertia(doc.module, doc.lattice, rep, opt))
      checks.push_back(chk);
  if (summary)
    *summary << "analyze: S = " << joined(rep.S) << ", rank_R = " << rep.rank_R
             << ", conductor = " << rep.conductor << ", image_rank = " << rep.image_rank
             << ", open = " << (rep.open ? "yes" : "no") << "\n";
  return j;
}

json cmd_uniformize(const InputDocument& doc, const RunParams& par, Checks& checks,
                    std::ostream* summary) {
  validate_module(doc.module);
  const LatticeSpec& L = doc.lattice;  // empty when no block given
  validate_lattice(doc.module, L);
  Rat B = par.bound.value_or(Rat(0));
  if (!(Rat(0) < B)) {
    B = Rat(1);
    for (const auto& m : L.generators) {
      const auto v = valuation(m);
      const Rat av = v < Rat(0) ? -v : v;
      if (B < av) B = av;
    }
    B = Rat(B.ceil_ll());
  }
  json rep{{"command", "uniformize"}};
  if (!L.generators.empty()) {
    const auto chk = bounded_independence(doc.module, L);
    rep["independence"] = independence_json(chk);
  }
  const auto q = analytic_quotient(doc.module, L, B, par.prec);
  rep.update(quotient_json(q));
  if (par.verify) {
    bool additive = true;
    const auto& pts = q.exp.lattice.points;
    const std::size_t n = std::min<std::size_t>(pts.size(), 5);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b)
        additive = additive && exponential_additive_on(q.exp.e_B, pts[a], pts[b]);
    checks.emplace_back("exp_additive_on_points", additive);
    checks.emplace_back("residual_positive",
                        !q.residual_valuation || Rat(0) < *q.residual_valuation);
  }
  if (summary)
    *summary << "uniformize: bound " << B.str() << ", " << q.exp.lattice.points.size()
             << " point(s), residual valuation "
             << (q.residual_valuation ? q.residual_valuation->str() : std::string("inf"))
             << "\n";
  return rep;
}

json cmd_tate_ranks(const InputDocument& doc, const RunParams& par, Checks& checks,
                    std::ostream* summary) {
  validate_module(doc.module);
  long long extra = 0;
  if (doc.has_lattice) {
    validate_lattice(doc.module, doc.lattice);
    extra = doc.lattice.declared_rank;
  }
  const auto inv = reduction_invariants(doc.module);
  const auto t = tate_rank_table(doc.module, extra);
  if (par.verify)
    checks.emplace_back("rank_drop_equals_height",
                        t.rank_elsewhere - t.rank_at_reduction_prime == inv.h);
  json rep{{"command", "tate-ranks"},
           {"d", inv.d},
           {"r", inv.r},
           {"h", inv.h},
           {"pres", inv.p_res},
           {"extra_rank", extra},
           {"tate", tate_json(t)}};
  if (summary)
    *summary << "tate-ranks: " << t.rank_at_reduction_prime << " at the reduction prime, "
             << t.rank_elsewhere << " elsewhere\n";
  return rep;
}

}  // namespace

json run_command(const std::string& command, const InputDocument& doc, const RunParams& par,
                 std::ostream* summary, bool& all_pass) {
  Checks checks;
  json report;
  if (command == "validate")
    report = cmd_validate(doc, checks, summary);
  else if (command == "lift")
    report = cmd_lift(doc, par, checks, summary);
  else if (command == "chi-inv")
    report = cmd_chi_inv(doc, par, checks, summary);
  else if (command == "analyze")
    report = cmd_analyze(doc, par, checks, summary);
  else if (command == "uniformize")
    report = cmd_uniformize(doc, par, checks, summary);
  else if (command == "tate-ranks")
    report = cmd_tate_ranks(doc, par, checks, summary);
  else
    fail(ErrKind::ParseError, "unknown command '" + command + "'");

  all_pass = true;
  if (par.verify) {
    json arr = json::array();
    for (const auto& [name, pass] : checks) {
      arr.push_back(json{{"name", name}, {"pass", pass}});
      all_pass = all_pass && pass;
    }
    report["verify"] = json{{"checks", std::move(arr)}, {"all_pass", all_pass}};
    if (summary) *summary << (all_pass ? "verify: all checks passed\n" : "verify: FAILED\n");
  }
  return report;
}

}  // namespace drinfeld
