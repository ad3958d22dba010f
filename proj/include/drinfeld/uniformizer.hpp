#pragma once

#include <optional>
#include <vector>

#include "drinfeld/kummer.hpp"

namespace drinfeld {

// The finite piece M_B = {m in M : v(m) >= -B} of the lattice, including 0.
struct LatticePoints {
  Rat B;
  std::vector<LaurentElement> points;  // deduplicated, sorted by (valuation, text)
  long long degree_bound = 0;          // D(B): search depth in t-degree
  // Set when some combination's valuation exceeds the ultrametric prediction
  // of its leading terms: completeness of M_B is then not certified.
  bool cancellation_warning = false;
};
// Enumerates sum_i psi_{a_i}(m_i) over deg a_i <= D(B), the least D with
// p^{rD} * min|v(m_i)| >= B, and keeps the points with v >= -B. Callers are
// expected to have passed bounded_independence first.
LatticePoints enumerate_lattice(const DrinfeldModule& M, const LatticeSpec& L, const Rat& B);

// e_B(z) = z * prod_{0 != m in M_B} (1 - z/m), an additive polynomial because
// M_B is an F_p-subspace; stored in tau-form with constant coefficient 1.
// A multi-term point has an infinite 1/m expansion, so its factor only exists
// at finite precision: pass prec to truncate each point before inverting
// (single-term lattices stay exact with prec absent).
struct TruncatedExponential {
  LatticePoints lattice;
  OrePolyL e_B;
};
TruncatedExponential truncated_exponential(const DrinfeldModule& M, const LatticePoints& pts,
                                           std::optional<long long> prec = std::nullopt);

// phi_t with e_B psi_t = phi_t e_B solved for tau-degrees 0..r+s (s = deg e_B;
// the system is unitriangular since e_B has constant coefficient 1).
// residual_valuation is the a-posteriori certificate: the least valuation
// bound among the unsolved coefficients of e_B psi_t - phi_t e_B (nullopt
// when the functional equation holds exactly, e.g. for M = {}).
struct AnalyticQuotient {
  TruncatedExponential exp;
  OrePolyL phi_t;
  std::optional<Rat> residual_valuation;
  long long phi_t_degree_certified = 0;  // r + declared_rank: the meaningful degrees
};
AnalyticQuotient analytic_quotient(const DrinfeldModule& M, const LatticeSpec& L, const Rat& B,
                                   std::optional<long long> prec = std::nullopt);

// Exact additivity check of an additive polynomial on a concrete pair.
bool exponential_additive_on(const OrePolyL& e, const LaurentElement& a, const LaurentElement& b);

}  // namespace drinfeld
