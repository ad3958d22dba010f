#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/drinfeld.hpp"
#include "drinfeld/filtration.hpp"

namespace drinfeld {

// Period lattice M subset K, presented by generators of negative valuation.
struct LatticeSpec {
  std::vector<LaurentElement> generators;
  long long declared_rank = 0;      // rank_A(M) as asserted by the caller
  long long independence_bound = 2; // degree bound D for the certification search
};

void validate_lattice(const DrinfeldModule& M, const LatticeSpec& L);

// Exhaustive search over F_p-combinations sum_i psi_{a_i}(m_i), deg a_i <= D.
// A combination that is certified integral but not exactly zero violates
// M cap O = {0}; an exact A-relation with declared_rank == #generators
// contradicts the declaration. Both throw RankInconsistent.
struct IndependenceCheck {
  long long D = 0;
  bool relation_found = false;  // exact A-relation of degree <= D exists
  unsigned long long combinations = 0;
};
IndependenceCheck bounded_independence(const DrinfeldModule& M, const LatticeSpec& L);

// Depth/precision overrides; auto when absent.
struct KummerOptions {
  std::optional<long long> depth;
  std::optional<long long> prec;
};

// chi^{-1}([xi]) as a principal class: truncated z-form sum of the inverse
// intertwiner applied to xi. Depth auto-mode picks the least J >= 1 with
// p^J * w >= |v(xi)|, which makes every dropped term integral.
PrincipalClass chi_inverse_class(const DrinfeldModule& M, const LaurentElement& xi,
                                 const KummerOptions& opt = {});
// chi([xi]), the forward direction (same truncation policy).
PrincipalClass chi_class(const DrinfeldModule& M, const LaurentElement& xi,
                         const KummerOptions& opt = {});

// Generator rows of Mbar: [chi_inverse_class(m_i)].
std::vector<PrincipalClass> build_Mbar(const DrinfeldModule& M, const LatticeSpec& L,
                                       const KummerOptions& opt = {});

// Row echelon form over the skew Laurent ring: rows scaled by powers of tau
// (units), duplicated top indices eliminated by left Euclidean division in
// k[tau]. Pivot set = break set of the span; row count = its rank over k[tau].
struct EchelonForm {
  struct Op {
    std::string kind;       // "scale" | "elim"
    std::size_t row = 0;    // target row (index into the original row list)
    long long shift = 0;    // scale: row <- tau^shift * row
    std::size_t other = 0;  // elim: row <- row - q * rows[other]
    OrePolyK q;
  };
  std::vector<PrincipalClass> rows;  // nonzero, strictly decreasing top_index
  std::vector<long long> pivots;     // sorted ascending
  std::vector<Op> certificate;
};
EchelonForm skew_echelon(const std::vector<PrincipalClass>& rows);
// Applies the certificate to the original rows; returns the surviving rows
// sorted by decreasing top index (must reproduce EchelonForm::rows).
std::vector<PrincipalClass> replay_certificate(const std::vector<PrincipalClass>& rows,
                                               const std::vector<EchelonForm::Op>& cert);

struct InertiaReport {
  long long d = 0;
  long long r_psi = 0;
  long long h = 0;
  std::vector<long long> pres;
  std::optional<Rat> w;  // nullopt: exact reduction (gap infinite)

  std::vector<long long> S;  // sorted break list
  long long rank_R = 0;
  long long conductor = 0;
  long long image_rank = 0;  // d * rank_R
  bool open = false;         // declared_rank == rank_R
  long long declared_rank = 0;

  struct FiltRow {
    long long i = 0;
    long long rank = 0;
    std::string classification;  // "finite" | "free_rank_d" | "zero"
  };
  std::vector<FiltRow> filtration;  // i = 0 .. conductor + 1

  TateRankTable tate;

  struct Bounds {
    std::vector<long long> j_set_of_generators;  // sorted, deduplicated
    bool iRankBound_ok = false;        // |j_set| <= rank_R <= declared_rank
    bool iOpenness_sufficient = false; // |j_set| == declared_rank
    std::vector<long long> iMJump_breaks;
    bool j_lower_bound_strict = false; // |j_set| < rank_R
  } bounds;
  std::string grJK_rule;

  IndependenceCheck independence;
  std::vector<PrincipalClass> gen_classes;  // chi^{-1}(m_i), pre-echelon
  EchelonForm echelon;
};
InertiaReport inertia_report(const DrinfeldModule& M, const LatticeSpec& L,
                             const KummerOptions& opt = {});

// Replays the invariant checks behind a report; (name, pass) per check.
std::vector<std::pair<std::string, bool>> verify_inertia(const DrinfeldModule& M,
                                                         const LatticeSpec& L,
                                                         const InertiaReport& rep,
                                                         const KummerOptions& opt = {});

}  // namespace drinfeld
