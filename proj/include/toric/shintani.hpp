#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "toric/chars.hpp"
#include "toric/correlation.hpp"
#include "toric/cyclo.hpp"
#include "toric/pgl2.hpp"
#include "toric/ps_model.hpp"

namespace toric {

enum class BCCase { SplitBC, CuspBC, NotBC };
std::string to_string(BCCase c);

/// How a character chi of E^x, E = F_{q^f}, relates to the base field F = F_q.
struct BaseChange {
  BCCase kind = BCCase::NotBC;
  std::int64_t j = 0;              // chi on E
  std::optional<MulChar> chi0;     // SplitBC: chi = chi0 o Nm_{E/F}
  std::optional<MulChar> chi1;     // CuspBC: chi = chi1 o Nm_{E/F_{q^2}}
  std::optional<RepLabel> tau;     // the representation of PGL2(F) it comes from
};

/// chi must have chi^2 nontrivial; q is the size of the base field.
BaseChange base_change_class(const MulChar& chi, std::int64_t q);

/// Ambient groups for one Shintani pair: PGL2 over E = F_{q^ext} and over F = F_q,
/// q = p^f_base, sharing one tower.
struct ShintaniPair {
  std::shared_ptr<const PGL2> GE, GF;
  int f_base = 1, ext = 1;
  std::int64_t q = 3;  // |F|
  std::int64_t Q = 9;  // |E|

  static ShintaniPair build(std::int64_t p, int f_base, int ext, std::int64_t table_cap = kDefaultTableCap);
  Fq sigma(Fq x) const;
  PGL2Elem sigma(const PGL2Elem& g) const;
  /// diag(g_E), (1 b; 0 1) for b running over a F_p-basis of E, and the Weyl element.
  std::vector<std::pair<std::string, PGL2Elem>> generators() const;
};

/// scale * zeta^{exps[i]} in coordinate i; a negative exponent marks a zero coordinate.
struct RootVec {
  mpq_class scale = 1;
  std::vector<std::int64_t> exps;
  ModelVec to_model(std::int64_t conductor) const;
};

/// The operator T on the model of Ps(chi, chi^-1) over E, stored as
/// scale * (root of unity or 0) per entry, conductor Q-1.
class ShintaniData {
 public:
  static ShintaniData build(const ShintaniPair& pair, std::int64_t j);

  const ShintaniPair& pair() const { return pair_; }
  const InducedModel& model() const { return *model_; }
  const BaseChange& base_change() const { return bc_; }
  std::size_t dim() const { return dim_; }
  int n() const { return pair_.ext / 2; }
  const mpq_class& scale() const { return scale_; }
  /// Exponent of entry (row, col), or -1 if the entry is zero.
  std::int64_t entry(std::size_t row, std::size_t col) const { return texp_[row * dim_ + col]; }
  CycNum entry_value(std::size_t row, std::size_t col) const;

  ModelVec column(std::size_t col) const;
  ModelVec apply(const RootVec& v) const;
  ModelVec apply(const ModelVec& v) const;

  RootVec vH_roots() const;
  RootVec vK_roots(Fq beta) const;

 private:
  ShintaniData() = default;
  ShintaniPair pair_;
  std::shared_ptr<const InducedModel> model_;
  BaseChange bc_;
  std::size_t dim_ = 0;
  mpq_class scale_ = 1;
  std::vector<std::int64_t> texp_;
};

struct IntertwiningReport {
  bool ok = true;
  bool via_act = false;
  std::size_t generators = 0;
  std::string witness;
};
/// pi(g^sigma) T = T pi(g) on the generators, the relation under which T carries
/// K-fixed vectors to K^sigma-fixed ones. via_act compares full columns with
/// InducedModel::act; otherwise entries are compared through the monomial action.
IntertwiningReport intertwining_check(const ShintaniData& T, std::optional<bool> via_act = std::nullopt);

struct UnitarityReport {
  bool form_preserving = true;
  bool self_adjoint = true;
  std::size_t pairs_checked = 0;
  bool exhaustive = true;
  std::string witness;
};
/// <T e_i, T e_j> = delta_ij on every basis pair up to max_dim, on a fixed
/// sample of pairs beyond.
UnitarityReport unitarity_check(const ShintaniData& T, std::size_t max_dim = 200);

struct InvariantsReport {
  bool vectors_match_model = true;  // root forms agree with InducedModel's vectors
  bool tvh = false, tvk = false;
  CycNum lambda;                    // T v_K = lambda v_{K^sigma}
};
InvariantsReport effect_on_invariants(const ShintaniData& T);

struct SignReport {
  BCCase kind = BCCase::NotBC;
  RepLabel tau;
  int eps_direct = 0;      // from the character table of PGL2(F)
  int eps_closed = 0;      // closed form for tau
  int eps_norm = 0;        // from a non-square of F given as a norm from E
  int eps_proof = 0;       // chi0(-1) or -chi(alpha^{(q+1)/2})
  bool eps_agree = false;
  bool case1_bookkeeping = true;  // chi(alpha^{(q-1)/2}) = chi0(-1)
  bool sigma_identity = false;    // <vH, v_{K^sigma}> = chi(alpha^{(q-1)/2}) <vH, vK>
  bool form_identity = false;     // <T vH, T vK> = <vH, vK>
  bool factor_is_eps = false;     // conj(lambda) chi(alpha^{(q-1)/2}) = eps_tau
  CycNum inner;                   // <vH, vK> in the model
  CycNum constant;                // correlation constant of Ps(chi) over E
  bool vanishing_ok = true;       // eps = -1 implies inner = constant = 0
  bool ok() const;
};
SignReport sign_check(const ShintaniData& T, const PairCounts& counts_E, const InvariantsReport& inv);

struct UniquenessReport {
  std::size_t orbits = 0;
  std::size_t solution_dim = 0;
  bool t_spans = false;  // T is a nonzero element of the (one-dimensional) solution space
  bool ok() const { return solution_dim == 1 && t_spans; }
};
/// Solves pi(g^sigma) X = X pi(g) on the generators over all matrices X.
UniquenessReport uniqueness_check(const ShintaniData& T);

struct ShintaniReport {
  RepLabel rep;  // Ps{r} over E
  BaseChange bc;
  std::optional<IntertwiningReport> intertwining;
  std::optional<UnitarityReport> unitarity;
  std::optional<InvariantsReport> invariants;
  std::optional<SignReport> sign;
  std::optional<UniquenessReport> uniqueness;
  bool ok() const;
  nlohmann::json to_json() const;
};
ShintaniReport shintani_report(const ShintaniPair& pair, const PairCounts& counts_E, std::int64_t r);

// ---- character sums ----------------------------------------------------------

/// Characters chi of F_{q^{2n}}^x with chi^{-1} = chi^sigma, sigma(x) = x^q.
std::vector<MulChar> twisted_characters(const FieldTower& tower, int f_base, int n);
/// sum over lambda != 0, 1 of chi(lambda - 2 + 1/lambda)
CycNum charsum_reciprocal(const MulChar& chi);
/// sum over i = 1..|E|-1 of chi(1 - alpha^{2i-1})
CycNum charsum_odd_powers(const MulChar& chi, Fq alpha);
/// (1/|E|) sum_lambda psi(lambda) sum_{x != lambda} psi^-1(x) chi(x - lambda)^2
CycNum gauss_bridge(const MulChar& chi, const AddChar& psi);

struct LemmaRow {
  std::int64_t j = 0;
  std::string kind;  // trivial, quadratic, generic
  CycNum recip, odd_pow, bridge, gauss;
  bool ok = false;
};
struct LemmaReport {
  std::int64_t q = 3;
  int n = 1;
  std::vector<LemmaRow> rows;
  bool ok() const;
  nlohmann::json to_json() const;
};
/// Both lemmas and the Gauss-sum bridge for every twisted character of F_{q^{2n}}.
/// Generic characters must match the closed forms; trivial and quadratic ones
/// must match their direct values (q^{2n}-2 and -1 for the first sum).
LemmaReport lemma_check(std::int64_t p, int f_base, int n);

// ---- norm map ------------------------------------------------------------------

/// N(g) = g g^sigma ... g^{sigma^{ext-1}}
PGL2Elem shintani_norm(const ShintaniPair& pair, const PGL2Elem& g);
/// tr^2/det of N(g) lies in F.
bool norm_map_check(const ShintaniPair& pair, const PGL2Elem& g);

struct NormMapReport {
  std::size_t checked = 0;
  bool exhaustive = false;
  bool ok = true;
  std::string witness;
};
NormMapReport norm_map_sweep(const ShintaniPair& pair, std::size_t sample = 400, std::uint64_t seed = 0x5eed);

// ---- suite ---------------------------------------------------------------------

struct ShintaniSuiteReport {
  std::int64_t p = 3;
  int f_base = 1, ext = 2;
  std::vector<ShintaniReport> reps;
  std::size_t not_bc = 0;
  NormMapReport norm;
  std::optional<LemmaReport> lemmas;
  bool ok() const;
  nlohmann::json to_json() const;
};
/// Every base-change Ps over E, the norm sweep, and the lemmas when ext is even.
ShintaniSuiteReport shintani_suite(std::int64_t p, int f_base, int ext, std::int64_t table_cap = kDefaultTableCap);

}  // namespace toric
