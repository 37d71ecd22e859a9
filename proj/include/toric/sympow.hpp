#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "toric/correlation.hpp"
#include "toric/cyclo.hpp"
#include "toric/pgl2.hpp"

namespace toric {

using FqVec = std::vector<Fq>;
using FqMat = std::vector<FqVec>;  // row-major

std::size_t fq_rank(FqMat m);
/// Basis of {v : m v = 0}.
std::vector<FqVec> fq_nullspace(FqMat m);

/// (Sym^n (x) det^m) o Frob^i, the i-th tensor factor.
struct SymFactor {
  int n = 0;
  std::int64_t m = 0;
};

/// Tensor product of Frobenius-twisted symmetric powers over F_q, times det^twist.
/// Factor i has basis x^(n-k) y^k, and g = (a b; c d) sends it to
/// (a'x + c'y)^(n-k) (b'x + d'y)^k, primes denoting the p^i-th power.
/// Multi-indices are flattened with factor 0 varying fastest.
class SymRep {
 public:
  SymRep(std::shared_ptr<const PGL2> G, std::vector<SymFactor> factors, std::int64_t twist = 0);
  /// rho_r = (x)_i (Sym^(2 r_i) (x) det^(-r_i)) o Frob^i
  static SymRep from_digits(std::shared_ptr<const PGL2> G, const std::vector<std::int64_t>& digits);

  const PGL2& group() const { return *G_; }
  const std::vector<SymFactor>& factors() const { return factors_; }
  std::int64_t twist() const { return twist_; }
  /// Total determinant exponent sum_i m_i p^i + twist, mod q-1.
  std::int64_t det_exponent() const { return det_exp_; }
  std::size_t dim() const { return dim_; }

  std::size_t index_of(const std::vector<int>& k) const;
  FqVec zero() const;
  FqMat factor_matrix(std::size_t i, const PGL2Elem& g) const;
  FqVec act(const PGL2Elem& g, const FqVec& v) const;
  FqMat matrix(const PGL2Elem& g) const;
  /// (1/|S|) sum_{s in S} rho(s) v
  FqVec average(const std::vector<PGL2Elem>& S, const FqVec& v) const;
  FqMat averaging_matrix(const std::vector<PGL2Elem>& S) const;

  /// Brauer character at a semisimple element, in Q(zeta_{q^2-1}).
  RootSum brauer(const PGL2Elem& g) const;

 private:
  std::shared_ptr<const PGL2> G_;
  std::vector<SymFactor> factors_;
  std::int64_t twist_ = 0;
  std::int64_t det_exp_ = 0;
  std::size_t dim_ = 1;
  std::vector<std::size_t> stride_;
};

/// Logs of the two eigenvalues with respect to g_{q^2}; throws for unipotents.
std::pair<std::int64_t, std::int64_t> eigen_logs(const PGL2& G, const PGL2Elem& g);

/// v_H = (x)_i x_i^r_i y_i^r_i and v_K = (x)_i (alpha^(p^i) x_i^2 - y_i^2)^r_i.
/// Both are fixed for every digit vector; the odd case shows up in X v_K = 0.
std::pair<FqVec, FqVec> invariant_vectors(const SymRep& rho, const std::vector<std::int64_t>& digits);

struct STReport {
  Fq s, t, st;
  bool s_proportional = false;  // X v_K is a multiple of v_H
  bool t_proportional = false;  // Y v_H is a multiple of v_K
  bool st_in_prime_field = false;
};
/// X v_K = s v_H and Y v_H = t v_K, read off at a nonzero coordinate of v_H (resp. v_K)
/// and then checked coordinate by coordinate.
STReport extract_s_t(const SymRep& rho, const FqVec& vH, const FqVec& vK);

struct ClosedST {
  Fq s, t;
  std::int64_t st = 0;  // in F_p
};
/// s = (-1)^(r/2) C(r, r/2) alpha^(r/2), t = -(-1)^((q-1-r)/2) C(q-1-r, .) alpha^((q-1-r)/2),
/// st = (-1)^((q-1)/2) C(r, r/2) C(q-1-r, .); all zero when a digit is odd.
ClosedST closed_s_t(const PGL2& G, const std::vector<std::int64_t>& digits);

struct STCheck {
  std::vector<std::int64_t> digits;
  bool all_even = true;
  STReport extracted;
  ClosedST closed;
  bool s_match = false, t_match = false, st_match = false;
  std::size_t rank_X = 0, rank_Y = 0, rank_XY = 0;
  std::int64_t brauer_dim_H = 0, brauer_dim_K = 0;
  bool ranks_computed = false;
  /// Every digit is p-1: x^2r and y^2r are H-fixed too, so only the v_H coordinate is meaningful.
  bool wide_H = false;

  bool ok() const { return s_match && t_match && st_match && extracted.t_proportional && (extracted.s_proportional || wide_H); }
  nlohmann::json to_json() const;
};
/// Builds rho_r and compares extracted s, t, st with the closed forms.
/// With ranks = true it also forms X, Y, XY and the Brauer-averaged fixed dimensions.
STCheck st_closed_check(std::shared_ptr<const PGL2> G, const std::vector<std::int64_t>& digits, bool ranks = false);

/// (1/|S|) sum_{s in S} Br(s), an integer.
std::int64_t brauer_fixed_dim(const SymRep& rho, const std::vector<PGL2Elem>& S);

/// One Jordan-Holder constituent, (x)_i (Sym^(n_i-1) (x) det^(m_i)) o Frob^i (x) det^twist.
struct JHConstituent {
  std::vector<bool> J;
  std::vector<std::int64_t> n, m;
  std::int64_t twist = 0;
  bool flagged = false;

  std::int64_t dimension() const;
  SymRep to_rep(std::shared_ptr<const PGL2> G) const;
  nlohmann::json to_json() const;
};

bool diamond_eligible(const RepLabel& r);
/// Constituents for the tower's own prime (zeta -> g). Ps and St-eta use the
/// principal-series list for chi^(2r) twisted by det^(-r); St-eta drops the
/// one-dimensional piece. Cuspidals use the cuspidal list for psi^(2r).
std::vector<JHConstituent> jh_constituents(const PGL2& G, const RepLabel& r);
/// The index set J singled out by the carries of 2r.
std::vector<bool> flagged_J(const PGL2& G, const RepLabel& r);

CycNum brauer_char(const PGL2& G, const JHConstituent& c, const ClassLabel& cls);

/// The prime above p on which zeta_k reduces to the tower generator g_k.
PrimeIdealHandle canonical_prime(const PGL2& G, std::int64_t k);

struct DiamondReport {
  RepLabel rep;
  std::vector<JHConstituent> constituents;
  bool brauer_ok = true;
  std::string witness;
  std::vector<std::int64_t> dims_H, dims_K;  // per constituent, Brauer-averaged
  std::vector<std::size_t> ranks_H, ranks_K;  // per constituent, idempotent rank
  bool dims_agree = true;
  bool unique_bearing = false;  // exactly one H-bearing and one K-bearing, same, flagged
  bool shape_ok = false;        // flagged symmetric degrees are 2r_i or 2p-2-2r_i
  Fq st;
  bool st_in_prime_field = false;
  std::int64_t st_value = 0;
  std::int64_t reduced = 0;
  bool congruence_ok = false;

  bool ok() const { return brauer_ok && dims_agree && unique_bearing && shape_ok && congruence_ok; }
  nlohmann::json to_json() const;
};

DiamondReport diamond_check(std::shared_ptr<const PGL2> G, const PairCounts& counts, const RepLabel& r);

}  // namespace toric
