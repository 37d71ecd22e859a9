#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "toric/chars.hpp"
#include "toric/cyclo.hpp"
#include "toric/pgl2.hpp"

namespace toric {

using ModelVec = std::vector<CycNum>;

/// Ps(chi, chi^-1) realized on functions f(bg) = chi(a) f(g), b = (a *; 0 1),
/// with basis f (supported on B) and f_lambda (supported on B w u(lambda)).
/// Index 0 is f, index 1 is f_0, index 2+i is f_{g^i}. The basis is declared
/// orthonormal; the resulting form is G-invariant because the action is monomial.
class InducedModel {
 public:
  /// pi(g) e_idx = zeta_{q-1}^exponent e_target
  struct Monomial {
    std::size_t target = 0;
    std::int64_t exponent = 0;
  };

  InducedModel(std::shared_ptr<const PGL2> G, std::int64_t j);

  const PGL2& group() const { return *G_; }
  std::shared_ptr<const PGL2> group_ptr() const { return G_; }
  const MulChar& chi() const { return chi_; }
  std::size_t dim() const { return static_cast<std::size_t>(G_->q() + 1); }
  std::int64_t conductor() const { return G_->q() - 1; }

  std::size_t index_of(Fq lambda) const;
  Fq lambda_of(std::size_t idx) const;  // idx >= 1
  PGL2Elem coset_rep(std::size_t idx) const;

  Monomial basis_action(const PGL2Elem& g, std::size_t idx) const;
  ModelVec act(const PGL2Elem& g, const ModelVec& v) const;

  ModelVec zero() const;
  ModelVec basis(std::size_t idx) const;
  /// Linear in the first argument, conjugate-linear in the second.
  CycNum inner(const ModelVec& v, const ModelVec& w) const;

  ModelVec vH() const;
  ModelVec vK() const { return vK_with(G_->alpha()); }
  /// v_K with alpha replaced by beta.
  ModelVec vK_with(Fq beta) const;
  /// v_{K_a}: alpha replaced by alpha a^2.
  ModelVec vK_a(Fq a) const { return vK_with(G_->alpha() * a * a); }

  /// sum_{lambda != 0} chi(alpha/lambda - lambda)
  CycNum S() const { return S_with(G_->alpha()); }
  CycNum S_with(Fq beta) const;
  /// abs2(S)/(q^2-1)
  CycNum c_model() const;
  /// |<vH,vK>|^2 / (<vH,vH><vK,vK>) evaluated in the model.
  CycNum normalized_ratio() const;

  bool fixed_by(const std::vector<PGL2Elem>& gens, const ModelVec& v) const;

 private:
  std::shared_ptr<const PGL2> G_;
  MulChar chi_;
};

struct ScalingReport {
  bool scaling_ok = true;
  bool sigma_ok = true;
  int scalings_checked = 0;
  std::string witness;
};

/// <vH, vK_a> = chi(a) <vH, vK> for every admissible a, and
/// <vH, v_{K^sigma}> = chi(alpha^{(q_sub-1)/2}) <vH, vK> where sigma(x) = x^{q_sub}.
ScalingReport scaling_and_sigma_checks(const InducedModel& M, std::int64_t q_sub);

/// B(g) = (1/|N|) sum_{n in N} psi^-1(n) chi_pi(gn), N the upper unipotents.
CycNum bessel(const PGL2& G, const RepLabel& r, const PGL2Elem& g, const AddChar& psi);

}  // namespace toric
