#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "toric/cyclo.hpp"
#include "toric/fields.hpp"

namespace toric {

/// Element of PGL2(F_q) as a matrix scaled so that its first nonzero entry
/// in row-major order is 1.
struct PGL2Elem {
  Fq a, b, c, d;

  Fq det() const { return a * d - b * c; }
  Fq trace() const { return a + d; }
  bool operator==(const PGL2Elem& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  bool operator!=(const PGL2Elem& o) const { return !(*this == o); }
  bool operator<(const PGL2Elem& o) const;
};

enum class ClassKind { Identity, Unipotent, Split, Elliptic };

/// Split{i}: eigenvalue ratio g_q^i, 1 <= i <= (q-1)/2 (i ~ q-1-i).
/// Elliptic{j}: eigenvalue ratio g_{q^2}^{j(q-1)} of order dividing q+1,
/// 1 <= j <= (q+1)/2 (j ~ q+1-j). Split{(q-1)/2} and Elliptic{(q+1)/2} are the
/// two classes of involutions.
struct ClassLabel {
  ClassKind kind = ClassKind::Identity;
  std::int64_t index = 0;

  bool operator==(const ClassLabel& o) const { return kind == o.kind && index == o.index; }
  std::string to_string() const;
};

enum class RepKind { Trivial, Eta, Steinberg, SteinbergEta, PrincipalSeries, Cuspidal };

/// Ps{r} = Ps(chi^r, chi^-r) with 1 <= r <= (q-3)/2; Cusp{r} is attached to
/// psi^((q-1)r) with 1 <= r <= (q-1)/2.
struct RepLabel {
  RepKind kind = RepKind::Trivial;
  std::int64_t r = 0;

  static RepLabel trivial() { return {RepKind::Trivial, 0}; }
  static RepLabel eta() { return {RepKind::Eta, 0}; }
  static RepLabel steinberg() { return {RepKind::Steinberg, 0}; }
  static RepLabel st_eta() { return {RepKind::SteinbergEta, 0}; }
  static RepLabel ps(std::int64_t r) { return {RepKind::PrincipalSeries, r}; }
  static RepLabel cusp(std::int64_t r) { return {RepKind::Cuspidal, r}; }
  /// "trivial", "eta", "st", "st-eta", "ps:R", "cusp:R".
  static RepLabel parse(const std::string& s);

  std::int64_t dimension(std::int64_t q) const;
  bool operator==(const RepLabel& o) const { return kind == o.kind && r == o.r; }
  std::string to_string() const;
};

struct ClassInfo {
  ClassLabel label;
  PGL2Elem rep;
  std::int64_t size = 0;
};

struct OrthogonalityReport {
  bool ok = true;
  std::string witness;
  int row_pairs = 0;
  int column_pairs = 0;
};

/// PGL2(F_q), q = p^f, inside a tower that contains F_{q^2}.
class PGL2 {
 public:
  static std::shared_ptr<const PGL2> create(std::shared_ptr<const FieldTower> tower, int f);
  /// Builds the tower F_{p^{2f}} (with an optional modulus override) first.
  static std::shared_ptr<const PGL2> build(std::int64_t p, int f, const std::optional<fp::Poly>& override_modulus = std::nullopt,
                                           std::int64_t table_cap = kDefaultTableCap);

  const FieldTower& tower() const { return *tower_; }
  std::shared_ptr<const FieldTower> tower_ptr() const { return tower_; }
  std::int64_t p() const { return tower_->characteristic(); }
  int f() const { return f_; }
  std::int64_t q() const { return q_; }
  std::int64_t order() const { return q_ * q_ * q_ - q_; }
  /// Modulus of the table's root sums, q^2 - 1.
  std::int64_t table_modulus() const { return q_ * q_ - 1; }

  Fq from_int(std::int64_t n) const { return tower_->from_int(n); }
  Fq gen_q() const { return tower_->subfield_generator(f_); }
  Fq gen_q2() const { return tower_->subfield_generator(2 * f_); }
  std::vector<Fq> field_elements() const { return tower_->subfield_elements(f_); }
  std::int64_t log_q(Fq x) const { return tower_->subfield_log(x, f_); }

  PGL2Elem make(Fq a, Fq b, Fq c, Fq d) const;
  PGL2Elem identity() const;
  PGL2Elem diag(Fq a) const;    // diag(a, 1)
  PGL2Elem upper(Fq b) const;   // (1 b; 0 1)
  PGL2Elem weyl() const;        // (0 1; 1 0)
  PGL2Elem mul(const PGL2Elem& x, const PGL2Elem& y) const;
  PGL2Elem inverse(const PGL2Elem& x) const;
  PGL2Elem conjugate(const PGL2Elem& x, const PGL2Elem& g) const { return mul(mul(x, g), inverse(x)); }
  PGL2Elem power(const PGL2Elem& x, std::int64_t n) const;
  std::int64_t element_order(const PGL2Elem& x) const;
  bool is_identity(const PGL2Elem& x) const { return x == identity(); }

  ClassLabel classify(const PGL2Elem& g) const;
  std::size_t class_index(const ClassLabel& c) const;
  std::size_t class_index_of(const PGL2Elem& g) const { return class_index(classify(g)); }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  /// The unique class that is not p-regular.
  std::size_t unipotent_class() const { return 1; }

  const std::vector<RepLabel>& reps() const { return reps_; }
  std::size_t rep_index(const RepLabel& r) const;
  /// Character value as a sum of (q^2-1)-th roots of unity.
  const RootSum& entry(std::size_t rep, std::size_t cls) const { return table_[rep * classes_.size() + cls]; }
  CycNum character_value(const RepLabel& r, const ClassLabel& c) const;
  CycNum character_at(const RepLabel& r, const PGL2Elem& g) const { return character_value(r, classify(g)); }

  /// The non-square alpha with k_alpha of order q+1 (first by ascending log).
  Fq alpha() const { return alpha_; }
  /// Every non-square beta with k_beta of order q+1.
  std::vector<Fq> valid_alphas() const;
  bool generates_nonsplit_torus(Fq beta) const;
  PGL2Elem k_of(Fq beta) const;  // (1 beta; 1 1)
  PGL2Elem h0() const { return diag(-tower_->one()); }
  PGL2Elem k0() const { return k0_; }
  const std::vector<PGL2Elem>& H() const { return H_; }
  const std::vector<PGL2Elem>& K() const { return K_; }
  /// {(1 beta z; z 1)} together with (0 beta; 1 0).
  std::vector<PGL2Elem> nonsplit_torus(Fq beta) const;

  std::vector<PGL2Elem> all_elements() const;

  /// (dim pi^H, dim pi^K) from averaged character sums.
  std::pair<std::int64_t, std::int64_t> invariant_dims(const RepLabel& r) const;
  OrthogonalityReport orthogonality_check() const;

  nlohmann::json table_json() const;
  std::string elem_to_string(const PGL2Elem& g) const;

 private:
  PGL2() = default;
  void build_classes();
  void build_table();
  void build_tori();
  RootSum compute_entry(const RepLabel& r, const ClassLabel& c) const;

  std::shared_ptr<const FieldTower> tower_;
  int f_ = 1;
  std::int64_t q_ = 3;
  std::vector<ClassInfo> classes_;
  std::vector<RepLabel> reps_;
  std::vector<RootSum> table_;
  Fq alpha_;
  PGL2Elem k0_;
  std::vector<PGL2Elem> H_, K_;
};

}  // namespace toric
