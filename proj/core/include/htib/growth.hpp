#pragma once

#include <cstdint>

namespace htib {

/// A log growth-function model ln tau(n): either the Sauer-Shelah surrogate
/// for a binary class of known VC dimension, or the constant ln N of a finite
/// class. log_growth is nonnegative and nondecreasing in n for every model.
class GrowthModel {
 public:
  static GrowthModel sauer_shelah(std::int64_t vc_dim);
  static GrowthModel finite_class(std::int64_t size);

  /// Sauer-Shelah: d ln(e n / d) for n >= d, and the exact shattering value
  /// n ln 2 below the VC dimension. Finite class: ln N.
  double log_growth(std::int64_t n) const;

  bool is_sauer_shelah() const { return kind_ == Kind::kSauerShelah; }
  /// VC dimension; throws for finite-class models.
  std::int64_t vc_dim() const;
  /// Class size; throws for Sauer-Shelah models.
  std::int64_t class_size() const;

  friend bool operator==(const GrowthModel&, const GrowthModel&) = default;

 private:
  enum class Kind { kSauerShelah, kFiniteClass };
  GrowthModel(Kind kind, std::int64_t param) : kind_(kind), param_(param) {}

  Kind kind_;
  std::int64_t param_;
};

inline double log_growth(const GrowthModel& model, std::int64_t n) {
  return model.log_growth(n);
}

}  // namespace htib
