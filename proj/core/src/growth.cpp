#include "htib/growth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace htib {

GrowthModel GrowthModel::sauer_shelah(std::int64_t vc_dim) {
  if (vc_dim < 1) throw std::invalid_argument("Sauer-Shelah model requires vc_dim >= 1");
  return GrowthModel{Kind::kSauerShelah, vc_dim};
}

GrowthModel GrowthModel::finite_class(std::int64_t size) {
  if (size < 1) throw std::invalid_argument("finite-class model requires size >= 1");
  return GrowthModel{Kind::kFiniteClass, size};
}

double GrowthModel::log_growth(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("log_growth requires n >= 1");
  if (kind_ == Kind::kFiniteClass) {
    return std::log(static_cast<double>(param_));
  }
  const double d = static_cast<double>(param_);
  if (n < param_) return static_cast<double>(n) * std::numbers::ln2;
  return d * std::log(std::numbers::e * static_cast<double>(n) / d);
}

std::int64_t GrowthModel::vc_dim() const {
  if (kind_ != Kind::kSauerShelah) {
    throw std::logic_error("vc_dim: not a Sauer-Shelah model");
  }
  return param_;
}

std::int64_t GrowthModel::class_size() const {
  if (kind_ != Kind::kFiniteClass) {
    throw std::logic_error("class_size: not a finite-class model");
  }
  return param_;
}

}  // namespace htib
