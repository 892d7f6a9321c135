#pragma once

#include "entroloss/error.hpp"
#include "entroloss/types.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace entroloss {

/// Diagonal Hamiltonian sum_k E_k |k><k| given by a level law and a truncation dimension.
///  - linear: E_k = offset + slope * k
///  - log:    E_k = scale * log(k + 1) + offset
///  - table:  explicit finite list
class Hamiltonian {
 public:
  enum class Law { linear, log, table };

  static Hamiltonian linear(double offset, double slope, int truncation_dim) {
    return Hamiltonian(Law::linear, offset, slope, {}, truncation_dim);
  }
  static Hamiltonian logarithmic(double scale, double offset, int truncation_dim) {
    return Hamiltonian(Law::log, offset, scale, {}, truncation_dim);
  }
  static Hamiltonian table(std::vector<double> levels) {
    const int d = static_cast<int>(levels.size());
    return Hamiltonian(Law::table, 0.0, 0.0, std::move(levels), d);
  }

  Law law() const { return law_; }
  int truncation_dim() const { return dim_; }
  bool parametric() const { return law_ != Law::table; }
  double offset() const { return offset_; }
  /// Slope of the linear law or prefactor of the log law.
  double coefficient() const { return coeff_; }

  double level(std::int64_t k) const {
    switch (law_) {
      case Law::linear: return offset_ + coeff_ * static_cast<double>(k);
      case Law::log: return coeff_ * std::log1p(static_cast<double>(k)) + offset_;
      case Law::table:
        require(k >= 0 && k < static_cast<std::int64_t>(table_.size()), ErrorKind::SupportEscapesTruncation,
                "level " + std::to_string(k) + " beyond the explicit table");
        return table_[static_cast<size_t>(k)];
    }
    return 0.0;
  }

  double ground_energy() const { return level(0); }

  RealVector levels(std::int64_t d = -1) const {
    if (d < 0) d = dim_;
    RealVector e(d);
    for (std::int64_t k = 0; k < d; ++k) e(k) = level(k);
    return e;
  }

  Hamiltonian with_truncation(int d) const {
    Hamiltonian h = *this;
    require(d >= 1, ErrorKind::DimensionMismatch, "truncation must be >= 1");
    if (law_ == Law::table)
      require(d <= static_cast<int>(table_.size()), ErrorKind::SupportEscapesTruncation, "table shorter than truncation");
    h.dim_ = d;
    return h;
  }

 private:
  Hamiltonian(Law law, double offset, double coeff, std::vector<double> table, int d)
      : law_(law), offset_(offset), coeff_(coeff), table_(std::move(table)), dim_(d) {
    require(d >= 1, ErrorKind::DimensionMismatch, "truncation must be >= 1");
    switch (law_) {
      case Law::linear:
      case Law::log:
        require(coeff_ >= 0.0, ErrorKind::ConfigError, "level law must be nondecreasing");
        require(offset_ >= 0.0, ErrorKind::NotPositive, "ground energy must be >= 0");
        break;
      case Law::table:
        require(!table_.empty(), ErrorKind::ConfigError, "empty level table");
        require(table_[0] >= 0.0, ErrorKind::NotPositive, "ground energy must be >= 0");
        for (size_t k = 1; k < table_.size(); ++k)
          require(table_[k] >= table_[k - 1], ErrorKind::ConfigError, "level table must be nondecreasing");
        break;
    }
  }

  Law law_;
  double offset_;
  double coeff_;
  std::vector<double> table_;
  int dim_;
};

}  // namespace entroloss
