#pragma once

// Tensor-product Haar multiresolution analysis on [0,1]^d.
//
// Cells at resolution L are indexed lexicographically by their per-axis
// dyadic indices with axis 0 most significant. A detail coefficient is
// addressed by (level j, orientation o, cell k) where bit a of o selects the
// mother factor on axis a (bit clear = father factor).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ipmlab {

/// Piecewise-constant function on the dyadic grid of [0,1]^d at resolution
/// 2^-level per axis. Values are stored cell-major, 2^(dim*level) of them.
class DyadicFunction {
 public:
  DyadicFunction(int dim, int level, std::vector<double> values);

  /// Constant function with the given value.
  static DyadicFunction constant(int dim, int level, double value);

  int dim() const { return dim_; }
  int level() const { return level_; }
  std::size_t cell_count() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double value(std::size_t cell) const { return values_[cell]; }

  /// Integral over [0,1]^d, i.e. the mean cell value.
  double integral() const;

  friend bool operator==(const DyadicFunction&, const DyadicFunction&) = default;

 private:
  int dim_;
  int level_;
  std::vector<double> values_;
};

/// A DyadicFunction that is a probability density: nonnegative, unit mass.
class DyadicDensity : public DyadicFunction {
 public:
  static constexpr double kMassTolerance = 1e-12;

  DyadicDensity(int dim, int level, std::vector<double> values);
  explicit DyadicDensity(DyadicFunction f);

  static DyadicDensity uniform(int dim, int level);
};

/// Haar coefficient tree: scaling coefficient on the constant function plus
/// detail coefficients for levels [0, max_level), stored flat in (j, o, k)
/// order.
class WaveletCoeffs {
 public:
  WaveletCoeffs(int dim, int max_level);
  WaveletCoeffs(int dim, int max_level, double scaling, std::vector<double> detail);

  int dim() const { return dim_; }
  int max_level() const { return max_level_; }
  int orientations() const { return (1 << dim_) - 1; }
  std::size_t cells_at(int level) const { return std::size_t{1} << (dim_ * level); }

  double scaling() const { return scaling_; }
  void set_scaling(double s) { scaling_ = s; }

  std::span<const double> detail() const { return detail_; }
  std::span<double> detail() { return detail_; }
  std::size_t detail_count() const { return detail_.size(); }

  /// Offset of the first coefficient of a level in the flat detail array.
  std::size_t level_offset(int level) const;
  /// All (o, k) coefficients of one level, orientation-major.
  std::span<const double> level_span(int level) const;
  std::span<double> level_span(int level);

  std::size_t index(int level, int orientation, std::size_t cell) const;
  double at(int level, int orientation, std::size_t cell) const {
    return detail_[index(level, orientation, cell)];
  }
  double& at(int level, int orientation, std::size_t cell) {
    return detail_[index(level, orientation, cell)];
  }

  bool same_shape(const WaveletCoeffs& other) const {
    return dim_ == other.dim_ && max_level_ == other.max_level_;
  }

  /// Total detail coefficient count (2^d - 1) * sum_{j<L} 2^(dj).
  static std::size_t detail_size(int dim, int max_level);

  friend bool operator==(const WaveletCoeffs&, const WaveletCoeffs&) = default;

 private:
  int dim_;
  int max_level_;
  double scaling_ = 0.0;
  std::vector<double> detail_;
};

/// Orthonormal Haar analysis of a piecewise-constant function. The result has
/// max_level equal to f.level() and scaling equal to the mean of f.
WaveletCoeffs analyze(const DyadicFunction& f);

/// Inverse of analyze; output resolution equals c.max_level().
DyadicFunction synthesize(const WaveletCoeffs& c);

/// Pointwise value of the basis function h_{j,o,k} at x in [0,1]^d.
/// Coordinates equal to 1 belong to the last cell along that axis.
double eval_basis(int dim, int level, int orientation, std::size_t cell,
                  std::span<const double> x);

/// Keeps levels below new_max_level, zero-padding levels the input lacks.
WaveletCoeffs with_levels(const WaveletCoeffs& c, int new_max_level);

/// Per-axis index of a coordinate at resolution 2^-level (1.0 maps to the
/// last cell).
std::uint64_t axis_cell(double coordinate, int level);

/// Lexicographic cell index of a point at resolution 2^-level.
std::size_t cell_of(std::span<const double> x, int level);

}  // namespace ipmlab
