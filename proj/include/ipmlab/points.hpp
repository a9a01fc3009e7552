#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace ipmlab {

/// n points in [0,1]^d stored row-major.
class PointSet {
 public:
  explicit PointSet(int dim) : dim_(dim) {
    if (dim < 1) throw std::domain_error("PointSet: dimension must be positive");
  }
  PointSet(int dim, std::vector<double> coords) : PointSet(dim) {
    if (coords.size() % static_cast<std::size_t>(dim) != 0)
      throw std::domain_error("PointSet: coordinate count not a multiple of dim");
    coords_ = std::move(coords);
  }

  int dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dim_); }
  bool empty() const { return coords_.empty(); }
  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(coords_).subspan(i * dim_, dim_);
  }
  const std::vector<double>& coords() const { return coords_; }

  void reserve(std::size_t n) { coords_.reserve(n * dim_); }
  void push_back(std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(dim_))
      throw std::domain_error("PointSet: point dimension mismatch");
    coords_.insert(coords_.end(), x.begin(), x.end());
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  int dim_;
  std::vector<double> coords_;
};

}  // namespace ipmlab
