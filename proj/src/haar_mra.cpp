#include "ipmlab/haar_mra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ipmlab {
namespace {

constexpr int kMaxBits = 40;

void check_shape(int dim, int level) {
  if (dim < 1) throw std::domain_error("dimension must be positive");
  if (level < 0) throw std::domain_error("level must be nonnegative");
  if (dim * level > kMaxBits) throw std::domain_error("grid too large: dim*level > 40");
}

std::size_t grid_size(int dim, int level) { return std::size_t{1} << (dim * level); }

// Per-axis stride of the lexicographic cell index at a given resolution.
std::size_t axis_shift(int dim, int level, int axis) {
  return static_cast<std::size_t>(level) * static_cast<std::size_t>(dim - 1 - axis);
}

double sign_of(unsigned orientation, unsigned child) {
  return (std::popcount(orientation & child) & 1U) ? -1.0 : 1.0;
}

// Offsets of the 2^d children of a cell relative to the index of child 0.
std::vector<std::size_t> child_offsets(int dim, int child_level) {
  const unsigned nchild = 1U << dim;
  std::vector<std::size_t> off(nchild, 0);
  for (unsigned b = 0; b < nchild; ++b)
    for (int a = 0; a < dim; ++a)
      if (b & (1U << a)) off[b] += std::size_t{1} << axis_shift(dim, child_level, a);
  return off;
}

// Index of child 0 of a parent cell at level j (children at level j+1).
std::size_t first_child(int dim, int j, std::size_t parent) {
  const std::size_t mask = (std::size_t{1} << j) - 1;
  std::size_t base = 0;
  for (int a = 0; a < dim; ++a) {
    const std::size_t pa = (parent >> axis_shift(dim, j, a)) & mask;
    base += (2 * pa) << axis_shift(dim, j + 1, a);
  }
  return base;
}

}  // namespace

DyadicFunction::DyadicFunction(int dim, int level, std::vector<double> values)
    : dim_(dim), level_(level), values_(std::move(values)) {
  check_shape(dim, level);
  if (values_.size() != grid_size(dim, level))
    throw std::domain_error("DyadicFunction: expected " + std::to_string(grid_size(dim, level)) +
                            " values, got " + std::to_string(values_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw std::domain_error("DyadicFunction: non-finite value");
}

DyadicFunction DyadicFunction::constant(int dim, int level, double value) {
  check_shape(dim, level);
  return DyadicFunction(dim, level, std::vector<double>(grid_size(dim, level), value));
}

double DyadicFunction::integral() const {
  double sum = 0.0, comp = 0.0;
  for (double v : values_) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return (sum + comp) / static_cast<double>(values_.size());
}

DyadicDensity::DyadicDensity(int dim, int level, std::vector<double> values)
    : DyadicDensity(DyadicFunction(dim, level, std::move(values))) {}

DyadicDensity::DyadicDensity(DyadicFunction f) : DyadicFunction(std::move(f)) {
  const auto vals = values();
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i] < 0.0)
      throw std::domain_error("DyadicDensity: negative value at cell " + std::to_string(i));
  const double mass = integral();
  if (std::abs(mass - 1.0) > kMassTolerance)
    throw std::domain_error("DyadicDensity: total mass " + std::to_string(mass) + " != 1");
}

DyadicDensity DyadicDensity::uniform(int dim, int level) {
  return DyadicDensity(DyadicFunction::constant(dim, level, 1.0));
}

WaveletCoeffs::WaveletCoeffs(int dim, int max_level)
    : dim_(dim), max_level_(max_level), detail_() {
  check_shape(dim, max_level);
  detail_.assign(detail_size(dim, max_level), 0.0);
}

WaveletCoeffs::WaveletCoeffs(int dim, int max_level, double scaling, std::vector<double> detail)
    : dim_(dim), max_level_(max_level), scaling_(scaling), detail_(std::move(detail)) {
  check_shape(dim, max_level);
  if (detail_.size() != detail_size(dim, max_level))
    throw std::domain_error("WaveletCoeffs: expected " +
                            std::to_string(detail_size(dim, max_level)) + " detail values, got " +
                            std::to_string(detail_.size()));
}

std::size_t WaveletCoeffs::detail_size(int dim, int max_level) {
  // (2^d - 1) * (2^{dL} - 1) / (2^d - 1)
  return grid_size(dim, max_level) - 1;
}

std::size_t WaveletCoeffs::level_offset(int level) const {
  return grid_size(dim_, level) - 1;
}

std::span<const double> WaveletCoeffs::level_span(int level) const {
  return std::span<const double>(detail_).subspan(level_offset(level),
                                                  orientations() * cells_at(level));
}

std::span<double> WaveletCoeffs::level_span(int level) {
  return std::span<double>(detail_).subspan(level_offset(level), orientations() * cells_at(level));
}

std::size_t WaveletCoeffs::index(int level, int orientation, std::size_t cell) const {
  if (level < 0 || level >= max_level_ || orientation < 1 || orientation > orientations() ||
      cell >= cells_at(level))
    throw std::domain_error("WaveletCoeffs: coefficient index out of range");
  return level_offset(level) + static_cast<std::size_t>(orientation - 1) * cells_at(level) + cell;
}

WaveletCoeffs analyze(const DyadicFunction& f) {
  const int d = f.dim();
  const int L = f.level();
  WaveletCoeffs out(d, L);
  const unsigned nchild = 1U << d;
  const double norm = std::pow(2.0, -0.5 * d);

  std::vector<double> fine(f.values().begin(), f.values().end());
  const double s0 = std::pow(2.0, -0.5 * d * L);
  for (double& v : fine) v *= s0;

  std::vector<double> coarse;
  for (int j = L - 1; j >= 0; --j) {
    const std::size_t parents = grid_size(d, j);
    const auto offs = child_offsets(d, j + 1);
    coarse.assign(parents, 0.0);
    auto lvl = out.level_span(j);
    for (std::size_t p = 0; p < parents; ++p) {
      const std::size_t base = first_child(d, j, p);
      for (unsigned o = 0; o < nchild; ++o) {
        double acc = 0.0;
        for (unsigned b = 0; b < nchild; ++b) acc += sign_of(o, b) * fine[base + offs[b]];
        acc *= norm;
        if (o == 0)
          coarse[p] = acc;
        else
          lvl[(o - 1) * parents + p] = acc;
      }
    }
    fine.swap(coarse);
  }
  out.set_scaling(fine[0]);
  return out;
}

DyadicFunction synthesize(const WaveletCoeffs& c) {
  const int d = c.dim();
  const int L = c.max_level();
  const unsigned nchild = 1U << d;
  const double norm = std::pow(2.0, -0.5 * d);

  std::vector<double> coarse{c.scaling()};
  std::vector<double> fine;
  for (int j = 0; j < L; ++j) {
    const std::size_t parents = grid_size(d, j);
    const auto offs = child_offsets(d, j + 1);
    fine.assign(grid_size(d, j + 1), 0.0);
    const auto lvl = c.level_span(j);
    for (std::size_t p = 0; p < parents; ++p) {
      const std::size_t base = first_child(d, j, p);
      for (unsigned b = 0; b < nchild; ++b) {
        double acc = coarse[p];
        for (unsigned o = 1; o < nchild; ++o) acc += sign_of(o, b) * lvl[(o - 1) * parents + p];
        fine[base + offs[b]] = acc * norm;
      }
    }
    coarse.swap(fine);
  }
  const double s = std::pow(2.0, 0.5 * d * L);
  for (double& v : coarse) v *= s;
  return DyadicFunction(d, L, std::move(coarse));
}

std::uint64_t axis_cell(double coordinate, int level) {
  const std::uint64_t cells = std::uint64_t{1} << level;
  const double scaled = std::ldexp(coordinate, level);
  if (scaled >= static_cast<double>(cells)) return cells - 1;
  return static_cast<std::uint64_t>(scaled);
}

std::size_t cell_of(std::span<const double> x, int level) {
  const int d = static_cast<int>(x.size());
  std::size_t idx = 0;
  for (int a = 0; a < d; ++a) idx |= axis_cell(x[a], level) << axis_shift(d, level, a);
  return idx;
}

double eval_basis(int dim, int level, int orientation, std::size_t cell,
                  std::span<const double> x) {
  check_shape(dim, level);
  if (orientation < 1 || orientation > (1 << dim) - 1)
    throw std::domain_error("eval_basis: orientation out of range");
  if (cell >= grid_size(dim, level)) throw std::domain_error("eval_basis: cell out of range");
  if (static_cast<int>(x.size()) != dim)
    throw std::domain_error("eval_basis: point dimension mismatch");
  const std::size_t mask = (std::size_t{1} << level) - 1;
  double sign = 1.0;
  for (int a = 0; a < dim; ++a) {
    if (!(x[a] >= 0.0 && x[a] <= 1.0))
      throw std::domain_error("eval_basis: point outside [0,1]^d");
    const std::uint64_t half_idx = axis_cell(x[a], level + 1);
    if ((half_idx >> 1) != ((cell >> axis_shift(dim, level, a)) & mask)) return 0.0;
    if ((orientation & (1 << a)) && (half_idx & 1U)) sign = -sign;
  }
  return sign * std::pow(2.0, 0.5 * dim * level);
}

WaveletCoeffs with_levels(const WaveletCoeffs& c, int new_max_level) {
  WaveletCoeffs out(c.dim(), new_max_level);
  out.set_scaling(c.scaling());
  const int common = std::min(c.max_level(), new_max_level);
  if (common > 0) {
    const auto src = c.detail().first(c.level_offset(common));
    std::copy(src.begin(), src.end(), out.detail().begin());
  }
  return out;
}

}  // namespace ipmlab
