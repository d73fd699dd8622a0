#pragma once

#include <Eigen/Core>

#include <cmath>
#include <functional>
#include <optional>

namespace dini {

using Index = Eigen::Index;
/// Grid values indexed (i, j) with i along x; column-major storage makes x
/// the fastest-running index.
using Array2d = Eigen::ArrayXXd;
using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;
using Point = Eigen::Vector2d;

enum class Shape { square, disk };

/// Canonical distance between grid nodes (i, j) and (i + di, j + dj). Every
/// modulus computation, optimized or naive, measures pairs through this
/// function so their comparisons are exact.
inline double offset_distance(Index di, Index dj, double dx, double dy) {
  const double a = static_cast<double>(di) * dx;
  const double b = static_cast<double>(dj) * dy;
  return std::sqrt(a * a + b * b);
}

struct GridIndex {
  Index i = 0;
  Index j = 0;
  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

/// Uniform rectangular grid, optionally restricted by an inclusion mask.
class Domain {
 public:
  Domain(double x0, double y0, double dx, double dy, Index nx, Index ny);

  /// n x n nodes on [0,1]^2.
  static Domain unit_square(Index n);
  /// n x n nodes covering the bounding box of the disk, masked to the disk.
  static Domain disk(const Point& center, double radius, Index n);

  Domain with_mask(Mask mask) const;

  double x0() const { return x0_; }
  double y0() const { return y0_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  Index nx() const { return nx_; }
  Index ny() const { return ny_; }
  Index size() const { return nx_ * ny_; }
  double spacing() const { return dx_ < dy_ ? dx_ : dy_; }
  Shape shape() const { return mask_ ? Shape::disk : Shape::square; }
  bool masked() const { return mask_.has_value(); }
  const std::optional<Mask>& mask() const { return mask_; }
  /// Max distance between included points.
  double diameter() const { return diameter_; }

  double x(Index i) const { return x0_ + static_cast<double>(i) * dx_; }
  double y(Index j) const { return y0_ + static_cast<double>(j) * dy_; }
  Point point(Index i, Index j) const { return {x(i), y(j)}; }
  Point point(GridIndex g) const { return point(g.i, g.j); }
  double x_max() const { return x(nx_ - 1); }
  double y_max() const { return y(ny_ - 1); }

  bool in_grid(Index i, Index j) const { return i >= 0 && j >= 0 && i < nx_ && j < ny_; }
  bool included(Index i, Index j) const {
    return in_grid(i, j) && (!mask_ || (*mask_)(i, j));
  }
  Index included_count() const;

  /// Nearest included grid node, if p lies within half a spacing of the grid box.
  std::optional<GridIndex> nearest(const Point& p) const;

  /// Same geometry (origin, spacing, counts, mask).
  bool same_grid(const Domain& other) const;

 private:
  void validate() const;
  double compute_diameter() const;

  double x0_, y0_, dx_, dy_;
  Index nx_, ny_;
  std::optional<Mask> mask_;
  double diameter_ = 0.0;
};

/// Scalar samples on a Domain. Values outside the mask are stored but are not
/// part of the field.
struct SampledField {
  Domain domain;
  Array2d values;

  SampledField(Domain d, Array2d v);
  explicit SampledField(Domain d) : SampledField(d, Array2d::Zero(d.nx(), d.ny())) {}

  /// Sup norm over included points.
  double sup() const;
  double operator()(Index i, Index j) const { return values(i, j); }
};

/// Evaluate fn at every node of the grid (including masked-out nodes).
SampledField sample(const Domain& d, const std::function<double(double, double)>& fn);

/// Bilinear interpolation of grid data at p; p is clamped to the grid box.
template <typename Derived>
double bilinear(const Eigen::ArrayBase<Derived>& v, double x0, double y0, double dx,
                double dy, const Point& p) {
  const Index nx = v.rows();
  const Index ny = v.cols();
  double s = (p.x() - x0) / dx;
  double t = (p.y() - y0) / dy;
  s = s < 0.0 ? 0.0 : (s > double(nx - 1) ? double(nx - 1) : s);
  t = t < 0.0 ? 0.0 : (t > double(ny - 1) ? double(ny - 1) : t);
  Index i = static_cast<Index>(s);
  Index j = static_cast<Index>(t);
  if (i >= nx - 1) i = nx - 2;
  if (j >= ny - 1) j = ny - 2;
  const double a = s - double(i);
  const double b = t - double(j);
  return (1.0 - a) * ((1.0 - b) * v(i, j) + b * v(i, j + 1)) +
         a * ((1.0 - b) * v(i + 1, j) + b * v(i + 1, j + 1));
}

inline double bilinear(const SampledField& f, const Point& p) {
  const auto& d = f.domain;
  return bilinear(f.values, d.x0(), d.y0(), d.dx(), d.dy(), p);
}

}  // namespace dini
