#include "dini/grid.hpp"

#include "dini/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dini {

Domain::Domain(double x0, double y0, double dx, double dy, Index nx, Index ny)
    : x0_(x0), y0_(y0), dx_(dx), dy_(dy), nx_(nx), ny_(ny) {
  validate();
  diameter_ = compute_diameter();
}

Domain Domain::unit_square(Index n) {
  if (n < 2) throw invalid_argument("unit_square: need at least 2 nodes per side");
  const double h = 1.0 / static_cast<double>(n - 1);
  return Domain(0.0, 0.0, h, h, n, n);
}

Domain Domain::disk(const Point& center, double radius, Index n) {
  if (!(radius > 0.0)) throw invalid_argument("disk: radius must be positive");
  if (n < 3) throw invalid_argument("disk: need at least 3 nodes per side");
  const double h = 2.0 * radius / static_cast<double>(n - 1);
  Domain d(center.x() - radius, center.y() - radius, h, h, n, n);
  Mask m(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      m(i, j) = (d.point(i, j) - center).norm() <= radius * (1.0 + 1e-12);
  return d.with_mask(std::move(m));
}

Domain Domain::with_mask(Mask mask) const {
  if (mask.rows() != nx_ || mask.cols() != ny_)
    throw invalid_argument("with_mask: mask shape does not match grid");
  Domain d = *this;
  d.mask_ = std::move(mask);
  d.validate();
  d.diameter_ = d.compute_diameter();
  return d;
}

void Domain::validate() const {
  if (!(dx_ > 0.0) || !(dy_ > 0.0)) throw invalid_argument("Domain: spacing must be positive");
  if (nx_ < 2 || ny_ < 2) throw invalid_argument("Domain: need nx, ny >= 2");
  if (!std::isfinite(x0_) || !std::isfinite(y0_))
    throw invalid_argument("Domain: origin must be finite");
  if (mask_ && mask_->count() == 0) throw invalid_argument("Domain: mask includes no points");
}

Index Domain::included_count() const { return mask_ ? mask_->count() : size(); }

double Domain::compute_diameter() const {
  if (!mask_) {
    const double a = static_cast<double>(nx_ - 1) * dx_;
    const double b = static_cast<double>(ny_ - 1) * dy_;
    return std::sqrt(a * a + b * b);
  }
  // Hull vertices are row extremes, so the farthest pair is among them.
  std::vector<GridIndex> ext;
  for (Index j = 0; j < ny_; ++j) {
    Index lo = -1, hi = -1;
    for (Index i = 0; i < nx_; ++i) {
      if ((*mask_)(i, j)) {
        if (lo < 0) lo = i;
        hi = i;
      }
    }
    if (lo >= 0) {
      ext.push_back({lo, j});
      if (hi != lo) ext.push_back({hi, j});
    }
  }
  double best = 0.0;
  for (std::size_t a = 0; a < ext.size(); ++a)
    for (std::size_t b = a + 1; b < ext.size(); ++b)
      best = std::max(best, offset_distance(ext[a].i - ext[b].i, ext[a].j - ext[b].j, dx_, dy_));
  return best;
}

std::optional<GridIndex> Domain::nearest(const Point& p) const {
  const double s = (p.x() - x0_) / dx_;
  const double t = (p.y() - y0_) / dy_;
  if (s < -0.5 || t < -0.5 || s > double(nx_ - 1) + 0.5 || t > double(ny_ - 1) + 0.5)
    return std::nullopt;
  const Index i = std::clamp<Index>(static_cast<Index>(std::lround(s)), 0, nx_ - 1);
  const Index j = std::clamp<Index>(static_cast<Index>(std::lround(t)), 0, ny_ - 1);
  if (!included(i, j)) return std::nullopt;
  return GridIndex{i, j};
}

bool Domain::same_grid(const Domain& o) const {
  if (x0_ != o.x0_ || y0_ != o.y0_ || dx_ != o.dx_ || dy_ != o.dy_ || nx_ != o.nx_ ||
      ny_ != o.ny_ || masked() != o.masked())
    return false;
  return !mask_ || (*mask_ == *o.mask_).all();
}

SampledField::SampledField(Domain d, Array2d v) : domain(std::move(d)), values(std::move(v)) {
  if (values.rows() != domain.nx() || values.cols() != domain.ny())
    throw invalid_argument("SampledField: values shape does not match domain");
  if (!values.allFinite()) throw invalid_argument("SampledField: values must be finite");
}

double SampledField::sup() const {
  if (!domain.masked()) return values.abs().maxCoeff();
  return domain.mask()->select(values.abs(), 0.0).maxCoeff();
}

SampledField sample(const Domain& d, const std::function<double(double, double)>& fn) {
  Array2d v(d.nx(), d.ny());
  for (Index j = 0; j < d.ny(); ++j)
    for (Index i = 0; i < d.nx(); ++i) v(i, j) = fn(d.x(i), d.y(j));
  return SampledField(d, std::move(v));
}

}  // namespace dini
