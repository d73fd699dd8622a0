#include "dini/compose.hpp"

#include "dini/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dini {

DiscreteMap identity_map(const Domain& d) {
  DiscreteMap m(d);
  for (Index j = 0; j < d.ny(); ++j)
    for (Index i = 0; i < d.nx(); ++i) {
      m.X(i, j) = d.x(i);
      m.Y(i, j) = d.y(j);
    }
  return m;
}

DiscreteMap rotation_map(const Domain& d, const Point& c, double angle) {
  DiscreteMap m(d);
  const double cs = std::cos(angle);
  const double sn = std::sin(angle);
  for (Index j = 0; j < d.ny(); ++j)
    for (Index i = 0; i < d.nx(); ++i) {
      const Point q = d.point(i, j) - c;
      m.X(i, j) = c.x() + cs * q.x() - sn * q.y();
      m.Y(i, j) = c.y() + sn * q.x() + cs * q.y();
    }
  return m;
}

DiscreteMap radial_holder_map(const Domain& d, const Point& c, double delta) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw invalid_argument("radial_holder_map: delta must lie in (0, 1]");
  DiscreteMap m(d);
  const double k = std::pow(2.0, delta - 1.0);
  for (Index j = 0; j < d.ny(); ++j)
    for (Index i = 0; i < d.nx(); ++i) {
      const Point q = d.point(i, j) - c;
      const double r = q.norm();
      const double s = r == 0.0 ? 0.0 : k * std::pow(r, delta - 1.0);
      m.X(i, j) = c.x() + s * q.x();
      m.Y(i, j) = c.y() + s * q.y();
    }
  return m;
}

namespace {

// p lies within half a spacing of the grid box and its interpolation cell
// has at least one included corner.
bool reachable(const Domain& d, const Point& p) {
  const double tol = 0.5;
  const double s = (p.x() - d.x0()) / d.dx();
  const double t = (p.y() - d.y0()) / d.dy();
  const double sx = double(d.nx() - 1);
  const double sy = double(d.ny() - 1);
  if (!(s >= -tol && t >= -tol && s <= sx + tol && t <= sy + tol)) return false;
  if (!d.masked()) return true;
  const Index i = std::min(static_cast<Index>(std::clamp(s, 0.0, sx)), d.nx() - 2);
  const Index j = std::min(static_cast<Index>(std::clamp(t, 0.0, sy)), d.ny() - 2);
  return d.included(i, j) || d.included(i + 1, j) || d.included(i, j + 1) ||
         d.included(i + 1, j + 1);
}

}  // namespace

SampledField compose(const SampledField& a, const DiscreteMap& U) {
  const Domain& src = a.domain;
  const Domain& dst = U.domain;
  Array2d out = Array2d::Zero(dst.nx(), dst.ny());
  std::vector<std::string> bad;
  Index bad_count = 0;
  for (Index j = 0; j < dst.ny(); ++j)
    for (Index i = 0; i < dst.nx(); ++i) {
      if (!dst.included(i, j)) continue;
      const Point p = U(i, j);
      if (!reachable(src, p)) {
        if (bad.size() < 16) {
          std::ostringstream os;
          os << "(" << i << "," << j << ")->(" << p.x() << "," << p.y() << ")";
          bad.push_back(os.str());
        }
        ++bad_count;
        continue;
      }
      out(i, j) = bilinear(a, p);
    }
  if (bad_count > 0) {
    std::ostringstream os;
    os << "compose: " << bad_count << " image point(s) escape the domain:";
    for (const auto& b : bad) os << " " << b;
    throw range_error(os.str(), std::move(bad));
  }
  return SampledField(dst, std::move(out));
}

}  // namespace dini
