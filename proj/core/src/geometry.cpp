#include "risopt/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace risopt {

bool GeometryBounds::contains(const GeometryParams& g, double tol) const {
  const auto v = g.to_array();
  for (std::size_t i = 0; i < kGeometryDim; ++i) {
    if (v[i] < lo[i] - tol || v[i] > hi[i] + tol) return false;
  }
  return true;
}

void GeometryBounds::require_inside(const GeometryParams& g) const {
  const auto v = g.to_array();
  for (std::size_t i = 0; i < kGeometryDim; ++i) {
    if (v[i] < lo[i] || v[i] > hi[i]) {
      std::ostringstream msg;
      msg << "geometry field " << kGeometryFieldNames[i] << " = " << v[i]
          << " mm outside design box [" << lo[i] << ", " << hi[i] << "] mm";
      throw domain_error(msg.str());
    }
  }
}

GeometryParams GeometryBounds::clamp(const GeometryParams& g) const {
  auto v = g.to_array();
  for (std::size_t i = 0; i < kGeometryDim; ++i)
    v[i] = std::clamp(v[i], lo[i], hi[i]);
  return GeometryParams::from_array(v);
}

GeometryParams GeometryBounds::center() const {
  std::array<double, kGeometryDim> v{};
  for (std::size_t i = 0; i < kGeometryDim; ++i) v[i] = 0.5 * (lo[i] + hi[i]);
  return GeometryParams::from_array(v);
}

void GeometryBounds::validate() const {
  for (std::size_t i = 0; i < kGeometryDim; ++i) {
    if (!(lo[i] < hi[i])) {
      std::ostringstream msg;
      msg << "geometry bounds for " << kGeometryFieldNames[i]
          << " must satisfy lo < hi, got [" << lo[i] << ", " << hi[i] << "]";
      throw domain_error(msg.str());
    }
  }
}

}  // namespace risopt
