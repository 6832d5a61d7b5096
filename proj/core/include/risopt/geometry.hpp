#pragma once

// Unit-cell geometry parameters and the design box they live in.  All
// lengths are in mm; the box is shared by the data generator, the surrogate
// input normalizer and the passive-geometry optimizer.

#include <array>
#include <cstddef>
#include <span>
#include <string>

#include "risopt/errors.hpp"

namespace risopt {

inline constexpr std::size_t kGeometryDim = 6;

inline constexpr std::array<const char*, kGeometryDim> kGeometryFieldNames = {
    "w1", "w2", "w3", "l1", "l2", "l3"};

struct GeometryParams {
  double w1 = 0.0;
  double w2 = 0.0;
  double w3 = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;

  std::array<double, kGeometryDim> to_array() const {
    return {w1, w2, w3, l1, l2, l3};
  }
  static GeometryParams from_array(const std::array<double, kGeometryDim>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5]};
  }
  static GeometryParams from_array(std::span<const double> a) {
    if (a.size() != kGeometryDim)
      throw contract_error("geometry needs exactly 6 values");
    return {a[0], a[1], a[2], a[3], a[4], a[5]};
  }
};

// Axis-aligned design box.  Defaults are the fabrication sweep ranges of the
// unit cell: the three patch widths share one range, the three tuning
// lengths have individual ones.
struct GeometryBounds {
  std::array<double, kGeometryDim> lo = {6.0, 6.0, 6.0, 1.0, 0.1, 6.0};
  std::array<double, kGeometryDim> hi = {24.0, 24.0, 24.0, 3.0, 1.0, 8.0};

  bool contains(const GeometryParams& g, double tol = 0.0) const;

  // domain_error naming the first offending field.
  void require_inside(const GeometryParams& g) const;

  GeometryParams clamp(const GeometryParams& g) const;
  GeometryParams center() const;

  // domain_error unless lo < hi componentwise.
  void validate() const;
};

}  // namespace risopt
