#pragma once

// Per-element GGD kernel and score used by the scalar backend and by the
// vector backends for loop tails. Internal linkage on purpose: the AVX2
// translation unit is built with different ISA flags and must not share
// inline definitions with the baseline build.

#include <cmath>

#include "gmeef/simd.hpp"

namespace gmeef::simd::detail {
namespace {

// u^alpha
inline double shape_power(double u, const GgdShape& s) {
  switch (s.kind) {
    case GgdShape::Kind::laplacian: return u;
    case GgdShape::Kind::gaussian: return u * u;
    case GgdShape::Kind::general: return std::pow(u, s.alpha);
  }
  return std::pow(u, s.alpha);
}

inline double ggd_value(double e, const GgdShape& s) {
  const double u = std::abs(e) * s.inv_beta;
  return s.norm * std::exp(-shape_power(u, s));
}

inline double ggd_score(double e, const GgdShape& s) {
  if (e == 0.0) return 0.0;
  const double sign = e > 0.0 ? 1.0 : -1.0;
  const double u = std::abs(e) * s.inv_beta;
  switch (s.kind) {
    case GgdShape::Kind::laplacian:
      return -s.score_scale * std::exp(-u) * sign;
    case GgdShape::Kind::gaussian:
      return -s.score_scale * std::exp(-u * u) * u * sign;
    case GgdShape::Kind::general: break;
  }
  const double uc = u > s.min_u ? u : s.min_u;
  const double p = std::pow(uc, s.alpha);
  return -s.score_scale * std::exp(-p) * (p / uc) * sign;
}

}  // namespace
}  // namespace gmeef::simd::detail
