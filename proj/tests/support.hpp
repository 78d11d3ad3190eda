#pragma once

#include <doctest.h>

#include <cmath>
#include <random>

#include "uavcov/scenario.hpp"

namespace uavcov::test {

inline Scenario homogeneous(Scenario s) {
  s.chi = {ProfileFamily::constant, 1.0};
  return s;
}

inline Scenario destroyed(Scenario s) {
  s.chi = {ProfileFamily::constant, 0.0};
  return s;
}

/// |observed - expected| within k standard errors of a mean over n samples
/// with per-sample standard deviation sd.
inline bool within_sigma(double observed, double expected, double sd, long long n, double k = 3.0) {
  return std::abs(observed - expected) <= k * sd / std::sqrt(static_cast<double>(n));
}

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace uavcov::test
