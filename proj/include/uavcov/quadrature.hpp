#pragma once
// Globally adaptive Gauss-Kronrod integration (21-point panels, worst panel
// bisected first) with optional interior breakpoints, a rational map for
// semi-infinite ranges, and nested polar integration.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace uavcov {

struct QuadConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 200;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  int subdivisions = 0;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, QuadResult best)
      : std::runtime_error(what), best_(best) {}
  const QuadResult& best() const { return best_; }

 private:
  QuadResult best_;
};

namespace detail {

struct Panel {
  double a, b, value, error;
};

inline bool panel_less(const Panel& x, const Panel& y) { return x.error < y.error; }

template <class F>
Panel gk21(F& f, double a, double b) {
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err};
}

inline double tolerance(const QuadConfig& cfg, double value) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

inline void check_config(const QuadConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || cfg.max_subdivisions < 1)
    throw std::invalid_argument("QuadConfig: tolerances must be > 0 and max_subdivisions >= 1");
}

/// Adaptive driver over panels [k, k+1], k = 0..n-1, of an already mapped integrand.
template <class G>
QuadResult adaptive(G& g, int n, const QuadConfig& cfg) {
  QuadResult res;
  std::vector<Panel> heap;
  heap.reserve(static_cast<std::size_t>(n) + 2 * static_cast<std::size_t>(cfg.max_subdivisions));
  for (int k = 0; k < n; ++k) heap.push_back(gk21(g, k, k + 1.0));
  std::make_heap(heap.begin(), heap.end(), panel_less);

  auto totals = [&] {
    double v = 0.0, e = 0.0;
    for (const auto& p : heap) {
      v += p.value;
      e += p.error;
    }
    res.value = v;
    res.error = e;
  };
  totals();
  while (!heap.empty() && res.error > tolerance(cfg, res.value)) {
    if (res.subdivisions >= cfg.max_subdivisions) {
      res.converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), panel_less);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel shrank to floating-point resolution; nothing more to gain.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), panel_less);
      res.converged = false;
      break;
    }
    heap.push_back(gk21(g, worst.a, mid));
    std::push_heap(heap.begin(), heap.end(), panel_less);
    heap.push_back(gk21(g, mid, worst.b));
    std::push_heap(heap.begin(), heap.end(), panel_less);
    ++res.subdivisions;
    totals();
  }
  return res;
}

}  // namespace detail

/// Integrates f over [breaks.front(), breaks.back()], starting from one panel
/// per breakpoint interval. Never throws on non-convergence; check `converged`.
///
/// Each interval [a, b] is integrated in theta through x = a + (b - a)(1 - cos theta)/2.
/// Breakpoints here are kinks of circle geometry, where integrands carry
/// sqrt(x - a) or sqrt(b - x) terms; the map makes those smooth in theta, which
/// keeps the Kronrod error estimate honest at the interval ends.
template <class F>
QuadResult try_integrate(F&& f, std::span<const double> breaks, const QuadConfig& cfg = {}) {
  detail::check_config(cfg);
  if (breaks.size() < 2) return {};
  std::vector<double> pts(breaks.begin(), breaks.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const int n = static_cast<int>(pts.size()) - 1;
  if (n < 1) return {};

  auto mapped = [&](double t) {
    const int k = std::clamp(static_cast<int>(t), 0, n - 1);
    const double half = 0.5 * (pts[k + 1] - pts[k]);
    const double theta = std::numbers::pi * (t - k);
    const double x = pts[k] + half * (1.0 - std::cos(theta));
    const double jac = half * std::numbers::pi * std::sin(theta);
    return jac == 0.0 ? 0.0 : f(x) * jac;
  };
  return detail::adaptive(mapped, n, cfg);
}

template <class F>
QuadResult try_integrate(F&& f, double a, double b, const QuadConfig& cfg = {}) {
  if (a > b) throw std::invalid_argument("integrate: a > b");
  const double pts[2] = {a, b};
  return try_integrate(f, std::span<const double>(pts, 2), cfg);
}

/// Throws ConvergenceError carrying the best estimate when the tolerance is not met.
template <class F>
QuadResult integrate(F&& f, std::span<const double> breaks, const QuadConfig& cfg = {}) {
  QuadResult r = try_integrate(f, breaks, cfg);
  if (!r.converged) {
    throw ConvergenceError("quadrature did not converge within " +
                               std::to_string(cfg.max_subdivisions) + " subdivisions",
                           r);
  }
  return r;
}

template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadConfig& cfg = {}) {
  if (a > b) throw std::invalid_argument("integrate: a > b");
  const double pts[2] = {a, b};
  return integrate(f, std::span<const double>(pts, 2), cfg);
}

/// Integral over [a, inf) through omega = a + scale * u / (1 - u), u in [0, 1).
/// `scale` should sit near where the integrand starts its tail decay.
template <class F>
QuadResult try_integrate_semi_infinite(F&& f, double a, const QuadConfig& cfg = {},
                                       double scale = 1.0) {
  if (!(scale > 0.0)) throw std::invalid_argument("integrate_semi_infinite: scale must be > 0");
  auto mapped = [&](double u) {
    const double one_minus = 1.0 - u;
    if (one_minus <= 0.0) return 0.0;
    const double w = a + scale * u / one_minus;
    return f(w) * scale / (one_minus * one_minus);
  };
  return try_integrate(mapped, 0.0, 1.0, cfg);
}

template <class F>
QuadResult integrate_semi_infinite(F&& f, double a, const QuadConfig& cfg = {},
                                   double scale = 1.0) {
  QuadResult r = try_integrate_semi_infinite(f, a, cfg, scale);
  if (!r.converged) throw ConvergenceError("semi-infinite quadrature did not converge", r);
  return r;
}

/// Nested polar integral: outer over beta in [beta_lo, beta_hi], inner over
/// omega with breakpoints `radial_breaks(beta)` (a vector, first/last are the
/// radial limits). Integrand f(omega, beta) should already include the
/// omega Jacobian if one is wanted.
template <class F, class B>
QuadResult try_integrate_polar(F&& f, double beta_lo, double beta_hi, B&& radial_breaks,
                               const QuadConfig& cfg = {}) {
  bool inner_ok = true;
  auto outer = [&](double beta) {
    const std::vector<double> br = radial_breaks(beta);
    auto inner = [&](double w) { return f(w, beta); };
    QuadResult r = try_integrate(inner, std::span<const double>(br), cfg);
    inner_ok = inner_ok && r.converged;
    return r.value;
  };
  QuadResult r = try_integrate(outer, beta_lo, beta_hi, cfg);
  r.converged = r.converged && inner_ok;
  return r;
}

}  // namespace uavcov
