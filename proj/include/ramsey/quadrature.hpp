#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "ramsey/errors.hpp"

namespace ramsey {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
};

void validate(const QuadratureConfig& cfg);

template <typename T>
struct QuadResult {
  T value{};
  double error = 0.0;
  long evals = 0;
  bool converged = false;
};

namespace quad_detail {

// 21-point Kronrod extension of the 10-point Gauss rule. Abscissae are listed
// from the endpoint inwards; odd indices are the Gauss nodes.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <typename T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <typename T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename T, typename F>
Panel<T> kronrod21(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fc = f(c);
  T kron = fc * kWgk[10];
  T gauss{};
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    const T s = f(c - dx) + f(c + dx);
    kron += s * kWgk[j];
    if (j % 2 == 1) gauss += s * kWg[j / 2];
  }
  const T value = kron * h;
  const double err = magnitude(T((kron - gauss) * h));
  return {a, b, value, err};
}

}  // namespace quad_detail

/// Globally adaptive Gauss-Kronrod (10/21) integration of f over [a, b].
/// The error estimate is |K21 - G10| summed over panels, with no
/// optimistic rescaling.
template <typename T, typename F>
QuadResult<T> integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  QuadResult<T> out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  const double sign = (b < a) ? -1.0 : 1.0;
  if (b < a) std::swap(a, b);

  std::priority_queue<quad_detail::Panel<T>> heap;
  auto first = quad_detail::kronrod21<T>(f, a, b);
  out.evals = 21;
  heap.push(first);
  T total = first.value;
  double err = first.error;
  int splits = 0;
  const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));

  while (true) {
    const double target = std::max(cfg.abs_tol, cfg.rel_tol * quad_detail::magnitude(total));
    if (err <= target) {
      out.converged = true;
      break;
    }
    if (splits >= cfg.max_subdivisions) break;
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.b - worst.a <= min_width) break;
    heap.pop();
    auto left = quad_detail::kronrod21<T>(f, worst.a, mid);
    auto right = quad_detail::kronrod21<T>(f, mid, worst.b);
    out.evals += 42;
    ++splits;
    total += (left.value + right.value) - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum from panels to shed accumulated cancellation in total/err.
  T sum{};
  double esum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    heap.pop();
  }
  out.value = sum * sign;
  out.error = esum;
  if (!out.converged) {
    out.converged = esum <= std::max(cfg.abs_tol, cfg.rel_tol * quad_detail::magnitude(sum));
  }
  return out;
}

/// Integral over [a, inf) via x = a + s t/(1 - t), t in [0, 1).
template <typename T, typename F>
QuadResult<T> integrate_to_infinity(F&& f, double a, double scale, const QuadratureConfig& cfg = {}) {
  auto g = [&](double t) -> T {
    if (t >= 1.0) return T{};
    const double one_minus = 1.0 - t;
    const double x = a + scale * t / one_minus;
    const T v = f(x);
    return v * (scale / (one_minus * one_minus));
  };
  return integrate<T>(g, 0.0, 1.0, cfg);
}

/// Sum of integrals over consecutive breakpoints.
template <typename T, typename F>
QuadResult<T> integrate_pieces(F&& f, const std::vector<double>& breaks, const QuadratureConfig& cfg = {}) {
  QuadResult<T> out;
  out.converged = true;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) continue;
    auto part = integrate<T>(f, breaks[i], breaks[i + 1], cfg);
    out.value += part.value;
    out.error += part.error;
    out.evals += part.evals;
    out.converged = out.converged && part.converged;
  }
  return out;
}

/// Throws ConvergenceError when a result missed its tolerance.
template <typename T>
const QuadResult<T>& require_converged(const QuadResult<T>& r, const char* what) {
  if (!r.converged) throw ConvergenceError(std::string(what) + ": quadrature did not converge");
  return r;
}

}  // namespace ramsey
