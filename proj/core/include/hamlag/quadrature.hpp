#pragma once

// Vector-valued quadrature used for the phase integrals. Two independent
// rules: adaptive Gauss-Kronrod 7/15 (production) and composite
// Gauss-Legendre (cross-check).

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "hamlag/error.hpp"

namespace hamlag::quadrature {

template <std::size_t N>
using Values = std::array<double, N>;

struct Node {
  double abscissa;
  double weight;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
std::vector<Node> legendre_rule(int order);

namespace detail {

// Abscissae of the 15-point Kronrod rule on [0, 1]; odd entries (1, 3, 5, 7)
// are the 7-point Gauss nodes.
inline constexpr std::array<double, 8> kKronrodX = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodW = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussW = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N, class F>
void gk15(F& f, double lo, double hi, Values<N>& kronrod, double& error) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  Values<N> gauss{};
  kronrod = {};

  const Values<N> fc = f(center);
  for (std::size_t k = 0; k < N; ++k) {
    kronrod[k] = kKronrodW[7] * fc[k];
    gauss[k] = kGaussW[3] * fc[k];
  }
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodX[j];
    const Values<N> f1 = f(center - dx);
    const Values<N> f2 = f(center + dx);
    for (std::size_t k = 0; k < N; ++k) {
      const double sum = f1[k] + f2[k];
      kronrod[k] += kKronrodW[j] * sum;
      if (j % 2 == 1) gauss[k] += kGaussW[j / 2] * sum;
    }
  }
  error = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    kronrod[k] *= half;
    gauss[k] *= half;
    error = std::max(error, std::abs(kronrod[k] - gauss[k]));
  }
}

template <std::size_t N, class F>
void adaptive(F& f, double lo, double hi, double tol, int depth, Values<N>& acc) {
  Values<N> estimate;
  double error = 0.0;
  gk15<N>(f, lo, hi, estimate, error);
  if (error <= tol) {
    for (std::size_t k = 0; k < N; ++k) acc[k] += estimate[k];
    return;
  }
  if (depth <= 0) {
    throw Error(ErrorKind::QuadratureError,
                "adaptive Gauss-Kronrod did not converge on [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "], error estimate " + std::to_string(error));
  }
  const double mid = 0.5 * (lo + hi);
  adaptive<N>(f, lo, mid, 0.5 * tol, depth - 1, acc);
  adaptive<N>(f, mid, hi, 0.5 * tol, depth - 1, acc);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod 7/15 with a global absolute tolerance. The error
/// estimate is the max over components of |K15 - G7|. Throws
/// Error(QuadratureError) when the subdivision depth is exhausted.
template <std::size_t N, class F>
Values<N> integrate_adaptive(F&& f, double lo, double hi, double abs_tol, int max_depth = 40) {
  Values<N> acc{};
  if (lo == hi) return acc;
  detail::adaptive<N>(f, lo, hi, abs_tol, max_depth, acc);
  return acc;
}

/// Composite fixed-order Gauss-Legendre rule with `panels` equal panels.
template <std::size_t N, class F>
Values<N> integrate_gauss_legendre(F&& f, double lo, double hi, int order, int panels) {
  const std::vector<Node> rule = legendre_rule(order);
  Values<N> acc{};
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    const double center = a + 0.5 * width;
    for (const Node& node : rule) {
      const Values<N> v = f(center + 0.5 * width * node.abscissa);
      for (std::size_t k = 0; k < N; ++k) acc[k] += 0.5 * width * node.weight * v[k];
    }
  }
  return acc;
}

}  // namespace hamlag::quadrature
