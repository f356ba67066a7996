// quadrature.hpp — adaptive Gauss–Kronrod integration, Cauchy principal
// values by pole excision with Richardson extrapolation, and a
// Legendre–Filon rule for strongly oscillatory cos(omega t) integrands.
//
// Everything is templated on the integrand so the nested principal-value
// evaluations in the cumulant pipeline do not pay std::function overhead.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qbm/core.hpp"
#include "qbm/errors.hpp"

namespace qbm::quad {

struct Result {
  double value = 0.0;
  double abs_err = 0.0;
  int panels = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod nodes on [-1,1] (positive half) with the embedded
// 7-point Gauss rule. Standard QUADPACK dqk15 constants.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F>
Panel gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  double res_k = kWgk[7] * fv[7];
  double res_g = kWg[3] * fv[7];
  double res_abs = kWgk[7] * std::abs(fv[7]);
  for (int i = 0; i < 7; ++i) {
    res_k += kWgk[i] * (fv[i] + fv[14 - i]);
    res_abs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    if (i % 2 == 1) res_g += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[7] * std::abs(fv[7] - mean);
  for (int i = 0; i < 7; ++i)
    res_asc += kWgk[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
  res_asc *= h;
  res_abs *= h;
  double err = std::abs((res_k - res_g) * h);
  if (res_asc != 0.0 && err != 0.0)
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  return Panel{a, b, res_k * h, err};
}

}  // namespace detail

// Globally adaptive GK15 over a finite interval. Endpoints are never
// evaluated, so integrable endpoint singularities are acceptable.
template <class F>
Result integrate_adaptive(F&& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(b > a)) {
    if (b == a) return Result{0.0, 0.0, 0, true};
    throw std::invalid_argument("integrate_adaptive: requires b >= a");
  }
  std::vector<detail::Panel> heap;
  heap.reserve(64);
  heap.push_back(detail::gk15(f, a, b));
  double total = heap[0].value, toterr = heap[0].err;
  const double min_width = 1e-14 * (std::abs(a) + std::abs(b) + (b - a));
  while (static_cast<int>(heap.size()) < cfg.max_subdiv) {
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    if (toterr <= tol) break;
    std::pop_heap(heap.begin(), heap.end());
    detail::Panel worst = heap.back();
    heap.pop_back();
    if (worst.b - worst.a < min_width) {
      // Cannot usefully refine further; put it back and stop.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end());
      break;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    detail::Panel left = detail::gk15(f, worst.a, mid);
    detail::Panel right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    toterr += left.err + right.err - worst.err;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
  }
  // Recompute sums to sidestep drift from incremental updates.
  total = 0.0;
  toterr = 0.0;
  for (const auto& p : heap) {
    total += p.value;
    toterr += p.err;
  }
  Result r;
  r.value = total;
  r.abs_err = toterr;
  r.panels = static_cast<int>(heap.size());
  r.converged = toterr <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
  return r;
}

// Throwing wrapper used where a non-converged result is not acceptable.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureConfig& cfg) {
  Result r = integrate_adaptive(f, a, b, cfg);
  if (!r.converged)
    throw ConvergenceError("quadrature did not converge on [" +
                               std::to_string(a) + ", " + std::to_string(b) + "]",
                           r.abs_err);
  return r.value;
}

// Cauchy principal value of \int_a^b f(x) dx where f has a simple pole at
// `pole` strictly inside (a, b). Symmetric excision of half-width eps with
// Richardson extrapolation eps -> 0 over the levels {eps0, eps0/2, eps0/4}.
// The excised integral expands in odd powers of eps, so two eliminations
// leave an O(eps^5) residual.
template <class F>
Result principal_value(F&& f, double a, double b, double pole, double eps0,
                       const QuadratureConfig& cfg) {
  if (!(pole > a && pole < b))
    throw std::invalid_argument("principal_value: pole must lie inside (a, b)");
  if (!(eps0 > 0.0) || pole - eps0 <= a || pole + eps0 >= b)
    throw std::invalid_argument("principal_value: bad excision half-width");

  auto excised = [&](double eps) {
    Result lo = integrate_adaptive(f, a, pole - eps, cfg);
    Result hi = integrate_adaptive(f, pole + eps, b, cfg);
    Result r;
    r.value = lo.value + hi.value;
    r.abs_err = lo.abs_err + hi.abs_err;
    r.panels = lo.panels + hi.panels;
    r.converged = lo.converged && hi.converged;
    return r;
  };

  Result i0 = excised(eps0);
  Result i1 = excised(0.5 * eps0);
  Result i2 = excised(0.25 * eps0);
  const double r10 = 2.0 * i1.value - i0.value;  // kills the eps^1 term
  const double r11 = 2.0 * i2.value - i1.value;
  const double r2 = (8.0 * r11 - r10) / 7.0;     // kills the eps^3 term

  Result out;
  out.value = r2;
  out.abs_err = std::abs(r2 - r11) + i2.abs_err;
  out.panels = i0.panels + i1.panels + i2.panels;
  out.converged = i0.converged && i1.converged && i2.converged;
  return out;
}

namespace detail {

// Gauss–Legendre nodes/weights on [-1,1], computed once per order by Newton
// iteration on the Legendre recurrence.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        const double dx = p1 / dp;
        xi -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      double p0 = 1.0, p1 = xi;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      x[i] = xi;
      w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }
};

inline const GaussLegendre& gl24() {
  static const GaussLegendre g(24);
  return g;
}

// Spherical Bessel j_0..j_kmax by upward recurrence; stable for theta > kmax.
inline void sph_bessel_up(double theta, int kmax, double* j) {
  j[0] = std::sin(theta) / theta;
  if (kmax == 0) return;
  j[1] = j[0] / theta - std::cos(theta) / theta;
  for (int k = 1; k < kmax; ++k)
    j[k + 1] = (2 * k + 1) / theta * j[k] - j[k - 1];
}

// \int g(w) cos(w t) dw over one panel via a degree-`kDeg` Legendre fit of g
// and exact cosine moments \int P_k(x) e^{i theta x} dx = 2 i^k j_k(theta).
inline constexpr int kDeg = 16;

template <class G>
double filon_panel(G&& g, double a, double b, double t, double* trunc_est) {
  const auto& gl = gl24();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const int n = static_cast<int>(gl.x.size());
  // Legendre coefficients c_k = (2k+1)/2 \int g(c+hx) P_k(x) dx.
  std::array<double, kDeg + 1> coef{};
  for (int i = 0; i < n; ++i) {
    const double xi = gl.x[i];
    const double gi = g(c + h * xi) * gl.w[i];
    double p0 = 1.0, p1 = xi;
    coef[0] += gi;
    coef[1] += gi * xi;
    for (int k = 2; k <= kDeg; ++k) {
      const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
      coef[k] += gi * p2;
      p0 = p1;
      p1 = p2;
    }
  }
  double scale = 0.0;
  for (int k = 0; k <= kDeg; ++k) {
    coef[k] *= (2 * k + 1) * 0.5;
    scale = std::max(scale, std::abs(coef[k]));
  }
  *trunc_est = (std::abs(coef[kDeg]) + std::abs(coef[kDeg - 1])) /
               std::max(scale, 1e-300);

  const double theta = h * t;
  std::array<double, kDeg + 1> j{};
  sph_bessel_up(theta, kDeg, j.data());
  const double cc = std::cos(c * t), sc = std::sin(c * t);
  // Re[e^{i c t} i^k] cycles through {cos, -sin, -cos, sin}.
  const std::array<double, 4> phase = {cc, -sc, -cc, sc};
  double sum = 0.0;
  for (int k = 0; k <= kDeg; ++k) sum += coef[k] * 2.0 * j[k] * phase[k % 4];
  return h * sum;
}

}  // namespace detail

// \int_a^b g(w) cos(w t) dw for smooth, slowly varying g (think power laws)
// and arbitrarily large t. Panels are laid out geometrically; panels with few
// oscillations go to the adaptive rule, long ones to the Filon rule. Panels
// whose Legendre fit has not converged are bisected.
template <class G>
Result osc_cos_integral(G&& g, double a, double b, double t,
                        const QuadratureConfig& cfg) {
  if (!(a > 0.0) || !(b > a) || !(t > 0.0))
    throw std::invalid_argument("osc_cos_integral: requires 0 < a < b, t > 0");
  struct Span {
    double a, b;
    int depth;
  };
  std::vector<Span> work;
  const double ratio = std::pow(10.0, 0.1);  // 10 panels per decade
  double lo = a;
  while (lo < b) {
    double hi = std::min(b, lo * ratio);
    if (hi >= b * (1.0 - 1e-14)) hi = b;
    work.push_back({lo, hi, 0});
    lo = hi;
  }
  Result out;
  out.converged = true;
  while (!work.empty()) {
    Span s = work.back();
    work.pop_back();
    const double theta = 0.5 * (s.b - s.a) * t;
    if (theta <= 30.0) {
      Result r = integrate_adaptive([&](double w) { return g(w) * std::cos(w * t); },
                                    s.a, s.b, cfg);
      out.value += r.value;
      out.abs_err += r.abs_err;
      out.panels += r.panels;
      out.converged = out.converged && r.converged;
      continue;
    }
    double trunc = 0.0;
    const double v = detail::filon_panel(g, s.a, s.b, t, &trunc);
    if (trunc > 1e-12 && s.depth < 12) {
      const double mid = 0.5 * (s.a + s.b);
      work.push_back({s.a, mid, s.depth + 1});
      work.push_back({mid, s.b, s.depth + 1});
      continue;
    }
    out.value += v;
    out.abs_err += std::abs(v) * trunc;
    out.panels += 1;
    if (trunc > 1e-9) out.converged = false;
  }
  return out;
}

// \int_0^uv (1 - cos(w t)) g(w) dw. The region below a few oscillation
// periods is integrated directly; beyond it the 1 and cos parts separate,
// with the cosine handled by the Filon rule. Tolerates an integrable 1/w
// singularity of g at the origin.
template <class G>
Result one_minus_cos_integral(G&& g, double uv, double t,
                              const QuadratureConfig& cfg) {
  if (!(uv > 0.0) || !(t > 0.0))
    throw std::invalid_argument("one_minus_cos_integral: requires uv, t > 0");
  const double split = std::min(uv, 16.0 * std::numbers::pi / t);
  Result head = integrate_adaptive(
      [&](double w) {
        const double x = w * t;
        // 1 - cos(x) loses precision below x ~ 1e-8; switch to the series.
        const double omc = (x < 1e-4) ? 0.5 * x * x * (1.0 - x * x / 12.0)
                                      : 1.0 - std::cos(x);
        return omc * g(w);
      },
      0.0, split, cfg);
  Result out = head;
  if (split < uv) {
    Result plain = integrate_adaptive(g, split, uv, cfg);
    Result osc = osc_cos_integral(g, split, uv, t, cfg);
    out.value += plain.value - osc.value;
    out.abs_err += plain.abs_err + osc.abs_err;
    out.panels += plain.panels + osc.panels;
    out.converged = out.converged && plain.converged && osc.converged;
  }
  return out;
}

}  // namespace qbm::quad
