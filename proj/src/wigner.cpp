#include "ngb/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

#include "ngb/parallel.hpp"

namespace ngb {

namespace {

// prefactor table c[m][k] = (-1)^m sqrt(m!/(m+k)!), shared by all states
const std::vector<std::vector<double>>& prefactor_table() {
  static std::vector<std::vector<double>> table;
  static std::once_flag once;
  std::call_once(once, [] {
    const int n = kMaxWignerLevel + 1;
    table.assign(n, std::vector<double>(n, 0.0));
    for (int m = 0; m < n; ++m)
      for (int k = 0; m + k < n; ++k)
        table[m][k] = ((m & 1) ? -1.0 : 1.0) *
                      std::exp(0.5 * (std::lgamma(m + 1.0) -
                                      std::lgamma(m + k + 1.0)));
  });
  return table;
}

// One state's Wigner evaluator. Laguerre columns L_m^k(2r^2) are produced by
// the three-term recurrence; above order 40 the recurrence runs on values
// scaled by exp(-r^2/m_top) per step, which keeps every intermediate O(1)
// and folds the e^{-r^2} damping in multiplicatively.
class Evaluator {
 public:
  explicit Evaluator(const FockDensityMatrix& rho) : rho_(rho), d_(rho.dim()) {
    if (d_ - 1 > kMaxWignerLevel)
      throw UnsupportedRange("wigner: dim-1 exceeds the stability ceiling " +
                             std::to_string(kMaxWignerLevel));
    gap_has_data_.assign(d_, false);
    for (int k = 0; k < d_; ++k)
      for (int m = 0; m + k < d_; ++m)
        if (std::abs(rho_(m, m + k)) != 0.0) {
          gap_has_data_[k] = true;
          break;
        }
  }

  double operator()(double x, double p) const {
    const double r2 = x * x + p * p;
    const double z = 2.0 * r2;
    const int m_top = d_ - 1;
    const bool scaled = m_top > 40;
    const double s = scaled ? std::exp(-r2 / m_top) : 1.0;
    const double u = scaled ? 1.0 / s : 1.0;
    const double e_full = std::exp(-r2);
    const auto& pref = prefactor_table();

    thread_local std::vector<double> lag;
    lag.resize(d_);

    const double sqrt2r = std::sqrt(2.0 * r2);
    const Complex unit =
        r2 > 0.0 ? Complex(x, p) / std::sqrt(r2) : Complex(1.0, 0.0);

    double w = 0.0;
    Complex phase_k(1.0, 0.0);
    double pow_k = 1.0;
    for (int k = 0; k < d_; ++k) {
      if (k > 0) {
        phase_k *= unit;
        pow_k *= sqrt2r;
        if (pow_k == 0.0) break;  // origin: only the diagonal contributes
      }
      if (!gap_has_data_[k]) continue;
      const int m_max = d_ - 1 - k;

      // scaled recurrence: lag[m] = L_m^k(z) * s^m
      lag[0] = 1.0;
      if (m_max >= 1) lag[1] = s * (1.0 + k - z);
      for (int m = 1; m < m_max; ++m)
        lag[m + 1] = (s * (2.0 * m + k + 1.0 - z) * lag[m] -
                      s * s * (m + k) * lag[m - 1]) /
                     (m + 1);

      // unscale[m] = e^{-r^2} u^m restores L_m^k(z) e^{-r^2}
      double unscale = e_full;
      if (k == 0) {
        for (int m = 0; m <= m_max; ++m, unscale *= u)
          w += rho_(m, m).real() * pref[m][0] * lag[m] * unscale;
      } else {
        for (int m = 0; m <= m_max; ++m, unscale *= u) {
          const Complex rmn = rho_(m, m + k);
          if (rmn.real() == 0.0 && rmn.imag() == 0.0) continue;
          const double mag = pref[m][k] * pow_k * lag[m] * unscale;
          w += 2.0 * mag * (rmn * phase_k).real();
        }
      }
    }
    return w / M_PI;
  }

 private:
  const FockDensityMatrix& rho_;
  int d_;
  std::vector<bool> gap_has_data_;
};

}  // namespace

GridSpec suggest_grid(const FockDensityMatrix& rho) {
  int top = 0;
  for (int n = 0; n < rho.dim(); ++n)
    if (rho.elements().row(n).cwiseAbs().maxCoeff() > 1e-12) top = n;
  const double r_need = std::sqrt(2.0 * top + 1.0) + 3.0;
  GridSpec g;
  if (r_need <= 6.0) return g;
  const int steps = 2 * static_cast<int>(std::ceil(r_need / 0.06)) + 1;
  g.x_min = g.p_min = -r_need;
  g.x_max = g.p_max = r_need;
  g.x_steps = g.p_steps = steps;
  return g;
}

double wigner_point(const FockDensityMatrix& rho, double x, double p) {
  return Evaluator(rho)(x, p);
}

RealMatrix wigner_eval(const FockDensityMatrix& rho, const GridSpec& grid) {
  const Evaluator eval(rho);
  RealMatrix values(grid.x_steps, grid.p_steps);
  parallel_for(grid.x_steps, [&](int i) {
    const double x = grid.x(i);
    for (int j = 0; j < grid.p_steps; ++j) values(i, j) = eval(x, grid.p(j));
  });
  return values;
}

RealMatrix wigner_eval_polar(const FockDensityMatrix& rho,
                             const PolarGridSpec& grid) {
  const Evaluator eval(rho);
  RealMatrix values(grid.r_steps, grid.phi_steps);
  parallel_for(grid.r_steps, [&](int i) {
    const double r = grid.r_max * i / (grid.r_steps - 1);
    for (int j = 0; j < grid.phi_steps; ++j) {
      const double phi = 2.0 * M_PI * j / grid.phi_steps;
      values(i, j) = eval(r * std::cos(phi), r * std::sin(phi));
    }
  });
  return values;
}

double thermal_wigner(double mu_g, double r) {
  if (!(mu_g > 0.0) || mu_g > 1.0 + 1e-12)
    throw InvalidInput("thermal_wigner: mu_G outside (0, 1]");
  if (r < 0.0) throw InvalidInput("thermal_wigner: negative radius");
  return mu_g / M_PI * std::exp(-r * r * mu_g);
}

double gaussian_wigner(const Vector2& d, const Matrix2& gamma, double x,
                       double p) {
  const double det = gamma(0, 0) * gamma(1, 1) - gamma(0, 1) * gamma(1, 0);
  if (!(det > 0.0))
    throw InvalidInput("gaussian_wigner: singular covariance matrix");
  const double dx = x - d[0], dp = p - d[1];
  const double quad = (gamma(1, 1) * dx * dx - 2.0 * gamma(0, 1) * dx * dp +
                       gamma(0, 0) * dp * dp) /
                      det;
  return std::exp(-quad) / (M_PI * std::sqrt(det));
}

double integrate(const RealMatrix& values, const GridSpec& grid) {
  RealVector wx = RealVector::Ones(grid.x_steps);
  RealVector wp = RealVector::Ones(grid.p_steps);
  wx(0) = wx(grid.x_steps - 1) = 0.5;
  wp(0) = wp(grid.p_steps - 1) = 0.5;
  return grid.dx() * grid.dp() * wx.dot(values * wp);
}

double overlap_quadrature(const RealMatrix& a, const GridSpec& spec_a,
                          const RealMatrix& b, const GridSpec& spec_b) {
  if (!(spec_a == spec_b))
    throw GridMismatch("overlap_quadrature: grids differ");
  return 2.0 * M_PI * integrate(a.cwiseProduct(b), spec_a);
}

namespace {

template <class F>
double golden_min(F&& f, double lo, double hi, double* arg) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  const double xm = 0.5 * (a + b);
  if (arg) *arg = xm;
  return f(xm);
}

}  // namespace

WignerMin min_wigner(const FockDensityMatrix& rho, const GridSpec& grid) {
  const Evaluator eval(rho);
  int bi = 0, bj = 0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> row_min(grid.x_steps);
  std::vector<int> row_arg(grid.x_steps);
  parallel_for(grid.x_steps, [&](int i) {
    const double x = grid.x(i);
    double m = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int j = 0; j < grid.p_steps; ++j) {
      const double v = eval(x, grid.p(j));
      if (v < m) {
        m = v;
        arg = j;
      }
    }
    row_min[i] = m;
    row_arg[i] = arg;
  });
  for (int i = 0; i < grid.x_steps; ++i)
    if (row_min[i] < best) {
      best = row_min[i];
      bi = i;
      bj = row_arg[i];
    }

  // refine by alternating golden-section line minimizations
  double x = grid.x(bi), p = grid.p(bj);
  const double hx = 2.0 * grid.dx(), hp = 2.0 * grid.dp();
  double refined = best;
  for (int sweep = 0; sweep < 3; ++sweep) {
    golden_min([&](double t) { return eval(t, p); }, x - hx, x + hx, &x);
    refined = golden_min([&](double t) { return eval(x, t); }, p - hp, p + hp,
                         &p);
  }
  WignerMin out;
  if (refined <= best) {
    out.value = refined;
    out.location = Vector2(x, p);
  } else {
    out.value = best;
    out.location = Vector2(grid.x(bi), grid.p(bj));
  }
  out.nonnegative = out.value >= -tol::wigner_positive;
  return out;
}

WignerGrid wigner_grid(const FockDensityMatrix& rho, const GridSpec& grid) {
  WignerGrid out;
  out.spec = grid;
  out.values = wigner_eval(rho, grid);
  const WignerMin m = min_wigner(rho, grid);
  out.min_value = m.value;
  out.min_location = m.location;
  return out;
}

}  // namespace ngb
