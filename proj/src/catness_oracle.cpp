#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <string>

#include "dpbulk/catness.hpp"
#include "dpbulk/constants.hpp"
#include "dpbulk/errors.hpp"

namespace dpbulk {

namespace {

// Punctured trapezoidal sum of 1/|n| over Z^3 \ {0} needs this origin weight
// (minus the Epstein zeta value of the simple cubic lattice at s = 1/2).
constexpr double kCubicLatticeOriginWeight = 2.8372974794806;

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

struct PlanDeleter {
  void operator()(fftw_plan p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

std::size_t next_smooth_size(std::size_t n) {
  for (;; ++n) {
    std::size_t m = n;
    for (std::size_t f : {2u, 3u, 5u, 7u})
      while (m % f == 0) m /= f;
    if (m == 1) return n;
  }
}

struct GridGeometry {
  std::array<double, 3> lo{};          // sigma units
  double h = 0.0;                      // sigma units
  std::array<std::size_t, 3> n{};      // sampled points per axis
  std::array<std::size_t, 3> p{};      // padded FFT extent per axis
  std::size_t p_total() const { return p[0] * p[1] * p[2]; }
  std::size_t half_total() const { return p[0] * p[1] * (p[2] / 2 + 1); }
};

GridGeometry make_geometry(const MassConfiguration& f1, const MassConfiguration& f2,
                           const QuadratureGrid& grid) {
  const double sigma = f1.sigma;
  if (!(grid.spacing > 0.0) || grid.spacing > sigma / 3.0 * (1.0 + 1e-12))
    throw ValidationError("quadrature grid too coarse: spacing must be in (0, sigma/3]");
  if (grid.margin < 6.0 * sigma * (1.0 - 1e-12))
    throw ValidationError("quadrature grid margin must be at least 6 sigma");

  GridGeometry g;
  g.h = grid.spacing / sigma;
  std::array<double, 3> lo, hi;
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  for (const auto* cfg : {&f1, &f2})
    for (const auto& pt : cfg->points)
      for (int i = 0; i < 3; ++i) {
        lo[i] = std::min(lo[i], pt.r[i] / sigma);
        hi[i] = std::max(hi[i], pt.r[i] / sigma);
      }
  const double margin = grid.margin / sigma;
  for (int i = 0; i < 3; ++i) {
    g.lo[i] = lo[i] - margin;
    const double extent = hi[i] + margin - g.lo[i];
    g.n[i] = static_cast<std::size_t>(std::ceil(extent / g.h)) + 1;
    g.p[i] = next_smooth_size(2 * g.n[i] - 1);
  }
  const double total = static_cast<double>(g.p[0]) * g.p[1] * g.p[2];
  if (total > static_cast<double>(grid.max_points))
    throw ValidationError("quadrature grid needs " + std::to_string(total) +
                          " points, above the configured limit");
  return g;
}

// Smeared density (mass per sigma^3) of cfg on the unpadded corner of `out`.
void sample_density(const MassConfiguration& cfg, const GridGeometry& g, double* out) {
  std::fill(out, out + g.p_total(), 0.0);
  const double norm = std::pow(2.0 * pi, -1.5);
  std::array<std::vector<double>, 3> e;
  for (const auto& pt : cfg.points) {
    for (int i = 0; i < 3; ++i) {
      e[i].resize(g.n[i]);
      const double c = pt.r[i] / cfg.sigma;
      for (std::size_t k = 0; k < g.n[i]; ++k) {
        const double x = g.lo[i] + g.h * static_cast<double>(k) - c;
        e[i][k] = std::exp(-0.5 * x * x);
      }
    }
    // Mass is carried in grams; the -G/sigma prefactor is applied at the end.
    const double w = norm * pt.m;
    for (std::size_t i = 0; i < g.n[0]; ++i)
      for (std::size_t j = 0; j < g.n[1]; ++j) {
        const double wij = w * e[0][i] * e[1][j];
        double* row = out + (i * g.p[1] + j) * g.p[2];
        for (std::size_t k = 0; k < g.n[2]; ++k) row[k] += wij * e[2][k];
      }
  }
}

void sample_kernel(const GridGeometry& g, double* out) {
  auto wrap = [](std::size_t i, std::size_t p) {
    return i <= p / 2 ? static_cast<double>(i) : static_cast<double>(i) - static_cast<double>(p);
  };
  for (std::size_t i = 0; i < g.p[0]; ++i) {
    const double x = wrap(i, g.p[0]);
    for (std::size_t j = 0; j < g.p[1]; ++j) {
      const double y = wrap(j, g.p[1]);
      double* row = out + (i * g.p[1] + j) * g.p[2];
      for (std::size_t k = 0; k < g.p[2]; ++k) {
        const double z = wrap(k, g.p[2]);
        const double r = std::sqrt(x * x + y * y + z * z);
        row[k] = r == 0.0 ? kCubicLatticeOriginWeight / g.h : 1.0 / (g.h * r);
      }
    }
  }
}

// sum_r a(r) (K * b)(r) via the half spectrum; all spectra share one layout.
double spectral_pairing(const fftw_complex* a, const fftw_complex* kernel,
                        const fftw_complex* b, const GridGeometry& g) {
  const std::size_t nz = g.p[2] / 2 + 1;
  double sum = 0.0;
  for (std::size_t ij = 0; ij < g.p[0] * g.p[1]; ++ij)
    for (std::size_t k = 0; k < nz; ++k) {
      const std::size_t idx = ij * nz + k;
      const std::complex<double> ca(a[idx][0], -a[idx][1]);
      const std::complex<double> ck(kernel[idx][0], kernel[idx][1]);
      const std::complex<double> cb(b[idx][0], b[idx][1]);
      const bool self_conjugate = k == 0 || (g.p[2] % 2 == 0 && k == g.p[2] / 2);
      sum += (self_conjugate ? 1.0 : 2.0) * (ca * ck * cb).real();
    }
  return sum / static_cast<double>(g.p_total());
}

}  // namespace

CatnessResult catness_quadrature_oracle(const MassConfiguration& f1,
                                        const MassConfiguration& f2,
                                        const QuadratureGrid& grid) {
  validate(f1);
  validate(f2);
  if (f1.sigma != f2.sigma)
    throw ValidationError("mass configurations have different sigma");
  const GridGeometry g = make_geometry(f1, f2, grid);

  RealBuffer work(static_cast<double*>(fftw_malloc(sizeof(double) * g.p_total())));
  ComplexBuffer kernel_hat(fftw_alloc_complex(g.half_total()));
  ComplexBuffer rho1_hat(fftw_alloc_complex(g.half_total()));
  ComplexBuffer rho2_hat(fftw_alloc_complex(g.half_total()));
  if (!work || !kernel_hat || !rho1_hat || !rho2_hat)
    throw NumericalGuardError("quadrature oracle: allocation failed");

  Plan plan(fftw_plan_dft_r2c_3d(static_cast<int>(g.p[0]), static_cast<int>(g.p[1]),
                                 static_cast<int>(g.p[2]), work.get(), kernel_hat.get(),
                                 FFTW_ESTIMATE));
  sample_kernel(g, work.get());
  fftw_execute_dft_r2c(plan.get(), work.get(), kernel_hat.get());
  sample_density(f1, g, work.get());
  fftw_execute_dft_r2c(plan.get(), work.get(), rho1_hat.get());
  sample_density(f2, g, work.get());
  fftw_execute_dft_r2c(plan.get(), work.get(), rho2_hat.get());

  // Each grid sum carries a factor h^3; densities and kernel are in sigma units.
  const double h3 = g.h * g.h * g.h;
  const double scale = -constants().G / f1.sigma * h3 * h3;

  CatnessResult res;
  res.u11 = scale * spectral_pairing(rho1_hat.get(), kernel_hat.get(), rho1_hat.get(), g);
  res.u22 = scale * spectral_pairing(rho2_hat.get(), kernel_hat.get(), rho2_hat.get(), g);
  res.u12 = scale * spectral_pairing(rho1_hat.get(), kernel_hat.get(), rho2_hat.get(), g);
  res.ell_g_sq = -(res.u11 + res.u22) + 2.0 * res.u12;
  res.tau_g = res.ell_g_sq == 0.0 ? std::numeric_limits<double>::infinity()
                                  : constants().hbar / res.ell_g_sq;
  return res;
}

}  // namespace dpbulk
