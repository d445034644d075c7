#pragma once

// Concrete Dolbeault calculus on the projective line: harmonic (0,1)-forms
// with values in O(-k), the endomorphism-valued quadratic maps they induce,
// fiber integration against the Fubini-Study volume, and residual checks
// for the contraction identities used by the reduction.
//
// Geometry conventions (chart 0 coordinate z, chart 1 coordinate w = 1/z):
//   * FS form: omega = i g dz^dbar{z}, g = 1/(1+|z|^2)^2, Vol = 2 pi.
//   * O(-k) metric factor h = (1+|z|^2)^k in either chart.
//   * Lambda(dzbar ^ dz) = +i/g, so i Lambda(eta ^ eta*) = -(h/g)|f|^2 <= 0
//     for eta = f dzbar.
// A (0,1)-form is kept as its coefficient function per chart; the basis
// below has closed-form coefficients in both charts (no interpolation), so
// values and derivatives are available anywhere.

#include <flagvortex/numeric.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace flagvortex {

using Complex = std::complex<double>;

namespace fibdetail {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

inline double bump_half(double s) { return s <= 0 ? 0.0 : std::exp(-1.0 / s); }

// C-infinity step: 0 for s <= 0, 1 for s >= 1.
inline double smooth_step(double s) {
  double a = bump_half(s), b = bump_half(1.0 - s);
  return a / (a + b);
}

}  // namespace fibdetail

// Two-chart quadrature for the round sphere.  Each chart covers the disk
// |coordinate| <= r_outer with a smooth radial cutoff c(r) satisfying
// c(r) + c(1/r) = 1, so the two charts form a partition of unity.  Node
// weights absorb the cutoff and the FS volume density.
struct FiberChart {
  int k = 2;          // twist of O(-k)
  int radial = 128;   // nodes per direction per chart
  int angular = 128;

  struct Node {
    double x, y;     // chart coordinate
    double weight;   // dvol * cutoff * quadrature weight
    int chart;       // 0 or 1
  };
  std::vector<Node> nodes;
  double volume = 0;  // sum of weights; exact value is 2 pi

  static constexpr double r_inner = 0.8;
  static constexpr double r_outer = 1.25;

  static double cutoff(double r) {
    if (r <= r_inner) return 1.0;
    if (r >= r_outer) return 0.0;
    double tau = std::log(r) / std::log(r_outer);  // in (-1, 1)
    return fibdetail::smooth_step((1.0 - tau) / 2.0);
  }

  static double fs_density(double r2) {
    double t = 1.0 + r2;
    return 1.0 / (t * t);
  }
};

inline FiberChart make_chart(int k, int n = 128) {
  if (k < 0) throw std::invalid_argument("twist must be nonnegative");
  if (n < 8) throw std::invalid_argument("quadrature needs at least 8 nodes per direction");
  FiberChart c;
  c.k = k;
  c.radial = c.angular = n;
  // Composite radial rule split at the cutoff shoulder: the integrand is
  // analytic on [0, r_inner] and smooth-to-all-orders at the joins, which
  // restores spectral accuracy that a single panel over the bump loses.
  std::vector<double> gx, gw, radius, rweight;
  fibdetail::gauss_legendre((n + 1) / 2, gx, gw);
  auto add_panel = [&](double a, double b) {
    for (size_t i = 0; i < gx.size(); ++i) {
      radius.push_back(0.5 * (b - a) * (gx[i] + 1.0) + a);
      rweight.push_back(0.5 * (b - a) * gw[i]);
    }
  };
  add_panel(0.0, FiberChart::r_inner);
  add_panel(FiberChart::r_inner, FiberChart::r_outer);
  c.nodes.reserve(2 * radius.size() * n);
  for (int chart = 0; chart < 2; ++chart) {
    for (size_t i = 0; i < radius.size(); ++i) {
      double r = radius[i];
      double ring = rweight[i] * r * FiberChart::cutoff(r) * 2.0 *
                    FiberChart::fs_density(r * r) * (2.0 * M_PI / n);
      for (int j = 0; j < n; ++j) {
        double theta = 2.0 * M_PI * j / n;
        c.nodes.push_back({r * std::cos(theta), r * std::sin(theta), ring, chart});
      }
    }
  }
  c.volume = 0;
  for (const auto& nd : c.nodes) c.volume += nd.weight;
  return c;
}

// Scalar field on the sphere given by closed-form chart evaluations.
using FiberField = std::function<Complex(double x, double y, int chart)>;

inline Complex eval_field(const FiberField& f, const FiberChart::Node& nd) {
  return f(nd.x, nd.y, nd.chart);
}

// (1/Vol) * integral of a sampled scalar (= normalized trace for rank one).
inline Complex fiber_integrate(const FiberChart& c, const std::vector<Complex>& samples) {
  if (samples.size() != c.nodes.size())
    throw std::invalid_argument("sample count does not match the chart");
  Complex acc = 0;
  for (size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].real()) || !std::isfinite(samples[i].imag()))
      throw std::invalid_argument("non-finite sample in fiber integral");
    acc += c.nodes[i].weight * samples[i];
  }
  return acc / c.volume;
}

inline Complex fiber_integrate(const FiberChart& c, const FiberField& f) {
  std::vector<Complex> samples;
  samples.reserve(c.nodes.size());
  for (const auto& nd : c.nodes) samples.push_back(eval_field(f, nd));
  return fiber_integrate(c, samples);
}

// Harmonic (0,1)-forms with values in O(-k), represented by coefficient
// fields and orthonormalized in the pairing <a, b> = (2/Vol) int h a bbar.
struct HarmonicBasis {
  int k = 0;
  std::vector<FiberField> forms;                 // k-1 entries (empty for k < 2)
  std::vector<std::vector<Complex>> gram;        // recomputed after orthonormalization
  double gram_offdiagonal = 0;                   // max |gram - Id| entry

  int count() const { return static_cast<int>(forms.size()); }
};

namespace fibdetail {

// Candidate j (1-based): chart 0 coefficient conj(z)^(j-1) (1+|z|^2)^(-k),
// chart 1 coefficient -conj(w)^(k-1-j) (1+|w|^2)^(-k); smooth for
// 1 <= j <= k-1 and related by the O(-k) frame change and dzbar pullback.
inline FiberField candidate_form(int k, int j) {
  return [k, j](double x, double y, int chart) -> Complex {
    Complex zbar(x, -y);
    double r2 = x * x + y * y;
    double weight = std::pow(1.0 + r2, -k);
    if (chart == 0) return std::pow(zbar, j - 1) * weight;
    return -std::pow(zbar, k - 1 - j) * weight;
  };
}

inline double metric_h(double r2, int k) { return std::pow(1.0 + r2, k); }

}  // namespace fibdetail

// lambda1(a, b) = (h/g) a bbar as a field; for line bundles lambda2 agrees
// pointwise (composition order is immaterial for scalars).
inline FiberField lambda1_field(int k, const FiberField& a, const FiberField& b) {
  return [k, a, b](double x, double y, int chart) -> Complex {
    double r2 = x * x + y * y;
    double hg = fibdetail::metric_h(r2, k) / FiberChart::fs_density(r2);
    return hg * a(x, y, chart) * std::conj(b(x, y, chart));
  };
}

inline FiberField lambda2_field(int k, const FiberField& a, const FiberField& b) {
  return [k, a, b](double x, double y, int chart) -> Complex {
    double r2 = x * x + y * y;
    double hg = fibdetail::metric_h(r2, k) / FiberChart::fs_density(r2);
    return hg * std::conj(b(x, y, chart)) * a(x, y, chart);
  };
}

inline HarmonicBasis build_harmonic_basis(const FiberChart& chart) {
  HarmonicBasis basis;
  basis.k = chart.k;
  if (chart.k < 2) return basis;  // H^{0,1} vanishes for k < 2
  const int m = chart.k - 1;

  std::vector<FiberField> cand;
  for (int j = 1; j <= m; ++j) cand.push_back(fibdetail::candidate_form(chart.k, j));

  // Candidate Gram under the fiber-averaged pairing, then Gram-Schmidt on
  // coefficient rows (each output form is an explicit combination of the
  // candidates, so evaluation stays linear in the basis size).
  std::vector<std::vector<Complex>> cgram(m, std::vector<Complex>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      cgram[i][j] = fiber_integrate(chart, lambda1_field(chart.k, cand[i], cand[j]));

  auto pair_rows = [&](const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex acc = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) acc += a[i] * std::conj(b[j]) * cgram[i][j];
    return acc;
  };

  std::vector<std::vector<Complex>> rows;
  for (int j = 0; j < m; ++j) {
    std::vector<Complex> row(m, Complex(0));
    row[j] = 1;
    for (const auto& prev : rows) {
      Complex c = pair_rows(row, prev);
      for (int i = 0; i < m; ++i) row[i] -= c * prev[i];
    }
    double norm2 = pair_rows(row, row).real();
    if (!(norm2 > 0)) throw std::runtime_error("degenerate candidate in basis build");
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : row) c *= inv;
    rows.push_back(std::move(row));
  }

  for (int j = 0; j < m; ++j) {
    basis.forms.push_back(
        [row = rows[j], cand](double x, double y, int ch) -> Complex {
          Complex v = 0;
          for (size_t i = 0; i < cand.size(); ++i)
            if (row[i] != Complex(0)) v += row[i] * cand[i](x, y, ch);
          return v;
        });
  }

  basis.gram.assign(m, std::vector<Complex>(m));
  basis.gram_offdiagonal = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      basis.gram[i][j] =
          fiber_integrate(chart, lambda1_field(chart.k, basis.forms[i], basis.forms[j]));
      double dev = std::abs(basis.gram[i][j] - (i == j ? 1.0 : 0.0));
      basis.gram_offdiagonal = std::max(basis.gram_offdiagonal, dev);
    }
  return basis;
}

// Adjoint-Dolbeault residual of eta = f dzbar: dbar* eta = -(1/(gh)) d_z(h f),
// computed by fourth-order central differences in the node's own chart.
// Exactly zero iff h f is antiholomorphic.
inline double dbar_star_residual(const FiberChart& chart, const FiberField& f) {
  const int k = chart.k;
  auto hf = [&](double x, double y, int ch) -> Complex {
    return fibdetail::metric_h(x * x + y * y, k) * f(x, y, ch);
  };
  const double step = 1e-4;
  auto d_z = [&](double x, double y, int ch) -> Complex {
    auto dx = (-hf(x + 2 * step, y, ch) + 8.0 * hf(x + step, y, ch) -
               8.0 * hf(x - step, y, ch) + hf(x - 2 * step, y, ch)) /
              (12.0 * step);
    auto dy = (-hf(x, y + 2 * step, ch) + 8.0 * hf(x, y + step, ch) -
               8.0 * hf(x, y - step, ch) + hf(x, y - 2 * step, ch)) /
              (12.0 * step);
    return 0.5 * (dx - Complex(0, 1) * dy);
  };
  double worst = 0;
  for (const auto& nd : chart.nodes) {
    double r2 = nd.x * nd.x + nd.y * nd.y;
    double gh = FiberChart::fs_density(r2) * fibdetail::metric_h(r2, k);
    worst = std::max(worst, std::abs(d_z(nd.x, nd.y, nd.chart)) / gh);
  }
  return worst;
}

inline double max_harmonicity_residual(const FiberChart& chart, const HarmonicBasis& basis) {
  double worst = 0;
  for (const auto& f : basis.forms)
    worst = std::max(worst, dbar_star_residual(chart, f));
  return worst;
}

// beta-bar = sum_j phi_j eta_j; its contraction density
// i Lambda_sigma(betabar ^ betabar*) = -(1/sigma)(h/g)|sum phi_j f_j|^2.
inline std::vector<Complex> contraction_density(const FiberChart& chart,
                                                const HarmonicBasis& basis,
                                                const std::vector<Complex>& phi,
                                                double sigma) {
  if (phi.size() != basis.forms.size())
    throw std::invalid_argument("need one coefficient per basis form");
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  std::vector<Complex> out(chart.nodes.size(), Complex(0));
  for (size_t n = 0; n < chart.nodes.size(); ++n) {
    const auto& nd = chart.nodes[n];
    Complex F = 0;
    for (size_t j = 0; j < phi.size(); ++j) F += phi[j] * eval_field(basis.forms[j], nd);
    double r2 = nd.x * nd.x + nd.y * nd.y;
    double hg = fibdetail::metric_h(r2, chart.k) / FiberChart::fs_density(r2);
    out[n] = -(hg / sigma) * std::norm(F);
  }
  return out;
}

// Perturbation terms: the contraction density minus its fiber average
// times the identity, per endomorphism block.  Their fiber integrals
// vanish by construction; the samples carry the pointwise profile.
struct PerturbationTerms {
  std::vector<Complex> d1, d2;
  Complex d1_integral, d2_integral;
};

inline PerturbationTerms perturbation_terms(const FiberChart& chart,
                                            const HarmonicBasis& basis,
                                            const std::vector<Complex>& phi, double sigma) {
  PerturbationTerms out;
  auto density = contraction_density(chart, basis, phi, sigma);
  Complex avg = fiber_integrate(chart, density);
  out.d1.resize(density.size());
  out.d2.resize(density.size());
  for (size_t n = 0; n < density.size(); ++n) {
    out.d1[n] = density[n] - avg;
    out.d2[n] = -(density[n] - avg);  // opposite block carries the opposite sign
  }
  out.d1_integral = fiber_integrate(chart, out.d1);
  out.d2_integral = fiber_integrate(chart, out.d2);
  return out;
}

struct ReductionIdentityReport {
  double pointwise_residual = 0;  // two contraction routes on every node
  double phi_residual = 0;        // fiber integrals vs coefficient sums
  double min_density = 0;         // min of -i Lambda_sigma(...) (must be >= 0)
  double phi1 = 0, phi2 = 0;      // integrated section quadratics
};

inline ReductionIdentityReport verify_reduction_identity(const FiberChart& chart,
                                                         const HarmonicBasis& basis,
                                                         const std::vector<Complex>& phi,
                                                         double sigma) {
  ReductionIdentityReport rep;
  auto direct = contraction_density(chart, basis, phi, sigma);

  // Independent route: expand through the lambda1 fields pairwise.
  const int m = basis.count();
  std::vector<std::vector<Complex>> lam(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto field = lambda1_field(chart.k, basis.forms[i], basis.forms[j]);
      auto& samples = lam[i * m + j];
      samples.reserve(chart.nodes.size());
      for (const auto& nd : chart.nodes) samples.push_back(eval_field(field, nd));
    }
  double worst = 0;
  rep.min_density = std::numeric_limits<double>::infinity();
  for (size_t n = 0; n < chart.nodes.size(); ++n) {
    Complex expansion = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        expansion += phi[i] * std::conj(phi[j]) * lam[i * m + j][n];
    worst = std::max(worst, std::abs(direct[n] + expansion / sigma));
    rep.min_density = std::min(rep.min_density, -direct[n].real());
  }
  rep.pointwise_residual = worst;

  double coeff_sum = 0;
  for (const auto& p : phi) coeff_sum += std::norm(p);
  rep.phi1 = -sigma * fiber_integrate(chart, direct).real();
  rep.phi2 = rep.phi1;  // scalar blocks share the trace densities
  rep.phi_residual = std::max(std::abs(rep.phi1 - coeff_sum), std::abs(rep.phi2 - coeff_sum));
  return rep;
}

// End-to-end fiber verification driver used by the CLI and the tests.
struct FiberVerification {
  int k = 0;
  double sigma = 1;
  int basis_count = 0;
  double volume_error = 0;
  double harmonicity = 0;
  double gram_offdiagonal = 0;
  double pointwise_residual = 0;
  double phi_residual = 0;
  double perturbation_integral = 0;
  double min_density = 0;
  double phi1 = 0;
};

inline FiberVerification verify_fiber(int k, double sigma, int n, std::uint64_t seed) {
  auto chart = make_chart(k, n);
  auto basis = build_harmonic_basis(chart);
  FiberVerification v;
  v.k = k;
  v.sigma = sigma;
  v.basis_count = basis.count();
  v.volume_error = std::abs(chart.volume - 2.0 * M_PI);
  v.gram_offdiagonal = basis.gram_offdiagonal;
  v.harmonicity = max_harmonicity_residual(chart, basis);
  if (basis.count() == 0) return v;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> phi(basis.count());
  for (auto& p : phi) p = Complex(gauss(rng), gauss(rng));

  auto rep = verify_reduction_identity(chart, basis, phi, sigma);
  v.pointwise_residual = rep.pointwise_residual;
  v.phi_residual = rep.phi_residual;
  v.min_density = rep.min_density;
  v.phi1 = rep.phi1;

  auto pert = perturbation_terms(chart, basis, phi, sigma);
  v.perturbation_integral = std::max(std::abs(pert.d1_integral), std::abs(pert.d2_integral));
  return v;
}

}  // namespace flagvortex
