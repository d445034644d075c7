#pragma once

// Flat rectangular torus with a periodic N1 x N2 grid: five-point Laplacian,
// exact discrete integrals, and an FFT Poisson solver whose symbol matches
// the stencil (so solve + laplacian round-trips to machine precision).

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace flagvortex {

struct TorusGrid {
  int nx = 0, ny = 0;
  double lx = 1, ly = 1;
  double hx = 0, hy = 0;
  double area = 0;

  int size() const { return nx * ny; }
  int idx(int i, int j) const {
    i %= nx;
    if (i < 0) i += nx;
    j %= ny;
    if (j < 0) j += ny;
    return i * ny + j;
  }
  double x_of(int i) const { return i * hx; }
  double y_of(int j) const { return j * hy; }

  double integrate(const std::vector<double>& f) const {
    double acc = 0;
    for (double v : f) acc += v;
    return acc * hx * hy;
  }
  double mean(const std::vector<double>& f) const { return integrate(f) / area; }

  void laplacian(const std::vector<double>& in, std::vector<double>& out) const {
    out.resize(in.size());
    double cx = 1.0 / (hx * hx), cy = 1.0 / (hy * hy);
    for (int i = 0; i < nx; ++i) {
      int ip = (i + 1 == nx) ? 0 : i + 1;
      int im = (i == 0) ? nx - 1 : i - 1;
      for (int j = 0; j < ny; ++j) {
        int jp = (j + 1 == ny) ? 0 : j + 1;
        int jm = (j == 0) ? ny - 1 : j - 1;
        int c = i * ny + j;
        out[c] = cx * (in[ip * ny + j] + in[im * ny + j] - 2.0 * in[c]) +
                 cy * (in[i * ny + jp] + in[i * ny + jm] - 2.0 * in[c]);
      }
    }
  }
};

inline TorusGrid make_grid(int nx, int ny, double lx = 1.0, double ly = 1.0) {
  if (nx < 4 || ny < 4) throw std::invalid_argument("grid needs at least 4 nodes per period");
  if (!(lx > 0) || !(ly > 0)) throw std::invalid_argument("torus periods must be positive");
  TorusGrid g;
  g.nx = nx;
  g.ny = ny;
  g.lx = lx;
  g.ly = ly;
  g.hx = lx / nx;
  g.hy = ly / ny;
  g.area = lx * ly;
  return g;
}

inline TorusGrid make_grid(int n, double lx = 1.0, double ly = 1.0) {
  return make_grid(n, n, lx, ly);
}

// Solves the discrete Poisson equation (five-point) Delta u = f - mean(f)
// on the periodic grid, returning the mean-free solution.  Plans are
// created with FFTW_ESTIMATE for reproducible behavior; instances are not
// shareable across threads.
class PoissonSolver {
 public:
  explicit PoissonSolver(const TorusGrid& grid) : grid_(grid) {
    const int nx = grid.nx, ny = grid.ny;
    real_ = fftw_alloc_real(static_cast<size_t>(nx) * ny);
    spec_ = fftw_alloc_complex(static_cast<size_t>(nx) * (ny / 2 + 1));
    {
      // The planner is not thread safe (plan execution is); concurrent
      // sweep workers each build a solver of their own.
      std::lock_guard<std::mutex> lock(planner_mutex());
      fwd_ = fftw_plan_dft_r2c_2d(nx, ny, real_, spec_, FFTW_ESTIMATE);
      bwd_ = fftw_plan_dft_c2r_2d(nx, ny, spec_, real_, FFTW_ESTIMATE);
    }
    symbol_.resize(static_cast<size_t>(nx) * (ny / 2 + 1));
    for (int i = 0; i < nx; ++i) {
      double sx = std::sin(M_PI * i / nx);
      for (int j = 0; j <= ny / 2; ++j) {
        double sy = std::sin(M_PI * j / ny);
        symbol_[static_cast<size_t>(i) * (ny / 2 + 1) + j] =
            -4.0 * (sx * sx / (grid.hx * grid.hx) + sy * sy / (grid.hy * grid.hy));
      }
    }
  }
  PoissonSolver(const PoissonSolver&) = delete;
  PoissonSolver& operator=(const PoissonSolver&) = delete;
  ~PoissonSolver() {
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      fftw_destroy_plan(fwd_);
      fftw_destroy_plan(bwd_);
    }
    fftw_free(real_);
    fftw_free(spec_);
  }

  std::vector<double> solve(const std::vector<double>& rhs) {
    return filtered(rhs, [this](size_t m) { return m == 0 ? 0.0 : 1.0 / symbol_[m]; });
  }

  // (shift - Delta)^{-1} for shift > 0; useful as a preconditioner.
  std::vector<double> shifted_inverse(const std::vector<double>& rhs, double shift,
                                      double scale = 1.0) {
    if (!(shift > 0)) throw std::invalid_argument("shift must be positive");
    return filtered(rhs, [this, shift, scale](size_t m) {
      return 1.0 / (shift - scale * symbol_[m]);
    });
  }

 private:
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }

  template <class Filter>
  std::vector<double> filtered(const std::vector<double>& rhs, Filter&& gain) {
    const int nx = grid_.nx, ny = grid_.ny;
    if (static_cast<int>(rhs.size()) != grid_.size())
      throw std::invalid_argument("rhs size does not match the grid");
    for (int m = 0; m < grid_.size(); ++m) real_[m] = rhs[m];
    fftw_execute(fwd_);
    const size_t nspec = static_cast<size_t>(nx) * (ny / 2 + 1);
    const double norm = 1.0 / (static_cast<double>(nx) * ny);
    for (size_t m = 0; m < nspec; ++m) {
      double g = gain(m) * norm;
      spec_[m][0] *= g;
      spec_[m][1] *= g;
    }
    fftw_execute(bwd_);
    return std::vector<double>(real_, real_ + grid_.size());
  }

  TorusGrid grid_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan fwd_, bwd_;
  std::vector<double> symbol_;
};

}  // namespace flagvortex
