#include "longwave/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "longwave/error.hpp"

namespace longwave {

namespace {

// Process-wide FFTW plan cache. Plan creation is not thread-safe, execution
// on distinct arrays is; plans use FFTW_UNALIGNED so they run on any buffer.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(const Grid& grid, int sign) {
    const Key key{grid.rank(), grid.points(0), grid.rank() == 3 ? grid.points(1) : 1,
                  grid.rank() == 3 ? grid.points(2) : 1, sign};
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::vector<cplx> scratch(grid.size());
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = nullptr;
    if (grid.rank() == 1) {
      plan = fftw_plan_dft_1d(grid.points(0), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    } else {
      plan = fftw_plan_dft_3d(grid.points(0), grid.points(1), grid.points(2), buf, buf, sign,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    if (plan == nullptr) throw physics_error("fft: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  using Key = std::tuple<int, int, int, int, int>;
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [k, p] : plans_) fftw_destroy_plan(p);
  }
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

std::vector<cplx> transform(const Grid& grid, const std::vector<cplx>& in, int sign) {
  std::vector<cplx> out(in);
  fftw_plan plan = PlanCache::instance().get(grid, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, buf, buf);
  return out;
}

// Applies fn(modes, kx, ky, kz, flat_index) over mode space. kodd are the
// first-derivative wavenumbers (Nyquist zeroed); keven keep the Nyquist.
template <class Fn>
void for_each_mode(const Grid& grid, Fn&& fn) {
  if (grid.rank() == 1) {
    const auto ks = grid.wavenumbers(0);
    for (int i = 0; i < grid.points(0); ++i)
      fn(static_cast<std::size_t>(i), ks[static_cast<std::size_t>(i)], 0.0, 0.0,
         grid.is_nyquist(0, i), false, false);
    return;
  }
  const auto kx = grid.wavenumbers(0);
  const auto ky = grid.wavenumbers(1);
  const auto kz = grid.wavenumbers(2);
  std::size_t idx = 0;
  for (int i = 0; i < grid.points(0); ++i)
    for (int j = 0; j < grid.points(1); ++j)
      for (int k = 0; k < grid.points(2); ++k)
        fn(idx++, kx[static_cast<std::size_t>(i)], ky[static_cast<std::size_t>(j)],
           kz[static_cast<std::size_t>(k)], grid.is_nyquist(0, i), grid.is_nyquist(1, j),
           grid.is_nyquist(2, k));
}

}  // namespace

std::vector<cplx> fft_forward(const ScalarField& f) {
  return transform(f.grid(), f.values(), FFTW_FORWARD);
}

ScalarField fft_inverse(const Grid& grid, const std::vector<cplx>& modes) {
  if (modes.size() != grid.size()) throw physics_error("fft_inverse: mode count mismatch");
  std::vector<cplx> out = transform(grid, modes, FFTW_BACKWARD);
  const double inv_n = 1.0 / static_cast<double>(grid.size());
  for (auto& v : out) v *= inv_n;
  return ScalarField(grid, std::move(out));
}

double mode_power(const std::vector<cplx>& modes) {
  double acc = 0.0;
  for (const auto& m : modes) acc += std::norm(m);
  const double n = static_cast<double>(modes.size());
  return acc / (n * n);
}

VectorField gradient(const ScalarField& f) {
  const Grid& g = f.grid();
  std::vector<cplx> hat = fft_forward(f);
  std::array<std::vector<cplx>, 3> comps;
  for (auto& c : comps) c.assign(g.size(), cplx{0.0, 0.0});
  const cplx I{0.0, 1.0};
  std::vector<cplx>& gx = comps[0];
  std::vector<cplx>& gy = comps[1];
  std::vector<cplx>& gz = comps[2];
  for_each_mode(g, [&](std::size_t idx, double kx, double ky, double kz, bool nx, bool ny,
                       bool nz) {
    gx[idx] = nx ? cplx{0.0, 0.0} : I * kx * hat[idx];
    gy[idx] = ny ? cplx{0.0, 0.0} : I * ky * hat[idx];
    gz[idx] = nz ? cplx{0.0, 0.0} : I * kz * hat[idx];
  });
  ScalarField x = fft_inverse(g, gx);
  ScalarField y = g.rank() == 3 ? fft_inverse(g, gy) : ScalarField::zero(g);
  ScalarField z = g.rank() == 3 ? fft_inverse(g, gz) : ScalarField::zero(g);
  return VectorField(g, std::move(x), std::move(y), std::move(z));
}

ScalarField divergence(const VectorField& v) {
  const Grid& g = v.grid();
  const cplx I{0.0, 1.0};
  std::vector<cplx> hx = transform(g, v.component(0), FFTW_FORWARD);
  std::vector<cplx> acc(g.size(), cplx{0.0, 0.0});
  for_each_mode(g, [&](std::size_t idx, double kx, double, double, bool nx, bool, bool) {
    acc[idx] = nx ? cplx{0.0, 0.0} : I * kx * hx[idx];
  });
  if (g.rank() == 3) {
    std::vector<cplx> hy = transform(g, v.component(1), FFTW_FORWARD);
    std::vector<cplx> hz = transform(g, v.component(2), FFTW_FORWARD);
    for_each_mode(g, [&](std::size_t idx, double, double ky, double kz, bool, bool ny, bool nz) {
      if (!ny) acc[idx] += I * ky * hy[idx];
      if (!nz) acc[idx] += I * kz * hz[idx];
    });
  }
  return fft_inverse(g, acc);
}

VectorField curl(const VectorField& v) {
  const Grid& g = v.grid();
  if (g.rank() != 3)
    throw physics_error("curl: requires a rank-3 grid (rank-1 curl is rejected)");
  const cplx I{0.0, 1.0};
  std::vector<cplx> hx = transform(g, v.component(0), FFTW_FORWARD);
  std::vector<cplx> hy = transform(g, v.component(1), FFTW_FORWARD);
  std::vector<cplx> hz = transform(g, v.component(2), FFTW_FORWARD);
  std::array<std::vector<cplx>, 3> out;
  for (auto& c : out) c.assign(g.size(), cplx{0.0, 0.0});
  for_each_mode(g, [&](std::size_t idx, double kx, double ky, double kz, bool nx, bool ny,
                       bool nz) {
    const cplx dx = nx ? cplx{0.0, 0.0} : I * kx;
    const cplx dy = ny ? cplx{0.0, 0.0} : I * ky;
    const cplx dz = nz ? cplx{0.0, 0.0} : I * kz;
    out[0][idx] = dy * hz[idx] - dz * hy[idx];
    out[1][idx] = dz * hx[idx] - dx * hz[idx];
    out[2][idx] = dx * hy[idx] - dy * hx[idx];
  });
  return VectorField(g, fft_inverse(g, out[0]), fft_inverse(g, out[1]), fft_inverse(g, out[2]));
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  std::vector<cplx> hat = fft_forward(f);
  // Even-order derivative: the Nyquist mode keeps k = -pi/dx.
  for_each_mode(g, [&](std::size_t idx, double kx, double ky, double kz, bool, bool, bool) {
    hat[idx] *= -(kx * kx + ky * ky + kz * kz);
  });
  return fft_inverse(g, hat);
}

VectorField laplacian(const VectorField& v) {
  return VectorField(v.grid(), laplacian(v.component_field(0)), laplacian(v.component_field(1)),
                     laplacian(v.component_field(2)));
}

}  // namespace longwave
