#include "normdirac/fourier.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace normdirac {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~PlanPair() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

// FFTW planning is not thread-safe; execution with new-array functions is.
std::mutex plan_mutex;

const PlanPair& plans_for(int n) {
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;

  const std::size_t total = 4 * static_cast<std::size_t>(n) * n * n;
  auto* scratch = fftw_alloc_complex(total);
  const int dims[3] = {n, n, n};
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  auto pair = std::make_unique<PlanPair>();
  pair->fwd = fftw_plan_many_dft(3, dims, 4, scratch, nullptr, 4, 1, scratch, nullptr, 4, 1,
                                 FFTW_FORWARD, flags);
  pair->bwd = fftw_plan_many_dft(3, dims, 4, scratch, nullptr, 4, 1, scratch, nullptr, 4, 1,
                                 FFTW_BACKWARD, flags);
  fftw_free(scratch);
  return *cache.emplace(n, std::move(pair)).first->second;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Spectrum forward(const SpinorField& u) {
  const Grid& g = u.grid();
  Spectrum out(g, std::vector<cplx>(u.values().begin(), u.values().end()));
  fftw_execute_dft(plans_for(g.n_per_axis()).fwd, as_fftw(out.values().data()),
                   as_fftw(out.values().data()));
  const double n3 = static_cast<double>(g.points());
  out *= std::sqrt(g.cell_volume() / n3);
  return out;
}

SpinorField inverse(const Spectrum& c) {
  const Grid& g = c.grid();
  SpinorField out(g, std::vector<cplx>(c.values().begin(), c.values().end()));
  fftw_execute_dft(plans_for(g.n_per_axis()).bwd, as_fftw(out.values().data()),
                   as_fftw(out.values().data()));
  const double n3 = static_cast<double>(g.points());
  out *= 1.0 / std::sqrt(g.cell_volume() * n3);
  return out;
}

}  // namespace normdirac
