#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace vdw::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// The FFTW planner is not thread-safe; execution of an existing plan on new
// arrays is.  Plans are created once per length and never destroyed.
const PlanPair& plans_for(int n) {
  static std::mutex mu;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> a(n), b(n);
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p;
  p.forward = fftw_plan_dft_1d(n, pa, pb, FFTW_FORWARD, flags);
  p.backward = fftw_plan_dft_1d(n, pa, pb, FFTW_BACKWARD, flags);
  if (!p.forward || !p.backward) fail(ErrorCode::internal, "FFTW planning failed");
  return cache.emplace(n, p).first->second;
}

void run(fftw_plan plan, std::span<const cplx> in, std::span<cplx> out) {
  // fftw_execute_dft does not modify the input of an out-of-place plan.
  auto* pi = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  auto* po = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, pi, po);
}

}  // namespace

void dft_forward(std::span<const cplx> in, std::span<cplx> out) {
  if (in.size() != out.size()) fail(ErrorCode::internal, "dft length mismatch");
  if (in.data() == out.data()) fail(ErrorCode::internal, "dft must be out of place");
  run(plans_for(static_cast<int>(in.size())).forward, in, out);
}

void dft_backward(std::span<const cplx> in, std::span<cplx> out) {
  if (in.size() != out.size()) fail(ErrorCode::internal, "dft length mismatch");
  if (in.data() == out.data()) fail(ErrorCode::internal, "dft must be out of place");
  run(plans_for(static_cast<int>(in.size())).backward, in, out);
}

}  // namespace vdw::detail
