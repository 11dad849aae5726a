#include "amwc/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace amwc {
namespace {

enum class Kind { Forward, Backward, R2C, C2R };

struct Buffer {
  explicit Buffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
    if (!ptr) throw std::bad_alloc();
  }
  ~Buffer() { fftw_free(ptr); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  void* ptr;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Plans are made on fftw_malloc'd scratch arrays and run through the
// new-array interface on equally aligned buffers.
fftw_plan get_plan(Kind kind, std::int64_t n) {
  static std::map<std::pair<Kind, std::int64_t>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto it = cache.find({kind, n});
  if (it != cache.end()) return it->second;

  const int len = static_cast<int>(n);
  Buffer in(sizeof(fftw_complex) * (n + 2));
  Buffer out(sizeof(fftw_complex) * (n + 2));
  fftw_plan plan = nullptr;
  const unsigned flags = FFTW_ESTIMATE;
  switch (kind) {
    case Kind::Forward:
      plan = fftw_plan_dft_1d(len, static_cast<fftw_complex*>(in.ptr), static_cast<fftw_complex*>(out.ptr),
                              FFTW_FORWARD, flags);
      break;
    case Kind::Backward:
      plan = fftw_plan_dft_1d(len, static_cast<fftw_complex*>(in.ptr), static_cast<fftw_complex*>(out.ptr),
                              FFTW_BACKWARD, flags);
      break;
    case Kind::R2C:
      plan = fftw_plan_dft_r2c_1d(len, static_cast<double*>(in.ptr), static_cast<fftw_complex*>(out.ptr), flags);
      break;
    case Kind::C2R:
      plan = fftw_plan_dft_c2r_1d(len, static_cast<fftw_complex*>(in.ptr), static_cast<double*>(out.ptr), flags);
      break;
  }
  if (!plan) throw std::runtime_error("FFTW planning failed");
  cache.emplace(std::make_pair(kind, n), plan);
  return plan;
}

CVector complex_transform(const CVector& x, Kind kind) {
  const std::int64_t n = x.size();
  if (n == 0) return {};
  fftw_plan plan = get_plan(kind, n);
  Buffer in(sizeof(fftw_complex) * n);
  Buffer out(sizeof(fftw_complex) * n);
  std::memcpy(in.ptr, x.data(), sizeof(fftw_complex) * n);
  fftw_execute_dft(plan, static_cast<fftw_complex*>(in.ptr), static_cast<fftw_complex*>(out.ptr));
  CVector y(n);
  std::memcpy(y.data(), out.ptr, sizeof(fftw_complex) * n);
  return y;
}

}  // namespace

CVector fft(const CVector& x) { return complex_transform(x, Kind::Forward); }

CVector ifft(const CVector& X) { return complex_transform(X, Kind::Backward); }

CVector rfft(const RVector& x) {
  const std::int64_t n = x.size();
  if (n == 0) return {};
  fftw_plan plan = get_plan(Kind::R2C, n);
  Buffer in(sizeof(double) * n);
  Buffer out(sizeof(fftw_complex) * (n / 2 + 1));
  std::memcpy(in.ptr, x.data(), sizeof(double) * n);
  fftw_execute_dft_r2c(plan, static_cast<double*>(in.ptr), static_cast<fftw_complex*>(out.ptr));
  CVector y(n / 2 + 1);
  std::memcpy(y.data(), out.ptr, sizeof(fftw_complex) * (n / 2 + 1));
  return y;
}

RVector irfft(const CVector& half, std::int64_t n) {
  if (half.size() != n / 2 + 1) throw std::invalid_argument("irfft: half spectrum has wrong length");
  if (n == 0) return {};
  fftw_plan plan = get_plan(Kind::C2R, n);
  Buffer in(sizeof(fftw_complex) * (n / 2 + 1));
  Buffer out(sizeof(double) * n);
  std::memcpy(in.ptr, half.data(), sizeof(fftw_complex) * (n / 2 + 1));
  fftw_execute_dft_c2r(plan, static_cast<fftw_complex*>(in.ptr), static_cast<double*>(out.ptr));
  RVector y(n);
  std::memcpy(y.data(), out.ptr, sizeof(double) * n);
  return y;
}

}  // namespace amwc
