#include "fnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace fnls::fft {
namespace {

// Plan creation is not thread-safe in FFTW; execution on distinct buffers is.
// Plans are cached per (size, direction) and created with FFTW_UNALIGNED so
// they can run on any std::vector storage.
std::mutex plan_mutex;

fftw_plan plan_for(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n));
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan p = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw std::runtime_error("fftw plan creation failed");
  cache.emplace(key, p);
  return p;
}

void execute(std::vector<std::complex<double>>& a, int sign) {
  if (a.empty()) return;
  fftw_plan p = plan_for(static_cast<int>(a.size()), sign);
  auto* buf = reinterpret_cast<fftw_complex*>(a.data());
  fftw_execute_dft(p, buf, buf);
}

}  // namespace

void forward(std::vector<std::complex<double>>& a) { execute(a, FFTW_FORWARD); }

void backward(std::vector<std::complex<double>>& a) { execute(a, FFTW_BACKWARD); }

}  // namespace fnls::fft
