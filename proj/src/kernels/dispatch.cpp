#include "kvd/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string_view>

namespace kvd::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(KVD_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("KVD_ISA"); env != nullptr && std::string_view(env) == "scalar")
    return Isa::Scalar;
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

#if defined(KVD_HAVE_AVX2)
#define KVD_DISPATCH(fn, ...) \
  (current().load(std::memory_order_relaxed) == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define KVD_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
  static const bool available = cpu_has_avx2();
  return available;
}

Isa active_isa() { return current().load(); }

Isa set_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) isa = Isa::Scalar;
  return current().exchange(isa);
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return KVD_DISPATCH(dot, a.data(), b.data(), a.size());
}

double sum(std::span<const double> x) { return KVD_DISPATCH(sum, x.data(), x.size()); }

double l1_distance(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return KVD_DISPATCH(l1_distance, a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  KVD_DISPATCH(axpy, alpha, x.data(), y.data(), x.size());
}

void scale(double alpha, std::span<double> y) { KVD_DISPATCH(scale, alpha, y.data(), y.size()); }

void matvec(std::span<const double> m, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
  assert(m.size() == rows * cols && x.size() == cols && y.size() == rows);
  KVD_DISPATCH(matvec, m.data(), rows, cols, x.data(), y.data());
}

}  // namespace kvd::kernels
