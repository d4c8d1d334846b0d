#include <random>
#include <vector>

#include "doctest.h"
#include "kvd/kernels.hpp"

using namespace kvd;

TEST_SUITE("kernels") {

TEST_CASE("vector variants agree with the scalar reference") {
  if (!kernels::avx2_available()) {
    MESSAGE("AVX2 not available; only the scalar path is exercised");
    return;
  }
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (std::size_t n = 0; n <= 37; ++n) {
    std::vector<double> a(n), b(n);
    for (auto& x : a) x = u(rng);
    for (auto& x : b) x = u(rng);
    CHECK(kernels::avx2::dot(a.data(), b.data(), n) == doctest::Approx(kernels::scalar::dot(a.data(), b.data(), n)));
    CHECK(kernels::avx2::sum(a.data(), n) == doctest::Approx(kernels::scalar::sum(a.data(), n)));
    CHECK(kernels::avx2::l1_distance(a.data(), b.data(), n) ==
          doctest::Approx(kernels::scalar::l1_distance(a.data(), b.data(), n)));
    auto y1 = b, y2 = b;
    kernels::avx2::axpy(0.3, a.data(), y1.data(), n);
    kernels::scalar::axpy(0.3, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]));
    kernels::avx2::scale(-1.5, y1.data(), n);
    kernels::scalar::scale(-1.5, y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]));
    const std::size_t rows = n % 7 + 1;
    std::vector<double> m(rows * n), o1(rows), o2(rows);
    for (auto& x : m) x = u(rng);
    kernels::avx2::matvec(m.data(), rows, n, a.data(), o1.data());
    kernels::scalar::matvec(m.data(), rows, n, a.data(), o2.data());
    for (std::size_t i = 0; i < rows; ++i) CHECK(o1[i] == doctest::Approx(o2[i]));
  }
}

TEST_CASE("dispatch can be forced to the scalar path") {
  const auto before = kernels::set_isa(kernels::Isa::Scalar);
  CHECK(kernels::active_isa() == kernels::Isa::Scalar);
  const std::vector<double> a{1.0, 2.0, 3.0}, b{4.0, 5.0, 6.0};
  CHECK(kernels::dot(a, b) == 32.0);
  CHECK(kernels::l1_distance(a, b) == 9.0);
  kernels::set_isa(before);
  CHECK(kernels::active_isa() == before);
  CHECK(std::string(kernels::isa_name(kernels::Isa::Avx2)) == "avx2");
}

}
