#pragma once
// Dense numeric kernels used by PageRank, eigenvector centrality and the
// TF-IDF sentence graph. Each kernel has a scalar reference implementation
// and, on x86-64, an AVX2 variant. The variant is chosen once at startup from
// CPUID; KVD_ISA=scalar in the environment forces the reference path.

#include <cstddef>
#include <span>

namespace kvd::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);

/// True when the AVX2 variants were compiled in and the CPU supports them.
bool avx2_available();

Isa active_isa();

/// Overrides the dispatch choice. Requesting Avx2 on a machine without it is
/// ignored and leaves the scalar path active. Returns the previous choice.
Isa set_isa(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> x);
double l1_distance(std::span<const double> a, std::span<const double> b);
// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> y);
// y = M x, with M row-major rows x cols.
void matvec(std::span<const double> m, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* x, std::size_t n);
double l1_distance(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* y, std::size_t n);
void matvec(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y);
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* x, std::size_t n);
double l1_distance(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* y, std::size_t n);
void matvec(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y);
}  // namespace avx2

}  // namespace kvd::kernels
