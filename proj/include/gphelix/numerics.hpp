// Shared numerical utilities: cutoff functions, Gauss-Legendre rules,
// finite-difference stencils, a radix-2 FFT and a banded linear solver.
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gphelix {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Quintic smoothstep cutoff: 1 on t<=1, 0 on t>=2, C^2 across both ends.
inline double eta1(double t) {
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    const double s = t - 1.0;
    return 1.0 - (10.0 * s * s * s - 15.0 * s * s * s * s + 6.0 * s * s * s * s * s);
}

inline double eta1_prime(double t) {
    if (t <= 1.0 || t >= 2.0) return 0.0;
    const double s = t - 1.0;
    return -(30.0 * s * s - 60.0 * s * s * s + 30.0 * s * s * s * s);
}

// Nodes/weights of the n-point Gauss-Legendre rule on [a,b].
struct GaussRule {
    std::vector<double> x, w;
};
GaussRule gauss_legendre(int n, double a, double b);

// In-place radix-2 FFT, sign=-1 forward, +1 inverse (inverse is unnormalized).
void fft_pow2(std::vector<cplx>& a, int sign);
bool is_pow2(std::size_t n);

// Solve a banded system with kl sub- and ku super-diagonals by Gaussian
// elimination with partial pivoting. `band(i,j)` valid for |i-j|<=ku resp kl.
// Matrix supplied in dense-banded storage: ab[(kl+ku+1) x n], row kl+ku+... ;
// here we keep it simple: ab[i][j] holds A(i, i+j-kl-ku_offset)... use the
// helper class below instead.
class BandedMatrix {
  public:
    BandedMatrix(int n, int kl, int ku);
    double& at(int i, int j);          // only |i-j| within band
    void solve(std::vector<double>& rhs);  // in place; destroys the matrix
    int n() const { return n_; }

  private:
    int n_, kl_, ku_;
    int lda_;
    std::vector<double> a_;   // column-major LAPACK-style band storage with pivot room
    std::vector<int> piv_;
};

// Centered finite-difference first/second derivative of a sampled function,
// uniform spacing h, 4th order (5-point). Index i must allow i-2..i+2.
template <class T>
T fd1_4(const std::vector<T>& f, std::size_t i, double h) {
    return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
}
template <class T>
T fd2_4(const std::vector<T>& f, std::size_t i, double h) {
    return (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h * h);
}

// Least-squares slope of log|y| against log|x| (scaling-exponent fits).
double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gphelix
