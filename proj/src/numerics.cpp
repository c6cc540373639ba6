#include "gphelix/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace gphelix {

GaussRule gauss_legendre(int n, double a, double b) {
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    // Newton iteration on Legendre polynomials, nodes of P_n on (-1,1).
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.x[i] = x;
        rule.w[i] = w;
        rule.x[n - 1 - i] = -x;
        rule.w[n - 1 - i] = w;
    }
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        rule.x[i] = mid - half * rule.x[i];
        rule.w[i] *= half;
    }
    std::sort(rule.x.begin(), rule.x.end());
    return rule;
}

bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_pow2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft_pow2: size must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), lda_(2 * kl + ku + 1), a_(static_cast<std::size_t>(lda_) * n, 0.0), piv_(n, 0) {}

double& BandedMatrix::at(int i, int j) {
    // LAPACK dgbtrf layout: entry (i,j) stored at row kl+ku+i-j, column j.
    const int row = kl_ + ku_ + i - j;
    return a_[static_cast<std::size_t>(j) * lda_ + row];
}

void BandedMatrix::solve(std::vector<double>& rhs) {
    // banded LU with partial pivoting (dgbtrf/dgbtrs, simplified)
    const int n = n_, kl = kl_, ku = ku_;
    auto A = [&](int i, int j) -> double& {
        return a_[static_cast<std::size_t>(j) * lda_ + (kl + ku + i - j)];
    };
    for (int k = 0; k < n; ++k) {
        int imax = k;
        double amax = std::fabs(A(k, k));
        const int ilast = std::min(n - 1, k + kl);
        for (int i = k + 1; i <= ilast; ++i) {
            if (std::fabs(A(i, k)) > amax) {
                amax = std::fabs(A(i, k));
                imax = i;
            }
        }
        if (amax == 0.0) throw std::runtime_error("BandedMatrix::solve: singular matrix");
        piv_[k] = imax;
        const int jlast = std::min(n - 1, k + kl + ku);
        if (imax != k) {
            for (int j = k; j <= jlast; ++j) std::swap(A(k, j), A(imax, j));
            std::swap(rhs[k], rhs[imax]);
        }
        for (int i = k + 1; i <= ilast; ++i) {
            const double m = A(i, k) / A(k, k);
            A(i, k) = m;
            for (int j = k + 1; j <= jlast; ++j) A(i, j) -= m * A(k, j);
            rhs[i] -= m * rhs[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = rhs[i];
        const int jlast = std::min(n - 1, i + kl + ku);
        for (int j = i + 1; j <= jlast; ++j) s -= A(i, j) * rhs[j];
        rhs[i] = s / A(i, i);
    }
}

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_log_slope: need >=2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(std::fabs(x[i]));
        const double ly = std::log(std::fabs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace gphelix
