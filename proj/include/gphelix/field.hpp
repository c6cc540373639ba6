// Complex-valued fields sampled on structured 2D grids (polar or Cartesian).
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "gphelix/numerics.hpp"

namespace gphelix {

// Polar grid: radii r_i = r0 + i*dr (i < nr), angles s_j = 2*pi*j/ns,
// periodic in s. Node index = i*ns + j.
struct PolarGrid {
    double r0 = 0.0;
    double dr = 0.0;
    int nr = 0;
    int ns = 0;
    double ds() const { return 2.0 * kPi / ns; }
    double radius(int i) const { return r0 + i * dr; }
    double angle(int j) const { return ds() * j; }
    cplx point(int i, int j) const {
        const double r = radius(i), s = angle(j);
        return {r * std::cos(s), r * std::sin(s)};
    }
};

// Cartesian patch: x_i = x0 + i*h, y_j = y0 + j*h. Node index = i*ny + j.
struct CartesianGrid {
    double x0 = 0.0, y0 = 0.0;
    double h = 0.0;
    int nx = 0, ny = 0;
    cplx point(int i, int j) const { return {x0 + i * h, y0 + j * h}; }
};

using FieldSampler = std::function<cplx(cplx)>;

struct ComplexField {
    std::variant<PolarGrid, CartesianGrid> grid;
    std::vector<cplx> values;
    std::vector<std::string> symmetry_tags;  // free-form annotations, e.g. "conj", "rot-n"

    std::size_t expected_size() const;
    void check() const;  // throws if sizes disagree or grid is degenerate
};

ComplexField sample_polar(const PolarGrid& g, const FieldSampler& f);
ComplexField sample_cartesian(const CartesianGrid& g, const FieldSampler& f);

// CSV rows x1,x2,Re,Im with header.
void save_field_csv(const ComplexField& f, const std::string& path);

}  // namespace gphelix
