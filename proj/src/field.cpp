#include "gphelix/field.hpp"

#include <fstream>
#include <iomanip>

namespace gphelix {

std::size_t ComplexField::expected_size() const {
    if (std::holds_alternative<PolarGrid>(grid)) {
        const auto& g = std::get<PolarGrid>(grid);
        return static_cast<std::size_t>(g.nr) * g.ns;
    }
    const auto& g = std::get<CartesianGrid>(grid);
    return static_cast<std::size_t>(g.nx) * g.ny;
}

void ComplexField::check() const {
    if (std::holds_alternative<PolarGrid>(grid)) {
        const auto& g = std::get<PolarGrid>(grid);
        if (g.nr <= 0 || g.ns <= 0 || g.dr <= 0.0 || g.r0 < 0.0)
            throw std::invalid_argument("ComplexField: degenerate polar grid");
    } else {
        const auto& g = std::get<CartesianGrid>(grid);
        if (g.nx <= 0 || g.ny <= 0 || g.h <= 0.0) throw std::invalid_argument("ComplexField: degenerate cartesian grid");
    }
    if (values.size() != expected_size()) throw std::invalid_argument("ComplexField: value count does not match grid");
}

ComplexField sample_polar(const PolarGrid& g, const FieldSampler& f) {
    ComplexField out;
    out.grid = g;
    out.values.resize(static_cast<std::size_t>(g.nr) * g.ns);
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.ns; ++j) out.values[static_cast<std::size_t>(i) * g.ns + j] = f(g.point(i, j));
    out.check();
    return out;
}

ComplexField sample_cartesian(const CartesianGrid& g, const FieldSampler& f) {
    ComplexField out;
    out.grid = g;
    out.values.resize(static_cast<std::size_t>(g.nx) * g.ny);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) out.values[static_cast<std::size_t>(i) * g.ny + j] = f(g.point(i, j));
    out.check();
    return out;
}

void save_field_csv(const ComplexField& f, const std::string& path) {
    f.check();
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_field_csv: cannot open " + path);
    os << "x1,x2,Re,Im\n" << std::setprecision(17);
    auto emit = [&](cplx z, cplx v) { os << z.real() << ',' << z.imag() << ',' << v.real() << ',' << v.imag() << '\n'; };
    if (std::holds_alternative<PolarGrid>(f.grid)) {
        const auto& g = std::get<PolarGrid>(f.grid);
        for (int i = 0; i < g.nr; ++i)
            for (int j = 0; j < g.ns; ++j) emit(g.point(i, j), f.values[static_cast<std::size_t>(i) * g.ns + j]);
    } else {
        const auto& g = std::get<CartesianGrid>(f.grid);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) emit(g.point(i, j), f.values[static_cast<std::size_t>(i) * g.ny + j]);
    }
}

}  // namespace gphelix
