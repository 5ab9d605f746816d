#include "hysir/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hysir {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Area of {(x, y) : x0 <= x <= x1, y0 <= y <= y1, x < y}.
double rect_triangle_area(double x0, double x1, double y0, double y1) {
    if (x1 <= x0 || y1 <= y0) return 0.0;
    if (y1 <= x0) return 0.0;
    if (y0 >= x1) return (x1 - x0) * (y1 - y0);
    const double ya = std::clamp(x0, y0, y1);
    const double yb = std::clamp(x1, y0, y1);
    // For y in [ya, yb] the admissible x-range is [x0, y]; above yb it is full.
    const double wedge = 0.5 * ((yb - x0) * (yb - x0) - (ya - x0) * (ya - x0));
    return wedge + (y1 - yb) * (x1 - x0);
}

}  // namespace

Density Density::uniform() {
    Density d;
    d.kind_ = Kind::uniform;
    d.sup_ = 2.0;
    return d;
}

Density Density::grid(std::size_t nx, std::size_t ny, std::vector<double> values) {
    if (nx == 0 || ny == 0) throw ConfigError("density", "grid dimensions must be positive");
    if (values.size() != nx * ny)
        throw ConfigError("density", "grid expects nx*ny values, got " +
                                         std::to_string(values.size()));
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw ConfigError("density", "grid values must be finite and nonnegative");

    Density d;
    d.kind_ = Kind::grid;
    d.nx_ = nx;
    d.ny_ = ny;
    d.values_ = std::move(values);
    d.cell_mass_.assign(nx * ny, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const double area = rect_triangle_area(double(i) / nx, double(i + 1) / nx,
                                                   double(j) / ny, double(j + 1) / ny);
            d.cell_mass_[j * nx + i] = d.values_[j * nx + i] * area;
            total += d.cell_mass_[j * nx + i];
        }
    }
    if (!(total > 0.0)) throw ConfigError("density", "grid carries no mass on the triangle");
    const double scale = 1.0 / total;
    d.sup_ = 0.0;
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            d.values_[j * nx + i] *= scale;
            d.cell_mass_[j * nx + i] *= scale;
            const bool touches_triangle =
                rect_triangle_area(double(i) / nx, double(i + 1) / nx, double(j) / ny,
                                   double(j + 1) / ny) > 0.0;
            if (touches_triangle) d.sup_ = std::max(d.sup_, d.values_[j * nx + i]);
        }
    }
    d.prefix_.assign((nx + 1) * (ny + 1), 0.0);
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
            d.prefix_[(j + 1) * (nx + 1) + (i + 1)] =
                d.cell_mass_[j * nx + i] + d.prefix_[j * (nx + 1) + (i + 1)] +
                d.prefix_[(j + 1) * (nx + 1) + i] - d.prefix_[j * (nx + 1) + i];
    return d;
}

Density Density::atomic(std::vector<Atom> atoms) {
    if (atoms.empty()) throw ConfigError("density", "atomic density needs at least one relay");
    double total = 0.0;
    for (const auto& a : atoms) {
        if (!(a.alpha1 >= 0.0) || !(a.alpha2 <= 1.0) || !(a.alpha1 < a.alpha2))
            throw ConfigError("density", "atom thresholds must satisfy 0 <= a1 < a2 <= 1");
        if (!(a.weight > 0.0)) throw ConfigError("density", "atom weights must be positive");
        total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw ConfigError("density", "atom weights must sum to 1, got " + std::to_string(total));
    for (auto& a : atoms) a.weight /= total;
    Density d;
    d.kind_ = Kind::atomic;
    d.atoms_ = std::move(atoms);
    return d;
}

double Density::grid_corner_mass(double a, double b) const {
    // a <= b here; locate the partial row/column and integrate them exactly.
    const auto cell_index = [](double x, std::size_t n) {
        auto k = static_cast<std::size_t>(x * double(n));
        return std::min(k, n - 1);
    };
    const std::size_t ia = cell_index(a, nx_);
    const std::size_t jb = cell_index(b, ny_);
    const double xi = double(ia) / double(nx_);
    const double yj = double(jb) / double(ny_);

    double m = prefix_[jb * (nx_ + 1) + ia];
    for (std::size_t j = 0; j < jb; ++j)
        m += values_[j * nx_ + ia] *
             rect_triangle_area(xi, a, double(j) / ny_, double(j + 1) / ny_);
    for (std::size_t i = 0; i < ia; ++i)
        m += values_[jb * nx_ + i] *
             rect_triangle_area(double(i) / nx_, double(i + 1) / nx_, yj, b);
    m += values_[jb * nx_ + ia] * rect_triangle_area(xi, a, yj, b);
    return m;
}

double Density::corner_mass(double a, double b) const {
    b = clamp01(b);
    a = std::min(clamp01(a), b);  // G(a, b) = G(b, b) for a >= b
    switch (kind_) {
        case Kind::uniform:
            return a < b ? 2.0 * a * b - a * a : b * b;
        case Kind::grid:
            return grid_corner_mass(a, b);
        case Kind::atomic: {
            double m = 0.0;
            for (const auto& at : atoms_)
                if (at.alpha1 <= a && at.alpha2 <= b) m += at.weight;
            return m;
        }
    }
    return 0.0;
}

double Density::mass_alpha2_below(double v) const {
    if (kind_ == Kind::atomic) {
        double m = 0.0;
        for (const auto& at : atoms_)
            if (at.alpha2 <= v) m += at.weight;
        return m;
    }
    return corner_mass(v, v);
}

double Density::mass_alpha1_below(double v) const {
    if (kind_ == Kind::atomic) {
        double m = 0.0;
        for (const auto& at : atoms_)
            if (at.alpha1 < v) m += at.weight;
        return m;
    }
    return corner_mass(v, 1.0);
}

std::optional<double> Density::sup() const {
    if (kind_ == Kind::atomic) return std::nullopt;
    return sup_;
}

}  // namespace hysir
