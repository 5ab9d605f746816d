#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hysir/errors.hpp"

namespace hysir {

/// Weight measure q(alpha) on the Preisach triangle Pi = {0 <= a1 < a2 <= 1},
/// normalized to total mass 1 and exposed through the corner-cumulative
/// integral G(a, b) = mass of {a1 <= a, a2 <= b} (relay enumeration for the
/// atomic kind, where boundary conventions matter).
class Density {
public:
    enum class Kind { uniform, grid, atomic };

    struct Atom {
        double alpha1, alpha2, weight;
    };

    /// q == 2 on the whole triangle.
    static Density uniform();

    /// Piecewise-constant density on an nx-by-ny grid over [0,1]^2 in
    /// (alpha1, alpha2); values row-major, values[j*nx + i] for cell
    /// [i/nx,(i+1)/nx) x [j/ny,(j+1)/ny). The part of each cell outside Pi
    /// carries no mass; the values are renormalized to total mass 1.
    static Density grid(std::size_t nx, std::size_t ny, std::vector<double> values);

    /// Finite relay collection (discrete Preisach model). Weights must be
    /// positive and sum to 1 (renormalized exactly; 1e-6 slack on input).
    /// Unbounded as a density: outside the stability theorem's hypotheses.
    static Density atomic(std::vector<Atom> atoms);

    Kind kind() const { return kind_; }
    bool bounded() const { return kind_ != Kind::atomic; }

    /// Corner-cumulative mass G(a, b) = mass{alpha1 <= a, alpha2 <= b}.
    double corner_mass(double a, double b) const;

    /// mass{alpha2 <= v}: relays forced ON at input v.
    double mass_alpha2_below(double v) const;

    /// mass{alpha1 < v}: relays not forced OFF at input v (strict for atoms).
    double mass_alpha1_below(double v) const;

    /// Essential supremum of the density; nullopt for atomic measures.
    std::optional<double> sup() const;

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t grid_nx() const { return nx_; }
    std::size_t grid_ny() const { return ny_; }
    const std::vector<double>& grid_values() const { return values_; }

private:
    Density() = default;

    double grid_corner_mass(double a, double b) const;

    Kind kind_ = Kind::uniform;
    // grid payload
    std::size_t nx_ = 0, ny_ = 0;
    std::vector<double> values_;        // normalized density per cell
    std::vector<double> cell_mass_;     // normalized mass of cell ∩ Pi
    std::vector<double> prefix_;        // (nx+1)*(ny+1) prefix sums of cell_mass_
    double sup_ = 2.0;
    // atomic payload
    std::vector<Atom> atoms_;
};

}  // namespace hysir
