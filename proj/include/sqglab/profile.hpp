#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sqglab/symmetry.hpp"

namespace sqg {

/// A 0-homogeneous function f(x) = value(arg x) given by uniformly spaced
/// samples on the unit circle; houses self-similar far-field data.
class HomogeneousProfile {
public:
    HomogeneousProfile() = default;

    /// Samples at angles phi_k = 2*pi*k/count, count a power of two >= 64.
    explicit HomogeneousProfile(std::vector<double> samples,
                                std::optional<SymmetryGroup> group = std::nullopt);

    static HomogeneousProfile from_function(const std::function<double(double)>& f,
                                            int count = 256,
                                            std::optional<SymmetryGroup> group = std::nullopt);

    int sample_count() const { return static_cast<int>(samples_.size()); }
    const std::vector<double>& samples() const { return samples_; }
    const std::optional<SymmetryGroup>& group() const { return group_; }

    /// Value at angle phi (periodic cubic interpolation of the samples).
    double eval_angle(double phi) const;
    /// Value at the point (x, y) != 0 via the 0-homogeneous extension.
    double eval(double x, double y) const;

    double max_abs() const;
    /// Largest violation of the signed group action over the samples.
    double symmetry_defect(const SymmetryGroup& G) const;

    /// Angular derivative at phi (spectral differentiation of the samples).
    double eval_angle_derivative(double phi) const;

private:
    std::vector<double> samples_;
    std::optional<SymmetryGroup> group_;
    mutable std::vector<double> deriv_; // lazily built derivative samples
    void build_derivative() const;
};

/// Sample the nodal values of the 0-homogeneous extension on a grid, with
/// the origin cell mollified at scale `mollify_radius` (grid data cannot
/// carry the jump at 0). mollify_radius <= 0 picks 2*dx.
RealField rasterize(const HomogeneousProfile& f, const Grid& g, double mollify_radius = -1.0);

} // namespace sqg
