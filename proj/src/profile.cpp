#include "sqglab/profile.hpp"

#include <stdexcept>

#include "sqglab/interp.hpp"

namespace sqg {

HomogeneousProfile::HomogeneousProfile(std::vector<double> samples,
                                       std::optional<SymmetryGroup> group)
    : samples_(std::move(samples)), group_(std::move(group)) {
    const int n = static_cast<int>(samples_.size());
    if (n < 64 || !is_power_of_two(n))
        throw std::invalid_argument("HomogeneousProfile: sample count must be a power of two >= 64");
    for (double v : samples_)
        if (!std::isfinite(v))
            throw std::invalid_argument("HomogeneousProfile: non-finite sample");
    if (group_ && symmetry_defect(*group_) > 1e-10)
        throw std::invalid_argument("HomogeneousProfile: samples violate the tagged symmetry");
}

HomogeneousProfile HomogeneousProfile::from_function(const std::function<double(double)>& f,
                                                     int count,
                                                     std::optional<SymmetryGroup> group) {
    std::vector<double> s(count);
    for (int k = 0; k < count; ++k) s[k] = f(2.0 * M_PI * k / count);
    return HomogeneousProfile(std::move(s), std::move(group));
}

double HomogeneousProfile::eval_angle(double phi) const {
    return interp_cubic_periodic(samples_, phi);
}

double HomogeneousProfile::eval(double x, double y) const {
    return eval_angle(std::atan2(y, x));
}

double HomogeneousProfile::max_abs() const {
    double m = 0.0;
    for (double v : samples_) m = std::max(m, std::abs(v));
    return m;
}

double HomogeneousProfile::symmetry_defect(const SymmetryGroup& G) const {
    // signed action on a 0-homogeneous function: rotation shifts the angle,
    // the reflection sends f(phi) -> -f(-phi)
    const int n = sample_count();
    double worst = 0.0;
    for (const auto& g : G.generators()) {
        for (int k = 0; k < n; ++k) {
            double phi = 2.0 * M_PI * k / n;
            // g = S o R_angle sends f(phi) -> -f(-phi - angle)
            double ref = g.reflect ? -eval_angle(-phi - g.angle)
                                   : eval_angle(phi - g.angle);
            worst = std::max(worst, std::abs(samples_[k] - ref));
        }
    }
    return worst;
}

void HomogeneousProfile::build_derivative() const {
    if (!deriv_.empty()) return;
    // spectral derivative of the periodic sample sequence
    const int n = sample_count();
    deriv_.assign(n, 0.0);
    for (int m = 1; m <= n / 2 - 1; ++m) {
        double ar = 0.0, ai = 0.0;
        for (int k = 0; k < n; ++k) {
            double ph = 2.0 * M_PI * m * k / n;
            ar += samples_[k] * std::cos(ph);
            ai -= samples_[k] * std::sin(ph);
        }
        ar *= 2.0 / n;
        ai *= 2.0 / n;
        for (int k = 0; k < n; ++k) {
            double ph = 2.0 * M_PI * m * k / n;
            // d/dphi of ar*cos(m phi) + ai*... assembled from the analytic series
            deriv_[k] += m * (-ar * std::sin(ph) - ai * std::cos(ph));
        }
    }
}

double HomogeneousProfile::eval_angle_derivative(double phi) const {
    build_derivative();
    return interp_cubic_periodic(deriv_, phi);
}

RealField rasterize(const HomogeneousProfile& f, const Grid& g, double mollify_radius) {
    if (mollify_radius <= 0.0) mollify_radius = 2.0 * g.dx;

    double mean = 0.0;
    for (double s : f.samples()) mean += s;
    mean /= f.sample_count();

    // on the seam rows the coordinates +l and -l identify, so the sample is
    // the two-sided average (the canonical value of a jump); elsewhere the
    // 0-homogeneous value, tapered to the angular mean across the origin cell
    auto value_at = [&](double x, double y) {
        double r = std::hypot(x, y);
        if (r < 1e-300) return mean;
        double v = f.eval(x, y);
        if (r < mollify_radius) {
            double t = r / mollify_radius;
            double w = t * t * (3.0 - 2.0 * t);
            v = mean + w * (v - mean);
        }
        return v;
    };

    RealField out(g);
    for (int i = 0; i < g.n; ++i) {
        double x = g.x(i);
        bool xseam = (i == 0);
        for (int j = 0; j < g.n; ++j) {
            double y = g.x(j);
            bool yseam = (j == 0);
            if (xseam && yseam) {
                out(i, j) = 0.25 * (value_at(g.l, g.l) + value_at(g.l, -g.l) +
                                    value_at(-g.l, g.l) + value_at(-g.l, -g.l));
            } else if (xseam) {
                out(i, j) = 0.5 * (value_at(g.l, y) + value_at(-g.l, y));
            } else if (yseam) {
                out(i, j) = 0.5 * (value_at(x, g.l) + value_at(x, -g.l));
            } else {
                out(i, j) = value_at(x, y);
            }
        }
    }
    return out;
}

} // namespace sqg
