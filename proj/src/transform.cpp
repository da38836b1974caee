#include "sqglab/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace sqg {
namespace {

// One c2c plan pair per grid size, created once under a lock. FFTW_ESTIMATE
// keeps plan selection (and hence rounding) reproducible across runs.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
    static std::map<int, PlanPair> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<std::complex<double>> buf(static_cast<size_t>(n) * n);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    PlanPair pp;
    pp.fwd = fftw_plan_dft_2d(n, n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
    pp.bwd = fftw_plan_dft_2d(n, n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
    return cache.emplace(n, pp).first->second;
}

void exec(fftw_plan plan, std::complex<double>* data) {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, p, p);
}

} // namespace

SpectralField to_spectral(const RealField& f) {
    if (!f.all_finite())
        throw std::invalid_argument("to_spectral: field has non-finite values");
    const Grid& g = f.grid();
    const int n = g.n;

    SpectralField F(g);
    auto& c = F.data();
    const auto& v = f.values();
    for (size_t idx = 0; idx < v.size(); ++idx) c[idx] = v[idx];

    exec(plans_for(n).fwd, c.data());

    // 1/n^2 normalization plus the node-offset phase exp(-i kappa.x_0);
    // x_0 = (-l,-l) makes that phase (-1)^(i+j) (n is even).
    const double s = 1.0 / (static_cast<double>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            F.at(i, j) *= ((i + j) % 2 == 0 ? s : -s);
    return F;
}

RealField to_real(const SpectralField& F) {
    const Grid& g = F.grid();
    const int n = g.n;

    std::vector<std::complex<double>> buf(F.data());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((i + j) % 2 != 0) buf[static_cast<size_t>(i) * n + j] *= -1.0;

    exec(plans_for(n).bwd, buf.data());

    RealField out(g);
    auto& v = out.values();
    for (size_t idx = 0; idx < v.size(); ++idx) {
        double re = buf[idx].real();
        if (!std::isfinite(re))
            throw std::invalid_argument("to_real: non-finite coefficients");
        v[idx] = re;
    }
    return out;
}

VectorField gradient(const SpectralField& F) {
    const Grid& g = F.grid();
    const int n = g.n;
    const int nyq = n / 2;

    SpectralField d1(g), d2(g);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::complex<double> z = F.at(i, j);
            const std::complex<double> ik1(0.0, g.kappa(i));
            const std::complex<double> ik2(0.0, g.kappa(j));
            d1.at(i, j) = (i == nyq) ? 0.0 : ik1 * z;
            d2.at(i, j) = (j == nyq) ? 0.0 : ik2 * z;
        }
    }
    VectorField out;
    out.v1 = to_real(d1);
    out.v2 = to_real(d2);
    return out;
}

void dealias_inplace(SpectralField& F) {
    const Grid& g = F.grid();
    const int n = g.n;
    const double cut = n / 3.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int k1 = std::abs(g.wavenumber(i));
            int k2 = std::abs(g.wavenumber(j));
            if (std::max(k1, k2) > cut) F.at(i, j) = 0.0;
        }
    }
}

SpectralField dealias(const SpectralField& F) {
    SpectralField out = F;
    dealias_inplace(out);
    return out;
}

double parseval_physical(const RealField& f) {
    const double w = f.grid().dx * f.grid().dx;
    double s = 0.0;
    for (double x : f.values()) s += x * x;
    return s * w;
}

double parseval_spectral(const SpectralField& F) {
    const double w = 4.0 * F.grid().l * F.grid().l;
    double s = 0.0;
    for (auto z : F.data()) s += std::norm(z);
    return s * w;
}

} // namespace sqg
