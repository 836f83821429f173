#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "plasmode/timedomain.hpp"

namespace plasmode::timedomain {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
// Chebyshev initial guess.
struct GLRule {
    std::vector<double> x, w;
};

GLRule gauss_legendre(int n) {
    GLRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

const GLRule& rule12() {
    static const GLRule r = gauss_legendre(12);
    return r;
}

}  // namespace

double Pulse::eval(double t) const {
    if (t <= 0.0 || t >= C1) return 0.0;
    const double s = (2.0 * t - C1) / C1;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

cplx Pulse::spectrum(cplx omega) const {
    if (std::abs(omega.imag()) * C1 > 700.0)
        throw std::domain_error("pulse_spectrum: |Im omega| C1 overflow guard");
    // panel count scales with the number of oscillations across the support
    const int panels =
        std::max(16, static_cast<int>(std::ceil(std::abs(omega) * C1 / 3.0)));
    const GLRule& gl = rule12();
    const double h = C1 / panels;
    cplx acc(0.0, 0.0);
    for (int p = 0; p < panels; ++p) {
        const double a = p * h;
        for (size_t q = 0; q < gl.x.size(); ++q) {
            const double t = a + 0.5 * h * (gl.x[q] + 1.0);
            acc += 0.5 * h * gl.w[q] * eval(t) *
                   std::exp(cplx(0.0, 1.0) * omega * t);
        }
    }
    return acc;
}

void FrequencyGrid::validate(double delta, double c) const {
    if (!(eps > 0.0 && eps < rho))
        throw std::domain_error("FrequencyGrid: need 0 < eps < rho");
    if (rho * delta / c > 1.0)
        throw std::domain_error("FrequencyGrid: rho delta / c > 1 (quasi-static band)");
    if (L < 2) throw std::domain_error("FrequencyGrid: L >= 2");
}

std::vector<double> FrequencyGrid::nodes() const {
    std::vector<double> v;
    if (!high_order) {
        // uniform midpoint nodes, matching the plain Riemann-sum synthesis
        const double dw = (rho - eps) / L;
        v.reserve(L);
        for (int l = 1; l <= L; ++l) v.push_back(eps + (l - 0.5) * dw);
    } else {
        const int M = (L % 2 == 0) ? L : L + 1;  // Simpson needs even panels
        const double dw = (rho - eps) / M;
        v.reserve(M + 1);
        for (int l = 0; l <= M; ++l) v.push_back(eps + l * dw);
    }
    return v;
}

std::vector<double> FrequencyGrid::weights() const {
    std::vector<double> v;
    if (!high_order) {
        v.assign(L, (rho - eps) / L);
    } else {
        const int M = (L % 2 == 0) ? L : L + 1;
        const double dw = (rho - eps) / M;
        v.assign(M + 1, 0.0);
        for (int l = 0; l <= M; ++l) {
            double c = (l == 0 || l == M) ? 1.0 : ((l % 2 == 1) ? 4.0 : 2.0);
            v[l] = c * dw / 3.0;
        }
    }
    return v;
}

}  // namespace plasmode::timedomain
