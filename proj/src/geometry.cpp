#include "plasmode/geometry.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace plasmode::geometry {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ParametricCurve make_shape(const std::string& kind, const ShapeParams& p) {
    ParametricCurve c;
    c.name = kind;
    if (kind == "ellipse") {
        const double a = p.a, b = p.b;
        if (a <= 0 || b <= 0)
            throw std::domain_error("ellipse semi-axes must be positive");
        c.position = [a, b](double t) { return Vec2(a * std::cos(t), b * std::sin(t)); };
        c.d1 = [a, b](double t) { return Vec2(-a * std::sin(t), b * std::cos(t)); };
        c.d2 = [a, b](double t) { return Vec2(-a * std::cos(t), -b * std::sin(t)); };
    } else if (kind == "diamond") {
        const double cc = p.diamond_c;
        // 2(e^{it} + c e^{-3it})
        c.position = [cc](double t) {
            return Vec2(2 * (std::cos(t) + cc * std::cos(3 * t)),
                        2 * (std::sin(t) - cc * std::sin(3 * t)));
        };
        c.d1 = [cc](double t) {
            return Vec2(2 * (-std::sin(t) - 3 * cc * std::sin(3 * t)),
                        2 * (std::cos(t) - 3 * cc * std::cos(3 * t)));
        };
        c.d2 = [cc](double t) {
            return Vec2(2 * (-std::cos(t) - 9 * cc * std::cos(3 * t)),
                        2 * (-std::sin(t) + 9 * cc * std::sin(3 * t)));
        };
    } else if (kind == "flower") {
        const double r0 = p.flower_base, am = p.flower_amp;
        const int np = p.flower_petals;
        if (r0 - std::abs(am) <= 0)
            throw std::domain_error("flower radius must stay positive");
        auto rho = [r0, am, np](double t) { return r0 + am * std::cos(np * t); };
        auto drho = [am, np](double t) { return -am * np * std::sin(np * t); };
        auto ddrho = [am, np](double t) { return -am * np * np * std::cos(np * t); };
        c.position = [rho](double t) {
            return Vec2(rho(t) * std::cos(t), rho(t) * std::sin(t));
        };
        c.d1 = [rho, drho](double t) {
            const double r = rho(t), dr = drho(t);
            return Vec2(dr * std::cos(t) - r * std::sin(t),
                        dr * std::sin(t) + r * std::cos(t));
        };
        c.d2 = [rho, drho, ddrho](double t) {
            const double r = rho(t), dr = drho(t), ddr = ddrho(t);
            return Vec2(ddr * std::cos(t) - 2 * dr * std::sin(t) - r * std::cos(t),
                        ddr * std::sin(t) + 2 * dr * std::cos(t) - r * std::sin(t));
        };
    } else {
        throw std::domain_error("unknown shape kind: " + kind);
    }
    return c;
}

ParametricCurve make_custom_curve(const std::vector<Vec2>& samples,
                                  const std::string& name) {
    const int M = static_cast<int>(samples.size());
    if (M < 16 || M % 2 != 0)
        throw std::domain_error("custom curve needs an even number (>=16) of samples");

    // Real DFT coefficients of each coordinate; the interpolant is the
    // band-limited trig polynomial through the samples.
    const int H = M / 2;
    Eigen::MatrixXd A(2, 2 * H + 1);  // a0, (a_m, b_m) m=1..H per coordinate
    A.setZero();
    for (int d = 0; d < 2; ++d) {
        for (int m = 0; m <= H; ++m) {
            double am = 0, bm = 0;
            for (int i = 0; i < M; ++i) {
                const double ang = kTwoPi * m * i / M;
                am += samples[i][d] * std::cos(ang);
                bm += samples[i][d] * std::sin(ang);
            }
            const double scale = (m == 0 || m == H) ? 1.0 / M : 2.0 / M;
            if (m == 0) {
                A(d, 0) = am / M;
            } else {
                A(d, 2 * m - 1) = am * scale;
                A(d, 2 * m) = bm * scale;
            }
        }
    }

    auto eval = [A, H](double t, int deriv) {
        Vec2 v(0, 0);
        for (int d = 0; d < 2; ++d) {
            double s = (deriv == 0) ? A(d, 0) : 0.0;
            for (int m = 1; m <= H; ++m) {
                const double am = A(d, 2 * m - 1), bm = A(d, 2 * m);
                const double c = std::cos(m * t), sn = std::sin(m * t);
                if (deriv == 0)
                    s += am * c + bm * sn;
                else if (deriv == 1)
                    s += m * (-am * sn + bm * c);
                else
                    s += -double(m) * m * (am * c + bm * sn);
            }
            v[d] = s;
        }
        return v;
    };

    ParametricCurve c;
    c.name = name;
    c.position = [eval](double t) { return eval(t, 0); };
    c.d1 = [eval](double t) { return eval(t, 1); };
    c.d2 = [eval](double t) { return eval(t, 2); };
    return c;
}

ParametricCurve load_custom_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open curve file: " + path);
    std::vector<Vec2> pts;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double x, y;
        if (ss >> x >> y) pts.emplace_back(x, y);
    }
    return make_custom_curve(pts, "custom:" + path);
}

double signed_area(const BoundaryMesh& mesh) {
    // (1/2) oint (x dy - y dx) by the trapezoid rule
    double area = 0.0;
    for (int i = 0; i < mesh.N; ++i)
        area += mesh.nodes(i, 0) * mesh.tangent(i, 1) -
                mesh.nodes(i, 1) * mesh.tangent(i, 0);
    return 0.5 * area * kTwoPi / mesh.N;
}

double BoundaryMesh::mesh_spacing() const {
    double h = 0.0;
    for (int i = 0; i < N; ++i) {
        const int j = (i + 1) % N;
        h = std::max(h, (nodes.row(j) - nodes.row(i)).norm());
    }
    return h;
}

BoundaryMesh discretize(const ParametricCurve& curve, int N) {
    if (N < 16 || N % 2 != 0)
        throw std::domain_error("discretize: N must be even and >= 16");
    BoundaryMesh m;
    m.shape = curve.name;
    m.N = N;
    m.theta.resize(N);
    m.nodes.resize(N, 2);
    m.tangent.resize(N, 2);
    m.normal.resize(N, 2);
    m.jacobian.resize(N);
    m.curvature.resize(N);
    m.weights.resize(N);
    for (int i = 0; i < N; ++i) {
        const double t = kTwoPi * i / N;
        m.theta[i] = t;
        const Vec2 x = curve.position(t), d1 = curve.d1(t), d2 = curve.d2(t);
        const double J = d1.norm();
        if (J < 1e-12)
            throw std::domain_error("discretize: degenerate parametrization");
        m.nodes.row(i) = x;
        m.tangent.row(i) = d1;
        m.jacobian[i] = J;
        // outward normal for a CCW curve: tangent rotated by -pi/2
        m.normal.row(i) = Vec2(d1.y(), -d1.x()) / J;
        m.curvature[i] = (d1.x() * d2.y() - d1.y() * d2.x()) / (J * J * J);
        m.weights[i] = kTwoPi / N * J;
    }
    if (signed_area(m) <= 0)
        throw std::domain_error("discretize: curve must be counterclockwise");
    return m;
}

}  // namespace plasmode::geometry
