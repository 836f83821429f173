#include <doctest.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>

#include "plasmode/geometry.hpp"

using namespace plasmode::geometry;

namespace {
// perimeters from 30-digit arbitrary-precision quadrature
constexpr double kPerimEllipse = 21.010044539689001;
constexpr double kPerimDiamond = 12.689838396819343;
constexpr double kPerimFlower = 18.034407001030286;
}  // namespace

TEST_CASE("perimeters of named shapes") {
    CHECK(discretize(make_shape("ellipse"), 256).perimeter() ==
          doctest::Approx(kPerimEllipse).epsilon(1e-12));
    CHECK(discretize(make_shape("diamond"), 256).perimeter() ==
          doctest::Approx(kPerimDiamond).epsilon(1e-12));
    CHECK(discretize(make_shape("flower"), 256).perimeter() ==
          doctest::Approx(kPerimFlower).epsilon(1e-12));
}

TEST_CASE("unit circle geometry is exact") {
    ShapeParams p;
    p.a = p.b = 1.0;
    const auto mesh = discretize(make_shape("ellipse", p), 64);
    for (int i = 0; i < mesh.N; ++i) {
        CHECK(mesh.jacobian[i] == doctest::Approx(1.0));
        CHECK(mesh.curvature[i] == doctest::Approx(1.0));
        // outward normal equals the position on the unit circle
        CHECK(mesh.normal(i, 0) == doctest::Approx(mesh.nodes(i, 0)));
        CHECK(mesh.normal(i, 1) == doctest::Approx(mesh.nodes(i, 1)));
    }
    CHECK(signed_area(mesh) == doctest::Approx(std::numbers::pi).epsilon(1e-13));
}

TEST_CASE("ellipse curvature analytic") {
    const auto mesh = discretize(make_shape("ellipse"), 128);
    // kappa(t) = a b / (a^2 sin^2 + b^2 cos^2)^{3/2}, a=1, b=5
    for (int i = 0; i < mesh.N; i += 7) {
        const double t = mesh.theta[i];
        const double s = std::sin(t), c = std::cos(t);
        const double want = 5.0 / std::pow(s * s + 25.0 * c * c, 1.5);
        CHECK(mesh.curvature[i] == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("signed area of the ellipse is pi a b") {
    const auto mesh = discretize(make_shape("ellipse"), 256);
    CHECK(signed_area(mesh) ==
          doctest::Approx(std::numbers::pi * 5.0).epsilon(1e-13));
}

TEST_CASE("discretize input validation") {
    const auto curve = make_shape("ellipse");
    CHECK_THROWS_AS(discretize(curve, 15), std::domain_error);
    CHECK_THROWS_AS(discretize(curve, 14), std::domain_error);
    CHECK_THROWS_AS(make_shape("pentagon"), std::domain_error);
    // clockwise curve rejected
    ParametricCurve cw = curve;
    cw.position = [&curve](double t) { return curve.position(-t); };
    cw.d1 = [&curve](double t) { return Vec2(-curve.d1(-t)); };
    cw.d2 = [&curve](double t) { return curve.d2(-t); };
    CHECK_THROWS_AS(discretize(cw, 64), std::domain_error);
}

TEST_CASE("custom curve round-trips a named shape") {
    const auto curve = make_shape("flower");
    std::vector<Vec2> samples;
    const int M = 128;
    for (int i = 0; i < M; ++i)
        samples.push_back(curve.position(2.0 * std::numbers::pi * i / M));
    const auto custom = make_custom_curve(samples);
    const auto m1 = discretize(curve, M);
    const auto m2 = discretize(custom, M);
    CHECK((m1.nodes - m2.nodes).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((m1.jacobian - m2.jacobian).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((m1.curvature - m2.curvature).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("custom curve file parsing") {
    const std::string path = "test_curve.txt";
    {
        std::ofstream f(path);
        f << std::setprecision(17);
        f << "# unit circle samples\n";
        const int M = 32;
        for (int i = 0; i < M; ++i) {
            const double t = 2.0 * std::numbers::pi * i / M;
            f << std::cos(t) << " " << std::sin(t) << "\n";
        }
    }
    const auto mesh = discretize(load_custom_curve(path), 32);
    CHECK(mesh.perimeter() ==
          doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-10));
    CHECK_THROWS(load_custom_curve("no_such_file.txt"));
}

TEST_CASE("mesh spacing scales like perimeter over N") {
    const auto mesh = discretize(make_shape("ellipse"), 256);
    CHECK(mesh.mesh_spacing() < 4.0 * mesh.perimeter() / mesh.N);
    CHECK(mesh.mesh_spacing() > 0.5 * mesh.perimeter() / mesh.N);
}
