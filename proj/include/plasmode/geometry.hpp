#pragma once

// Closed analytic boundary curves in nondimensional B-coordinates and
// their equispaced trapezoid/Kress discretization.

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace plasmode::geometry {

using Vec2 = Eigen::Vector2d;

// 2pi-periodic parametrization theta -> zeta(theta), counterclockwise.
struct ParametricCurve {
    std::string name;
    std::function<Vec2(double)> position;
    std::function<Vec2(double)> d1;  // zeta'
    std::function<Vec2(double)> d2;  // zeta''
};

// Built-in shapes:
//   "ellipse": (a cos t, b sin t), defaults a=1, b=5
//   "diamond": 2(e^{it} + c e^{-3it}) with c = 0.066 (rounded diamond)
//   "flower":  polar radius 2 + amp cos(p t), defaults amp=0.6, p=5
struct ShapeParams {
    double a = 1.0, b = 5.0;        // ellipse semi-axes
    double diamond_c = 0.066;       // diamond perturbation coefficient
    double flower_base = 2.0;       // flower base radius
    double flower_amp = 0.6;        // flower petal amplitude
    int flower_petals = 5;
};

ParametricCurve make_shape(const std::string& kind,
                           const ShapeParams& params = {});

// Trigonometric-interpolation curve through an even number of sample
// points (one "x1 x2" pair per line, comments with '#'). Derivatives come
// from spectral differentiation of the interpolant.
ParametricCurve make_custom_curve(const std::vector<Vec2>& samples,
                                  const std::string& name = "custom");
ParametricCurve load_custom_curve(const std::string& path);

struct BoundaryMesh {
    std::string shape;
    int N = 0;
    Eigen::VectorXd theta;      // nodes 2*pi*i/N
    Eigen::MatrixX2d nodes;     // zeta(theta_i)
    Eigen::MatrixX2d tangent;   // zeta'(theta_i)
    Eigen::MatrixX2d normal;    // unit outward normal
    Eigen::VectorXd jacobian;   // |zeta'(theta_i)|
    Eigen::VectorXd curvature;  // signed curvature kappa(theta_i)
    Eigen::VectorXd weights;    // trapezoid weights (2pi/N)|zeta'|

    double perimeter() const { return weights.sum(); }
    double mesh_spacing() const;  // max arclength gap between nodes
};

// Nystrom mesh with N equispaced parameter nodes. N must be even and
// >= 16; the curve must be counterclockwise (positive signed area) and
// nondegenerate (|zeta'| bounded away from zero).
BoundaryMesh discretize(const ParametricCurve& curve, int N);

double signed_area(const BoundaryMesh& mesh);

}  // namespace plasmode::geometry
