#pragma once

#include <Eigen/Dense>
#include <functional>

namespace calabikit::fd {

// 4th-order central stencils on a uniform grid
double d1(const std::function<double(double)>& f, double x, double h);
double d2(const std::function<double(double)>& f, double x, double h);
double d3(const std::function<double(double)>& f, double x, double h);
double nth(const std::function<double(double)>& f, double x, double h, int order);

// Real Hessian of f: R^m -> R (pure entries by the 5-point second-derivative
// stencil, mixed entries by composing two first-derivative stencils).
Eigen::MatrixXd hessian(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x, double h);

// Complex Hessian d^2 f / dz_a dzbar_b of a real scalar on C^n,
// assembled from the real Hessian in (x_1, y_1, ..., x_n, y_n).
Eigen::MatrixXcd complex_hessian(const std::function<double(const Eigen::VectorXcd&)>& f, const Eigen::VectorXcd& z,
                                 double h);

// Gradient along real coordinate r
double partial(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x, int r, double h);

}  // namespace calabikit::fd
