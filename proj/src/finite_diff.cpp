#include "calabikit/finite_diff.hpp"

#include <stdexcept>

#include "calabikit/util.hpp"

namespace calabikit::fd {

double d1(const std::function<double(double)>& f, double x, double h) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

double d2(const std::function<double(double)>& f, double x, double h) {
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
}

double d3(const std::function<double(double)>& f, double x, double h) {
    return (f(x - 3 * h) - 8 * f(x - 2 * h) + 13 * f(x - h) - 13 * f(x + h) + 8 * f(x + 2 * h) - f(x + 3 * h)) /
           (8 * h * h * h);
}

double nth(const std::function<double(double)>& f, double x, double h, int order) {
    switch (order) {
        case 1: return d1(f, x, h);
        case 2: return d2(f, x, h);
        case 3: return d3(f, x, h);
        default: throw std::invalid_argument("fd::nth: derivative order must be 1, 2 or 3");
    }
}

double partial(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x, int r, double h) {
    Eigen::VectorXd p = x;
    return d1(
        [&](double t) {
            p(r) = x(r) + t;
            return f(p);
        },
        0.0, h);
}

Eigen::MatrixXd hessian(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x, double h) {
    const int m = static_cast<int>(x.size());
    Eigen::MatrixXd out(m, m);
    for (int r = 0; r < m; ++r) {
        Eigen::VectorXd p = x;
        out(r, r) = d2(
            [&](double t) {
                p(r) = x(r) + t;
                return f(p);
            },
            0.0, h);
        for (int c = r + 1; c < m; ++c) {
            const double v = d1(
                [&](double s) {
                    Eigen::VectorXd q = x;
                    q(c) = x(c) + s;
                    return d1(
                        [&](double t) {
                            q(r) = x(r) + t;
                            return f(q);
                        },
                        0.0, h);
                },
                0.0, h);
            out(r, c) = v;
            out(c, r) = v;
        }
    }
    return out;
}

Eigen::MatrixXcd complex_hessian(const std::function<double(const Eigen::VectorXcd&)>& f, const Eigen::VectorXcd& z,
                                 double h) {
    const auto freal = [&](const Eigen::VectorXd& x) { return f(to_complex(x)); };
    const Eigen::MatrixXd hess = hessian(freal, to_real(z), h);
    const int n = static_cast<int>(z.size());
    Eigen::MatrixXcd out(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double re = 0.25 * (hess(2 * a, 2 * b) + hess(2 * a + 1, 2 * b + 1));
            const double im = 0.25 * (hess(2 * a, 2 * b + 1) - hess(2 * a + 1, 2 * b));
            out(a, b) = {re, im};
        }
    return out;
}

}  // namespace calabikit::fd
