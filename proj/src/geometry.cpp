#include "calabikit/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "calabikit/finite_diff.hpp"
#include "calabikit/util.hpp"

namespace calabikit {

DeckMap DeckMap::scaling(int nvars, Complex factor, std::string name) {
    DeckMap d;
    d.kind = Kind::Linear;
    d.name = std::move(name);
    d.apply = [factor](const CVec& z) { return (factor * z).eval(); };
    d.jacobian = [factor, nvars](const CVec&) { return (factor * CMat::Identity(nvars, nvars)).eval(); };
    return d;
}

DeckMap DeckMap::diagonal(const CVec& factors, std::string name) {
    DeckMap d;
    d.kind = Kind::Linear;
    d.name = std::move(name);
    d.apply = [factors](const CVec& z) { return z.cwiseProduct(factors).eval(); };
    d.jacobian = [factors](const CVec&) { return CMat(factors.asDiagonal()); };
    return d;
}

DeckMap compose(const DeckMap& outer, const DeckMap& inner) {
    DeckMap d;
    if (outer.kind == DeckMap::Kind::Linear && inner.kind == DeckMap::Kind::Linear)
        d.kind = DeckMap::Kind::Linear;
    else if (outer.kind == DeckMap::Kind::MoebiusComponent || inner.kind == DeckMap::Kind::MoebiusComponent)
        d.kind = DeckMap::Kind::MoebiusComponent;
    else if (outer.kind == DeckMap::Kind::Heisenberg || inner.kind == DeckMap::Kind::Heisenberg)
        d.kind = DeckMap::Kind::Heisenberg;
    else
        d.kind = DeckMap::Kind::Affine;
    d.name = outer.name + "*" + inner.name;
    const auto oa = outer.apply, ia = inner.apply;
    const auto oj = outer.jacobian, ij = inner.jacobian;
    d.apply = [oa, ia](const CVec& z) { return oa(ia(z)); };
    d.jacobian = [oa, ia, oj, ij](const CVec& z) { return (oj(ia(z)) * ij(z)).eval(); };
    return d;
}

MetricEval metric_from_potential(const PotentialField& phi, const CVec& point, double step) {
    if (!phi.in_domain(point)) throw std::domain_error("metric_from_potential: point outside domain");
    MetricEval eval;
    if (phi.exact_series) {
        const CVec local = phi.center.size() ? (point - phi.center).eval() : point;
        eval.coeff = phi.exact_series->hessian(local);
    } else {
        // the stencil needs a guarded neighbourhood of radius 2*step
        Eigen::VectorXd x = to_real(point);
        for (Eigen::Index r = 0; r < x.size(); ++r)
            for (const double off : {-2.0 * step, 2.0 * step}) {
                Eigen::VectorXd probe = x;
                probe(r) += off;
                if (!phi.in_domain(to_complex(probe)))
                    throw std::domain_error("metric_from_potential: stencil leaves the domain");
            }
        eval.coeff = fd::complex_hessian(phi.evaluate, point, step);
    }
    Eigen::SelfAdjointEigenSolver<CMat> solver(0.5 * (eval.coeff + eval.coeff.adjoint()));
    eval.positive_definite = solver.eigenvalues().minCoeff() > 0.0;
    return eval;
}

namespace {

// Real 2-form coefficients of omega = sum_ab i h_ab dz_a ^ dzbar_b against
// e_{2a} = dx_a, e_{2a+1} = dy_a; antisymmetric 2n x 2n matrix.
Eigen::MatrixXd two_form_coefficients(const HermitianMetricField& metric, const CVec& z) {
    const int n = metric.nvars;
    const CMat h = metric.coeff(z);
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    const auto add = [&](int p, int q, Complex c) {
        w(p, q) += c;
        w(q, p) -= c;
    };
    const Complex i(0.0, 1.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Complex c = h(a, b);
            add(2 * a, 2 * b, i * c);          // dx_a ^ dx_b
            add(2 * a, 2 * b + 1, c);          // dx_a ^ dy_b
            add(2 * a + 1, 2 * b, -c);         // dy_a ^ dx_b
            add(2 * a + 1, 2 * b + 1, i * c);  // dy_a ^ dy_b
        }
    return w.real();
}

}  // namespace

double lck_residual(const HermitianMetricField& metric, const CVec& point, double step) {
    if (!metric.has_lee_form()) throw std::logic_error("lck_residual: metric has no Lee form");
    if (!metric.in_domain(point)) throw std::domain_error("lck_residual: point outside domain");
    const int m = 2 * metric.nvars;
    const Eigen::VectorXd x = to_real(point);

    const auto w_at = [&](const Eigen::VectorXd& p) { return two_form_coefficients(metric, to_complex(p)); };
    const Eigen::MatrixXd w = w_at(x);
    std::vector<Eigen::MatrixXd> dw(static_cast<size_t>(m));
    for (int r = 0; r < m; ++r) {
        Eigen::VectorXd p = x;
        const auto slice = [&](double t) {
            p(r) = x(r) + t;
            return w_at(p);
        };
        dw[static_cast<size_t>(r)] =
            (slice(-2 * step) - 8 * slice(-step) + 8 * slice(step) - slice(2 * step)) / (12 * step);
    }
    const Eigen::VectorXd theta = metric.lee_form(point);

    double residual = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k) {
                const double d_omega = dw[static_cast<size_t>(i)](j, k) - dw[static_cast<size_t>(j)](i, k) +
                                       dw[static_cast<size_t>(k)](i, j);
                const double theta_omega = theta(i) * w(j, k) - theta(j) * w(i, k) + theta(k) * w(i, j);
                residual = std::max(residual, std::abs(d_omega - theta_omega));
            }
    return residual;
}

HomothetyResult homothety_factor(const DeckMap& gamma, const HermitianMetricField& metric,
                                 const std::vector<CVec>& samples, double spread_tol) {
    HomothetyResult result;
    std::vector<CMat> pullbacks, targets;
    for (const CVec& z : samples) {
        const CVec image = gamma.apply(z);
        if (!metric.in_domain(z) || !metric.in_domain(image)) continue;
        const CMat jac = gamma.jacobian(z);
        pullbacks.push_back(jac.adjoint() * metric.coeff(image) * jac);
        targets.push_back(metric.coeff(z));
    }
    if (pullbacks.empty()) return result;

    double num = 0.0, den = 0.0;
    for (size_t s = 0; s < pullbacks.size(); ++s) {
        num += pullbacks[s].cwiseProduct(targets[s].conjugate()).sum().real();
        den += targets[s].cwiseAbs2().sum();
    }
    result.factor = num / den;
    for (size_t s = 0; s < pullbacks.size(); ++s) {
        const double scale = std::abs(result.factor) * targets[s].cwiseAbs().maxCoeff();
        const double dev = (pullbacks[s] - result.factor * targets[s]).cwiseAbs().maxCoeff();
        result.spread = std::max(result.spread, dev / scale);
    }
    result.homothetic = result.factor > 0.0 && result.spread <= spread_tol;
    return result;
}

namespace {

// is m*l = n1*b1 + ... + nk*bk solvable with 1 <= m <= bound, |n_i| <= bound?
bool rationally_dependent(double l, const std::vector<double>& basis, int bound, double tol) {
    const auto matches = [&](double lhs, double rhs) {
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        return std::abs(lhs - rhs) <= tol * scale;
    };
    if (basis.empty()) return matches(l, 0.0);
    if (basis.size() == 1) {
        for (int m = 1; m <= bound; ++m) {
            const double n = std::round(m * l / basis[0]);
            if (std::abs(n) <= bound && matches(m * l, n * basis[0])) return true;
        }
        return false;
    }
    if (basis.size() == 2) {
        for (int m = 1; m <= bound; ++m)
            for (int n1 = -bound; n1 <= bound; ++n1) {
                const double rest = m * l - n1 * basis[0];
                const double n2 = std::round(rest / basis[1]);
                if (std::abs(n2) <= bound && matches(m * l, n1 * basis[0] + n2 * basis[1])) return true;
            }
        return false;
    }
    // beyond two independent generators, fall back to pairwise checks
    for (const double b : basis)
        if (rationally_dependent(l, {b}, bound, tol)) return true;
    return false;
}

}  // namespace

CharacterRankResult character_rank(const std::vector<double>& factors, int denominator_bound, double tol) {
    std::vector<double> logs;
    for (const double f : factors) {
        if (!(f > 0.0)) throw std::invalid_argument("character_rank: factors must be positive");
        const double l = std::log(f);
        if (std::abs(l) > tol) logs.push_back(l);
    }
    std::sort(logs.begin(), logs.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });

    CharacterRankResult result;
    std::vector<double> basis;
    for (const double l : logs) {
        if (rationally_dependent(l, basis, denominator_bound, tol)) continue;
        basis.push_back(l);
    }
    result.rank = static_cast<int>(basis.size());
    // independence of a second generator is only ever concluded by the
    // bounded search
    result.heuristic = result.rank >= 2;
    result.label = result.heuristic ? "rank >= " + std::to_string(result.rank) + " (heuristic)"
                                    : "rank = " + std::to_string(result.rank);
    return result;
}

}  // namespace calabikit
