#include "calabikit/surfaces.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "calabikit/calabi.hpp"
#include "calabikit/finite_diff.hpp"

namespace calabikit {

namespace {
const Complex kI(0.0, 1.0);
}

GOParams GOParams::from_moduli(double alpha_abs, double beta_abs) {
    if (!(alpha_abs >= beta_abs && beta_abs > 1.0))
        throw std::invalid_argument("GOParams: requires |alpha| >= |beta| > 1");
    const double la = std::log(alpha_abs), lb = std::log(beta_abs);
    GOParams p;
    p.a = 2.0 * la / (la + lb);
    p.b = 2.0 * lb / (la + lb);
    return p;
}

GOParams GOParams::from_exponents(double a, double b) {
    if (std::abs(a + b - 2.0) > 1e-12 || !(a >= 1.0 && b > 0.0))
        throw std::invalid_argument("GOParams: requires a + b = 2 and a >= 1 >= b > 0");
    return GOParams{a, b};
}

double go_potential_radial(const GOParams& params, double t1, double t2) {
    const double a = params.a, b = params.b;
    const auto lhs = [&](double phi) { return t1 * std::pow(phi, -a) + t2 * std::pow(phi, -b); };

    if (t1 >= 0.0) {
        if (t1 + t2 <= 0.0) throw std::domain_error("go_potential: point too close to the origin");
        // strictly decreasing in log phi; the bracket top makes each term <= 1/2
        double hi = std::log(std::max({t1 > 0.0 ? std::pow(2.0 * t1, 1.0 / a) : 1.0,
                                       t2 > 0.0 ? std::pow(2.0 * t2, 1.0 / b) : 1.0, 1.0}));
        double lo = std::log(1e-300);
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (lhs(std::exp(mid)) > 1.0 ? lo : hi) = mid;
        }
        return std::exp(0.5 * (lo + hi));
    }

    // analytic continuation to slightly negative t1: Newton from the t1 = 0 root
    double phi = go_potential_radial(params, 0.0, t2);
    for (int it = 0; it < 100; ++it) {
        const double f = lhs(phi) - 1.0;
        if (std::abs(f) < 1e-15) break;
        const double df = -a * t1 * std::pow(phi, -a - 1.0) - b * t2 * std::pow(phi, -b - 1.0);
        const double next = phi - f / df;
        phi = next > 0.0 ? next : 0.5 * phi;
    }
    return phi;
}

double go_potential(const GOParams& params, const CVec& z) {
    if (z.size() != 2) throw std::invalid_argument("go_potential: expected a point of C^2");
    if (z.norm() < 1e-8) throw std::domain_error("go_potential: the origin is excluded");
    return go_potential_radial(params, std::norm(z(0)), std::norm(z(1)));
}

GOJet go_jet(const GOParams& params, double t1, double t2) {
    const double a = params.a, b = params.b;
    GOJet jet;
    const double phi = go_potential_radial(params, t1, t2);
    jet.phi = phi;
    const double pa = std::pow(phi, -a), pb = std::pow(phi, -b);
    const double g = a * t1 * pa / phi + b * t2 * pb / phi;
    const double h = a * (a + 1.0) * t1 * pa / (phi * phi) + b * (b + 1.0) * t2 * pb / (phi * phi);
    const double p1 = pa / g, p2 = pb / g;
    jet.d1[0] = p1;
    jet.d1[1] = p2;
    const double g1 = a * pa / phi - h * p1;
    const double g2 = b * pb / phi - h * p2;
    jet.d2[0][0] = (-a * pa / phi * p1 * g - pa * g1) / (g * g);
    jet.d2[0][1] = (-a * pa / phi * p2 * g - pa * g2) / (g * g);
    jet.d2[1][0] = jet.d2[0][1];
    jet.d2[1][1] = (-b * pb / phi * p2 * g - pb * g2) / (g * g);
    return jet;
}

GODerivativeCheck go_derivative_check(const GOParams& params, Complex s, int j) {
    if (j < 1 || j > 3) throw std::invalid_argument("go_derivative_check: j must be 1, 2 or 3");
    if (std::abs(s) == 0.0) throw std::invalid_argument("go_derivative_check: s must be nonzero");
    const double a = params.a, b = params.b;
    const double t2 = std::norm(s);
    const double phi0 = go_potential_radial(params, 0.0, t2);

    GODerivativeCheck check;
    if (j == 1) {
        check.closed_form = std::pow(phi0, b - a + 1.0) / (t2 * b);
    } else {
        check.closed_form = std::pow(phi0, static_cast<double>(j) * (b - a) + 1.0) /
                            (std::pow(t2, j) * std::pow(b, j)) * go_eigenvalue_product(a, b, j);
    }

    // the potential rotates out to a function of t = |z1|^2, and the closed
    // forms above are normalized as the j-th radial derivative at t = 0
    static const double rel_step[4] = {0.0, 1e-3, 1e-2, 2e-2};
    const double step = rel_step[j] * std::max(1.0, t2);
    check.finite_difference =
        fd::nth([&](double t) { return go_potential_radial(params, t, t2); }, 0.0, step, j);
    return check;
}

namespace {

CVec annulus_point(Rng& rng, double rmin, double rmax) {
    CVec z(2);
    do {
        z(0) = rng.annulus(rmin, rmax);
        z(1) = rng.annulus(rmin, rmax);
    } while (z.norm() < rmin);
    return z;
}

// ---- diagonal Hopf (implicit potential) ----

Surface build_hopf(const SurfaceSpec& spec, int degree) {
    const double alpha_abs = std::abs(spec.alpha), beta_abs = std::abs(spec.beta);
    const GOParams params = GOParams::from_moduli(alpha_abs, beta_abs);
    const bool flat = std::abs(params.a - 1.0) < 1e-14;

    Surface s;
    s.spec = spec;
    s.go = params;
    const auto guard = [](const CVec& z) { return z.norm() >= 1e-8; };

    s.covering_potential.nvars = 2;
    s.covering_potential.domain_guard = guard;
    s.covering_potential.center = CVec::Zero(2);
    s.covering_potential.evaluate = [params](const CVec& z) { return go_potential(params, z); };
    if (flat) {
        BiSeries series = BiSeries::abs2_variable(2, degree, 0) + BiSeries::abs2_variable(2, degree, 1);
        s.covering_potential.exact_series = series.mark_real_valued();
    }

    const auto metric_coeff = [params](const CVec& z) {
        const GOJet jet = go_jet(params, std::norm(z(0)), std::norm(z(1)));
        CMat h(2, 2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                h(a, b) = jet.d2[a][b] * std::conj(z(a)) * z(b) + (a == b ? jet.d1[a] : 0.0);
        return h;
    };
    s.covering_metric = {2, metric_coeff, nullptr, guard};

    const auto lck_coeff = [params, metric_coeff](const CVec& z) {
        return (metric_coeff(z) / go_potential(params, z)).eval();
    };
    const auto lck_lee = [params](const CVec& z) {
        const GOJet jet = go_jet(params, std::norm(z(0)), std::norm(z(1)));
        Eigen::VectorXd theta(4);
        theta << jet.d1[0] * 2.0 * z(0).real(), jet.d1[0] * 2.0 * z(0).imag(),
            jet.d1[1] * 2.0 * z(1).real(), jet.d1[1] * 2.0 * z(1).imag();
        return (-theta / jet.phi).eval();
    };
    s.lck_metric = {2, lck_coeff, lck_lee, guard};

    CVec diag(2);
    diag << spec.alpha, spec.beta;
    s.deck.push_back(DeckMap::diagonal(diag, "gamma"));

    if (flat) {
        s.immersion = identity_map(2);
        s.immersion_target = s.covering_metric;
        s.immersion_potential = s.covering_potential;
        s.immersion_deck = s.deck;
    } else {
        s.notes.push_back("no covering immersion: the expansion has a negative eigenvalue (see the witness)");
    }

    s.sample_point = [](Rng& rng) { return annulus_point(rng, 0.35, 1.8); };
    s.sample_immersion_point = s.sample_point;
    return s;
}

// ---- classical Hopf with the homogeneous-degree-k potential ----

Surface build_parton(const SurfaceSpec& spec, int degree) {
    const int k = spec.k;
    Surface s;
    s.spec = spec;

    s.covering_potential.nvars = 2;
    s.covering_potential.center = CVec::Zero(2);
    s.covering_potential.evaluate = [k](const CVec& z) {
        return std::pow(z.squaredNorm(), k) / static_cast<double>(k);
    };
    {
        BiSeries sum = BiSeries::abs2_variable(2, degree, 0) + BiSeries::abs2_variable(2, degree, 1);
        BiSeries power = sum;
        for (int m = 1; m < k; ++m) power = power * sum;
        power *= 1.0 / static_cast<double>(k);
        s.covering_potential.exact_series = power.mark_real_valued();
    }

    const auto metric_coeff = [k](const CVec& z) {
        const double sum = z.squaredNorm();
        const double skm1 = std::pow(sum, k - 1);
        const double skm2 = k >= 2 ? std::pow(sum, k - 2) : 0.0;
        CMat h(2, 2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                h(a, b) = (k - 1) * skm2 * std::conj(z(a)) * z(b) + (a == b ? skm1 : 0.0);
        return h;
    };
    const auto guard = [](const CVec& z) { return z.norm() >= 1e-8; };
    s.covering_metric = {2, metric_coeff, nullptr, nullptr};

    const auto lck_coeff = [k, metric_coeff](const CVec& z) {
        return (metric_coeff(z) * std::pow(z.squaredNorm(), -k)).eval();
    };
    const auto lck_lee = [k](const CVec& z) {
        const double sum = z.squaredNorm();
        Eigen::VectorXd theta(4);
        theta << z(0).real(), z(0).imag(), z(1).real(), z(1).imag();
        return (-2.0 * k / sum * theta).eval();
    };
    s.lck_metric = {2, lck_coeff, lck_lee, guard};

    s.deck.push_back(DeckMap::scaling(2, spec.alpha, "gamma"));
    s.immersion = parton_map(k);
    s.immersion_target = s.covering_metric;
    s.immersion_potential = s.covering_potential;
    s.immersion_deck = s.deck;
    s.notes.push_back("deck equivariance is the measured scalar alpha^k");

    s.sample_point = [](Rng& rng) { return annulus_point(rng, 0.35, 1.8); };
    s.sample_immersion_point = s.sample_point;
    return s;
}

// ---- properly elliptic: potential 1/|Im(z1 conj(z2))| on the series domain ----

Surface build_elliptic(const SurfaceSpec& spec, int) {
    Surface s;
    s.spec = spec;

    const auto psi = [](const CVec& z) { return (z(0) * std::conj(z(1))).imag(); };
    const auto guard = [psi](const CVec& z) { return psi(z) < -1e-9; };

    s.covering_potential.nvars = 2;
    s.covering_potential.domain_guard = guard;
    s.covering_potential.center = CVec::Zero(2);
    s.covering_potential.evaluate = [psi](const CVec& z) { return -1.0 / psi(z); };

    const auto metric_coeff = [psi](const CVec& z) {
        const double p = psi(z);
        // dpsi against (z1, z2) and (zbar1, zbar2)
        const Complex dz[2] = {std::conj(z(1)) / (2.0 * kI), -std::conj(z(0)) / (2.0 * kI)};
        const Complex dzb[2] = {-z(1) / (2.0 * kI), z(0) / (2.0 * kI)};
        CMat hpsi = CMat::Zero(2, 2);
        hpsi(0, 1) = 1.0 / (2.0 * kI);
        hpsi(1, 0) = -1.0 / (2.0 * kI);
        CMat h(2, 2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                h(a, b) = -2.0 / (p * p * p) * dz[a] * dzb[b] + hpsi(a, b) / (p * p);
        return h;
    };
    s.covering_metric = {2, metric_coeff, nullptr, guard};

    const auto lck_coeff = [psi, metric_coeff](const CVec& z) { return (-psi(z) * metric_coeff(z)).eval(); };
    const auto lck_lee = [psi](const CVec& z) {
        // psi = y1 x2 - x1 y2
        Eigen::VectorXd theta(4);
        theta << -z(1).imag(), z(1).real(), z(0).imag(), -z(0).real();
        return (theta / psi(z)).eval();
    };
    s.lck_metric = {2, lck_coeff, lck_lee, guard};

    for (int n : {2, 3}) s.deck.push_back(DeckMap::scaling(2, static_cast<double>(n), std::to_string(n) + "id"));

    s.immersion = elliptic_map();
    s.immersion_target = s.covering_metric;
    s.immersion_deck = s.deck;
    s.notes.push_back("pullback matches the covering metric up to the fitted constant c (convention factor)");
    s.notes.push_back("not Hopf-induced: the homothety character has rank 2 (no proper potential)");

    s.sample_point = [](Rng& rng) {
        // |ratio| <= 0.8 parametrization: z1 + i z2 = r * zeta, z1 - i z2 = zeta
        const Complex r = rng.disc(0.8);
        const Complex zeta = rng.annulus(0.5, 2.0);
        CVec z(2);
        z(0) = 0.5 * zeta * (1.0 + r);
        z(1) = 0.5 * kI * zeta * (1.0 - r);
        return z;
    };
    s.sample_immersion_point = s.sample_point;
    return s;
}

// ---- Kodaira: potential exp(u/2), u = |z|^2/2 + Im w ----

Surface build_kodaira(const SurfaceSpec& spec, int degree) {
    Surface s;
    s.spec = spec;

    const auto u_half = [](const CVec& z) { return 0.25 * std::norm(z(0)) + 0.5 * z(1).imag(); };

    s.covering_potential.nvars = 2;
    s.covering_potential.center = CVec::Zero(2);
    s.covering_potential.evaluate = [u_half](const CVec& z) { return std::exp(u_half(z)); };
    {
        // u/2 = z zbar / 4 - i w / 4 + i wbar / 4
        BiSeries arg = 0.25 * BiSeries::abs2_variable(2, degree, 0);
        arg += (-kI / 4.0) * BiSeries::variable(2, degree, 1);
        arg += (kI / 4.0) * BiSeries::conj_variable(2, degree, 1);
        arg.mark_real_valued();
        s.covering_potential.exact_series = exp(arg);
    }

    const auto metric_coeff = [u_half](const CVec& z) {
        const double e = std::exp(u_half(z)) / 16.0;
        CMat h(2, 2);
        h(0, 0) = e * (std::norm(z(0)) + 4.0);
        h(0, 1) = e * kI * std::conj(z(0));
        h(1, 0) = -e * kI * z(0);
        h(1, 1) = e;
        return h;
    };
    s.covering_metric = {2, metric_coeff, nullptr, nullptr};

    const auto lck_coeff = [u_half, metric_coeff](const CVec& z) {
        return (std::exp(-u_half(z)) * metric_coeff(z)).eval();
    };
    const auto lck_lee = [](const CVec& z) {
        Eigen::VectorXd theta(4);
        theta << -0.5 * z(0).real(), -0.5 * z(0).imag(), 0.0, -0.5;
        return theta;
    };
    s.lck_metric = {2, lck_coeff, lck_lee, nullptr};

    // lattice action in the holomorphic chart: (z, w) -> (z + p, w + q + r z)
    const auto heisenberg = [](double a, double b, double c, std::string name) {
        const Complex p = Complex(a, b) / std::sqrt(2.0);
        const Complex q = Complex(c - 0.5 * a * b, -0.25 * (a * a + b * b));
        const Complex r = -kI / std::sqrt(2.0) * Complex(a, -b);
        DeckMap d;
        d.kind = DeckMap::Kind::Heisenberg;
        d.name = std::move(name);
        d.apply = [p, q, r](const CVec& z) {
            CVec out(2);
            out(0) = z(0) + p;
            out(1) = z(1) + q + r * z(0);
            return out;
        };
        d.jacobian = [r](const CVec&) {
            CMat j = CMat::Identity(2, 2);
            j(1, 0) = r;
            return j;
        };
        return d;
    };
    s.deck.push_back(heisenberg(1.0, 0.0, 0.0, "g1"));
    s.deck.push_back(heisenberg(0.0, 1.0, 0.0, "g2"));
    s.deck.push_back(heisenberg(0.0, 0.0, 1.0, "g3"));
    {
        DeckMap vertical;
        vertical.kind = DeckMap::Kind::Affine;
        vertical.name = "g0";
        vertical.apply = [](const CVec& z) {
            CVec out(2);
            out(0) = z(0);
            out(1) = z(1) + kI;
            return out;
        };
        vertical.jacobian = [](const CVec&) { return CMat::Identity(2, 2); };
        s.deck.push_back(vertical);
    }

    s.immersion = kodaira_map();
    s.immersion_target = s.covering_metric;
    s.immersion_potential = s.covering_potential;
    s.immersion_deck = s.deck;
    s.notes.push_back("lattice generators act by Gram-preserving unitaries; no scalar descent");

    s.sample_point = [](Rng& rng) {
        CVec z(2);
        z(0) = rng.disc(2.0);
        z(1) = Complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        return z;
    };
    s.sample_immersion_point = s.sample_point;
    return s;
}

// ---- Inoue-Bombieri S_M with the Tricerri metric ----

Surface build_inoue(const SurfaceSpec& spec, int degree) {
    const InoueEigenData eigen = inoue_eigen_data(spec.inoue_m);
    Surface s;
    s.spec = spec;

    // half-plane frame: (z, w) with y2 = Im w > 0
    const auto guard = [](const CVec& z) { return z(1).imag() > 1e-9; };

    s.covering_potential.nvars = 2;
    s.covering_potential.domain_guard = guard;
    s.covering_potential.center = CVec::Zero(2);
    s.covering_potential.evaluate = [](const CVec& z) { return std::norm(z(0)) + 0.5 / z(1).imag(); };

    const auto metric_coeff = [](const CVec& z) {
        const double y2 = z(1).imag();
        CMat h = CMat::Zero(2, 2);
        h(0, 0) = 1.0;
        h(1, 1) = 0.25 / (y2 * y2 * y2);
        return h;
    };
    s.covering_metric = {2, metric_coeff, nullptr, guard};

    const auto lck_coeff = [](const CVec& z) {
        const double y2 = z(1).imag();
        CMat h = CMat::Zero(2, 2);
        h(0, 0) = y2;
        h(1, 1) = 0.25 / (y2 * y2);
        return h;
    };
    const auto lck_lee = [](const CVec& z) {
        Eigen::VectorXd theta = Eigen::VectorXd::Zero(4);
        theta(3) = 1.0 / z(1).imag();
        return theta;
    };
    s.lck_metric = {2, lck_coeff, lck_lee, guard};

    {
        CVec diag(2);
        diag << eigen.mu, Complex(eigen.rho, 0.0);
        s.deck.push_back(DeckMap::diagonal(diag, "f0"));
        for (int j = 0; j < 3; ++j) {
            DeckMap t;
            t.kind = DeckMap::Kind::Affine;
            t.name = "f" + std::to_string(j + 1);
            const Complex mz = eigen.complex_eigenvector(j);
            const Complex mw = eigen.real_eigenvector(j);
            t.apply = [mz, mw](const CVec& z) {
                CVec out(2);
                out(0) = z(0) + mz;
                out(1) = z(1) + mw;
                return out;
            };
            t.jacobian = [](const CVec&) { return CMat::Identity(2, 2); };
            s.deck.push_back(t);
        }
    }

    // unit-disc frame for the diastasis and the immersion
    const auto disc_guard = [](const CVec& z) { return std::abs(z(1)) < 1.0 - 1e-9; };
    const auto disc_metric = [](const CVec& z) {
        const Complex w = z(1);
        const double q = std::norm(w);
        CMat h = CMat::Zero(2, 2);
        h(0, 0) = 1.0;
        h(1, 1) = 4.0 * std::norm(1.0 + kI * w) / std::pow(1.0 - q, 3);
        return h;
    };
    s.immersion_target = HermitianMetricField{2, disc_metric, nullptr, disc_guard};

    PotentialField diastasis;
    diastasis.nvars = 2;
    diastasis.domain_guard = disc_guard;
    diastasis.center = CVec::Zero(2);
    diastasis.evaluate = [](const CVec& z) {
        const Complex w = z(1);
        const double q = std::norm(w);
        return std::norm(z(0)) + 2.0 * (2.0 + (kI * (w - std::conj(w))).real()) * q / (1.0 - q);
    };
    {
        BiSeries geo(2, degree);
        for (int m = 1; m <= degree; ++m) {
            std::vector<int> e = {0, m};
            geo.set_coeff(MultiIndex(e), MultiIndex(e), 1.0);
        }
        geo.mark_real_valued();
        BiSeries pref = BiSeries::constant(2, degree, 4.0);
        pref += (2.0 * kI) * BiSeries::variable(2, degree, 1);
        pref += (-2.0 * kI) * BiSeries::conj_variable(2, degree, 1);
        pref.mark_real_valued();
        BiSeries d0 = pref * geo + BiSeries::abs2_variable(2, degree, 0);
        diastasis.exact_series = d0.mark_real_valued();
    }
    s.immersion_potential = diastasis;
    s.immersion = inoue_disc_map();

    // deck actions transported to the disc by the Cayley map
    const auto cayley = [](Complex w) { return (w + kI) / (kI * w + 1.0); };
    const auto cayley_inv = [](Complex w) { return (w - kI) / (-kI * w + 1.0); };
    {
        DeckMap f0;
        f0.kind = DeckMap::Kind::MoebiusComponent;
        f0.name = "f0";
        const double rho = eigen.rho;
        const Complex mu = eigen.mu;
        f0.apply = [cayley, cayley_inv, rho, mu](const CVec& z) {
            CVec out(2);
            out(0) = mu * z(0);
            out(1) = cayley_inv(rho * cayley(z(1)));
            return out;
        };
        f0.jacobian = [cayley, rho, mu](const CVec& z) {
            const Complex w = z(1);
            const Complex up = rho * cayley(w);
            const Complex dc = 2.0 / ((kI * w + 1.0) * (kI * w + 1.0));
            const Complex dinv = 2.0 / ((-kI * up + 1.0) * (-kI * up + 1.0));
            CMat j = CMat::Zero(2, 2);
            j(0, 0) = mu;
            j(1, 1) = dinv * rho * dc;
            return j;
        };
        s.immersion_deck.push_back(f0);
    }

    s.notes.push_back("published half-plane and disc normalizations of the w-component differ by a factor 4");
    s.notes.push_back("not Hopf-induced: not of Vaisman diffeomorphism type");

    s.sample_point = [](Rng& rng) {
        CVec z(2);
        z(0) = rng.disc(2.0);
        z(1) = Complex(rng.uniform(-2.0, 2.0), rng.uniform(0.25, 2.5));
        return z;
    };
    s.sample_immersion_point = [](Rng& rng) {
        CVec z(2);
        z(0) = rng.disc(2.0);
        z(1) = rng.disc(0.8);
        return z;
    };
    return s;
}

// ---- the classical Hopf ambient itself ----

Surface build_ambient(const SurfaceSpec& spec, int degree) {
    Surface s;
    s.spec = spec;
    const auto guard = [](const CVec& z) { return z.norm() >= 1e-8; };

    s.covering_potential.nvars = 2;
    s.covering_potential.center = CVec::Zero(2);
    s.covering_potential.evaluate = [](const CVec& z) { return z.squaredNorm(); };
    {
        BiSeries series = BiSeries::abs2_variable(2, degree, 0) + BiSeries::abs2_variable(2, degree, 1);
        s.covering_potential.exact_series = series.mark_real_valued();
    }
    s.covering_metric = {2, [](const CVec&) { return CMat(CMat::Identity(2, 2)); }, nullptr, nullptr};

    const auto lck_coeff = [](const CVec& z) { return (CMat::Identity(2, 2) / z.squaredNorm()).eval(); };
    const auto lck_lee = [](const CVec& z) {
        Eigen::VectorXd theta(4);
        theta << z(0).real(), z(0).imag(), z(1).real(), z(1).imag();
        return (-2.0 / z.squaredNorm() * theta).eval();
    };
    s.lck_metric = {2, lck_coeff, lck_lee, guard};

    s.deck.push_back(DeckMap::scaling(2, spec.alpha, "lambda"));
    s.immersion = identity_map(2);
    s.immersion_target = s.covering_metric;
    s.immersion_potential = s.covering_potential;
    s.immersion_deck = s.deck;

    s.sample_point = [](Rng& rng) { return annulus_point(rng, 0.35, 1.8); };
    s.sample_immersion_point = s.sample_point;
    return s;
}

}  // namespace

InoueEigenData inoue_eigen_data(const Eigen::Matrix3i& m) {
    if (std::lround(m.cast<double>().determinant()) != 1)
        throw std::invalid_argument("inoue matrix must have determinant 1");
    Eigen::EigenSolver<Eigen::Matrix3d> solver(m.cast<double>());
    InoueEigenData data;
    int real_index = -1, complex_index = -1;
    for (int i = 0; i < 3; ++i) {
        const Complex ev = solver.eigenvalues()(i);
        if (std::abs(ev.imag()) < 1e-12 && ev.real() > 1.0) real_index = i;
        if (ev.imag() > 1e-12) complex_index = i;
    }
    if (real_index < 0 || complex_index < 0)
        throw std::invalid_argument("inoue matrix must have a real eigenvalue > 1 and a complex pair");
    data.rho = solver.eigenvalues()(real_index).real();
    data.mu = solver.eigenvalues()(complex_index);
    data.real_eigenvector = solver.eigenvectors().col(real_index).real();
    data.real_eigenvector /= data.real_eigenvector.cwiseAbs().maxCoeff();
    data.complex_eigenvector = solver.eigenvectors().col(complex_index);
    return data;
}

const DeckMap* Surface::find_deck(const std::string& deck_name, bool immersion_frame) const {
    const std::vector<DeckMap>& list = immersion_frame ? immersion_deck : deck;
    for (const DeckMap& d : list)
        if (d.name == deck_name) return &d;
    return nullptr;
}

std::optional<DeckMap> Surface::resolve_deck(const std::string& selector, bool immersion_frame) const {
    const std::vector<DeckMap>& list = immersion_frame ? immersion_deck : deck;
    if (selector.empty() || selector == "gamma" || selector == "default")
        return list.empty() ? std::nullopt : std::optional<DeckMap>(list.front());
    if (const DeckMap* d = find_deck(selector, immersion_frame)) return *d;
    // "<n>id": scaling by the integer n
    if (selector.size() > 2 && selector.substr(selector.size() - 2) == "id") {
        try {
            const double n = std::stod(selector.substr(0, selector.size() - 2));
            return DeckMap::scaling(2, n, selector);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    // "gamma^n": iterated generator
    const auto caret = selector.find('^');
    if (caret != std::string::npos) {
        const DeckMap* base = find_deck(selector.substr(0, caret), immersion_frame);
        if (!base) return std::nullopt;
        const int power = std::stoi(selector.substr(caret + 1));
        if (power < 1) return std::nullopt;
        DeckMap result = *base;
        for (int i = 1; i < power; ++i) result = compose(*base, result);
        result.name = selector;
        return result;
    }
    return std::nullopt;
}

Surface build_surface(const SurfaceSpec& spec, int series_degree) {
    spec.validate();
    Surface s;
    switch (spec.family) {
        case SurfaceSpec::Family::HopfDiagonal: s = build_hopf(spec, series_degree); break;
        case SurfaceSpec::Family::HopfParton: s = build_parton(spec, series_degree); break;
        case SurfaceSpec::Family::ProperlyElliptic: s = build_elliptic(spec, series_degree); break;
        case SurfaceSpec::Family::Kodaira: s = build_kodaira(spec, series_degree); break;
        case SurfaceSpec::Family::InoueSM: s = build_inoue(spec, series_degree); break;
        case SurfaceSpec::Family::HopfAmbient: s = build_ambient(spec, series_degree); break;
    }
    s.name = spec.name();
    return s;
}

}  // namespace calabikit
