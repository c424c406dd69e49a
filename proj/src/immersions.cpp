#include "calabikit/immersions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "calabikit/util.hpp"

namespace calabikit {

namespace {

// sum_{j>=m} q^j, exact
double geometric_tail(int m, double q) { return std::pow(q, m) / (1.0 - q); }

// sum_{j>=m} j^2 q^j, exact
double weighted_tail(int m, double q) {
    const double md = static_cast<double>(m);
    const double num = md * md - (2.0 * md * md - 2.0 * md - 1.0) * q + (md - 1.0) * (md - 1.0) * q * q;
    return std::pow(q, m) * num / std::pow(1.0 - q, 3);
}

}  // namespace

int ImmersionMap::choose_truncation(const CVec& point) const {
    if (finite()) return component_count - 1;
    double partial = 0.0;
    int upto = -1;
    for (int J = 8; J <= truncation_cap; J = std::min(truncation_cap, J * 2)) {
        for (int j = upto + 1; j <= J; ++j) partial += std::norm(component(j, point));
        upto = J;
        const double bound = tail_bound(J, point);
        if (std::isfinite(bound) && bound < 1e-10 * std::max(partial, 1e-30)) return J;
        if (J == truncation_cap) break;
    }
    return truncation_cap;
}

ValueWithError norm_squared(const ImmersionMap& map, const CVec& point) {
    if (!map.in_domain(point)) throw std::domain_error("norm_squared: point outside domain");
    const int J = map.choose_truncation(point);
    KahanSum<double> sum;
    for (int j = 0; j <= J; ++j) sum.add(std::norm(map.component(j, point)));
    ValueWithError out;
    out.value = sum.value();
    out.error = map.finite() ? 0.0 : map.tail_bound(J, point);
    return out;
}

Complex gram_inner(const ImmersionMap& map, const CVec& x, const CVec& y, double* tail) {
    const int J = std::max(map.choose_truncation(x), map.choose_truncation(y));
    KahanSum<Complex> sum;
    for (int j = 0; j <= J; ++j) sum.add(map.component(j, x) * std::conj(map.component(j, y)));
    if (tail) {
        *tail = map.finite() ? 0.0 : std::sqrt(map.tail_bound(J, x) * map.tail_bound(J, y));
    }
    return sum.value();
}

PullbackEval pullback_metric(const ImmersionMap& map, const CVec& point) {
    if (!map.in_domain(point)) throw std::domain_error("pullback_metric: point outside domain");
    const int n = map.nvars_in;
    const int J = map.choose_truncation(point);
    std::vector<KahanSum<Complex>> acc(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int j = 0; j <= J; ++j) {
        const CVec g = map.component_gradient(j, point);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) acc[static_cast<size_t>(a * n + b)].add(g(a) * std::conj(g(b)));
    }
    PullbackEval out;
    out.coeff.resize(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out.coeff(a, b) = acc[static_cast<size_t>(a * n + b)].value();
    out.tail_error = map.finite() ? 0.0 : map.tail_bound(J, point);
    if (!std::isfinite(out.tail_error)) throw std::domain_error("pullback_metric: divergent Jacobian tail");
    return out;
}

nlohmann::json ImmersionCertificate::to_json() const {
    return {{"pass", pass},
            {"c", fitted_constant},
            {"max_deviation", max_deviation},
            {"tol", tol},
            {"samples", samples}};
}

ImmersionCertificate verify_immersion(const ImmersionMap& map, const HermitianMetricField& target,
                                      const std::vector<CVec>& samples, double tol) {
    struct SampleData {
        CMat pullback, expected;
        double tail = 0.0;
    };
    for (const CVec& z : samples)
        if (!map.in_domain(z) || !target.in_domain(z))
            throw std::domain_error("verify_immersion: sample outside domain");
    const std::vector<SampleData> data = parallel_map<SampleData>(static_cast<int>(samples.size()), [&](int i) {
        const CVec& z = samples[static_cast<size_t>(i)];
        const PullbackEval pb = pullback_metric(map, z);
        return SampleData{pb.coeff, target.coeff(z), pb.tail_error};
    });

    // with g = 1/c, the max relative deviation max |g*P - T|/|T| is convex
    // in g; golden-section search around the least-squares seed
    const auto deviation = [&](double g) {
        double dev = 0.0;
        for (const SampleData& s : data) {
            const double scale = s.expected.cwiseAbs().maxCoeff();
            const double d = ((g * s.pullback - s.expected).cwiseAbs().maxCoeff() + g * s.tail) / scale;
            dev = std::max(dev, d);
        }
        return dev;
    };
    double num = 0.0, den = 0.0;
    for (const SampleData& s : data) {
        num += s.pullback.conjugate().cwiseProduct(s.expected).sum().real();
        den += s.pullback.cwiseAbs2().sum();
    }
    const double seed = std::max(num / den, 1e-12);
    double lo = seed / 8.0, hi = seed * 8.0;
    for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (deviation(m1) < deviation(m2))
            hi = m2;
        else
            lo = m1;
    }
    const double g = 0.5 * (lo + hi);

    ImmersionCertificate cert;
    cert.fitted_constant = 1.0 / g;
    cert.max_deviation = deviation(g);
    cert.tol = tol;
    cert.samples = static_cast<int>(samples.size());
    cert.pass = cert.max_deviation < tol && cert.fitted_constant > 0.0;
    return cert;
}

nlohmann::json DescentReport::to_json() const {
    nlohmann::json j = {{"max_deviation", max_deviation}};
    switch (mode) {
        case DescentMode::Scalar: j["mode"] = "scalar"; break;
        case DescentMode::Gram: j["mode"] = "gram"; break;
        case DescentMode::None: j["mode"] = "none"; break;
    }
    if (scalar) j["lambda"] = {{"re", scalar->real()}, {"im", scalar->imag()}};
    if (gram_factor) j["gram_factor"] = *gram_factor;
    return j;
}

DescentReport scalar_descent(const ImmersionMap& map, const DeckMap& gamma, const std::vector<CVec>& samples,
                             double tol) {
    DescentReport report;

    // componentwise scalar test, lambda from the dominant components
    std::vector<double> ratio_re, ratio_im;
    std::vector<std::pair<std::vector<Complex>, std::vector<Complex>>> values;
    for (const CVec& x : samples) {
        const CVec gx = gamma.apply(x);
        const int J = std::max(map.choose_truncation(x), map.choose_truncation(gx));
        std::vector<Complex> fx, fgx;
        for (int j = 0; j <= J; ++j) {
            fx.push_back(map.component(j, x));
            fgx.push_back(map.component(j, gx));
        }
        double scale = 0.0;
        for (const Complex& v : fx) scale = std::max(scale, std::abs(v));
        if (scale == 0.0) continue;
        for (size_t j = 0; j < fx.size(); ++j)
            if (std::abs(fx[j]) >= 0.5 * scale) {
                const Complex r = fgx[j] / fx[j];
                ratio_re.push_back(r.real());
                ratio_im.push_back(r.imag());
            }
        values.emplace_back(std::move(fx), std::move(fgx));
    }
    const auto median = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    if (!ratio_re.empty()) {
        const Complex lambda(median(ratio_re), median(ratio_im));
        double dev = 0.0;
        for (const auto& [fx, fgx] : values) {
            double scale = 0.0;
            for (const Complex& v : fx) scale = std::max(scale, std::abs(v));
            const double denom = scale * std::max(1.0, std::abs(lambda));
            for (size_t j = 0; j < fx.size(); ++j)
                dev = std::max(dev, std::abs(fgx[j] - lambda * fx[j]) / denom);
        }
        if (dev <= tol) {
            report.mode = DescentMode::Scalar;
            report.scalar = lambda;
            report.gram_factor = std::norm(lambda);
            report.max_deviation = dev;
            return report;
        }
        report.max_deviation = dev;
    }

    // Gram equivariance over consecutive sample pairs
    std::vector<Complex> g0, g1;
    for (size_t i = 0; i + 1 < samples.size(); i += 2) {
        const CVec &x = samples[i], &y = samples[i + 1];
        g0.push_back(gram_inner(map, x, y));
        g1.push_back(gram_inner(map, gamma.apply(x), gamma.apply(y)));
    }
    if (!g0.empty()) {
        double num = 0.0, den = 0.0, scale = 0.0;
        for (size_t i = 0; i < g0.size(); ++i) {
            num += (g1[i] * std::conj(g0[i])).real();
            den += std::norm(g0[i]);
            scale = std::max(scale, std::abs(g0[i]));
        }
        const double factor = num / den;
        double dev = 0.0;
        for (size_t i = 0; i < g0.size(); ++i)
            dev = std::max(dev, std::abs(g1[i] - factor * g0[i]) / (std::abs(factor) * scale));
        if (factor > 0.0 && dev <= tol) {
            report.mode = DescentMode::Gram;
            report.gram_factor = factor;
            report.max_deviation = dev;
            return report;
        }
        report.max_deviation = std::max(report.max_deviation, dev);
    }
    report.mode = DescentMode::None;
    return report;
}

bool rigidity_gauge(const ImmersionMap& first, const ImmersionMap& second,
                    const std::vector<std::pair<CVec, CVec>>& pairs, double tol) {
    double dev = 0.0, scale = 0.0;
    std::vector<Complex> a, b;
    for (const auto& [x, y] : pairs) {
        a.push_back(gram_inner(first, x, y));
        b.push_back(gram_inner(second, x, y));
        scale = std::max({scale, std::abs(a.back()), 1.0});
    }
    for (size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
    return dev <= tol * scale;
}

// --- catalog maps ---

ImmersionMap parton_map(int k) {
    if (k < 1) throw std::invalid_argument("parton_map: k must be a positive integer");
    std::vector<double> coeff(static_cast<size_t>(k) + 1);
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
        coeff[static_cast<size_t>(j)] = std::sqrt(binom / static_cast<double>(k));
        binom *= static_cast<double>(k - j) / static_cast<double>(j + 1);
    }
    ImmersionMap map;
    map.name = "parton-k" + std::to_string(k);
    map.nvars_in = 2;
    map.component_count = k + 1;
    map.component = [coeff, k](int j, const CVec& z) {
        return coeff[static_cast<size_t>(j)] * std::pow(z(0), k - j) * std::pow(z(1), j);
    };
    map.component_gradient = [coeff, k](int j, const CVec& z) {
        CVec g(2);
        const double c = coeff[static_cast<size_t>(j)];
        g(0) = j == k ? Complex(0.0) : c * static_cast<double>(k - j) * std::pow(z(0), k - j - 1) * std::pow(z(1), j);
        g(1) = j == 0 ? Complex(0.0) : c * static_cast<double>(j) * std::pow(z(0), k - j) * std::pow(z(1), j - 1);
        return g;
    };
    map.tail_bound = [](int, const CVec&) { return 0.0; };
    return map;
}

ImmersionMap identity_map(int nvars) {
    ImmersionMap map;
    map.name = "identity";
    map.nvars_in = nvars;
    map.component_count = nvars;
    map.component = [](int j, const CVec& z) { return z(j); };
    map.component_gradient = [nvars](int j, const CVec&) {
        CVec g = CVec::Zero(nvars);
        g(j) = 1.0;
        return g;
    };
    map.tail_bound = [](int, const CVec&) { return 0.0; };
    return map;
}

ImmersionMap elliptic_map() {
    const Complex i(0.0, 1.0);
    ImmersionMap map;
    map.name = "elliptic";
    map.nvars_in = 2;
    map.truncation_cap = 500;
    map.domain_guard = [i](const CVec& z) {
        const Complex den = z(0) - i * z(1);
        return std::abs(den) > 1e-12 && std::abs(z(0) + i * z(1)) < std::abs(den);
    };
    map.component = [i](int j, const CVec& z) {
        const Complex den = z(0) - i * z(1);
        return std::pow((z(0) + i * z(1)) / den, j) / den;
    };
    map.component_gradient = [i](int j, const CVec& z) {
        const Complex den = z(0) - i * z(1);
        const Complex ratio = (z(0) + i * z(1)) / den;
        const Complex den2 = den * den;
        // d(1/den) = (-1, i)/den^2 ; d(ratio) = (-2 i z2, 2 i z1)/den^2
        const Complex rj = std::pow(ratio, j);
        const Complex rj1 = j == 0 ? Complex(0.0) : static_cast<double>(j) * std::pow(ratio, j - 1);
        CVec g(2);
        g(0) = -rj / den2 + rj1 * (-2.0 * i * z(1)) / (den2 * den);
        g(1) = i * rj / den2 + rj1 * (2.0 * i * z(0)) / (den2 * den);
        return g;
    };
    map.tail_bound = [i](int J, const CVec& z) {
        const Complex den = z(0) - i * z(1);
        const double q = std::norm((z(0) + i * z(1)) / den);
        if (q >= 1.0) return std::numeric_limits<double>::infinity();
        const double pref2 = 1.0 / std::norm(den);
        const double norm_tail = pref2 * geometric_tail(J + 1, q);
        // |grad F_j|^2 <= 2 U q^j + 2 V j^2 q^{j-1}
        const double den4 = std::norm(den) * std::norm(den);
        const double u = 2.0 / den4;
        const double v = 4.0 * (std::norm(z(0)) + std::norm(z(1))) / (den4 * std::norm(den));
        const double grad_tail =
            2.0 * u * geometric_tail(J + 1, q) + (q > 0.0 ? 2.0 * (v / q) * weighted_tail(J + 1, q) : 0.0);
        return std::max(norm_tail, grad_tail);
    };
    return map;
}

ImmersionMap kodaira_map() {
    const Complex i(0.0, 1.0);
    ImmersionMap map;
    map.name = "kodaira";
    map.nvars_in = 2;
    map.truncation_cap = 120;
    const auto term = [](int j, Complex z) {
        Complex t = 1.0;
        for (int m = 1; m <= j; ++m) t *= z / (2.0 * std::sqrt(static_cast<double>(m)));
        return t;  // z^j / (2^j sqrt(j!))
    };
    map.component = [i, term](int j, const CVec& z) { return term(j, z(0)) * std::exp(-i / 4.0 * z(1)); };
    map.component_gradient = [i, term](int j, const CVec& z) {
        const Complex e = std::exp(-i / 4.0 * z(1));
        CVec g(2);
        g(0) = j == 0 ? Complex(0.0) : 0.5 * std::sqrt(static_cast<double>(j)) * term(j - 1, z(0)) * e;
        g(1) = -i / 4.0 * term(j, z(0)) * e;
        return g;
    };
    map.tail_bound = [i](int J, const CVec& z) {
        const double s = std::norm(z(0)) / 4.0;  // |z|^2/4
        const double e2 = std::exp(0.5 * z(1).imag());
        const double rho = s / static_cast<double>(J + 2);
        if (rho >= 1.0) return std::numeric_limits<double>::infinity();
        // leading terms at j = J+1 by direct products, then a geometric bound
        double q = 1.0;  // s^{J+1}/(J+1)!
        for (int m = 1; m <= J + 1; ++m) q *= s / static_cast<double>(m);
        const double norm_tail = e2 * q / (1.0 - rho);
        const double jj = static_cast<double>(J + 1);
        const double growth = (1.0 + 1.0 / jj) * (1.0 + 1.0 / jj);
        const double rho_g = growth * rho;
        if (rho_g >= 1.0) return std::numeric_limits<double>::infinity();
        // |dF_j/dz|^2 = j^2 s^{j-1}/ (4 j!) * e2 ; |dF_j/dw|^2 = |F_j|^2/16
        const double gz_first = jj * jj * (s > 0.0 ? q / s : (J == 0 ? 1.0 : 0.0)) / 4.0 * e2;
        const double grad_tail = gz_first / (1.0 - rho_g) + norm_tail / 16.0;
        return std::max(norm_tail, grad_tail);
    };
    return map;
}

ImmersionMap inoue_disc_map() {
    const Complex i(0.0, 1.0);
    const double sqrt2 = std::sqrt(2.0);
    ImmersionMap map;
    map.name = "inoue";
    map.nvars_in = 2;
    map.truncation_cap = 500;
    map.domain_guard = [](const CVec& z) { return std::abs(z(1)) < 1.0; };
    map.component = [i, sqrt2](int j, const CVec& z) -> Complex {
        const Complex w = z(1);
        if (j == 0) return z(0);
        if (j == 1) return sqrt2 * w;
        return sqrt2 * (std::pow(w, j) - i * std::pow(w, j - 1));
    };
    map.component_gradient = [i, sqrt2](int j, const CVec& z) {
        const Complex w = z(1);
        CVec g = CVec::Zero(2);
        if (j == 0) {
            g(0) = 1.0;
            return g;
        }
        if (j == 1) {
            g(1) = sqrt2;
            return g;
        }
        g(1) = sqrt2 * (static_cast<double>(j) * std::pow(w, j - 1) -
                        i * static_cast<double>(j - 1) * std::pow(w, j - 2));
        return g;
    };
    map.tail_bound = [i](int J, const CVec& z) {
        const double q = std::norm(z(1));
        if (q >= 1.0) return std::numeric_limits<double>::infinity();
        if (q == 0.0) return 0.0;
        const double w_mod = std::abs(z(1));
        // |F_j|^2 = 2 q^{j-1} |w - i|^2 for j >= 2, so the tail past J >= 1
        // is 2 |w - i|^2 sum_{j >= J} q^j
        const double norm_tail = 2.0 * std::norm(z(1) - i) * geometric_tail(std::max(J, 1), q);
        // |dF_j/dw| <= sqrt2 j (1 + w_mod) |w|^{j-2}
        const double grad_tail = 2.0 * (1.0 + w_mod) * (1.0 + w_mod) * weighted_tail(J + 1, q) / (q * q);
        return std::max(norm_tail, grad_tail);
    };
    return map;
}

}  // namespace calabikit
