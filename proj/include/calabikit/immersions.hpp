#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "calabikit/geometry.hpp"

namespace calabikit {

// Countable family of holomorphic components with evaluation, exact complex
// Jacobian rows, and a certified bound on both the norm and Jacobian-Gram
// tails beyond a truncation index.
struct ImmersionMap {
    std::string name;
    int nvars_in = 0;
    int component_count = -1;  // -1: countably infinite
    int truncation_cap = 500;  // <= 500 geometric tails, <= 120 factorial tails
    std::function<Complex(int, const CVec&)> component;
    std::function<CVec(int, const CVec&)> component_gradient;  // dF_j/dz_a
    // upper bound on sum_{j>J} |F_j|^2 and on sum_{j>J} |grad F_j|^2
    std::function<double(int, const CVec&)> tail_bound;
    std::function<bool(const CVec&)> domain_guard;

    bool in_domain(const CVec& z) const { return !domain_guard || domain_guard(z); }
    bool finite() const { return component_count >= 0; }
    // smallest J with tail_bound(J) < 1e-10 * partial sum, subject to the cap
    int choose_truncation(const CVec& point) const;
};

struct ValueWithError {
    double value = 0.0;
    double error = 0.0;
};

// ||F(point)||^2 as a partial sum plus certified tail interval
ValueWithError norm_squared(const ImmersionMap& map, const CVec& point);

// <F(x), F(y)> = sum_j F_j(x) conj(F_j(y)); optional certified tail estimate
Complex gram_inner(const ImmersionMap& map, const CVec& x, const CVec& y, double* tail = nullptr);

struct PullbackEval {
    CMat coeff;
    double tail_error = 0.0;
};

// Gram matrix of the Jacobian rows: h_ab = sum_j dF_j/dz_a conj(dF_j/dz_b)
PullbackEval pullback_metric(const ImmersionMap& map, const CVec& point);

struct ImmersionCertificate {
    bool pass = false;
    double fitted_constant = 1.0;  // c with pullback ~ c * target
    double max_deviation = 0.0;
    double tol = 0.0;
    int samples = 0;

    nlohmann::json to_json() const;
};

// Fits a single positive c minimizing the max relative deviation of the
// pullback against c * target over the samples; c far from 1 signals a
// normalization-convention difference and is always reported.
ImmersionCertificate verify_immersion(const ImmersionMap& map, const HermitianMetricField& target,
                                      const std::vector<CVec>& samples, double tol);

enum class DescentMode { Scalar, Gram, None };

struct DescentReport {
    DescentMode mode = DescentMode::None;
    std::optional<Complex> scalar;      // F(gamma x) = scalar * F(x)
    std::optional<double> gram_factor;  // <F(gamma x), F(gamma y)> = factor * <F(x), F(y)>
    double max_deviation = 0.0;

    nlohmann::json to_json() const;
};

// Componentwise scalar equivariance first; falls back to Gram equivariance
// over consecutive sample pairs (the certificate that an ambient unitary
// intertwiner exists).
DescentReport scalar_descent(const ImmersionMap& map, const DeckMap& gamma, const std::vector<CVec>& samples,
                             double tol = 1e-8);

// Gram-equality certificate that the two maps differ by an ambient unitary
bool rigidity_gauge(const ImmersionMap& first, const ImmersionMap& second,
                    const std::vector<std::pair<CVec, CVec>>& pairs, double tol = 1e-8);

// --- catalog maps ---

// F_j = sqrt(binom(k,j)/k) z1^{k-j} z2^j, j = 0..k
ImmersionMap parton_map(int k);
// the identity of C^n, as an immersion of the flat covering
ImmersionMap identity_map(int nvars);
// F_j = (z1 + i z2)^j / (z1 - i z2)^{j+1}, on |z1 + i z2| < |z1 - i z2|
ImmersionMap elliptic_map();
// F_j = z^j / (2^j sqrt(j!)) * exp(-i w / 4)
ImmersionMap kodaira_map();
// (z, sqrt2 w, ..., sqrt2 (w^{j+1} - i w^j), ...) on the unit disc in w
ImmersionMap inoue_disc_map();

}  // namespace calabikit
