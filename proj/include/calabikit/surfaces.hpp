#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "calabikit/immersions.hpp"
#include "calabikit/util.hpp"

namespace calabikit {

// Exponents of the implicit-potential equation
// |z1|^2 Phi^{-a} + |z2|^2 Phi^{-b} = 1, normalized so that a + b = 2.
struct GOParams {
    double a = 1.0;
    double b = 1.0;

    // a = 2 log|alpha| / (log|alpha| + log|beta|), requires |alpha| >= |beta| > 1
    static GOParams from_moduli(double alpha_abs, double beta_abs);
    static GOParams from_exponents(double a, double b);
};

// The unique positive root of the defining equation at the point (bisection
// in log Phi; residual at machine level). Throws on the origin.
double go_potential(const GOParams& params, const CVec& z);
// radial form in t1 = |z1|^2, t2 = |z2|^2; t1 may be slightly negative
// (analytic continuation, Newton from the t1 = 0 root)
double go_potential_radial(const GOParams& params, double t1, double t2);

// Potential value with its first and second derivatives in (t1, t2),
// by implicit differentiation of the defining equation.
struct GOJet {
    double phi = 0.0;
    double d1[2] = {0.0, 0.0};
    double d2[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
};
GOJet go_jet(const GOParams& params, double t1, double t2);

struct GODerivativeCheck {
    double closed_form = 0.0;
    double finite_difference = 0.0;
};

// 2j-th mixed z1-derivative at (0, s): the closed form against a radial
// finite difference of the implicit solver. j in {1, 2, 3}.
GODerivativeCheck go_derivative_check(const GOParams& params, Complex s, int j);

struct SurfaceSpec {
    enum class Family { HopfDiagonal, HopfParton, ProperlyElliptic, Kodaira, InoueSM, HopfAmbient };

    Family family = Family::HopfAmbient;
    Complex alpha{2.0, 0.0};     // hopf-diagonal / parton deck / ambient generator
    Complex beta{2.0, 0.0};      // hopf-diagonal
    int k = 1;                   // parton exponent
    Eigen::Matrix3i inoue_m;     // integer matrix, det 1

    // "hopf:a=...,b=..." | "hopf:alpha=...,beta=..." | "parton:k=..." |
    // "elliptic" | "kodaira" | "inoue:m=..." | "ambient:lambda=..."
    static SurfaceSpec parse(const std::string& selector);
    std::string name() const;
    void validate() const;
};

// Everything the checks need for one catalog surface: the covering Kaehler
// data, the lcK metric with its Lee form, deck generators, and (when one is
// on record) the covering immersion with the metric it must pull back.
struct Surface {
    SurfaceSpec spec;
    std::string name;
    PotentialField covering_potential;
    HermitianMetricField covering_metric;
    HermitianMetricField lck_metric;
    std::vector<DeckMap> deck;

    std::optional<ImmersionMap> immersion;
    // coordinates of the immersion frame may differ from the primary ones
    // (half-plane vs unit-disc model); target metric, diastasis potential,
    // and deck actions are carried alongside
    std::optional<HermitianMetricField> immersion_target;
    std::optional<PotentialField> immersion_potential;
    std::vector<DeckMap> immersion_deck;

    std::function<CVec(Rng&)> sample_point;
    std::function<CVec(Rng&)> sample_immersion_point;

    std::optional<GOParams> go;
    std::vector<std::string> notes;

    const DeckMap* find_deck(const std::string& name, bool immersion_frame) const;
    // parses selectors like "gamma", "f0", "2id", "gamma^2"
    std::optional<DeckMap> resolve_deck(const std::string& selector, bool immersion_frame) const;
};

// series_degree: per-side truncation of any exact potential expansion
Surface build_surface(const SurfaceSpec& spec, int series_degree = 6);

// Eigen-structure of an integer SL(3,Z) matrix with one real expanding
// eigenvalue rho > 1 and a complex pair mu, mu-bar.
struct InoueEigenData {
    double rho = 0.0;
    Complex mu;
    Eigen::Vector3d real_eigenvector;
    Eigen::Vector3cd complex_eigenvector;
};
InoueEigenData inoue_eigen_data(const Eigen::Matrix3i& m);

}  // namespace calabikit
