#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "calabikit/bi_series.hpp"

namespace calabikit {

// Evaluable real-analytic potential, optionally with an exact truncated
// expansion around `center`.
struct PotentialField {
    int nvars = 0;
    std::function<double(const CVec&)> evaluate;
    std::function<bool(const CVec&)> domain_guard;  // empty = all of C^n
    std::optional<BiSeries> exact_series;
    CVec center;

    bool in_domain(const CVec& z) const { return !domain_guard || domain_guard(z); }
};

// Pointwise Hermitian coefficient matrix h_{a b-bar} with an optional Lee
// form given by its 2n real components against (dx_1, dy_1, ..., dx_n, dy_n).
struct HermitianMetricField {
    int nvars = 0;
    std::function<CMat(const CVec&)> coeff;
    std::function<Eigen::VectorXd(const CVec&)> lee_form;
    std::function<bool(const CVec&)> domain_guard;

    bool in_domain(const CVec& z) const { return !domain_guard || domain_guard(z); }
    bool has_lee_form() const { return static_cast<bool>(lee_form); }
};

// Holomorphic covering-space automorphism with its complex Jacobian.
struct DeckMap {
    enum class Kind { Linear, Affine, MoebiusComponent, Heisenberg };

    Kind kind = Kind::Linear;
    std::string name;
    std::function<CVec(const CVec&)> apply;
    std::function<CMat(const CVec&)> jacobian;

    static DeckMap scaling(int nvars, Complex factor, std::string name);
    static DeckMap diagonal(const CVec& factors, std::string name);
};

DeckMap compose(const DeckMap& outer, const DeckMap& inner);

struct MetricEval {
    CMat coeff;
    bool positive_definite = true;  // false is a warning, not an error
};

// h_{a b-bar} = d^2 phi / dz_a dzbar_b. Uses exact termwise series
// differentiation when the potential carries an expansion, otherwise
// 4th-order central differences in the real coordinates.
MetricEval metric_from_potential(const PotentialField& phi, const CVec& point, double step = 1e-4);

// Max-norm of the coefficients of d(omega) - theta ^ omega at the point,
// with d(omega) by central differences of the 2-form coefficients.
double lck_residual(const HermitianMetricField& metric, const CVec& point, double step = 1e-3);

struct HomothetyResult {
    double factor = 0.0;
    double spread = 0.0;  // max relative deviation from a constant ratio
    bool homothetic = false;
};

// Least-squares fit of the constant c with gamma^* omega = c * omega across
// the samples; spread above the tolerance is reported as "not homothetic".
HomothetyResult homothety_factor(const DeckMap& gamma, const HermitianMetricField& metric,
                                 const std::vector<CVec>& samples, double spread_tol = 1e-6);

struct CharacterRankResult {
    int rank = 0;
    bool heuristic = false;  // independence concluded by a bounded search
    std::string label;       // e.g. "rank = 1" or "rank >= 2 (heuristic)"
};

// Rational rank of {log f_i}: a factor is dependent when m*log(f) matches an
// integer combination of the basis logs with |coefficients| <= bound.
CharacterRankResult character_rank(const std::vector<double>& factors, int denominator_bound = 50,
                                   double tol = 1e-9);

}  // namespace calabikit
