#pragma once

#include <optional>
#include <string>
#include <vector>

#include "calabikit/bi_series.hpp"

namespace calabikit {

// Hermitian coefficient matrix (a_jk) of a centered diastasis expansion,
// indexed by the nonzero multi-indices up to the truncation degree in
// graded-lex order.
struct CalabiMatrix {
    std::vector<MultiIndex> labels;
    CMat entries;

    int size() const { return static_cast<int>(labels.size()); }
    std::string to_csv() const;
    nlohmann::json to_json() const;
};

struct ResolvabilityReport {
    bool psd = false;
    int rank = 0;
    double min_eigenvalue = 0.0;
    // absolute eigenvalue threshold actually used: tol * max(1, spectral norm)
    double tolerance = 0.0;
    std::optional<MultiIndex> witness_index;

    nlohmann::json to_json(const std::vector<MultiIndex>& labels) const;
};

// Normalizes a real-valued potential expansion to its centered diastasis by
// dropping every term in z or zbar alone (the polarization with the second
// point at the center). Throws std::domain_error on non-Hermitian input.
BiSeries diastasis_from_potential(const BiSeries& phi);

// Reads the coefficients of a zero-pure-part expansion into the Hermitian
// matrix (a_jk). Throws std::invalid_argument if a pure part is present.
CalabiMatrix calabi_matrix(const BiSeries& d0);

// Eigenvalue test: psd iff all eigenvalues >= -tol*max(1,||A||), rank =
// count of eigenvalues above the same threshold. The witness index labels
// the dominant component of the most negative eigenvector, when one exists.
ResolvabilityReport resolvability(const CalabiMatrix& matrix, double tol);

// prod_{k=1}^{j-1} (k*b + 1 - j*a)
double go_eigenvalue_product(double a, double b, int j);

// Smallest j in [2, jmax] whose eigenvalue product is negative, if any.
// Requires a + b = 2 (within 1e-12) and a >= b > 0.
std::optional<int> go_negative_witness(double a, double b, int jmax);

}  // namespace calabikit
