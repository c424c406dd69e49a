#include "calabikit/calabi.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace calabikit {

std::string CalabiMatrix::to_csv() const {
    std::string out;
    for (const MultiIndex& m : labels) out += "," + m.to_string();
    out += "\n";
    char buf[80];
    for (int r = 0; r < size(); ++r) {
        out += labels[static_cast<size_t>(r)].to_string();
        for (int c = 0; c < size(); ++c) {
            const Complex v = entries(r, c);
            std::snprintf(buf, sizeof(buf), ",%.17g%+.17gi", v.real(), v.imag());
            out += buf;
        }
        out += "\n";
    }
    return out;
}

nlohmann::json CalabiMatrix::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < size(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < size(); ++c) row.push_back({entries(r, c).real(), entries(r, c).imag()});
        rows.push_back(row);
    }
    nlohmann::json labels_json = nlohmann::json::array();
    for (const MultiIndex& m : labels) labels_json.push_back(m.to_string());
    return {{"labels", labels_json}, {"entries", rows}};
}

nlohmann::json ResolvabilityReport::to_json(const std::vector<MultiIndex>& labels) const {
    nlohmann::json labels_json = nlohmann::json::array();
    for (const MultiIndex& m : labels) labels_json.push_back(m.to_string());
    nlohmann::json j = {{"psd", psd},
                        {"rank", rank},
                        {"min_eigenvalue", min_eigenvalue},
                        {"tolerance", tolerance},
                        {"labels", labels_json}};
    if (witness_index) j["witness_index"] = witness_index->to_string();
    return j;
}

BiSeries diastasis_from_potential(const BiSeries& phi) {
    if (!phi.real_valued() || !phi.is_hermitian(0.0))
        throw std::domain_error("diastasis_from_potential: potential expansion must be real-valued (Hermitian)");
    return phi.pure_part_removed();
}

CalabiMatrix calabi_matrix(const BiSeries& d0) {
    if (d0.has_pure_part())
        throw std::invalid_argument("calabi_matrix: expansion has terms in z or zbar alone");
    const MonomialBasis& basis = d0.basis();
    const int b = basis.size();
    CalabiMatrix m;
    m.labels.reserve(static_cast<size_t>(b) - 1);
    for (int i = 1; i < b; ++i) m.labels.push_back(basis.at(i));
    m.entries = d0.coefficients().bottomRightCorner(b - 1, b - 1);
    // exact Hermitian symmetry by construction
    m.entries = 0.5 * (m.entries + m.entries.adjoint()).eval();
    return m;
}

ResolvabilityReport resolvability(const CalabiMatrix& matrix, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("resolvability: tolerance must be positive");
    ResolvabilityReport report;
    if (matrix.size() == 0) {
        report.psd = true;
        report.tolerance = tol;
        return report;
    }
    Eigen::SelfAdjointEigenSolver<CMat> solver(matrix.entries);
    const Eigen::VectorXd eigs = solver.eigenvalues();
    const double spectral_norm = eigs.cwiseAbs().maxCoeff();
    const double threshold = tol * std::max(1.0, spectral_norm);
    report.tolerance = threshold;
    report.min_eigenvalue = eigs.minCoeff();
    report.psd = report.min_eigenvalue >= -threshold;
    report.rank = static_cast<int>((eigs.array() > threshold).count());
    if (!report.psd) {
        int which = 0;
        eigs.minCoeff(&which);
        int dominant = 0;
        solver.eigenvectors().col(which).cwiseAbs().maxCoeff(&dominant);
        report.witness_index = matrix.labels[static_cast<size_t>(dominant)];
    }
    return report;
}

double go_eigenvalue_product(double a, double b, int j) {
    double prod = 1.0;
    for (int k = 1; k <= j - 1; ++k) prod *= static_cast<double>(k) * b + 1.0 - static_cast<double>(j) * a;
    return prod;
}

std::optional<int> go_negative_witness(double a, double b, int jmax) {
    if (std::abs(a + b - 2.0) > 1e-12) throw std::invalid_argument("go_negative_witness: a + b must equal 2");
    if (!(a >= b && b > 0.0)) throw std::invalid_argument("go_negative_witness: requires a >= b > 0");
    if (jmax < 2) throw std::invalid_argument("go_negative_witness: jmax must be at least 2");
    for (int j = 2; j <= jmax; ++j)
        if (go_eigenvalue_product(a, b, j) < 0.0) return j;
    return std::nullopt;
}

}  // namespace calabikit
