#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>

#include <nlohmann/json_fwd.hpp>

#include "calabikit/multi_index.hpp"

namespace calabikit {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Power series in z and z-bar, truncated per side at a total bidegree d:
// sum of a_{jk} z^{m_j} zbar^{m_k} over deg(m_j) <= d and deg(m_k) <= d.
// Coefficients are stored densely against the shared graded-lex basis;
// absent entries are exactly zero. A series flagged real-valued keeps the
// Hermitian symmetry a_{jk} = conj(a_{kj}); the flag is verified on entry
// and propagated through the ring operations.
class BiSeries {
  public:
    BiSeries(int nvars, int max_bidegree);

    static BiSeries constant(int nvars, int max_bidegree, Complex value);
    static BiSeries variable(int nvars, int max_bidegree, int var);
    static BiSeries conj_variable(int nvars, int max_bidegree, int var);
    static BiSeries monomial(int nvars, int max_bidegree, const MultiIndex& j, const MultiIndex& k, Complex value);
    // |z_var|^2, flagged real-valued
    static BiSeries abs2_variable(int nvars, int max_bidegree, int var);

    int nvars() const { return basis_->nvars(); }
    int max_bidegree() const { return basis_->max_degree(); }
    const MonomialBasis& basis() const { return *basis_; }
    const CMat& coefficients() const { return coeff_; }

    Complex coeff(const MultiIndex& j, const MultiIndex& k) const;
    void set_coeff(const MultiIndex& j, const MultiIndex& k, Complex value);

    bool real_valued() const { return real_valued_; }
    bool is_hermitian(double tol = 0.0) const;
    // verifies Hermitian symmetry exactly and sets the flag
    BiSeries& mark_real_valued();

    bool is_zero() const;
    BiSeries truncated(int new_bidegree) const;
    // zeroes every entry with m_j = 0 or m_k = 0, including the constant
    BiSeries pure_part_removed() const;
    bool has_pure_part() const;

    Complex evaluate(const CVec& z) const;
    // substitutes z = u and zbar = conj(v) independently (polarization)
    Complex evaluate_polarized(const CVec& u, const CVec& v) const;
    // d^2/dz_a dzbar_b, evaluated by termwise differentiation
    CMat hessian(const CVec& z) const;

    BiSeries operator-() const;
    BiSeries& operator+=(const BiSeries& other);
    BiSeries& operator-=(const BiSeries& other);
    BiSeries& operator*=(Complex scale);
    friend BiSeries operator+(const BiSeries& a, const BiSeries& b);
    friend BiSeries operator-(const BiSeries& a, const BiSeries& b);
    friend BiSeries operator*(const BiSeries& a, const BiSeries& b);
    friend BiSeries operator*(Complex scale, const BiSeries& a);

    // entries in graded-lex (row-major) order, zeros skipped:
    // [{"j":[...],"k":[...],"re":..,"im":..}, ...]
    nlohmann::json to_json() const;

  private:
    // powers z^{m_r} for every basis index (and their z_a-derivatives on demand)
    CVec monomial_powers(const CVec& z) const;

    std::shared_ptr<const MonomialBasis> basis_;
    CMat coeff_;
    bool real_valued_ = false;
};

// exp(a), as the scalar Taylor series around the constant term of a
BiSeries exp(const BiSeries& a);
// a^r for real r; the constant term of a must be real and positive
BiSeries pow(const BiSeries& a, double r);

}  // namespace calabikit
