#include "calabikit/bi_series.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace calabikit {

BiSeries::BiSeries(int nvars, int max_bidegree) : basis_(MonomialBasis::shared(nvars, max_bidegree)) {
    coeff_ = CMat::Zero(basis_->size(), basis_->size());
}

BiSeries BiSeries::constant(int nvars, int max_bidegree, Complex value) {
    BiSeries s(nvars, max_bidegree);
    s.coeff_(0, 0) = value;
    s.real_valued_ = (value.imag() == 0.0);
    return s;
}

BiSeries BiSeries::variable(int nvars, int max_bidegree, int var) {
    return monomial(nvars, max_bidegree, MultiIndex::unit(nvars, var), MultiIndex::zero(nvars), 1.0);
}

BiSeries BiSeries::conj_variable(int nvars, int max_bidegree, int var) {
    return monomial(nvars, max_bidegree, MultiIndex::zero(nvars), MultiIndex::unit(nvars, var), 1.0);
}

BiSeries BiSeries::monomial(int nvars, int max_bidegree, const MultiIndex& j, const MultiIndex& k, Complex value) {
    BiSeries s(nvars, max_bidegree);
    s.set_coeff(j, k, value);
    return s;
}

BiSeries BiSeries::abs2_variable(int nvars, int max_bidegree, int var) {
    const MultiIndex u = MultiIndex::unit(nvars, var);
    BiSeries s = monomial(nvars, max_bidegree, u, u, 1.0);
    s.real_valued_ = true;
    return s;
}

Complex BiSeries::coeff(const MultiIndex& j, const MultiIndex& k) const {
    const int r = basis_->index_of(j), c = basis_->index_of(k);
    if (r < 0 || c < 0) return 0.0;
    return coeff_(r, c);
}

void BiSeries::set_coeff(const MultiIndex& j, const MultiIndex& k, Complex value) {
    const int r = basis_->index_of(j), c = basis_->index_of(k);
    if (r < 0 || c < 0) throw std::invalid_argument("BiSeries: multi-index outside truncation");
    coeff_(r, c) = value;
    real_valued_ = false;
}

bool BiSeries::is_hermitian(double tol) const {
    return (coeff_ - coeff_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

BiSeries& BiSeries::mark_real_valued() {
    if (!is_hermitian(0.0)) throw std::domain_error("BiSeries: coefficients are not Hermitian-symmetric");
    real_valued_ = true;
    return *this;
}

bool BiSeries::is_zero() const { return coeff_.cwiseAbs().maxCoeff() == 0.0; }

BiSeries BiSeries::truncated(int new_bidegree) const {
    if (new_bidegree >= max_bidegree()) return *this;
    BiSeries out(nvars(), new_bidegree);
    const int b = out.basis_->size();
    // the smaller graded-lex basis is a prefix of the larger one
    out.coeff_ = coeff_.topLeftCorner(b, b);
    out.real_valued_ = real_valued_;
    return out;
}

BiSeries BiSeries::pure_part_removed() const {
    BiSeries out(*this);
    out.coeff_.row(0).setZero();
    out.coeff_.col(0).setZero();
    return out;
}

bool BiSeries::has_pure_part() const {
    return coeff_.row(0).cwiseAbs().maxCoeff() != 0.0 || coeff_.col(0).cwiseAbs().maxCoeff() != 0.0;
}

CVec BiSeries::monomial_powers(const CVec& z) const {
    const int b = basis_->size();
    CVec p(b);
    p(0) = 1.0;
    for (int i = 1; i < b; ++i) p(i) = p(basis_->prev_index(i)) * z(basis_->prev_var(i));
    return p;
}

Complex BiSeries::evaluate(const CVec& z) const { return evaluate_polarized(z, z); }

Complex BiSeries::evaluate_polarized(const CVec& u, const CVec& v) const {
    if (u.size() != nvars() || v.size() != nvars()) throw std::invalid_argument("BiSeries: point dimension mismatch");
    const CVec pu = monomial_powers(u);
    const CVec pv = monomial_powers(v);
    return pu.transpose() * coeff_ * pv.conjugate();
}

CMat BiSeries::hessian(const CVec& z) const {
    if (z.size() != nvars()) throw std::invalid_argument("BiSeries: point dimension mismatch");
    const int n = nvars(), b = basis_->size();
    const CVec p = monomial_powers(z);
    // dp[a](r) = d z^{m_r} / d z_a = m_r[a] * z^{m_r - e_a}
    CMat dp = CMat::Zero(b, n);
    for (int r = 1; r < b; ++r) {
        const MultiIndex& m = basis_->at(r);
        for (int a = 0; a < n; ++a) {
            if (m[a] == 0) continue;
            std::vector<int> e = m.exponents();
            e[static_cast<size_t>(a)] -= 1;
            dp(r, a) = static_cast<double>(m[a]) * p(basis_->index_of(MultiIndex(std::move(e))));
        }
    }
    return dp.transpose() * coeff_ * dp.conjugate();
}

BiSeries BiSeries::operator-() const {
    BiSeries out(*this);
    out.coeff_ = -out.coeff_;
    return out;
}

BiSeries& BiSeries::operator+=(const BiSeries& other) {
    *this = *this + other;
    return *this;
}

BiSeries& BiSeries::operator-=(const BiSeries& other) {
    *this = *this - other;
    return *this;
}

BiSeries& BiSeries::operator*=(Complex scale) {
    coeff_ *= scale;
    real_valued_ = real_valued_ && scale.imag() == 0.0;
    return *this;
}

namespace {

void check_nvars(const BiSeries& a, const BiSeries& b) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("BiSeries: mismatched number of variables");
}

}  // namespace

BiSeries operator+(const BiSeries& a, const BiSeries& b) {
    check_nvars(a, b);
    const int d = std::min(a.max_bidegree(), b.max_bidegree());
    BiSeries out = a.truncated(d);
    out.coeff_ += b.truncated(d).coeff_;
    out.real_valued_ = a.real_valued_ && b.real_valued_;
    return out;
}

BiSeries operator-(const BiSeries& a, const BiSeries& b) {
    check_nvars(a, b);
    const int d = std::min(a.max_bidegree(), b.max_bidegree());
    BiSeries out = a.truncated(d);
    out.coeff_ -= b.truncated(d).coeff_;
    out.real_valued_ = a.real_valued_ && b.real_valued_;
    return out;
}

BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    check_nvars(a, b);
    const int d = std::min(a.max_bidegree(), b.max_bidegree());
    const BiSeries lhs = a.truncated(d), rhs = b.truncated(d);
    BiSeries out(a.nvars(), d);
    const MonomialBasis& basis = out.basis();
    const int n = basis.size();

    struct Entry {
        int r, c;
        Complex v;
    };
    std::vector<Entry> le, re;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            if (lhs.coeff_(r, c) != 0.0) le.push_back({r, c, lhs.coeff_(r, c)});
            if (rhs.coeff_(r, c) != 0.0) re.push_back({r, c, rhs.coeff_(r, c)});
        }
    for (const Entry& x : le)
        for (const Entry& y : re) {
            const int r = basis.sum_index(x.r, y.r);
            if (r < 0) continue;
            const int c = basis.sum_index(x.c, y.c);
            if (c < 0) continue;
            out.coeff_(r, c) += x.v * y.v;
        }
    out.real_valued_ = a.real_valued_ && b.real_valued_;
    // summation order differs between an entry and its transpose; restore
    // exact Hermitian symmetry for real-valued factors
    if (out.real_valued_) out.coeff_ = 0.5 * (out.coeff_ + out.coeff_.adjoint()).eval();
    return out;
}

BiSeries operator*(Complex scale, const BiSeries& a) {
    BiSeries out(a);
    out *= scale;
    return out;
}

BiSeries exp(const BiSeries& a) {
    const int d = a.max_bidegree();
    const Complex a0 = a.coeff(MultiIndex::zero(a.nvars()), MultiIndex::zero(a.nvars()));
    const BiSeries nil = a - BiSeries::constant(a.nvars(), d, a0);
    BiSeries out = BiSeries::constant(a.nvars(), d, 1.0);
    BiSeries term = out;
    for (int m = 1; m <= 2 * d; ++m) {
        term = (1.0 / static_cast<double>(m)) * (term * nil);
        if (term.is_zero()) break;
        out += term;
    }
    out *= std::exp(a0);
    if (a.real_valued()) out.mark_real_valued();
    return out;
}

BiSeries pow(const BiSeries& a, double r) {
    const int d = a.max_bidegree();
    const Complex a0 = a.coeff(MultiIndex::zero(a.nvars()), MultiIndex::zero(a.nvars()));
    if (a0.imag() != 0.0 || a0.real() <= 0.0)
        throw std::domain_error("BiSeries pow: constant term must be real and positive");
    const BiSeries u = (1.0 / a0) * a - BiSeries::constant(a.nvars(), d, 1.0);
    BiSeries out = BiSeries::constant(a.nvars(), d, 1.0);
    BiSeries term = out;
    double binom = 1.0;
    for (int m = 1; m <= 2 * d; ++m) {
        binom *= (r - static_cast<double>(m - 1)) / static_cast<double>(m);
        term = term * u;
        if (term.is_zero() || binom == 0.0) break;
        out += binom * term;
    }
    out *= std::pow(a0.real(), r);
    if (a.real_valued()) out.mark_real_valued();
    return out;
}

nlohmann::json BiSeries::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    const int b = basis_->size();
    for (int r = 0; r < b; ++r)
        for (int c = 0; c < b; ++c) {
            const Complex v = coeff_(r, c);
            if (v == 0.0) continue;
            entries.push_back({{"j", basis_->at(r).exponents()},
                               {"k", basis_->at(c).exponents()},
                               {"re", v.real()},
                               {"im", v.imag()}});
        }
    return entries;
}

}  // namespace calabikit
