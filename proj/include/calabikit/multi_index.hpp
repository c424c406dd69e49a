#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace calabikit {

// Exponent tuple of a holomorphic monomial z^m = z_1^{m_1} ... z_n^{m_n}.
// Ordered graded-lexicographically with z_1 > z_2 > ... (degree first, then
// within a degree z1^2 < z1*z2 < z2^2), so that truncation at a total degree
// yields nested index sets.
class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> exponents);
    static MultiIndex zero(int nvars);
    static MultiIndex unit(int nvars, int var);

    int nvars() const { return static_cast<int>(exp_.size()); }
    int degree() const;
    int operator[](int i) const { return exp_[static_cast<size_t>(i)]; }
    bool is_zero() const { return degree() == 0; }
    const std::vector<int>& exponents() const { return exp_; }

    MultiIndex operator+(const MultiIndex& other) const;

    bool operator==(const MultiIndex& other) const { return exp_ == other.exp_; }
    bool operator!=(const MultiIndex& other) const { return exp_ != other.exp_; }
    bool operator<(const MultiIndex& other) const;
    bool operator<=(const MultiIndex& other) const { return *this == other || *this < other; }

    // "1", "z2", "z1^2*z2", ...
    std::string to_string() const;

  private:
    std::vector<int> exp_;
};

// All multi-indices of total degree <= max_degree in graded-lex order,
// with constant-time addition lookups. Instances are cached per
// (nvars, max_degree) and shared.
class MonomialBasis {
  public:
    MonomialBasis(int nvars, int max_degree);
    static std::shared_ptr<const MonomialBasis> shared(int nvars, int max_degree);

    int nvars() const { return nvars_; }
    int max_degree() const { return max_degree_; }
    int size() const { return static_cast<int>(list_.size()); }
    const MultiIndex& at(int i) const { return list_[static_cast<size_t>(i)]; }
    // -1 if the index is not in the basis
    int index_of(const MultiIndex& m) const;
    // index of at(i) + at(j), or -1 if the sum exceeds max_degree
    int sum_index(int i, int j) const { return sum_[static_cast<size_t>(i) * list_.size() + static_cast<size_t>(j)]; }
    // i = prev_index(j) + unit(prev_var(j)) for j > 0; used for power recurrences
    int prev_index(int j) const { return prev_idx_[static_cast<size_t>(j)]; }
    int prev_var(int j) const { return prev_var_[static_cast<size_t>(j)]; }

  private:
    int nvars_;
    int max_degree_;
    std::vector<MultiIndex> list_;
    std::vector<int> sum_;
    std::vector<int> prev_idx_;
    std::vector<int> prev_var_;
};

}  // namespace calabikit
