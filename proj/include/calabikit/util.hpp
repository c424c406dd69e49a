#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace calabikit {

// splitmix64-based generator with an explicit 53-bit uniform, so sampled
// configurations are reproducible bit-for-bit across platforms
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }
    std::complex<double> unit() {
        const double t = uniform(0.0, 6.283185307179586476925286766559);
        return {std::cos(t), std::sin(t)};
    }
    std::complex<double> disc(double radius) { return radius * uniform01() * unit(); }
    std::complex<double> annulus(double rmin, double rmax) { return uniform(rmin, rmax) * unit(); }

  private:
    uint64_t state_;
};

template <typename T>
struct KahanSum {
    T sum{};
    T comp{};
    void add(const T& v) {
        const T y = v - comp;
        const T t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    const T& value() const { return sum; }
};

// z_a = x_a + i y_a <-> (x_1, y_1, ..., x_n, y_n)
inline Eigen::VectorXd to_real(const Eigen::VectorXcd& z) {
    Eigen::VectorXd x(2 * z.size());
    for (Eigen::Index a = 0; a < z.size(); ++a) {
        x(2 * a) = z(a).real();
        x(2 * a + 1) = z(a).imag();
    }
    return x;
}

inline Eigen::VectorXcd to_complex(const Eigen::VectorXd& x) {
    Eigen::VectorXcd z(x.size() / 2);
    for (Eigen::Index a = 0; a < z.size(); ++a) z(a) = {x(2 * a), x(2 * a + 1)};
    return z;
}

inline Eigen::VectorXcd make_point(std::initializer_list<std::complex<double>> values) {
    Eigen::VectorXcd z(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (const auto& v : values) z(i++) = v;
    return z;
}

// CALABI_KIT_THREADS (default: hardware concurrency, at least 1)
int thread_count();

// Evaluates fn(i) for i in [0, n) across up to thread_count() threads.
// Each slot is written exactly once, so results match serial evaluation
// bitwise regardless of scheduling.
template <typename T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn);

namespace detail {
void parallel_run(int n, const std::function<void(int)>& body);
}

template <typename T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn) {
    std::vector<T> out(static_cast<size_t>(n));
    detail::parallel_run(n, [&](int i) { out[static_cast<size_t>(i)] = fn(i); });
    return out;
}

}  // namespace calabikit
