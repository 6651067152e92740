#ifndef BESOV_COMMON_HPP
#define BESOV_COMMON_HPP

#include <complex>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace besov {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Input that violates a documented precondition or fails to parse.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A quantity cannot be resolved at the requested point/grid
/// (evaluation too close to the boundary, division singularity,
/// or a quadrature inconsistency that signals under-resolution).
class resolution_error : public std::runtime_error {
public:
    explicit resolution_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline double sqr(double x) { return x * x; }

/// Kahan-compensated sum in fixed (vector) order.
inline double stable_sum(const std::vector<double>& xs) {
    double s = 0.0, c = 0.0;
    for (double x : xs) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

/// Running Kahan accumulator; additions happen in call order,
/// so single-threaded use is bit-reproducible.
class KahanAccumulator {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace besov

#endif
