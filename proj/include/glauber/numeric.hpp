#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace glauber {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Error taxonomy; the CLI maps these to exit codes.
struct ParameterError : std::runtime_error {
    explicit ParameterError(const std::string& what) : std::runtime_error(what) {}
};
struct FeasibilityError : ParameterError {
    explicit FeasibilityError(const std::string& what) : ParameterError(what) {}
};
struct SizeCapError : std::runtime_error {
    explicit SizeCapError(const std::string& what) : std::runtime_error(what) {}
};
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Exact conversion; every double is a dyadic rational.
inline Rational exact_rational(double x) {
    if (!std::isfinite(x)) throw ParameterError("exact_rational: non-finite input");
    return Rational(x);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& z) { return z.convert_to<double>(); }

// Compensated accumulator for sums of geometrically decaying terms.
class KahanSum {
  public:
    void add(double term) {
        double y = term - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

template <class T>
T scalar_from_double(double x);

template <>
inline double scalar_from_double<double>(double x) { return x; }

template <>
inline Rational scalar_from_double<Rational>(double x) { return exact_rational(x); }

template <class T>
T scalar_from_rational(const Rational& q);

template <>
inline double scalar_from_rational<double>(const Rational& q) { return to_double(q); }

template <>
inline Rational scalar_from_rational<Rational>(const Rational& q) { return q; }

}  // namespace glauber
