#pragma once

// Multiprecision complex numbers for evaluating expansions at CM points.
// Real is Boost.Multiprecision's MPFR backend with run-time precision; the
// working precision is installed with a PrecisionScope for the duration of a
// computation.

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace fricke {

using Real = boost::multiprecision::mpfr_float;

// Sets the default MPFR precision (in bits) for newly created Reals and
// restores the previous value on destruction. Not thread-safe: the default
// precision is process-global.
class PrecisionScope {
public:
    explicit PrecisionScope(int prec_bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_digits10_;
};

struct Complex {
    Real re{0};
    Real im{0};

    Complex() = default;
    Complex(Real r) : re(std::move(r)), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r), im(0) {}

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(Complex a, const Complex& b);
Complex operator/(Complex a, const Complex& b);

Real abs(const Complex& z);
Real norm(const Complex& z); // |z|^2
Complex conj(const Complex& z);
Complex exp(const Complex& z);
// exp(2*pi*i*t) for real t.
Complex exp_2pi_i(const Real& t);
Complex pow(Complex z, long e);
Complex sqrt_negative(long d); // sqrt(d) for d < 0, i.e. i*sqrt(|d|)
Real pi();

std::string to_string(const Real& x, int digits = 20);
std::string to_string(const Complex& z, int digits = 20);

} // namespace fricke
