#include "fricke/numeric.hpp"

#include "fricke/errors.hpp"

#include <cmath>
#include <sstream>

namespace fricke {

namespace {

unsigned bits_to_digits10(int prec_bits)
{
    return static_cast<unsigned>(std::ceil(prec_bits * 0.30102999566398120)) + 1;
}

} // namespace

PrecisionScope::PrecisionScope(int prec_bits) : saved_digits10_(Real::default_precision())
{
    if (prec_bits < 53) {
        throw UsageError("prec_bits must be at least 53");
    }
    Real::default_precision(bits_to_digits10(prec_bits));
}

PrecisionScope::~PrecisionScope()
{
    Real::default_precision(saved_digits10_);
}

Complex& Complex::operator+=(const Complex& o)
{
    re += o.re;
    im += o.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& o)
{
    Real r = re * o.re - im * o.im;
    Real i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Complex& Complex::operator/=(const Complex& o)
{
    Real den = o.re * o.re + o.im * o.im;
    if (den == 0) {
        throw DivisionByZeroError("complex division by zero");
    }
    Real r = (re * o.re + im * o.im) / den;
    Real i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }
Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }

Real abs(const Complex& z)
{
    return boost::multiprecision::sqrt(norm(z));
}

Real norm(const Complex& z)
{
    return z.re * z.re + z.im * z.im;
}

Complex conj(const Complex& z)
{
    return Complex(z.re, -z.im);
}

Complex exp(const Complex& z)
{
    Real m = boost::multiprecision::exp(z.re);
    return Complex(m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im));
}

Complex exp_2pi_i(const Real& t)
{
    Real theta = 2 * pi() * t;
    return Complex(boost::multiprecision::cos(theta), boost::multiprecision::sin(theta));
}

Complex pow(Complex z, long e)
{
    if (e < 0) {
        return Complex(1) / pow(std::move(z), -e);
    }
    Complex acc(1);
    while (e > 0) {
        if (e & 1) {
            acc *= z;
        }
        e >>= 1;
        if (e > 0) {
            z *= z;
        }
    }
    return acc;
}

Complex sqrt_negative(long d)
{
    if (d >= 0) {
        throw UsageError("sqrt_negative expects a negative argument");
    }
    return Complex(Real(0), boost::multiprecision::sqrt(Real(-d)));
}

Real pi()
{
    return boost::math::constants::pi<Real>();
}

std::string to_string(const Real& x, int digits)
{
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

std::string to_string(const Complex& z, int digits)
{
    std::ostringstream os;
    os.precision(digits);
    os << z.re << (z.im < 0 ? " - " : " + ") << boost::multiprecision::abs(z.im) << "*I";
    return os.str();
}

} // namespace fricke
