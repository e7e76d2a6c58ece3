#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace gl3p {

// 64 significant decimal digits is enough headroom for every check in the
// library; nothing here asks for more than ~50.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<64>,
                                           boost::multiprecision::et_off>;

inline constexpr int kRealDigits = 64;

Real real_pi();
Real real_from_string(const std::string& s);

struct Complex {
    Real re{0};
    Real im{0};

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r) {}
    Complex(double r) : re(r) {}

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

    Complex conj() const { return {re, -im}; }
    Real norm() const { return re * re + im * im; }
    Real abs() const;
    Real arg() const;
    std::complex<double> to_std() const;
};

Complex cexp(const Complex& z);
Complex clog(const Complex& z);
Complex cpow(const Complex& z, const Complex& w);
Complex cpow(const Complex& z, long n);
// e^{2 pi i k / n}
Complex root_of_unity(long k, long n);

// log Gamma on the principal branch, valid away from the poles.
Complex clgamma(const Complex& z);
Complex cgamma(const Complex& z);

std::string to_string(const Real& x, int digits = 20);
std::string to_string(const Complex& z, int digits = 20);

}  // namespace gl3p
