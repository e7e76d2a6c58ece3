#include "gl3p/numeric.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <vector>

#include "gl3p/exact_arith.hpp"

namespace gl3p {

namespace mp = boost::multiprecision;

Real real_pi() {
    static const Real pi = boost::math::constants::pi<Real>();
    return pi;
}

Real real_from_string(const std::string& s) { return Real(s); }

Complex& Complex::operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}

Complex& Complex::operator/=(const Complex& o) {
    Real d = o.norm();
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
}

Real Complex::abs() const { return mp::sqrt(norm()); }
Real Complex::arg() const { return mp::atan2(im, re); }

std::complex<double> Complex::to_std() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
}

Complex cexp(const Complex& z) {
    Real m = mp::exp(z.re);
    return {m * mp::cos(z.im), m * mp::sin(z.im)};
}

Complex clog(const Complex& z) { return {mp::log(z.abs()), z.arg()}; }

Complex cpow(const Complex& z, const Complex& w) {
    if (z.re == 0 && z.im == 0) return Complex(0);
    return cexp(w * clog(z));
}

Complex cpow(const Complex& z, long n) {
    Complex base = n < 0 ? Complex(1) / z : z;
    unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    Complex acc(1);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

Complex root_of_unity(long k, long n) {
    long r = ((k % n) + n) % n;
    if (r == 0) return Complex(1);
    if (2 * r == n) return Complex(-1);
    if (4 * r == n) return Complex(Real(0), Real(1));
    if (4 * r == 3 * n) return Complex(Real(0), Real(-1));
    Real t = 2 * real_pi() * r / n;
    return {mp::cos(t), mp::sin(t)};
}

namespace {

constexpr int kStirlingTerms = 34;
constexpr int kStirlingShift = 44;

const std::vector<Real>& stirling_coeffs() {
    static std::once_flag once;
    static std::vector<Real> c;
    std::call_once(once, [] {
        for (int k = 1; k <= kStirlingTerms; ++k) {
            Rat b = bernoulli(2 * k) / Rat(2 * k * (2 * k - 1));
            c.push_back(to_real(b));
        }
    });
    return c;
}

}  // namespace

Complex clgamma(const Complex& z0) {
    if (z0.re < Real(0.5)) {
        // reflection; result is log Gamma up to a multiple of 2 pi i
        Complex s = cexp(Complex(0, 1) * real_pi() * z0);
        Complex sinpz = (s - Complex(1) / s) / Complex(Real(0), Real(2));
        return clog(Complex(real_pi()) / sinpz) - clgamma(Complex(1) - z0);
    }
    Complex z = z0;
    Complex prod(1);
    double arg_sum = 0;
    int steps = 0;
    while (z.norm() < kStirlingShift * kStirlingShift) {
        prod *= z;
        arg_sum += std::atan2(z.im.convert_to<double>(), z.re.convert_to<double>());
        z += Complex(1);
        ++steps;
    }
    Complex shift(0);
    if (steps > 0) {
        // one logarithm for the whole product, on the branch of the summed arguments
        shift = clog(prod);
        const double two_pi = 2 * 3.14159265358979323846;
        double wraps = std::round((arg_sum - shift.im.convert_to<double>()) / two_pi);
        shift.im += 2 * real_pi() * static_cast<long>(wraps);
    }
    const auto& c = stirling_coeffs();
    Complex inv = Complex(1) / z;
    Complex inv2 = inv * inv;
    Complex series(0);
    Complex pw = inv;
    for (const auto& ck : c) {
        series += pw * Complex(ck);
        pw *= inv2;
    }
    Complex lg = (z - Complex(Real(0.5))) * clog(z) - z +
                 Complex(mp::log(2 * real_pi()) / 2) + series;
    return lg - shift;
}

Complex cgamma(const Complex& z) { return cexp(clgamma(z)); }

std::string to_string(const Real& x, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

std::string to_string(const Complex& z, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << z.re << (z.im < 0 ? " - " : " + ") << mp::abs(z.im) << "i";
    return os.str();
}

}  // namespace gl3p
