#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "error.hpp"

namespace tvk {

using Rational = mpq_class;
using Integer = mpz_class;

// An element of Q(zeta_n) with zeta_n = exp(2*pi*i/n), stored in the power
// basis 1, z, ..., z^{phi(n)-1} of Z[x]/Phi_n(x). The conductor is always
// minimal for the value (and never 2 mod 4), so equal values have identical
// representations.
class Cyclotomic {
public:
    Cyclotomic() : n_(1), c_(1, Rational(0)) {}
    Cyclotomic(long v) : n_(1), c_(1, Rational(v)) {}
    explicit Cyclotomic(const Rational& v) : n_(1), c_(1, v) { c_[0].canonicalize(); }

    // zeta_n^e
    static Cyclotomic zeta(long n, long e = 1);

    long conductor() const { return n_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool isZero() const;
    bool isOne() const;
    bool isRational() const { return n_ == 1; }
    // Requires isRational().
    const Rational& asRational() const;

    Cyclotomic operator-() const;
    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic& operator+=(const Cyclotomic& o) { *this = *this + o; return *this; }
    Cyclotomic& operator-=(const Cyclotomic& o) { *this = *this - o; return *this; }
    Cyclotomic& operator*=(const Cyclotomic& o) { *this = *this * o; return *this; }

    // Multiplicative inverse; rejects zero.
    Cyclotomic inverse() const;
    Cyclotomic operator/(const Cyclotomic& o) const { return *this * o.inverse(); }

    // Complex conjugation, zeta -> zeta^{-1}.
    Cyclotomic conj() const;

    bool operator==(const Cyclotomic& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    // Total order usable for map keys; not numerically meaningful.
    bool operator<(const Cyclotomic& o) const;

    // Text form: rat[p/q] for conductor 1, else cyc(n)[e1:p1/q1, e2:p2/q2, ...].
    // Round-trips bit-exactly through parse().
    std::string serialize() const;
    static Cyclotomic parse(const std::string& text);

    // Decimal approximation of the complex embedding, |error| < 10^-digits,
    // digits <= 50. Strings carry digits places after the decimal point.
    void approx(int digits, std::string& re, std::string& im) const;
    std::complex<double> approxDouble() const;

    size_t hash() const;

private:
    Cyclotomic(long n, std::vector<Rational> c) : n_(n), c_(std::move(c)) {}

    // Raises the representation to conductor m (n_ | m) without minimizing.
    std::vector<Rational> liftTo(long m) const;
    static Cyclotomic makeCanonical(long n, std::vector<Rational> c);

    long n_;
    std::vector<Rational> c_;
};

inline Cyclotomic operator*(long k, const Cyclotomic& x) { return Cyclotomic(k) * x; }

// Cyclotomic polynomial Phi_n as dense coefficient vector (low degree first).
const std::vector<Rational>& cyclotomicPolynomial(long n);

long eulerPhi(long n);

} // namespace tvk
