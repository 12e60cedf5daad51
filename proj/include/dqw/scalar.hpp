#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace dqw {

/// Exact Gaussian rational a + b*i. All arithmetic is exact; rationals are
/// kept gcd-reduced with positive denominators (mpq canonical form).
class Scalar {
  public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long n) : re_(n), im_(0) {}
    Scalar(long num, long den);
    Scalar(mpq_class re, mpq_class im);

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }
    static Scalar rational(long num, long den) { return Scalar(num, den); }
    /// Parses "p", "p/q" or "p/q i" style forms; see from_string in scalar.cpp.
    static Scalar from_string(const std::string& s);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    bool is_one() const { return im_ == 0 && re_ == 1; }

    Scalar operator-() const;
    Scalar conj() const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Canonical rendering: "0", "2/3", "i", "-i", "1/2i", "1+i", "2-1/3i".
    std::string str() const;

  private:
    mpq_class re_;
    mpq_class im_;
};

Scalar factorial_scalar(unsigned n);
long long binomial_ll(long long n, long long k);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace dqw
