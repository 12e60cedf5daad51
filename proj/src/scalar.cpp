#include "dqw/scalar.hpp"

#include <ostream>
#include <stdexcept>

namespace dqw {

Scalar::Scalar(long num, long den) : re_(num, den), im_(0) {
    if (den == 0)
        throw std::invalid_argument("Scalar: zero denominator");
    re_.canonicalize();
}

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

Scalar Scalar::operator-() const { return Scalar(mpq_class(-re_), mpq_class(-im_)); }

Scalar Scalar::conj() const { return Scalar(re_, mpq_class(-im_)); }

Scalar Scalar::inverse() const {
    if (is_zero())
        throw std::invalid_argument("Scalar: division by zero");
    mpq_class norm = re_ * re_ + im_ * im_;
    return Scalar(mpq_class(re_ / norm), mpq_class(-im_ / norm));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = re;
    im_ = im;
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

namespace {

std::string rational_str(const mpq_class& q) { return q.get_str(); }

} // namespace

std::string Scalar::str() const {
    if (is_zero())
        return "0";
    std::string out;
    if (re_ != 0)
        out += rational_str(re_);
    if (im_ != 0) {
        if (re_ != 0 && im_ > 0)
            out += "+";
        if (im_ == 1)
            out += "i";
        else if (im_ == -1)
            out += "-i";
        else
            out += rational_str(im_) + "i";
    }
    return out;
}

Scalar Scalar::from_string(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c)))
            t += c;
    if (t.empty())
        throw std::invalid_argument("Scalar: empty literal");
    bool imag = false;
    if (t.back() == 'i') {
        imag = true;
        t.pop_back();
        if (t.empty() || t == "+")
            t = "1";
        else if (t == "-")
            t = "-1";
    }
    mpq_class q;
    if (q.set_str(t, 10) != 0)
        throw std::invalid_argument("Scalar: cannot parse '" + s + "'");
    q.canonicalize();
    return imag ? Scalar(mpq_class(0), q) : Scalar(q, mpq_class(0));
}

Scalar factorial_scalar(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Scalar(mpq_class(f), mpq_class(0));
}

long long binomial_ll(long long n, long long k) {
    if (k < 0 || k > n)
        return 0;
    long long r = 1;
    for (long long j = 1; j <= k; ++j)
        r = r * (n - k + j) / j;
    return r;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

} // namespace dqw
