#include "hqft/scalar.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hqft {

Scalar Scalar::inverse() const {
    mpq_class n = norm2();
    if (sgn(n) == 0) throw std::domain_error("division by zero scalar");
    return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

std::string Scalar::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    if (s.is_real()) return os << s.re().get_str();
    if (sgn(s.re()) == 0) return os << s.im().get_str() << "i";
    os << "(" << s.re().get_str();
    if (sgn(s.im()) > 0) os << "+";
    return os << s.im().get_str() << "i)";
}

mpq_class Scalar::snap(double x, double tol) {
    if (!std::isfinite(x)) throw std::domain_error("cannot snap non-finite value");
    if (std::fabs(x) <= tol) return mpq_class(0);
    // continued fraction convergents h/k
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int iter = 0; iter < 64; ++iter) {
        double a = std::floor(r);
        mpz_class ai(a);
        mpz_class h2 = ai * h1 + h0;
        mpz_class k2 = ai * k1 + k0;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        mpq_class q(h1, k1);
        q.canonicalize();
        if (std::fabs(q.get_d() - x) <= tol) return q;
        double frac = r - a;
        if (frac == 0.0) return q;
        r = 1.0 / frac;
    }
    mpq_class q(x);
    return q;
}

}  // namespace hqft
