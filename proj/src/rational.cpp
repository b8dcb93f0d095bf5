#include "qmf/rational.hpp"

#include <cctype>
#include <sstream>

namespace qmf {

Rational parse_rational(const std::string& s)
{
    if (s.empty()) {
        throw io_error("empty rational literal");
    }
    for (char ch : s) {
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+'
              || ch == '/')) {
            throw io_error("malformed rational literal: " + s);
        }
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) {
        throw io_error("malformed rational literal: " + s);
    }
    if (q.get_den() == 0) {
        throw io_error("zero denominator in rational literal: " + s);
    }
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& x)
{
    return x.get_str();
}

std::optional<Rational> rational_sqrt(const Rational& x)
{
    if (x < 0) {
        return std::nullopt;
    }
    mpz_class num = x.get_num();
    mpz_class den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
        return std::nullopt;
    }
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rational(rn, rd);
}

Gaussian Gaussian::pow(long e) const
{
    if (e < 0) {
        Gaussian inv = Gaussian(1) / *this;
        return inv.pow(-e);
    }
    Gaussian result(1);
    Gaussian base = *this;
    while (e > 0) {
        if (e & 1) {
            result *= base;
        }
        base *= base;
        e >>= 1;
    }
    return result;
}

std::string Gaussian::str() const
{
    if (im_ == 0) {
        return rational_str(re_);
    }
    std::ostringstream os;
    if (re_ != 0) {
        os << rational_str(re_);
        os << (im_ > 0 ? "+" : "-");
        Rational a = abs(im_);
        if (a != 1) {
            os << rational_str(a) << "*";
        }
        os << "i";
    } else {
        if (im_ == 1) {
            os << "i";
        } else if (im_ == -1) {
            os << "-i";
        } else {
            os << rational_str(im_) << "*i";
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Gaussian& g)
{
    return os << g.str();
}

Rational factorial(unsigned long n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

} // namespace qmf
