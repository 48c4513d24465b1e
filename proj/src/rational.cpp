#include "bellpoly/rational.hpp"

#include <cctype>
#include <ostream>

#include "bellpoly/errors.hpp"

namespace bellpoly {

namespace {

bool is_integer_token(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_.get_num() = num;
    v_.get_den() = den;
    v_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpq_class& value) : v_(value) { v_.canonicalize(); }

Rational Rational::parse(std::string_view token) {
    const auto slash = token.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_token(token)) throw ParseError("bad rational token '" + std::string(token) + "'");
        return Rational(mpz_class(std::string(token[0] == '+' ? token.substr(1) : token)));
    }
    const auto num = token.substr(0, slash);
    const auto den = token.substr(slash + 1);
    if (!is_integer_token(num) || den.empty() || !is_integer_token(den) || den[0] == '-' || den[0] == '+') {
        throw ParseError("bad rational token '" + std::string(token) + "'");
    }
    mpz_class d(std::string{den});
    if (d == 0) throw ParseError("zero denominator in '" + std::string(token) + "'");
    return Rational(mpz_class(std::string(num[0] == '+' ? num.substr(1) : num)), d);
}

std::string Rational::to_string() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

std::size_t hash_mpz(const mpz_class& z) {
    const mpz_srcptr p = z.get_mpz_t();
    std::size_t h = static_cast<std::size_t>(p->_mp_size) * 0x9e3779b97f4a7c15ULL;
    const int n = p->_mp_size < 0 ? -p->_mp_size : p->_mp_size;
    for (int i = 0; i < n; ++i) {
        h ^= static_cast<std::size_t>(p->_mp_d[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::size_t Rational::hash() const {
    return hash_mpz(v_.get_num()) * 31 + hash_mpz(v_.get_den());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace bellpoly
