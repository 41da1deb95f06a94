#include "ldpput/rational.hpp"

#include <cctype>
#include <cmath>

#include "ldpput/errors.hpp"

namespace ldpput {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

mpz_class parse_integer(std::string_view s)
{
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!is_integer_literal(num) || !is_integer_literal(den))
            throw ParseError("malformed rational '" + std::string(text) + "'");
        mpz_class d = parse_integer(den);
        if (d == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        Rational q(parse_integer(num), d);
        q.canonicalize();
        return q;
    }
    if (is_integer_literal(text))
        return Rational(parse_integer(text));

    // Decimal literal: sign, digits, '.', digits.
    auto dot = text.find('.');
    if (dot == std::string_view::npos)
        throw ParseError("malformed rational '" + std::string(text) + "'");
    std::string whole(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+'))
        whole.erase(0, 1);
    if (whole.empty())
        whole = "0";
    if (frac.empty() || !is_integer_literal(whole) || !is_integer_literal(frac) ||
        frac[0] == '-' || frac[0] == '+')
        throw ParseError("malformed rational '" + std::string(text) + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rational q(mpz_class(whole + frac, 10), scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational from_double(double x)
{
    if (!std::isfinite(x))
        throw InvalidArgument("cannot convert a non-finite double to a rational");
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

Rational rational_approximation(double x, unsigned long max_denominator)
{
    if (!std::isfinite(x))
        throw InvalidArgument("cannot approximate a non-finite value");
    if (max_denominator == 0)
        throw InvalidArgument("denominator bound must be positive");
    const Rational target = from_double(x);
    // Convergents h/k of the exact expansion of the double.
    mpz_class h_prev = 0, k_prev = 1, h = 1, k = 0;
    Rational rest = target;
    const mpz_class bound = max_denominator;
    while (true) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
        const mpz_class k_next = a * k + k_prev;
        if (k_next > bound) {
            // Largest semiconvergent that still fits, compared with the last convergent.
            const mpz_class s = (bound - k_prev) / k;
            Rational semi(mpz_class(s * h + h_prev), mpz_class(s * k + k_prev));
            Rational conv(h, k);
            semi.canonicalize();
            conv.canonicalize();
            Rational a1 = semi - target, a2 = conv - target;
            return abs(a1) < abs(a2) ? semi : conv;
        }
        const mpz_class h_next = a * h + h_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        const Rational frac = rest - Rational(a);
        if (frac == 0) {
            Rational exact(h, k);
            exact.canonicalize();
            return exact;
        }
        rest = 1 / frac;
    }
}

Rational sum(const RationalVector& v)
{
    Rational s = 0;
    for (const auto& x : v)
        s += x;
    return s;
}

bool is_zero(const RationalVector& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

} // namespace ldpput
