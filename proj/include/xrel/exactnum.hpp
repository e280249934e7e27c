#pragma once

// Exact scalars in Q and in a single quadratic extension Q(sqrt(d)).

#include <gmpxx.h>
#include <mpfr.h>

#include <cctype>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace xrel {

using cplx = std::complex<long double>;

class field_mismatch : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class parse_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Writes |d| = k^2 * m with m squarefree; returns (k, sign(d) * m).
inline std::pair<std::int64_t, std::int64_t> split_square(std::int64_t d)
{
    if (d == 0)
        throw std::invalid_argument("sqrt(0) is not a valid extension generator");
    std::int64_t sign = d < 0 ? -1 : 1;
    std::int64_t m = d < 0 ? -d : d;
    std::int64_t k = 1;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        while (m % (p * p) == 0) {
            m /= p * p;
            k *= p;
        }
    }
    return {k, sign * m};
}

inline bool is_squarefree(std::int64_t d)
{
    return d != 0 && split_square(d).first == 1;
}

inline std::optional<mpq_class> rational_sqrt(const mpq_class& r)
{
    if (sgn(r) < 0)
        return std::nullopt;
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t()))
        return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    mpq_class out(n, d);
    out.canonicalize();
    return out;
}

} // namespace detail

/// p + q*sqrt(d) with p, q rational and d squarefree.
///
/// Normal form: d == 1 exactly when q == 0, so structural equality is value
/// equality. Rationals combine with any extension; two different non-trivial
/// extensions never mix.
class QuadNum {
public:
    QuadNum() = default;
    QuadNum(int v) : p_(v) {}
    QuadNum(long v) : p_(v) {}
    QuadNum(mpq_class p) : p_(std::move(p)) { p_.canonicalize(); }
    QuadNum(mpq_class p, mpq_class q, std::int64_t d) : p_(std::move(p)), q_(std::move(q)), d_(d)
    {
        p_.canonicalize();
        q_.canonicalize();
        auto [k, m] = detail::split_square(d_);
        q_ *= k;
        d_ = m;
        if (d_ == 1) {
            p_ += q_;
            q_ = 0;
        }
        if (q_ == 0)
            d_ = 1;
    }

    static QuadNum sqrt_of(std::int64_t d) { return QuadNum(0, 1, d); }
    static QuadNum fraction(long num, long den) { return QuadNum(mpq_class(num, den)); }

    const mpq_class& rational_part() const { return p_; }
    const mpq_class& irrational_part() const { return q_; }
    std::int64_t disc() const { return d_; }
    bool is_rational() const { return d_ == 1; }
    bool is_zero() const { return p_ == 0 && q_ == 0; }
    bool is_integer() const { return is_rational() && p_.get_den() == 1; }

    QuadNum conj() const { return is_rational() ? *this : QuadNum(p_, -q_, d_); }
    mpq_class norm() const { return p_ * p_ - mpq_class(d_) * q_ * q_; }

    friend QuadNum operator-(const QuadNum& x)
    {
        QuadNum r = x;
        r.p_ = -r.p_;
        r.q_ = -r.q_;
        return r;
    }

    friend QuadNum operator+(const QuadNum& x, const QuadNum& y)
    {
        std::int64_t d = common(x, y);
        return QuadNum(x.p_ + y.p_, x.q_ + y.q_, d);
    }
    friend QuadNum operator-(const QuadNum& x, const QuadNum& y) { return x + (-y); }
    friend QuadNum operator*(const QuadNum& x, const QuadNum& y)
    {
        std::int64_t d = common(x, y);
        return QuadNum(x.p_ * y.p_ + mpq_class(d) * x.q_ * y.q_, x.p_ * y.q_ + x.q_ * y.p_, d);
    }
    friend QuadNum operator/(const QuadNum& x, const QuadNum& y)
    {
        if (y.is_zero())
            throw std::domain_error("QuadNum division by zero");
        common(x, y);
        mpq_class n = y.norm();
        QuadNum yc = y.conj();
        QuadNum num = x * yc;
        return QuadNum(num.p_ / n, num.q_ / n, num.d_ == 1 ? 1 : num.d_);
    }

    QuadNum& operator+=(const QuadNum& o) { return *this = *this + o; }
    QuadNum& operator-=(const QuadNum& o) { return *this = *this - o; }
    QuadNum& operator*=(const QuadNum& o) { return *this = *this * o; }
    QuadNum& operator/=(const QuadNum& o) { return *this = *this / o; }

    QuadNum inverse() const { return QuadNum(1) / *this; }

    QuadNum pow(long e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        QuadNum r(1), b = *this;
        while (e) {
            if (e & 1)
                r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const QuadNum& x, const QuadNum& y)
    {
        return x.d_ == y.d_ && x.p_ == y.p_ && x.q_ == y.q_;
    }
    friend bool operator!=(const QuadNum& x, const QuadNum& y) { return !(x == y); }

    /// Structural total order (d, p, q); used for indexes, not a field order.
    friend bool operator<(const QuadNum& x, const QuadNum& y)
    {
        if (x.d_ != y.d_)
            return x.d_ < y.d_;
        if (int c = cmp(x.p_, y.p_))
            return c < 0;
        return cmp(x.q_, y.q_) < 0;
    }

    /// Canonical text "p/q + r/s*sqrt(d)"; parse(str()) == *this.
    std::string str() const
    {
        if (is_rational())
            return p_.get_str();
        std::string out;
        mpq_class aq = abs(q_);
        std::string qpart = aq == 1 ? "" : aq.get_str() + "*";
        std::string root = "sqrt(" + std::to_string(d_) + ")";
        if (p_ != 0) {
            out = p_.get_str() + (sgn(q_) < 0 ? " - " : " + ") + qpart + root;
        } else {
            out = (sgn(q_) < 0 ? "-" : "") + qpart + root;
        }
        return out;
    }

    static QuadNum parse(std::string_view text);

private:
    static std::int64_t common(const QuadNum& x, const QuadNum& y)
    {
        if (x.d_ == 1)
            return y.d_;
        if (y.d_ == 1 || x.d_ == y.d_)
            return x.d_;
        throw field_mismatch("incompatible discriminants: sqrt(" + std::to_string(x.d_) + ") vs sqrt(" +
                             std::to_string(y.d_) + ")");
    }

    mpq_class p_ = 0;
    mpq_class q_ = 0;
    std::int64_t d_ = 1;
};

namespace detail {

class quad_parser {
public:
    explicit quad_parser(std::string_view s) : s_(s) {}

    QuadNum parse()
    {
        skip_ws();
        if (pos_ == s_.size())
            fail("empty number");
        QuadNum acc = term(true);
        skip_ws();
        while (pos_ < s_.size()) {
            char op = s_[pos_];
            if (op != '+' && op != '-')
                fail("unexpected character");
            ++pos_;
            QuadNum t = term(false);
            acc = op == '+' ? acc + t : acc - t;
            skip_ws();
        }
        return acc;
    }

private:
    QuadNum term(bool allow_sign)
    {
        skip_ws();
        bool neg = false;
        if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
            skip_ws();
        }
        QuadNum value;
        if (peek_word("sqrt")) {
            value = root();
        } else {
            mpq_class r = rational();
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                skip_ws();
                if (!peek_word("sqrt"))
                    fail("expected sqrt after '*'");
                value = QuadNum(r) * root();
            } else {
                value = QuadNum(r);
            }
        }
        return neg ? -value : value;
    }

    QuadNum root()
    {
        pos_ += 4;
        skip_ws();
        expect('(');
        skip_ws();
        std::string digits = integer_text();
        skip_ws();
        expect(')');
        std::int64_t d = std::stoll(digits);
        if (d == 0)
            return QuadNum(0);
        return QuadNum::sqrt_of(d);
    }

    mpq_class rational()
    {
        std::string num = integer_text();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            skip_ws();
            std::string den = integer_text();
            mpz_class dz(den);
            if (dz == 0)
                fail("zero denominator");
            mpq_class q(mpz_class(num), dz);
            q.canonicalize();
            return q;
        }
        return mpq_class(mpz_class(num));
    }

    std::string integer_text()
    {
        std::size_t start = pos_;
        if (pos_ < s_.size() && s_[pos_] == '-')
            ++pos_;
        std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (pos_ == digits)
            fail("expected integer");
        return std::string(s_.substr(start, pos_ - start));
    }

    bool peek_word(std::string_view w) const { return s_.substr(pos_, w.size()) == w; }

    void expect(char c)
    {
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& why) const
    {
        throw parse_error("cannot parse number '" + std::string(s_) + "': " + why + " at offset " +
                          std::to_string(pos_));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline QuadNum QuadNum::parse(std::string_view text)
{
    return detail::quad_parser(text).parse();
}

/// Square root of v inside Q(sqrt(d)), if one exists. Returns one of the two roots.
inline std::optional<QuadNum> sqrt_in_field(const QuadNum& v, std::int64_t d)
{
    if (v.is_zero())
        return QuadNum(0);
    if (v.is_rational()) {
        if (auto r = detail::rational_sqrt(v.rational_part()))
            return QuadNum(*r);
        if (d != 1) {
            if (auto s = detail::rational_sqrt(v.rational_part() / mpq_class(d)))
                return QuadNum(0, *s, d);
        }
        return std::nullopt;
    }
    if (v.disc() != d)
        return std::nullopt;
    // (s + t sqrt d)^2 = p + q sqrt d  <=>  s^2 + d t^2 = p, 2 s t = q
    auto n = detail::rational_sqrt(v.norm());
    if (!n)
        return std::nullopt;
    for (const mpq_class& s2 : {mpq_class((v.rational_part() + *n) / 2), mpq_class((v.rational_part() - *n) / 2)}) {
        auto s = detail::rational_sqrt(s2);
        if (!s || *s == 0)
            continue;
        QuadNum cand(*s, v.irrational_part() / (2 * *s), d);
        if (cand * cand == v)
            return cand;
    }
    return std::nullopt;
}

/// p + q*sqrt(d) as a complex number, sqrt(-k) = i*sqrt(k); evaluated with
/// `precision` bits and rounded to long double.
inline cplx embed_complex(const QuadNum& x, int precision = 64)
{
    if (precision < 53)
        throw std::invalid_argument("embed_complex needs at least 53 bits");
    mpfr_t p, q, r;
    mpfr_inits2(precision, p, q, r, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_q(p, x.rational_part().get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(q, x.irrational_part().get_mpq_t(), MPFR_RNDN);
    std::int64_t d = x.disc();
    mpfr_sqrt_ui(r, static_cast<unsigned long>(d < 0 ? -d : d), MPFR_RNDN);
    mpfr_mul(q, q, r, MPFR_RNDN);
    cplx out;
    if (d < 0) {
        out = cplx(mpfr_get_ld(p, MPFR_RNDN), mpfr_get_ld(q, MPFR_RNDN));
    } else {
        mpfr_add(p, p, q, MPFR_RNDN);
        out = cplx(mpfr_get_ld(p, MPFR_RNDN), 0.0L);
    }
    mpfr_clears(p, q, r, static_cast<mpfr_ptr>(nullptr));
    return out;
}

/// Image under the other embedding (sqrt(d) -> -sqrt(d)).
inline cplx embed_conjugate(const QuadNum& x, int precision = 64)
{
    return embed_complex(x.conj(), precision);
}

} // namespace xrel
