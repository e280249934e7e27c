#pragma once

// Dense univariate polynomials and rational functions over an exact field.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace xrel {

template <class F>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(F c) : c_{std::move(c)} { trim(); }
    explicit Polynomial(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial x() { return Polynomial(std::vector<F>{F(0), F(1)}); }

    /// Degree, -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<F>& coeffs() const { return c_; }

    F operator[](std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
    const F& lead() const
    {
        if (c_.empty())
            throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    F operator()(const F& x) const
    {
        F acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    /// Horner evaluation in any algebra R that accepts scalars from F.
    template <class R>
    R evaluate_in(const R& x, const R& one) const
    {
        R acc = one * F(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + one * *it;
        return acc;
    }

    Polynomial derivative() const
    {
        std::vector<F> out;
        for (std::size_t i = 1; i < c_.size(); ++i)
            out.push_back(c_[i] * F(static_cast<long>(i)));
        return Polynomial(std::move(out));
    }

    Polynomial monic() const
    {
        if (is_zero())
            return *this;
        F inv = F(1) / lead();
        return *this * inv;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        std::vector<F> out(std::max(a.c_.size(), b.c_.size()), F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            out[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i)
            out[i] = out[i] + b.c_[i];
        return Polynomial(std::move(out));
    }
    friend Polynomial operator-(const Polynomial& a) { return a * F(-1); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<F> out(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
        return Polynomial(std::move(out));
    }
    friend Polynomial operator*(const Polynomial& a, const F& s)
    {
        std::vector<F> out;
        out.reserve(a.c_.size());
        for (const F& c : a.c_)
            out.push_back(c * s);
        return Polynomial(std::move(out));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Euclidean division a = q*b + r with deg r < deg b.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b)
    {
        if (b.is_zero())
            throw std::domain_error("polynomial division by zero");
        std::vector<F> rem = a.c_;
        int db = b.degree();
        int dq = a.degree() - db;
        if (dq < 0)
            return {Polynomial(), a};
        std::vector<F> quo(static_cast<std::size_t>(dq + 1), F(0));
        F inv = F(1) / b.lead();
        for (int k = dq; k >= 0; --k) {
            F coef = rem[static_cast<std::size_t>(k + db)] * inv;
            quo[static_cast<std::size_t>(k)] = coef;
            if (coef == F(0))
                continue;
            for (int j = 0; j <= db; ++j)
                rem[static_cast<std::size_t>(k + j)] =
                    rem[static_cast<std::size_t>(k + j)] - coef * b.c_[static_cast<std::size_t>(j)];
        }
        return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
    }

    /// Monic gcd; gcd(0, 0) = 0.
    friend Polynomial gcd(Polynomial a, Polynomial b)
    {
        while (!b.is_zero()) {
            Polynomial r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    template <class Fmt>
    std::string str(Fmt&& fmt, const std::string& var = "X") const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const F& c = c_[static_cast<std::size_t>(i)];
            if (c == F(0))
                continue;
            if (!out.empty())
                out += " + ";
            std::string cs = "(" + fmt(c) + ")";
            if (i == 0)
                out += cs;
            else
                out += cs + "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == F(0))
            c_.pop_back();
    }

    std::vector<F> c_;
};

/// num/den with gcd(num, den) = 1 and den monic.
template <class F>
class RationalFunction {
public:
    using poly = Polynomial<F>;

    RationalFunction() : den_(F(1)) {}
    RationalFunction(F c) : num_(std::move(c)), den_(F(1)) {}
    RationalFunction(poly n) : num_(std::move(n)), den_(F(1)) {}
    RationalFunction(poly n, poly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static RationalFunction x() { return RationalFunction(poly::x()); }

    const poly& num() const { return num_; }
    const poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    F constant_value() const { return num_[0] / den_[0]; }

    F operator()(const F& x) const
    {
        F d = den_(x);
        if (d == F(0))
            throw std::domain_error("rational function evaluated at a pole");
        return num_(x) / d;
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b)
    {
        if (a.den_ == b.den_)
            return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a)
    {
        RationalFunction r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b)
    {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b)
    {
        if (b.is_zero())
            throw std::domain_error("rational function division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

private:
    void normalize()
    {
        if (den_.is_zero())
            throw std::domain_error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = poly(F(1));
            return;
        }
        poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = poly::divmod(num_, g).first;
            den_ = poly::divmod(den_, g).first;
        }
        F l = den_.lead();
        if (l != F(1)) {
            F inv = F(1) / l;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    poly num_;
    poly den_;
};

} // namespace xrel
