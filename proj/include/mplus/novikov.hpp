#pragma once

#include "mplus/field.hpp"

#include <utility>
#include <vector>

namespace mplus {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated Novikov scalar: a finite sum  sum_i a_i T^{lambda_i}  with
// a_i in Q(sqrt2) and exponents exact rationals in [0, e_max].  Terms are
// kept sorted by strictly increasing exponent with no zero coefficients;
// any product term whose exponent exceeds e_max is discarded.
class Novikov {
public:
    using Term = std::pair<Rat, QSqrt2>; // (exponent, coefficient)

    Novikov() = default;
    explicit Novikov(Rat e_max) : e_max_(std::move(e_max)) {}

    static Novikov zero(const Rat& e_max) { return Novikov(e_max); }

    static Novikov term(const QSqrt2& coeff, const Rat& exponent, const Rat& e_max)
    {
        if (exponent < 0)
            throw InputError("Novikov: negative exponent");
        Novikov n(e_max);
        if (!coeff.is_zero() && exponent <= e_max)
            n.terms_.emplace_back(exponent, coeff);
        return n;
    }

    static Novikov constant(const QSqrt2& coeff, const Rat& e_max)
    {
        return term(coeff, Rat(0), e_max);
    }

    const Rat& e_max() const { return e_max_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Coefficient at a given exponent (zero if absent).
    QSqrt2 coeff_at(const Rat& exponent) const
    {
        for (const auto& [e, c] : terms_)
            if (e == exponent)
                return c;
        return QSqrt2();
    }

    Rat min_exponent() const
    {
        if (terms_.empty())
            throw InputError("Novikov: min_exponent of zero");
        return terms_.front().first;
    }

    Novikov operator-() const
    {
        Novikov out(e_max_);
        out.terms_.reserve(terms_.size());
        for (const auto& [e, c] : terms_)
            out.terms_.emplace_back(e, -c);
        return out;
    }

    Novikov& operator+=(const Novikov& o)
    {
        check_compatible(o);
        std::vector<Term> merged;
        merged.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
                merged.push_back(terms_[i++]);
            } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
                merged.push_back(o.terms_[j++]);
            } else {
                QSqrt2 c = terms_[i].second + o.terms_[j].second;
                if (!c.is_zero())
                    merged.emplace_back(terms_[i].first, c);
                ++i;
                ++j;
            }
        }
        terms_ = std::move(merged);
        return *this;
    }
    Novikov& operator-=(const Novikov& o) { return *this += -o; }

    friend Novikov operator+(Novikov a, const Novikov& b) { return a += b; }
    friend Novikov operator-(Novikov a, const Novikov& b) { return a -= b; }

    friend Novikov operator*(const Novikov& a, const Novikov& b)
    {
        a.check_compatible(b);
        Novikov out(a.e_max_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Rat e = ea + eb;
                if (e > a.e_max_)
                    continue;
                out += term(ca * cb, e, a.e_max_);
            }
        return out;
    }
    Novikov& operator*=(const Novikov& o) { return *this = *this * o; }

    Novikov scaled(const QSqrt2& s) const
    {
        Novikov out(e_max_);
        if (s.is_zero())
            return out;
        out.terms_.reserve(terms_.size());
        for (const auto& [e, c] : terms_)
            out.terms_.emplace_back(e, s * c);
        return out;
    }

    // Multiply by T^shift, dropping terms pushed past e_max.
    Novikov shifted(const Rat& shift) const
    {
        Novikov out(e_max_);
        for (const auto& [e, c] : terms_) {
            Rat ne = e + shift;
            if (ne <= e_max_)
                out.terms_.emplace_back(ne, c);
        }
        return out;
    }

    // Retruncate to a (possibly smaller) bound.
    Novikov truncated(const Rat& new_e_max) const
    {
        Novikov out(new_e_max);
        for (const auto& [e, c] : terms_)
            if (e <= new_e_max)
                out.terms_.emplace_back(e, c);
        return out;
    }

    friend bool operator==(const Novikov& a, const Novikov& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Novikov& a, const Novikov& b) { return !(a == b); }
    friend bool operator<(const Novikov& a, const Novikov& b) { return a.terms_ < b.terms_; }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i)
                out += " + ";
            const auto& [e, c] = terms_[i];
            if (e == 0) {
                out += c.str();
            } else {
                out += "(" + c.str() + ")*T^" + rat_str(e);
            }
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Novikov& v) { return os << v.str(); }

private:
    void check_compatible(const Novikov& o) const
    {
        if (e_max_ != o.e_max_)
            throw ConfigError("Novikov: mismatched truncation bounds " + rat_str(e_max_) +
                              " vs " + rat_str(o.e_max_));
    }

    Rat e_max_ = Rat(2);
    std::vector<Term> terms_;
};

} // namespace mplus
