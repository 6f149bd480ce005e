#pragma once

#include "mplus/rational.hpp"

#include <ostream>

namespace mplus {

// Element of the quadratic field Q(sqrt2): value = rat + irr * sqrt(2).
// This is the coefficient field for every structure constant and pairing
// value; it is closed under the four field operations.
struct QSqrt2 {
    Rat rat;
    Rat irr;

    QSqrt2() = default;
    QSqrt2(Rat a) : rat(std::move(a)) {}
    QSqrt2(Rat a, Rat b) : rat(std::move(a)), irr(std::move(b)) {}
    QSqrt2(long a) : rat(a) {}
    QSqrt2(long a, long b) : rat(a), irr(b) {}

    static QSqrt2 sqrt2() { return QSqrt2(Rat(0), Rat(1)); }

    bool is_zero() const { return rat == 0 && irr == 0; }

    QSqrt2 operator-() const { return QSqrt2(-rat, -irr); }

    QSqrt2& operator+=(const QSqrt2& o)
    {
        rat += o.rat;
        irr += o.irr;
        return *this;
    }
    QSqrt2& operator-=(const QSqrt2& o)
    {
        rat -= o.rat;
        irr -= o.irr;
        return *this;
    }
    QSqrt2& operator*=(const QSqrt2& o)
    {
        Rat a = rat * o.rat + 2 * irr * o.irr;
        Rat b = rat * o.irr + irr * o.rat;
        rat = std::move(a);
        irr = std::move(b);
        return *this;
    }

    friend QSqrt2 operator+(QSqrt2 a, const QSqrt2& b) { return a += b; }
    friend QSqrt2 operator-(QSqrt2 a, const QSqrt2& b) { return a -= b; }
    friend QSqrt2 operator*(QSqrt2 a, const QSqrt2& b) { return a *= b; }

    // (a + b*sqrt2)^-1 = (a - b*sqrt2) / (a^2 - 2 b^2); the norm only
    // vanishes at zero since sqrt2 is irrational.
    QSqrt2 inverse() const
    {
        Rat norm = rat * rat - 2 * irr * irr;
        if (norm == 0)
            throw std::domain_error("QSqrt2: inverse of zero");
        return QSqrt2(rat / norm, -irr / norm);
    }
    friend QSqrt2 operator/(const QSqrt2& a, const QSqrt2& b) { return a * b.inverse(); }

    friend bool operator==(const QSqrt2& a, const QSqrt2& b)
    {
        return a.rat == b.rat && a.irr == b.irr;
    }
    friend bool operator!=(const QSqrt2& a, const QSqrt2& b) { return !(a == b); }

    // Total order (lexicographic, for canonical containers; not the real order).
    friend bool operator<(const QSqrt2& a, const QSqrt2& b)
    {
        if (a.rat != b.rat)
            return a.rat < b.rat;
        return a.irr < b.irr;
    }

    std::string str() const
    {
        if (is_zero())
            return "0";
        std::string out;
        if (rat != 0)
            out += rat_str(rat);
        if (irr != 0) {
            if (!out.empty())
                out += irr > 0 ? "+" : "-";
            else if (irr < 0)
                out += "-";
            Rat mag = irr < 0 ? Rat(-irr) : irr;
            if (mag != 1)
                out += rat_str(mag) + "*";
            out += "sqrt2";
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const QSqrt2& v) { return os << v.str(); }
};

inline QSqrt2 qs(long num, long den = 1) { return QSqrt2(Rat(num, den)); }
inline QSqrt2 qsr(long num, long den = 1) { return QSqrt2(Rat(0), Rat(num, den)); }

} // namespace mplus
