#pragma once

#include "mplus/novikov.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mplus {

using BasisIndex = int;

// Finite graded basis. Shifted degree |x|' = |x| - 1 governs every Koszul
// sign in the library.
class Basis {
public:
    Basis() = default;
    Basis(std::initializer_list<std::pair<std::string, int>> entries)
    {
        for (const auto& [n, d] : entries)
            add(n, d);
    }

    BasisIndex add(const std::string& name, int degree)
    {
        if (index_.count(name))
            throw InputError("Basis: duplicate name '" + name + "'");
        index_[name] = static_cast<BasisIndex>(names_.size());
        names_.push_back(name);
        degrees_.push_back(degree);
        return static_cast<BasisIndex>(names_.size() - 1);
    }

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(BasisIndex i) const { return names_.at(i); }
    int degree(BasisIndex i) const { return degrees_.at(i); }
    int shifted_degree(BasisIndex i) const { return degrees_.at(i) - 1; }

    BasisIndex index_of(const std::string& name) const
    {
        auto it = index_.find(name);
        if (it == index_.end())
            throw InputError("Basis: unknown name '" + name + "'");
        return it->second;
    }
    bool has(const std::string& name) const { return index_.count(name) != 0; }

    std::vector<BasisIndex> all() const
    {
        std::vector<BasisIndex> v(names_.size());
        for (std::size_t i = 0; i < names_.size(); ++i)
            v[i] = static_cast<BasisIndex>(i);
        return v;
    }

    bool operator==(const Basis& o) const
    {
        return names_ == o.names_ && degrees_ == o.degrees_;
    }

private:
    std::vector<std::string> names_;
    std::vector<int> degrees_;
    std::map<std::string, BasisIndex> index_;
};

// Sparse formal sum of basis vectors with Novikov coefficients.
class Element {
public:
    Element() = default;
    explicit Element(Rat e_max) : e_max_(std::move(e_max)) {}

    static Element unit_vector(BasisIndex i, const Rat& e_max)
    {
        Element x(e_max);
        x.set(i, Novikov::constant(QSqrt2(1), e_max));
        return x;
    }

    const Rat& e_max() const { return e_max_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<BasisIndex, Novikov>& coeffs() const { return coeffs_; }

    Novikov coeff(BasisIndex i) const
    {
        auto it = coeffs_.find(i);
        return it == coeffs_.end() ? Novikov::zero(e_max_) : it->second;
    }

    void set(BasisIndex i, Novikov c)
    {
        if (c.is_zero())
            coeffs_.erase(i);
        else
            coeffs_[i] = std::move(c);
    }

    void add(BasisIndex i, const Novikov& c)
    {
        auto it = coeffs_.find(i);
        if (it == coeffs_.end()) {
            if (!c.is_zero())
                coeffs_.emplace(i, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            coeffs_.erase(it);
    }

    Element& operator+=(const Element& o)
    {
        for (const auto& [i, c] : o.coeffs_)
            add(i, c);
        return *this;
    }
    Element& operator-=(const Element& o)
    {
        for (const auto& [i, c] : o.coeffs_)
            add(i, -c);
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }

    Element scaled(const Novikov& s) const
    {
        Element out(e_max_);
        for (const auto& [i, c] : coeffs_)
            out.add(i, c * s);
        return out;
    }
    Element scaled(const QSqrt2& s) const
    {
        Element out(e_max_);
        for (const auto& [i, c] : coeffs_)
            out.add(i, c.scaled(s));
        return out;
    }
    Element operator-() const { return scaled(QSqrt2(-1)); }

    friend bool operator==(const Element& a, const Element& b)
    {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    // Common degree of the support, when homogeneous.
    std::optional<int> homogeneous_degree(const Basis& basis) const
    {
        std::optional<int> deg;
        for (const auto& [i, c] : coeffs_) {
            (void)c;
            int d = basis.degree(i);
            if (deg && *deg != d)
                return std::nullopt;
            deg = d;
        }
        return deg;
    }

    std::string str(const Basis& basis) const
    {
        if (coeffs_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [i, c] : coeffs_) {
            if (!first)
                out += " + ";
            first = false;
            out += "(" + c.str() + ")*" + basis.name(i);
        }
        return out;
    }

private:
    Rat e_max_ = Rat(2);
    std::map<BasisIndex, Novikov> coeffs_;
};

// Element with coefficients in the bare field (used for structure constants
// of a single energy level and for pairing values).
using FieldElement = std::map<BasisIndex, QSqrt2>;

inline void field_add(FieldElement& target, BasisIndex i, const QSqrt2& c)
{
    auto it = target.find(i);
    if (it == target.end()) {
        if (!c.is_zero())
            target.emplace(i, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        target.erase(it);
}

} // namespace mplus
