#pragma once

#include "mplus/field.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace mplus {

// Affine expression  sum_i c_i * var_i + k  over Q(sqrt2).
struct LinExpr {
    std::map<int, QSqrt2> coeffs;
    QSqrt2 constant;

    LinExpr() = default;
    LinExpr(QSqrt2 k) : constant(std::move(k)) {}
    static LinExpr var(int id, const QSqrt2& c = QSqrt2(1))
    {
        LinExpr e;
        if (!c.is_zero())
            e.coeffs[id] = c;
        return e;
    }

    bool is_constant() const { return coeffs.empty(); }
    bool is_zero() const { return coeffs.empty() && constant.is_zero(); }

    LinExpr& operator+=(const LinExpr& o)
    {
        for (const auto& [v, c] : o.coeffs)
            add_coeff(v, c);
        constant += o.constant;
        return *this;
    }
    LinExpr& operator-=(const LinExpr& o)
    {
        for (const auto& [v, c] : o.coeffs)
            add_coeff(v, -c);
        constant -= o.constant;
        return *this;
    }
    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }

    LinExpr scaled(const QSqrt2& s) const
    {
        LinExpr out;
        if (s.is_zero())
            return out;
        for (const auto& [v, c] : coeffs)
            out.coeffs[v] = c * s;
        out.constant = constant * s;
        return out;
    }

    void add_coeff(int v, const QSqrt2& c)
    {
        auto it = coeffs.find(v);
        if (it == coeffs.end()) {
            if (!c.is_zero())
                coeffs.emplace(v, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            coeffs.erase(it);
    }

    // Substitute already-solved variables.
    void substitute(const std::map<int, QSqrt2>& solved)
    {
        for (auto it = coeffs.begin(); it != coeffs.end();) {
            auto s = solved.find(it->first);
            if (s != solved.end()) {
                constant += it->second * s->second;
                it = coeffs.erase(it);
            } else {
                ++it;
            }
        }
    }
};

// Outcome of exact Gaussian elimination on equations `expr = 0`.
struct LinSolveResult {
    bool consistent = true;
    std::string conflict;                 // description of an impossible row
    std::map<int, QSqrt2> determined;     // variables with forced values
    std::set<int> free_vars;              // variables left undetermined
};

// Row-reduce the system over Q(sqrt2). A variable counts as determined only
// when its pivot row involves no free variable; callers may then zero the
// free variables and re-run to force a full assignment.
inline LinSolveResult lin_solve(std::vector<LinExpr> equations)
{
    LinSolveResult res;
    std::set<int> vars;
    for (const auto& e : equations)
        for (const auto& [v, c] : e.coeffs)
            vars.insert(v);

    std::vector<int> order(vars.begin(), vars.end());
    std::map<int, std::size_t> pivot_row; // var -> row index
    std::size_t used_rows = 0;

    for (int v : order) {
        // find a row with nonzero coefficient on v among unused rows
        std::size_t found = equations.size();
        for (std::size_t r = used_rows; r < equations.size(); ++r) {
            if (equations[r].coeffs.count(v)) {
                found = r;
                break;
            }
        }
        if (found == equations.size())
            continue;
        std::swap(equations[used_rows], equations[found]);
        LinExpr& pivot = equations[used_rows];
        QSqrt2 inv = pivot.coeffs.at(v).inverse();
        pivot = pivot.scaled(inv);
        for (std::size_t r = 0; r < equations.size(); ++r) {
            if (r == used_rows)
                continue;
            auto it = equations[r].coeffs.find(v);
            if (it == equations[r].coeffs.end())
                continue;
            equations[r] -= pivot.scaled(it->second);
        }
        pivot_row[v] = used_rows;
        ++used_rows;
    }

    for (std::size_t r = used_rows; r < equations.size(); ++r) {
        if (!equations[r].constant.is_zero() && equations[r].coeffs.empty()) {
            res.consistent = false;
            res.conflict = "0 = " + equations[r].constant.str();
            return res;
        }
    }

    std::set<int> pivots;
    for (const auto& [v, r] : pivot_row)
        pivots.insert(v);
    for (int v : order)
        if (!pivots.count(v))
            res.free_vars.insert(v);

    for (const auto& [v, r] : pivot_row) {
        const LinExpr& row = equations[r];
        bool pure = true;
        for (const auto& [u, c] : row.coeffs)
            if (u != v)
                pure = false; // depends on a free variable
        if (pure)
            res.determined[v] = -row.constant;
    }
    return res;
}

// Rank of a dense matrix over Q(sqrt2) (used for nondegeneracy checks).
inline int matrix_rank(std::vector<std::vector<QSqrt2>> m)
{
    if (m.empty())
        return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = rows;
        for (std::size_t r = row; r < rows; ++r)
            if (!m[r][col].is_zero()) {
                sel = r;
                break;
            }
        if (sel == rows)
            continue;
        std::swap(m[row], m[sel]);
        QSqrt2 inv = m[row][col].inverse();
        for (auto& x : m[row])
            x *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col].is_zero())
                continue;
            QSqrt2 f = m[r][col];
            for (std::size_t c2 = 0; c2 < cols; ++c2)
                m[r][c2] -= f * m[row][c2];
        }
        ++row;
        ++rank;
    }
    return rank;
}

} // namespace mplus
