#pragma once

#include "mplus/rng.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mplus {
namespace census {

constexpr double kTau = 6.283185307179586476925286766559;
constexpr double kEps = 1e-9;

struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double wrap_angle(double a)
{
    a = std::fmod(a, kTau);
    if (a < 0)
        a += kTau;
    return a;
}

inline double frac(double x)
{
    x = std::fmod(x, 1.0);
    if (x < 0)
        x += 1.0;
    return x;
}

// A point of the fiber torus [1 : e^{i a1} : e^{i a2}].
struct TorusPoint {
    double a1 = 0, a2 = 0;
    TorusPoint() = default;
    TorusPoint(double x, double y) : a1(wrap_angle(x)), a2(wrap_angle(y)) {}
};

enum class Orient { CCW, CW };

// Orientation of an ordered triple on the circle; angles in radians.
inline Orient cyclic_orientation(double a, double b, double c, double eps = kEps)
{
    double d1 = wrap_angle(b - a);
    double d2 = wrap_angle(c - a);
    if (d1 < eps || d2 < eps || std::fabs(d1 - d2) < eps || kTau - d1 < eps || kTau - d2 < eps)
        throw DegenerateInput("coincident points on the circle");
    return d1 < d2 ? Orient::CCW : Orient::CW;
}

// ---------------------------------------------------------------------------
// Disc construction through three boundary points (Blaschke factors)
// ---------------------------------------------------------------------------

using Cx = std::complex<double>;

struct Mobius {
    // z -> (a z + b) / (c z + d)
    Cx a{1}, b{0}, c{0}, d{1};

    Cx operator()(const Cx& z) const { return (a * z + b) / (c * z + d); }

    static Mobius to_zero_one_inf(const Cx& z1, const Cx& z2, const Cx& z3)
    {
        Mobius m;
        m.a = z2 - z3;
        m.b = -z1 * (z2 - z3);
        m.c = z2 - z1;
        m.d = -z3 * (z2 - z1);
        return m;
    }

    Mobius inverse() const
    {
        Mobius m;
        m.a = d;
        m.b = -b;
        m.c = -c;
        m.d = a;
        return m;
    }

    Mobius compose(const Mobius& o) const // this ∘ o
    {
        Mobius m;
        m.a = a * o.a + b * o.c;
        m.b = a * o.b + b * o.d;
        m.c = c * o.a + d * o.c;
        m.d = c * o.b + d * o.d;
        return m;
    }
};

// One coordinate factor e^{i phase} (z - center)/(1 - conj(center) z).
struct DiscFactor {
    Cx center;
    double phase = 0;

    Cx eval(const Cx& z) const
    {
        return std::polar(1.0, phase) * (z - center) / (1.0 - std::conj(center) * z);
    }
};

struct DiscParams {
    std::vector<DiscFactor> factors;
    Orient orientation = Orient::CCW;
    double residual = 0; // max deviation at the three marked points
};

// Unique holomorphic disc through three torus points, when every coordinate
// triple carries the same cyclic orientation; the disc maps the reference
// marks 1, i, -1 (or 1, -i, -1 in the clockwise case) to the given points.
inline std::optional<DiscParams>
solve_disc(const std::vector<std::array<double, 3>>& coordinate_triples, double eps = kEps)
{
    if (coordinate_triples.empty())
        throw DegenerateInput("no coordinates");
    std::vector<Orient> orient;
    orient.reserve(coordinate_triples.size());
    for (const auto& t : coordinate_triples)
        orient.push_back(cyclic_orientation(t[0], t[1], t[2], eps));
    for (Orient o : orient)
        if (o != orient.front())
            return std::nullopt;

    const bool ccw = orient.front() == Orient::CCW;
    const Cx marks[3] = {Cx(1, 0), ccw ? Cx(0, 1) : Cx(0, -1), Cx(-1, 0)};
    Mobius ref = Mobius::to_zero_one_inf(marks[0], marks[1], marks[2]);

    DiscParams out;
    out.orientation = orient.front();
    for (const auto& t : coordinate_triples) {
        Cx w0 = std::polar(1.0, t[0]);
        Cx w1 = std::polar(1.0, t[1]);
        Cx w2 = std::polar(1.0, t[2]);
        Mobius m = Mobius::to_zero_one_inf(w0, w1, w2).inverse().compose(ref);
        DiscFactor f;
        f.center = -m.b / m.a;
        if (std::abs(f.center) >= 1.0)
            throw DegenerateInput("solver produced a center outside the disc");
        Cx unit = m(Cx(1, 0)) * (1.0 - std::conj(f.center)) / (1.0 - f.center);
        f.phase = std::arg(unit);
        for (int i = 0; i < 3; ++i) {
            double err = std::abs(f.eval(marks[i]) - std::polar(1.0, t[i]));
            out.residual = std::max(out.residual, err);
        }
        out.factors.push_back(f);
    }
    if (out.residual > 1e-9)
        throw DegenerateInput("solver residual above tolerance");
    return out;
}

// ---------------------------------------------------------------------------
// The three Maslov-4 classes and their charts
// ---------------------------------------------------------------------------

enum class Maslov4 { B1B2 = 0, B0B2 = 1, B0B1 = 2 };

inline const char* maslov4_name(Maslov4 c)
{
    switch (c) {
    case Maslov4::B1B2: return "beta1+beta2";
    case Maslov4::B0B2: return "beta0+beta2";
    default: return "beta0+beta1";
    }
}

// Coordinates of a point in the affine chart avoided by the given class.
inline TorusPoint chart_coords(const TorusPoint& p, Maslov4 cls)
{
    switch (cls) {
    case Maslov4::B1B2: return {p.a1, p.a2};
    case Maslov4::B0B2: return {-p.a1, p.a2 - p.a1};
    default: return {p.a1 - p.a2, -p.a2};
    }
}

struct ClassResult {
    bool exists = false;
    Orient orientation = Orient::CCW;
};

inline ClassResult class_census(const TorusPoint& p, const TorusPoint& q, const TorusPoint& r,
                                Maslov4 cls, double eps = kEps)
{
    TorusPoint cp = chart_coords(p, cls), cq = chart_coords(q, cls), cr = chart_coords(r, cls);
    Orient o1 = cyclic_orientation(cp.a1, cq.a1, cr.a1, eps);
    Orient o2 = cyclic_orientation(cp.a2, cq.a2, cr.a2, eps);
    ClassResult res;
    res.exists = o1 == o2;
    res.orientation = o1;
    return res;
}

// ---------------------------------------------------------------------------
// The correction chain Q_p and the triple intersection number
// ---------------------------------------------------------------------------

// Q_p = { p + (s,t) : 0 <= s <= t <= 1 } on the torus normalized to period 1.
// Membership is eps-guarded against the three boundary circles through p
// (vertical, horizontal, diagonal).
inline bool in_triangle(const TorusPoint& x, const TorusPoint& base, double eps = kEps)
{
    double s = frac((x.a1 - base.a1) / kTau);
    double t = frac((x.a2 - base.a2) / kTau);
    if (s < eps || s > 1 - eps || t < eps || t > 1 - eps || std::fabs(s - t) < eps)
        throw DegenerateInput("point on the boundary of a correction triangle");
    return s < t;
}

// Directions of the three boundary circles of Q_p (the boundary loops of the
// basic Maslov-2 discs through p), as primitive vectors on the torus.
inline std::array<std::array<int, 2>, 3> triangle_boundary_directions()
{
    return {{{1, 1}, {-1, 0}, {0, -1}}}; // -(l_0 + l_1 + l_2) orientation
}

inline int t_pqr(const TorusPoint& p, const TorusPoint& q, const TorusPoint& r,
                 double eps = kEps)
{
    int total = 0;
    total += (in_triangle(r, p, eps) && in_triangle(r, q, eps)) ? 1 : 0;
    total += (in_triangle(q, p, eps) && in_triangle(q, r, eps)) ? 1 : 0;
    total += (in_triangle(p, q, eps) && in_triangle(p, r, eps)) ? 1 : 0;
    return total % 2;
}

// ---------------------------------------------------------------------------
// Census of all three classes
// ---------------------------------------------------------------------------

struct CensusReport {
    std::array<ClassResult, 3> per_class;
    int total = 0;
    int cyclic_count = 0; // discs whose common orientation is counterclockwise
    int t_pqr = 0;
    int combined = 0; // (cyclic_count + t_pqr) mod 2
};

inline CensusReport census(const TorusPoint& p, const TorusPoint& q, const TorusPoint& r,
                           double eps = kEps)
{
    CensusReport rep;
    for (int c = 0; c < 3; ++c) {
        rep.per_class[c] = class_census(p, q, r, static_cast<Maslov4>(c), eps);
        if (rep.per_class[c].exists) {
            ++rep.total;
            if (rep.per_class[c].orientation == Orient::CCW)
                ++rep.cyclic_count;
        }
    }
    rep.t_pqr = t_pqr(p, q, r, eps);
    rep.combined = (rep.cyclic_count + rep.t_pqr) % 2;
    return rep;
}

// ---------------------------------------------------------------------------
// Biran-Cornea edge counts
// ---------------------------------------------------------------------------

enum class LiftRule { Centered, Forward }; // d in (-1/2,1/2] vs [0,1)

inline double lift_component(double diff, LiftRule rule)
{
    double d = frac(diff);
    if (rule == LiftRule::Centered && d > 0.5)
        d -= 1.0;
    return d;
}

// Mod-2 number of transversal intersections of the segment from `a` toward
// `b` (under the lift rule) with the line family {value ≡ target (mod 1)}.
inline int line_crossings(double v0, double dv, double target, double eps)
{
    if (std::fabs(dv) < eps) {
        double gap = frac(v0 - target);
        if (gap < eps || 1 - gap < eps)
            throw DegenerateInput("edge parallel to and on a boundary circle");
        return 0;
    }
    int count = 0;
    double lo = std::min(v0, v0 + dv), hi = std::max(v0, v0 + dv);
    int kmin = static_cast<int>(std::floor(lo - target)) - 1;
    int kmax = static_cast<int>(std::ceil(hi - target)) + 1;
    for (int k = kmin; k <= kmax; ++k) {
        double t = (target + k - v0) / dv;
        if (t < -eps || t > 1 + eps)
            continue;
        if (t < eps || t > 1 - eps)
            throw DegenerateInput("edge endpoint on a boundary circle");
        ++count;
    }
    return count;
}

// Crossings of the edge a->b with the three circles through x.
inline int edge_count(const TorusPoint& x, const TorusPoint& a, const TorusPoint& b,
                      LiftRule rule, double eps)
{
    double a1 = a.a1 / kTau, a2 = a.a2 / kTau;
    double d1 = lift_component((b.a1 - a.a1) / kTau, rule);
    double d2 = lift_component((b.a2 - a.a2) / kTau, rule);
    double x1 = x.a1 / kTau, x2 = x.a2 / kTau;
    int n = 0;
    n += line_crossings(a1, d1, x1, eps);                     // vertical circle
    n += line_crossings(a2, d2, x2, eps);                     // horizontal circle
    n += line_crossings(a2 - a1, d2 - d1, x2 - x1, eps);      // diagonal circle
    return n;
}

struct BiranCornea {
    int n_p = 0, n_q = 0, n_r = 0;
    bool relation_holds = false; // T_pqr + n_q n_r ≡ 1 (mod 2)
};

inline BiranCornea biran_cornea(const TorusPoint& p, const TorusPoint& q, const TorusPoint& r,
                                LiftRule rule = LiftRule::Centered, double eps = kEps)
{
    BiranCornea bc;
    bc.n_p = edge_count(p, q, r, rule, eps) % 2;
    bc.n_q = edge_count(q, r, p, rule, eps) % 2;
    bc.n_r = edge_count(r, p, q, rule, eps) % 2;
    int t = t_pqr(p, q, r, eps);
    bc.relation_holds = ((t + bc.n_q * bc.n_r) % 2) == 1;
    return bc;
}

// ---------------------------------------------------------------------------
// Deterministic sampling
// ---------------------------------------------------------------------------

inline TorusPoint random_point(SplitMix64& rng)
{
    return TorusPoint(rng.uniform() * kTau, rng.uniform() * kTau);
}

// Draw a triple and reject it unless every predicate the census needs is
// eps-robust (degenerate configurations have measure zero).
inline std::array<TorusPoint, 3> sample_generic_triple(std::uint64_t seed, std::uint64_t index,
                                                       double eps = kEps)
{
    SplitMix64 rng = sample_rng(seed, index);
    for (int attempt = 0; attempt < 256; ++attempt) {
        TorusPoint p = random_point(rng), q = random_point(rng), r = random_point(rng);
        try {
            census(p, q, r, eps);
            biran_cornea(p, q, r, LiftRule::Centered, eps);
            biran_cornea(p, q, r, LiftRule::Forward, eps);
            return {p, q, r};
        } catch (const DegenerateInput&) {
            continue;
        }
    }
    throw DegenerateInput("could not sample a generic triple");
}

// Constructive check for one triple: the per-class solver must agree with
// the orientation predicate and hit the marked points within 1e-9.
inline double solve_disc_residual(const TorusPoint& p, const TorusPoint& q, const TorusPoint& r,
                                  double eps = kEps)
{
    double worst = 0;
    for (int c = 0; c < 3; ++c) {
        Maslov4 cls = static_cast<Maslov4>(c);
        TorusPoint cp = chart_coords(p, cls), cq = chart_coords(q, cls), cr = chart_coords(r, cls);
        std::vector<std::array<double, 3>> triples = {{cp.a1, cq.a1, cr.a1},
                                                      {cp.a2, cq.a2, cr.a2}};
        auto disc = solve_disc(triples, eps);
        bool predicted = class_census(p, q, r, cls, eps).exists;
        if (disc.has_value() != predicted)
            throw DegenerateInput("constructive solver disagrees with the orientation predicate");
        if (disc)
            worst = std::max(worst, disc->residual);
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Region map
// ---------------------------------------------------------------------------

struct RegionCell {
    int i = 0, j = 0;
    double r1 = 0, r2 = 0;
    bool degenerate = false;
    CensusReport report;
};

inline std::vector<RegionCell> region_map(const TorusPoint& p, const TorusPoint& q,
                                          int resolution, double eps = kEps)
{
    if (resolution < 1)
        throw std::invalid_argument("region_map: resolution must be positive");
    std::vector<RegionCell> cells;
    cells.reserve(static_cast<std::size_t>(resolution) * resolution);
    for (int j = 0; j < resolution; ++j)
        for (int i = 0; i < resolution; ++i) {
            RegionCell cell;
            cell.i = i;
            cell.j = j;
            cell.r1 = (i + 0.5) / resolution * kTau;
            cell.r2 = (j + 0.5) / resolution * kTau;
            try {
                cell.report = census(p, q, TorusPoint(cell.r1, cell.r2), eps);
            } catch (const DegenerateInput&) {
                cell.degenerate = true;
            }
            cells.push_back(cell);
        }
    return cells;
}

inline void write_region_csv(std::ostream& os, const std::vector<RegionCell>& cells)
{
    os << "i,j,r1,r2,status,total,cyclic,t_pqr,combined\r\n";
    for (const auto& c : cells) {
        os << c.i << "," << c.j << "," << c.r1 << "," << c.r2 << ",";
        if (c.degenerate) {
            os << "degenerate,,,,\r\n";
        } else {
            os << "ok," << c.report.total << "," << c.report.cyclic_count << ","
               << c.report.t_pqr << "," << c.report.combined << "\r\n";
        }
    }
}

inline void write_region_svg(std::ostream& os, const std::vector<RegionCell>& cells,
                             int resolution, int cell_px = 8)
{
    const int size = resolution * cell_px;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size
       << "\" height=\"" << size << "\">\n";
    for (const auto& c : cells) {
        const char* fill = "#d62728"; // degenerate
        if (!c.degenerate) {
            if (c.report.total == 0)
                fill = "#f7f7f7";
            else if (c.report.cyclic_count == 0)
                fill = "#9ecae1";
            else
                fill = "#2171b5";
        }
        os << "  <rect x=\"" << c.i * cell_px << "\" y=\"" << (resolution - 1 - c.j) * cell_px
           << "\" width=\"" << cell_px << "\" height=\"" << cell_px << "\" fill=\"" << fill
           << "\"/>\n";
    }
    os << "</svg>\n";
}

} // namespace census
} // namespace mplus
