#include "qbound/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Piece derived_piece(double lo, double hi, ExprPtr e) {
    Piece p;
    p.lo = lo;
    p.hi = hi;
    p.src = format_expr(e);
    p.expr = std::move(e);
    return p;
}

std::string note(const std::string& kind, double param) {
    std::ostringstream os;
    os << kind << "(" << param << ")";
    return os.str();
}

}  // namespace

Potential log_map(const Potential& u, double R) {
    if (u.space != Space::Line) throw std::domain_error("log_map: source must live on the line");
    if (!(R > 0.0)) throw std::domain_error("log_map: R > 0");
    Potential v;
    v.space = Space::Radial;
    v.dimension = 2;
    v.delta_eps = u.delta_eps;
    // x -> ln(r/R); divide by r^2
    auto xsub = eln(ediv(evar(), enumber(R)));
    for (const auto& p : u.pieces) {
        auto e = ediv(substitute(p.expr, xsub), epow(evar(), 2.0));
        const double lo = std::isfinite(p.lo) ? R * std::exp(p.lo) : 0.0;
        const double hi = std::isfinite(p.hi) ? R * std::exp(p.hi) : kInf;
        v.pieces.push_back(derived_piece(lo, hi, std::move(e)));
    }
    for (const auto& t : u.tail)
        if (t.s == 0.0) v.tail.push_back({t.c, -2.0, t.p, t.q});
    v.derivation = u.derivation;
    v.derivation.push_back(note("log_map", R));
    return v;
}

Potential inverse_log_map(const Potential& v, double R) {
    if (v.space != Space::Radial)
        throw std::domain_error("inverse_log_map: source must be radial");
    if (!(R > 0.0)) throw std::domain_error("inverse_log_map: R > 0");
    Potential u;
    u.space = Space::Line;
    u.dimension = 1;
    u.delta_eps = v.delta_eps;
    // r -> R e^x; multiply by r^2
    auto rsub = emul(enumber(R), eexp(evar()));
    for (const auto& p : v.pieces) {
        auto e = emul(substitute(p.expr, rsub), epow(rsub, 2.0));
        const double lo = p.lo > 0.0 ? std::log(p.lo / R) : -kInf;
        const double hi = std::isfinite(p.hi) ? std::log(p.hi / R) : kInf;
        u.pieces.push_back(derived_piece(lo, hi, std::move(e)));
    }
    for (const auto& t : v.tail)
        if (t.p == -2.0) u.tail.push_back({t.c, t.q, t.s, 0.0});
    u.derivation = v.derivation;
    u.derivation.push_back(note("inverse_log_map", R));
    return u;
}

Potential iterated_log(const Potential& u, double r_min) {
    if (u.space != Space::Line)
        throw std::domain_error("iterated_log: source must live on the line");
    if (!(r_min > std::exp(1.0)))
        throw std::domain_error("iterated_log: domain too small (needs r > e)");
    Potential w;
    w.space = Space::Radial;
    w.dimension = 2;
    w.delta_eps = u.delta_eps;

    // 1/(r^2 ln^2 r) appears in every term
    auto weight = ediv(enumber(1.0), emul(epow(evar(), 2.0), epow(eln(evar()), 2.0)));
    auto base = eneg(ediv(enumber(1.0),
                          emul(enumber(4.0), emul(epow(evar(), 2.0), epow(eln(evar()), 2.0)))));
    auto xsub = eln(eln(evar()));

    // split [r_min, inf) at the images exp(exp(edge)) of the source edges
    std::vector<double> edges{r_min};
    for (const auto& p : u.pieces) {
        for (double e : {p.lo, p.hi}) {
            if (!std::isfinite(e)) continue;
            const double img = std::exp(std::exp(e));
            if (img > r_min && std::isfinite(img)) edges.push_back(img);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges.push_back(kInf);

    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        const double mid = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * lo;
        const double x_mid = std::log(std::log(mid));
        ExprPtr e = base;
        for (const auto& p : u.pieces)
            if (x_mid >= p.lo && x_mid < p.hi)
                e = eadd(e, emul(substitute(p.expr, xsub), weight));
        w.pieces.push_back(derived_piece(lo, hi, std::move(e)));
    }
    w.tail.push_back({-0.25, -2.0, -2.0, 0.0});
    for (const auto& t : u.tail)
        if (t.q == 0.0 && t.s == 0.0) w.tail.push_back({t.c, -2.0, -2.0, t.p});
    w.derivation = u.derivation;
    w.derivation.push_back(note("iterated_log r_min=", r_min));
    return w;
}

namespace {

// Adds shift/r^2 across (0, inf), splitting at the existing breakpoints.
Potential add_centrifugal(const Potential& v, double shift, const std::string& tag) {
    if (v.space != Space::Radial)
        throw std::domain_error(tag + ": source must be radial");
    if (shift == 0.0) return v;
    Potential out;
    out.space = Space::Radial;
    out.dimension = 2;
    out.delta_eps = v.delta_eps;

    auto cf = ediv(enumber(shift), epow(evar(), 2.0));
    std::vector<double> edges{0.0};
    for (double b : v.breakpoints())
        if (b > 0.0) edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges.push_back(kInf);

    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        const double mid = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * lo + 1.0;
        ExprPtr e = cf;
        for (const auto& p : v.pieces)
            if (mid >= p.lo && mid < p.hi) e = eadd(e, p.expr);
        out.pieces.push_back(derived_piece(lo, hi, std::move(e)));
    }
    bool merged = false;
    for (const auto& t : v.tail) {
        TailTerm u = t;
        if (t.p == -2.0 && t.q == 0.0 && t.s == 0.0) {
            u.c += shift;
            merged = true;
        }
        out.tail.push_back(u);
    }
    if (!merged) out.tail.push_back({shift, -2.0, 0.0, 0.0});
    out.derivation = v.derivation;
    out.derivation.push_back(tag);
    return out;
}

}  // namespace

Potential nd_reduction(const Potential& v, int n_dim) {
    if (n_dim < 1) throw std::domain_error("nd_reduction: N >= 1");
    const double half = 1.0 - n_dim / 2.0;
    return add_centrifugal(v, half * half, note("nd_reduction N=", n_dim));
}

Potential channel_reduction(const Potential& v, int dim, double m) {
    if (dim != 2 && dim != 3)
        throw std::domain_error("channel_reduction: only dim 2 and 3 (use nd_reduction first)");
    if (m < 0.0) throw std::domain_error("channel_reduction: m >= 0");
    const double shift = dim == 2 ? m * m - 0.25 : m * (m + 1.0);
    return add_centrifugal(v, shift, note("channel_reduction m=", m));
}

}  // namespace qbound
