#include "qbound/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double eval_pieces(const std::vector<Piece>& pieces, double x) {
    for (const auto& p : pieces)
        if (x >= p.lo && x < p.hi) return p.expr->eval(x);
    return 0.0;
}

Piece mk_piece(double lo, double hi, ExprPtr e) {
    Piece p;
    p.lo = lo;
    p.hi = hi;
    p.src = format_expr(e);
    p.expr = std::move(e);
    return p;
}

Piece const_piece(double lo, double hi, double v) { return mk_piece(lo, hi, enumber(v)); }

void require(bool ok, const std::string& constraint) {
    if (!ok) throw std::invalid_argument("catalog parameter constraint violated: " + constraint);
}

double param(const CatalogId& id, const std::string& key, double fallback,
             bool* present = nullptr) {
    auto it = id.params.find(key);
    if (present) *present = it != id.params.end();
    return it == id.params.end() ? fallback : it->second;
}

}  // namespace

double Potential::operator()(double x) const {
    if (space == Space::Plane)
        throw std::logic_error("Potential: plane potentials need eval_xy");
    return eval_pieces(pieces, x);
}

double Potential::eval_xy(double px, double py) const {
    if (space == Space::Line) throw std::logic_error("Potential: line potentials are 1D");
    if (space == Space::Radial) return eval_pieces(pieces, std::hypot(px, py));
    double v = 0.0;
    for (const auto& f : features) v += eval_pieces(f.profile, std::hypot(px - f.cx, py - f.cy));
    return v;
}

std::vector<double> Potential::breakpoints() const {
    std::vector<double> out;
    for (const auto& p : pieces) {
        out.push_back(p.lo);
        if (std::isfinite(p.hi)) out.push_back(p.hi);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double Potential::support_end() const {
    double end = 0.0;
    auto scan = [&end](const std::vector<Piece>& ps, double shift) {
        for (const auto& p : ps) {
            if (!std::isfinite(p.hi)) {
                end = kInf;
                return;
            }
            end = std::max(end, std::abs(p.hi) + shift);
            end = std::max(end, std::abs(p.lo) + shift);
        }
    };
    if (space == Space::Plane) {
        for (const auto& f : features) {
            scan(f.profile, std::hypot(f.cx, f.cy));
            if (!std::isfinite(end)) return end;
        }
    } else {
        scan(pieces, 0.0);
    }
    return end;
}

double Potential::support_begin() const {
    if (pieces.empty()) return 0.0;
    double b = kInf;
    for (const auto& p : pieces) b = std::min(b, p.lo);
    return b;
}

bool Potential::compact_support() const { return std::isfinite(support_end()); }

// ---- catalog ---------------------------------------------------------------

Potential make_square_well(double depth, double radius, int dim) {
    require(radius > 0.0, "square_well: radius > 0");
    require(depth >= 0.0, "square_well: depth >= 0");
    Potential v;
    v.space = Space::Radial;
    v.dimension = dim;
    if (depth > 0.0) v.pieces.push_back(const_piece(0.0, radius, -depth));
    return v;
}

Potential make_square_well_1d(double depth, double half_width) {
    require(half_width > 0.0, "square_well: radius > 0");
    require(depth >= 0.0, "square_well: depth >= 0");
    Potential v;
    v.space = Space::Line;
    v.dimension = 1;
    if (depth > 0.0) v.pieces.push_back(const_piece(-half_width, half_width, -depth));
    return v;
}

Potential make_delta_shell(double strength, double radius, double eps) {
    require(strength > 0.0, "delta_shell: strength > 0");
    require(radius > 0.0, "delta_shell: radius > 0");
    require(eps > 0.0 && eps < radius, "delta_shell: 0 < eps < radius");
    Potential v;
    v.space = Space::Radial;
    v.dimension = 2;
    v.delta_eps = eps;
    v.pieces.push_back(const_piece(radius - eps / 2.0, radius + eps / 2.0, -strength / eps));
    return v;
}

Potential make_delta_line(double strength, double eps) {
    require(strength > 0.0, "delta_shell: strength > 0");
    require(eps > 0.0, "delta_shell: eps > 0");
    Potential v;
    v.space = Space::Line;
    v.dimension = 1;
    v.delta_eps = eps;
    v.pieces.push_back(const_piece(-eps / 2.0, eps / 2.0, -strength / eps));
    return v;
}

Potential make_inverse_square_tail(double lambda, double X) {
    require(X > 0.0, "inverse_square_tail: X > 0");
    Potential v;
    v.space = Space::Line;
    v.dimension = 1;
    // -lambda / x^2 for x > X
    v.pieces.push_back(mk_piece(X, kInf, eneg(ediv(enumber(lambda), epow(evar(), 2.0)))));
    v.tail.push_back({-lambda, -2.0, 0.0, 0.0});
    return v;
}

Potential make_log_tail(double mu, double R, double R0) {
    require(R > 0.0, "log_tail: R > 0");
    require(R0 > R, "log_tail: R0 > R");
    Potential v;
    v.space = Space::Radial;
    v.dimension = 2;
    // -mu / (4 r^2 ln(r/R)^2) for r >= R0
    auto expr = eneg(ediv(enumber(mu),
                          emul(enumber(4.0),
                               emul(epow(evar(), 2.0), epow(eln(ediv(evar(), enumber(R))), 2.0)))));
    v.pieces.push_back(mk_piece(R0, kInf, std::move(expr)));
    v.tail.push_back({-mu / 4.0, -2.0, -2.0, 0.0});
    return v;
}

Potential make_log_log_tail(double mu1, double mu2, double X) {
    require(X > 1.0, "log_log_tail: X > 1");
    if (mu2 != 0.0) require(X > std::exp(1.0), "log_log_tail: X > e when mu2 != 0");
    Potential v;
    v.space = Space::Line;
    v.dimension = 1;
    // -1/(4x^2) - (1/(4x^2 (ln x)^2)) (mu1 + mu2/(ln ln x)^2) for x > X
    auto x2 = epow(evar(), 2.0);
    auto lead = ediv(enumber(1.0), emul(enumber(4.0), x2));
    auto lnx2 = epow(eln(evar()), 2.0);
    auto inner = eadd(enumber(mu1), ediv(enumber(mu2), epow(eln(eln(evar())), 2.0)));
    auto sub = ediv(inner, emul(enumber(4.0), emul(epow(evar(), 2.0), lnx2)));
    v.pieces.push_back(mk_piece(X, kInf, eneg(eadd(std::move(lead), std::move(sub)))));
    v.tail.push_back({-0.25, -2.0, 0.0, 0.0});
    if (mu1 != 0.0) v.tail.push_back({-mu1 / 4.0, -2.0, -2.0, 0.0});
    if (mu2 != 0.0) v.tail.push_back({-mu2 / 4.0, -2.0, -2.0, -2.0});
    return v;
}

Potential make_log_power_tail(double g, double R, double alpha) {
    require(g > 0.0, "log_power_tail: g > 0");
    require(R > 1.0, "log_power_tail: R > 1");
    require(alpha > 1.0 && alpha < 2.0, "log_power_tail: 1 < alpha < 2");
    Potential v;
    v.space = Space::Radial;
    v.dimension = 2;
    // -g / (r^2 (ln r)^alpha) for r > R
    auto expr = eneg(ediv(enumber(g), emul(epow(evar(), 2.0), epow(eln(evar()), alpha))));
    v.pieces.push_back(mk_piece(R, kInf, std::move(expr)));
    v.tail.push_back({-g, -2.0, -alpha, 0.0});
    return v;
}

Potential make_shell_array(double g0, double lambda, int count, double eps) {
    require(g0 > 0.0, "shell_array: g0 > 0");
    require(lambda > 0.0, "shell_array: lambda > 0");
    require(count >= 1, "shell_array: count >= 1");
    Potential v;
    v.space = Space::Plane;
    v.dimension = 2;
    v.delta_eps = eps;
    // Shells of unit radius; disk n has Dirichlet radius r_n = exp(1/g_n).
    // Centers on the positive x axis with minimal non-overlapping packing:
    // x_{n+1} = x_n + r_n + r_{n+1}.
    double prev_edge = 0.0;
    for (int n = 0; n < count; ++n) {
        const double gn = g0 * std::exp(-lambda * n);
        const double rn = std::exp(1.0 / gn);
        Feature f;
        f.cx = prev_edge + rn;
        f.cy = 0.0;
        f.profile.push_back(const_piece(1.0 - eps / 2.0, 1.0 + eps / 2.0, -gn / eps));
        prev_edge = f.cx + rn;
        v.features.push_back(std::move(f));
    }
    return v;
}

Potential make_disk_well(double depth, double radius, double cx, double cy) {
    require(radius > 0.0, "disk_well: radius > 0");
    Potential v;
    v.space = Space::Plane;
    v.dimension = 2;
    Feature f;
    f.cx = cx;
    f.cy = cy;
    f.profile.push_back(const_piece(0.0, radius, -depth));
    v.features.push_back(std::move(f));
    return v;
}

Potential make_catalog(const CatalogId& id) {
    const std::string& n = id.name;
    if (n == "square_well") {
        const int dim = static_cast<int>(param(id, "dim", 2));
        const double depth = param(id, "depth", 1.0);
        const double radius = param(id, "radius", 1.0);
        return dim == 1 ? make_square_well_1d(depth, radius) : make_square_well(depth, radius, dim);
    }
    if (n == "delta_shell") {
        const int dim = static_cast<int>(param(id, "dim", 2));
        const double g = param(id, "strength", param(id, "g", 1.0));
        const double eps = param(id, "eps", 1e-3);
        return dim == 1 ? make_delta_line(g, eps) : make_delta_shell(g, param(id, "radius", 1.0), eps);
    }
    if (n == "inverse_square_tail")
        return make_inverse_square_tail(param(id, "lambda", 1.25), param(id, "X", 1.0));
    if (n == "log_tail")
        return make_log_tail(param(id, "mu", 2.0), param(id, "R", 1.0), param(id, "R0", 2.0));
    if (n == "log_log_tail")
        return make_log_log_tail(param(id, "mu1", 2.0), param(id, "mu2", 0.0),
                                 param(id, "X", 10.0));
    if (n == "log_power_tail")
        return make_log_power_tail(param(id, "g", 1.0), param(id, "R", 2.0),
                                   param(id, "alpha", 1.5));
    if (n == "shell_array")
        return make_shell_array(param(id, "g0", 1.0), param(id, "lambda", 1.0),
                                static_cast<int>(param(id, "count", 3)), param(id, "eps", 1e-3));
    if (n == "nieto_well") return make_square_well(param(id, "depth", 0.1), 1.0, 2);
    throw std::invalid_argument("unknown catalog family: " + n);
}

// ---- negative part ---------------------------------------------------------

namespace {

// Sign-splits one piece; appends the sub-intervals where V < 0 (negated).
void split_negative(const Piece& p, std::vector<Piece>& out) {
    const double cap = std::isfinite(p.hi) ? p.hi : std::max(p.lo * 10.0, p.lo + 1e6);
    const int n = 512;
    std::vector<double> xs(n + 1);
    for (int i = 0; i <= n; ++i) xs[i] = p.lo + (cap - p.lo) * i / n;

    auto f = [&p](double x) { return p.expr->eval(x); };
    std::vector<double> cuts;  // interior sign-change locations
    double prev = f(xs[0] + 1e-12 * (cap - p.lo));
    for (int i = 1; i <= n; ++i) {
        double cur = f(xs[i] - (i == n ? 1e-12 * (cap - p.lo) : 0.0));
        if ((prev < 0.0) != (cur < 0.0)) {
            double a = xs[i - 1], b = xs[i];
            for (int it = 0; it < 100; ++it) {
                double m = 0.5 * (a + b);
                if ((f(m) < 0.0) == (prev < 0.0))
                    a = m;
                else
                    b = m;
            }
            cuts.push_back(0.5 * (a + b));
        }
        prev = cur;
    }
    std::vector<double> edges;
    edges.push_back(p.lo);
    for (double c : cuts) edges.push_back(c);
    edges.push_back(p.hi);
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        const double mid = std::isfinite(b) ? 0.5 * (a + b) : a + 1.0;
        if (f(mid) < 0.0) {
            Piece q;
            q.lo = a;
            q.hi = b;
            q.expr = eneg(p.expr);
            q.src = format_expr(q.expr);
            out.push_back(std::move(q));
        }
    }
}

}  // namespace

Potential negative_part(const Potential& v) {
    Potential out;
    out.space = v.space;
    out.dimension = v.dimension;
    out.delta_eps = v.delta_eps;
    if (v.space == Space::Plane) {
        for (const auto& f : v.features) {
            Feature g;
            g.cx = f.cx;
            g.cy = f.cy;
            for (const auto& p : f.profile) split_negative(p, g.profile);
            if (!g.profile.empty()) out.features.push_back(std::move(g));
        }
        return out;
    }
    for (const auto& p : v.pieces) split_negative(p, out.pieces);
    for (const auto& t : v.tail)
        if (t.c < 0.0) out.tail.push_back({-t.c, t.p, t.q, t.s});
    return out;
}

// ---- polar sampling, rearrangement, angular sup ---------------------------

namespace {

double vminus_xy(const Potential& v, double px, double py) {
    const double val = v.eval_xy(px, py);
    return val < 0.0 ? -val : 0.0;
}

// V^- tail limit must vanish at infinity for the level sets to have finite
// measure.
void check_rearrangeable(const Potential& v) {
    for (const auto& t : v.tail) {
        if (t.c >= 0.0) continue;
        const bool vanishes = t.p < 0.0 || (t.p == 0.0 && (t.q < 0.0 || (t.q == 0.0 && t.s < 0.0)));
        if (!vanishes)
            throw std::domain_error(
                "decreasing_rearrangement: V^- does not vanish at infinity "
                "(level-set measure infinite)");
    }
}

Potential profile_to_radial(const std::vector<double>& edges, const std::vector<double>& vals) {
    // vals[i] on [edges[i], edges[i+1]); merge equal-valued runs.
    Potential out;
    out.space = Space::Radial;
    out.dimension = 2;
    size_t i = 0;
    while (i < vals.size()) {
        size_t j = i;
        while (j + 1 < vals.size() &&
               std::abs(vals[j + 1] - vals[i]) <= 1e-9 * (std::abs(vals[i]) + 1e-300))
            ++j;
        if (vals[i] != 0.0) out.pieces.push_back(const_piece(edges[i], edges[j + 1], -vals[i]));
        i = j + 1;
    }
    return out;
}

}  // namespace

Potential decreasing_rearrangement(const Potential& v, const GridSpec& grid) {
    if (v.space == Space::Line)
        throw std::domain_error("decreasing_rearrangement: needs a 2D potential");
    check_rearrangeable(v);

    struct Cell {
        double value, area;
    };
    std::vector<Cell> cells;
    const double dr = grid.r_max / grid.nr;
    if (v.space == Space::Radial) {
        for (int i = 0; i < grid.nr; ++i) {
            const double r = (i + 0.5) * dr;
            const double val = vminus_xy(v, r, 0.0);
            if (val > 0.0) cells.push_back({val, 2.0 * M_PI * r * dr});
        }
    } else {
        const double dth = 2.0 * M_PI / grid.ntheta;
        for (int i = 0; i < grid.nr; ++i) {
            const double r = (i + 0.5) * dr;
            for (int j = 0; j < grid.ntheta; ++j) {
                const double th = j * dth;
                const double val = vminus_xy(v, r * std::cos(th), r * std::sin(th));
                if (val > 0.0) cells.push_back({val, r * dr * dth});
            }
        }
    }
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return a.value > b.value; });

    std::vector<double> edges{0.0}, vals;
    double area = 0.0;
    for (const auto& c : cells) {
        area += c.area;
        vals.push_back(c.value);
        edges.push_back(std::sqrt(area / M_PI));
    }
    return profile_to_radial(edges, vals);
}

AngularSup sup_over_angle(const Potential& v, const GridSpec& grid) {
    AngularSup out;
    const double dr = grid.r_max / grid.nr;
    std::vector<double> edges(grid.nr + 1), vals(grid.nr, 0.0);
    for (int i = 0; i <= grid.nr; ++i) edges[i] = i * dr;
    const double dth = 2.0 * M_PI / grid.ntheta;
    for (int i = 0; i < grid.nr; ++i) {
        const double r = (i + 0.5) * dr;
        double b = 0.0;
        if (v.space == Space::Radial) {
            b = vminus_xy(v, r, 0.0);
        } else {
            for (int j = 0; j < grid.ntheta; ++j) {
                const double th = j * dth;
                b = std::max(b, vminus_xy(v, r * std::cos(th), r * std::sin(th)));
            }
        }
        if (!std::isfinite(b) || b > 1e12) out.unbounded = true;
        vals[i] = b;
    }
    out.radial = profile_to_radial(edges, vals);
    out.radial.pieces.erase(
        std::remove_if(out.radial.pieces.begin(), out.radial.pieces.end(),
                       [](const Piece& p) { return !std::isfinite(p.expr->eval(0.5 * (p.lo + p.hi))); }),
        out.radial.pieces.end());
    // sup_over_angle produces B >= 0 stored as -B in piece form; flip to B(r)
    // as an attractive profile: callers treat it as V^- directly.
    return out;
}

// ---- moment classification -------------------------------------------------

MomentCheck first_moment_class(const Potential& v) {
    MomentCheck out;
    if (v.compact_support()) {
        out.note = "compact support";
        return out;
    }
    std::vector<TailTerm> tail = v.tail;
    if (tail.empty()) {
        Potential tmp = v;
        if (estimate_tail_numeric(tmp)) {
            tail = tmp.tail;
            out.numeric_fallback = true;
        } else {
            out.cls = MomentClass::Marginal;
            out.note = "tail pattern not recognized";
            return out;
        }
    }
    for (const auto& t : tail) {
        if (t.c == 0.0) continue;
        // integral of x * x^p (ln x)^q (ln ln x)^s
        bool finite = t.p < -2.0 || (t.p == -2.0 && (t.q < -1.0 || (t.q == -1.0 && t.s < -1.0)));
        bool marginal = (t.p == -2.0 && t.q == -1.0 && t.s >= -1.0);
        if (marginal) {
            out.cls = MomentClass::Marginal;
            out.note = "borderline first-moment tail";
            return out;
        }
        if (!finite) {
            out.cls = MomentClass::Infinite;
            out.note = "first moment diverges";
            return out;
        }
    }
    out.note = "tail decays fast enough";
    return out;
}

// ---- numeric tail estimation ----------------------------------------------

bool estimate_tail_numeric(Potential& v) {
    if (v.space == Space::Plane || v.pieces.empty()) return false;
    const Piece* outer = nullptr;
    for (const auto& p : v.pieces)
        if (!std::isfinite(p.hi)) outer = &p;
    if (!outer) return false;

    // least-squares fit of ln|V| = ln|c| + p ln x + q ln ln x
    std::vector<double> xs;
    for (double x = 1e3; x <= 1e10; x *= 10.0) xs.push_back(std::max(x, outer->lo * 2.0));
    double S[3][3] = {{0}}, b[3] = {0};
    double sign = 0.0;
    for (double x : xs) {
        const double val = outer->expr->eval(x);
        if (val == 0.0 || !std::isfinite(val)) return false;
        if (sign == 0.0) sign = val > 0 ? 1.0 : -1.0;
        if ((val > 0) != (sign > 0)) return false;
        const double a0 = 1.0, a1 = std::log(x), a2 = std::log(std::log(x));
        const double y = std::log(std::abs(val));
        const double a[3] = {a0, a1, a2};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) S[i][j] += a[i] * a[j];
            b[i] += a[i] * y;
        }
    }
    // solve 3x3 by Gaussian elimination
    double m[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m[i][j] = S[i][j];
        m[i][3] = b[i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int i = col + 1; i < 3; ++i)
            if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
        if (std::abs(m[piv][col]) < 1e-12) return false;
        std::swap(m[col], m[piv]);
        for (int i = 0; i < 3; ++i) {
            if (i == col) continue;
            const double f = m[i][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[i][j] -= f * m[col][j];
        }
    }
    double lc = m[0][3] / m[0][0], p = m[1][3] / m[1][1], q = m[2][3] / m[2][2];
    auto snap = [](double t) {
        const double r = std::round(t * 4.0) / 4.0;
        return std::abs(t - r) < 1e-3 ? r : t;
    };
    TailTerm t;
    t.p = snap(p);
    t.q = snap(q);
    t.s = 0.0;
    t.c = sign * std::exp(lc);
    v.tail = {t};
    return true;
}

// ---- JSON ------------------------------------------------------------------

namespace {

using nlohmann::json;

json bound_to_json(double v) {
    if (v == kInf) return json("inf");
    if (v == -kInf) return json("-inf");
    return json(v);
}

double bound_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        throw std::invalid_argument("potential file: bad interval bound '" + s + "'");
    }
    return j.get<double>();
}

json pieces_to_json(const std::vector<Piece>& pieces) {
    json arr = json::array();
    for (const auto& p : pieces) {
        json jp;
        jp["from"] = bound_to_json(p.lo);
        jp["to"] = bound_to_json(p.hi);
        jp["expr"] = p.src;
        arr.push_back(std::move(jp));
    }
    return arr;
}

std::vector<Piece> pieces_from_json(const json& arr) {
    std::vector<Piece> out;
    double prev_hi = -kInf;
    for (const auto& jp : arr) {
        Piece p;
        p.lo = bound_from_json(jp.at("from"));
        p.hi = bound_from_json(jp.at("to"));
        p.src = jp.at("expr").get<std::string>();
        p.expr = parse_expr(p.src);
        if (!(p.hi > p.lo))
            throw std::invalid_argument("potential file: empty or inverted interval");
        if (p.lo < prev_hi)
            throw std::invalid_argument("potential file: intervals overlap or are unordered");
        prev_hi = p.hi;
        // finiteness probe at interior points
        const double cap = std::isfinite(p.hi) ? p.hi : std::max(2.0 * std::abs(p.lo) + 10.0, 10.0);
        for (int i = 1; i < 16; ++i) {
            const double x = p.lo + (cap - p.lo) * i / 16.0;
            if (!std::isfinite(p.expr->eval(x)))
                throw std::invalid_argument("potential file: expression not finite inside piece");
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

std::string potential_to_json(const Potential& v) {
    json j;
    j["space"] = v.space == Space::Line ? "line" : (v.space == Space::Radial ? "radial" : "plane");
    j["dimension"] = v.dimension;
    if (v.space == Space::Plane) {
        json feats = json::array();
        for (const auto& f : v.features) {
            json jf;
            jf["cx"] = f.cx;
            jf["cy"] = f.cy;
            jf["profile"] = pieces_to_json(f.profile);
            feats.push_back(std::move(jf));
        }
        j["features"] = std::move(feats);
    } else {
        j["pieces"] = pieces_to_json(v.pieces);
    }
    if (v.delta_eps) j["epsilon"] = *v.delta_eps;
    if (!v.tail.empty()) {
        json jt = json::array();
        for (const auto& t : v.tail) jt.push_back({t.c, t.p, t.q, t.s});
        j["tail"] = std::move(jt);
    }
    if (!v.derivation.empty()) j["derivation"] = v.derivation;
    return j.dump();
}

Potential potential_from_json(const std::string& text) {
    json j = json::parse(text);
    Potential v;
    const std::string sp = j.at("space").get<std::string>();
    if (sp == "line")
        v.space = Space::Line;
    else if (sp == "radial")
        v.space = Space::Radial;
    else if (sp == "plane")
        v.space = Space::Plane;
    else
        throw std::invalid_argument("potential file: space must be line|radial|plane");
    v.dimension = j.value("dimension", v.space == Space::Line ? 1 : 2);
    if (v.space == Space::Plane) {
        for (const auto& jf : j.at("features")) {
            Feature f;
            f.cx = jf.at("cx").get<double>();
            f.cy = jf.at("cy").get<double>();
            f.profile = pieces_from_json(jf.at("profile"));
            v.features.push_back(std::move(f));
        }
    } else {
        v.pieces = pieces_from_json(j.at("pieces"));
        if (v.space == Space::Radial)
            for (const auto& p : v.pieces)
                if (p.lo < 0.0)
                    throw std::invalid_argument("potential file: radial pieces need r >= 0");
    }
    if (j.contains("epsilon")) v.delta_eps = j["epsilon"].get<double>();
    if (j.contains("tail"))
        for (const auto& jt : j["tail"]) {
            if (!jt.is_array() || jt.size() != 4)
                throw std::invalid_argument("potential file: tail terms are [c,p,q,s]");
            v.tail.push_back({jt[0].get<double>(), jt[1].get<double>(),
                              jt[2].get<double>(), jt[3].get<double>()});
        }
    if (j.contains("derivation"))
        for (const auto& d : j["derivation"]) v.derivation.push_back(d.get<std::string>());
    return v;
}

}  // namespace qbound
