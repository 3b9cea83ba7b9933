#include "qbound/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qbound::quad {

namespace {

// Kronrod 15-point nodes/weights on [-1,1] with the embedded Gauss 7 rule.
const double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
const double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double value, err;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double resg = 0.0, resk = 0.0;
    const double fc = f(c);
    resk = kWgk[7] * fc;
    resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double fsum = f(c - x) + f(c + x);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    Panel p;
    p.value = resk * h;
    p.err = std::abs((resk - resg) * h);
    return p;
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol,
           int depth, int max_depth, double& sum, double& errsum, bool& converged) {
    Panel p = gk15(f, a, b);
    if (p.err <= tol || depth >= max_depth || (b - a) < 1e-15 * (std::abs(a) + 1.0)) {
        sum += p.value;
        errsum += p.err;
        if (p.err > tol && depth >= max_depth) converged = false;
        return;
    }
    const double m = 0.5 * (a + b);
    adapt(f, a, m, tol * 0.5, depth + 1, max_depth, sum, errsum, converged);
    adapt(f, m, b, tol * 0.5, depth + 1, max_depth, sum, errsum, converged);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_depth) {
    QuadResult r;
    if (!(b > a)) return r;
    Panel first = gk15(f, a, b);
    const double tol = std::max(abs_tol, rel_tol * std::abs(first.value));
    double sum = 0.0, errsum = 0.0;
    bool converged = true;
    adapt(f, a, b, tol, 0, max_depth, sum, errsum, converged);
    r.value = sum;
    r.abs_error = errsum;
    r.converged = converged;
    return r;
}

QuadResult integrate_to_inf(const std::function<double(double)>& f, double a,
                            double abs_tol, double rel_tol) {
    auto g = [&f, a](double t) {
        const double om = 1.0 - t;
        const double x = a + t / om;
        const double v = f(x);
        return v / (om * om);
    };
    return integrate(g, 0.0, 1.0 - 1e-14, abs_tol, rel_tol);
}

QuadResult integrate_split(const std::function<double(double)>& f, double a, double b,
                           const std::vector<double>& breaks,
                           double abs_tol, double rel_tol) {
    std::vector<double> pts;
    pts.push_back(a);
    for (double p : breaks)
        if (p > a && p < b && std::isfinite(p)) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    QuadResult total;
    const bool infinite = !std::isfinite(b);
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        auto r = integrate(f, pts[i], pts[i + 1], abs_tol, rel_tol);
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.converged = total.converged && r.converged;
    }
    if (infinite) {
        auto r = integrate_to_inf(f, pts.back(), abs_tol, rel_tol);
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.converged = total.converged && r.converged;
    } else if (pts.back() < b) {
        auto r = integrate(f, pts.back(), b, abs_tol, rel_tol);
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.converged = total.converged && r.converged;
    }
    return total;
}

}  // namespace qbound::quad
