#ifndef QBOUND_BOUNDS_HPP
#define QBOUND_BOUNDS_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "qbound/counting.hpp"
#include "qbound/potential.hpp"

namespace qbound::bounds {

// One evaluated closed-form bound. `value` only means something when
// `applicable`; `reason` records why not (or any convention notes).
struct BoundEntry {
    std::string id;
    double value{0.0};
    double quadrature_error{0.0};
    bool applicable{true};
    std::string reason;
};

struct BoundReport {
    std::map<std::string, BoundEntry> entries;
    std::string to_json() const;
    std::string to_csv() const;  // id,value,applicable,error_estimate
};

// Bargmann channel bound: N < (1/(2l+1)) int r V^- dr in 3D, (1/2m) in 2D.
// 2D m = 0 is flagged NOT_APPLICABLE (the divisor vanishes).
BoundEntry bargmann_channel(const Potential& v, int dim, double m_or_l);

// Line bounds: first = 1 + int |x| V^- dx, second = the product form
// 1 + sqrt(2) [int x^2 V^- dx * int V^- dx]^{1/4}.
std::pair<BoundEntry, BoundEntry> one_d_bounds(const Potential& v);

struct TwoDm0 {
    std::function<double(double)> i_of_r;  // I(R) = int r V^- |ln(r/R)| dr
    double r_min{0.0};
    double i_at_rmin{0.0};
    double product_bound{0.0};  // 1 + sqrt(2) [int (ln r)^2 rV^- * int rV^-]^{1/4}
    double plateau_lo{0.0}, plateau_hi{0.0};  // flux-balance interval
    double quadrature_error{0.0};
    bool ok{true};
    std::string reason;
};
// m = 0 channel bounds in 2D with the optimal log origin R_min, defined by
// int_0^{R_min} r V^- = int_{R_min}^inf r V^-.
TwoDm0 two_d_m0_bounds(const Potential& v);

struct NewtonSetoResult {
    double j{0.0};  // [1/2 int int r r' V^- V^- |ln(r/r')|] / int r V^-
    BoundEntry bound;  // 1 + J
};
NewtonSetoResult newton_seto(const Potential& v);

// Total 2D count: 1 + I(R_min) + (2/sqrt 3) int r V^- dr.
BoundEntry total_2d(const Potential& v);

struct NonCentralBounds {
    BoundEntry via_sup;         // total_2d applied to B(r) = sup_theta V^-
    BoundEntry conjecture_rhs;  // rearrangement form, see conjecture_rhs()
};
NonCentralBounds total_2d_noncentral(const Potential& v, const GridSpec& grid = {});

// 1 + 2 int (d^2x/2pi) V_R ln^-(|x|/R) + int (d^2x/2pi) V^- ln(|x|/R)
// + (2/sqrt 3) int (d^2x/2pi) V^-, with V_R the decreasing rearrangement,
// R the flux-balance radius of V_R, and ln^-(t) = max(-ln t, 0).
BoundEntry conjecture_rhs(const Potential& v, const GridSpec& grid = {});

struct AuxBounds {
    BoundEntry cohn_calogero;  // (2/pi) int |V|^{1/2} dr, monotone V only
    BoundEntry semiclassical;  // C_n g^{n/2} int (V^-)^{n/2} d^n x
    BoundEntry laptev_a;       // 1/sqrt(b) + 4/sqrt(3)
};
AuxBounds aux_bounds(const Potential& v, int n, double g, double b);

struct LiebThirringCheck {
    double sum_sqrt{0.0};       // sum |e_i|^{1/2} over the 1D spectrum
    double half_integral{0.0};  // (1/2) int U^- dx
    bool ok{false};             // sum_sqrt <= half_integral
};
LiebThirringCheck lieb_thirring_check(const Potential& u,
                                      const CountOptions& opt = {});

struct ReportOptions {
    int dim{2};
    double m{1.0};   // channel for BARGMANN_CHANNEL
    double g{1.0};   // coupling already folded into V; reported for scaling ids
    double b{1.0};   // Laptev parameter
    GridSpec grid{};
    CountOptions count{};
};

// Evaluates every formula applicable to the potential's space.
BoundReport full_report(const Potential& v, const ReportOptions& opt = {});

}  // namespace qbound::bounds

#endif
