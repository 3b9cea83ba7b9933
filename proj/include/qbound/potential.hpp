#ifndef QBOUND_POTENTIAL_HPP
#define QBOUND_POTENTIAL_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbound/expr.hpp"

namespace qbound {

enum class Space { Line, Radial, Plane };

// One closed-form interval of a potential; V == 0 outside all pieces.
struct Piece {
    double lo{0.0};
    double hi{0.0};  // may be +inf
    ExprPtr expr;
    std::string src;  // original text, preserved for exact file round trips
};

// A radially symmetric profile planted at (cx, cy); used for non-central
// potentials built from shifted wells and shells.
struct Feature {
    double cx{0.0}, cy{0.0};
    std::vector<Piece> profile;
};

// Asymptotic monomial c * x^p * (ln x)^q * (ln ln x)^s of the outermost piece.
struct TailTerm {
    double c{0.0}, p{0.0}, q{0.0}, s{0.0};
};

struct Potential {
    Space space{Space::Radial};
    int dimension{2};
    std::vector<Piece> pieces;       // Line / Radial form
    std::vector<Feature> features;   // Plane form
    std::optional<double> delta_eps; // regularization width used for deltas
    std::vector<TailTerm> tail;      // exact tail terms when known
    std::vector<std::string> derivation;

    double operator()(double x) const;          // Line / Radial evaluation
    double eval_xy(double px, double py) const; // works for Plane and Radial

    std::vector<double> breakpoints() const;
    // Largest |coordinate| with nonzero closed-form support; +inf for tails.
    double support_end() const;
    double support_begin() const;  // leftmost edge (Line), innermost (Radial)
    bool compact_support() const;
};

// ---- catalog ---------------------------------------------------------------

struct CatalogId {
    std::string name;
    std::map<std::string, double> params;
};

// Families: square_well, delta_shell, inverse_square_tail, log_tail,
// log_log_tail, log_power_tail, shell_array, nieto_well.
Potential make_catalog(const CatalogId& id);

// Convenience constructors used throughout the tests.
Potential make_square_well(double depth, double radius, int dim = 2);
Potential make_square_well_1d(double depth, double half_width);
Potential make_delta_shell(double strength, double radius = 1.0, double eps = 1e-3);
Potential make_delta_line(double strength, double eps = 1e-3);
Potential make_inverse_square_tail(double lambda, double X);
Potential make_log_tail(double mu, double R, double R0);
Potential make_log_log_tail(double mu1, double mu2, double X);
Potential make_log_power_tail(double g, double R, double alpha);
Potential make_shell_array(double g0, double lambda, int count, double eps = 1e-3);
Potential make_disk_well(double depth, double radius, double cx, double cy);

// ---- operations ------------------------------------------------------------

// Pointwise max(-V, 0), returned as a potential (pieces split at sign changes).
Potential negative_part(const Potential& v);

struct GridSpec {
    double r_max{20.0};
    int nr{512};
    int ntheta{256};
};

// Circular decreasing rearrangement of V^- (2D). Throws on provably
// non-integrable input.
Potential decreasing_rearrangement(const Potential& v, const GridSpec& grid);

struct AngularSup {
    Potential radial;
    bool unbounded{false};  // B(r) infinite somewhere: result unusable as a bound
};

// B(r) = sup_theta V^-(r, theta) on the sample grid.
AngularSup sup_over_angle(const Potential& v, const GridSpec& grid);

enum class MomentClass { Finite, Infinite, Marginal };

struct MomentCheck {
    MomentClass cls{MomentClass::Finite};
    bool numeric_fallback{false};
    std::string note;
};

// Convergence of the first moment integral r |V| dr (Radial) or |V| dx (Line).
MomentCheck first_moment_class(const Potential& v);

// ---- serialization ---------------------------------------------------------

std::string potential_to_json(const Potential& v);
Potential potential_from_json(const std::string& text);

// Numerically estimates tail terms when no exact tail info is present.
// Returns true on success, filling v.tail; marks the guess as numeric.
bool estimate_tail_numeric(Potential& v);

}  // namespace qbound

#endif
