#pragma once

// Continuous piecewise-polynomial functions with rational coefficients and
// breakpoints on a rational interval: a desk-scale stand-in for C(X) on a
// locally connected space.  All arithmetic is exact; meets follow the
// unique-largest-cozero-set description, with support endpoints anchored at
// rational zeros of f (a lower bound in this ring can only switch on or off
// at a rational breakpoint where f vanishes).

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rro::pl {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// --- univariate polynomials over Q ----------------------------------------

// dense coefficients, constant first, no trailing zeros
struct Poly {
    std::vector<Rational> c;

    bool operator==(const Poly&) const = default;
};

Poly poly_make(std::vector<Rational> coeffs);
bool poly_is_zero(const Poly& p);
int poly_degree(const Poly& p);  // -1 for the zero polynomial
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_mul(const Poly& a, const Poly& b);
Rational poly_eval(const Poly& p, const Rational& x);
Poly poly_derivative(const Poly& p);
// quotient of an exact division; throws if the division is inexact
Poly poly_div_exact(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);

// number of distinct real roots in (lo, hi], by Sturm's theorem
int sturm_count(const Poly& p, const Rational& lo, const Rational& hi);

// all rational roots of p within [lo, hi], ascending and exact
std::vector<Rational> rational_roots_in(const Poly& p, const Rational& lo, const Rational& hi);

// isolating intervals (lo, hi), one per irrational real root in [lo, hi]
std::vector<std::pair<Rational, Rational>> isolate_irrational_roots(const Poly& p,
                                                                    const Rational& lo,
                                                                    const Rational& hi);

// --- piecewise polynomial functions ----------------------------------------

struct domain_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// cuts[0] = domain lo, cuts.back() = domain hi, piece i lives on
// [cuts[i], cuts[i+1]]; adjacent pieces agree at shared cuts.
struct PwPolyFunc {
    std::vector<Rational> cuts;
    std::vector<Poly> pieces;

    bool operator==(const PwPolyFunc&) const = default;
};

PwPolyFunc pl_make(std::vector<Rational> cuts, std::vector<Poly> pieces);
PwPolyFunc pl_constant(const Rational& lo, const Rational& hi, const Rational& value);
Rational pl_eval(const PwPolyFunc& f, const Rational& x);
bool pl_is_zero(const PwPolyFunc& f);

PwPolyFunc pl_add(const PwPolyFunc& f, const PwPolyFunc& g);
PwPolyFunc pl_sub(const PwPolyFunc& f, const PwPolyFunc& g);
PwPolyFunc pl_neg(const PwPolyFunc& f);
PwPolyFunc pl_mul(const PwPolyFunc& f, const PwPolyFunc& g);

// f <= g in the rr-order: f*(f-g) is identically zero.
bool pl_rr_le(const PwPolyFunc& f, const PwPolyFunc& g);

struct CoincidenceSet {
    struct Interval {
        Rational lo, hi;
        bool f_vanishes_lo = false;
        bool f_vanishes_hi = false;
    };
    std::vector<Interval> intervals;                      // maximal, disjoint, sorted
    std::vector<Rational> isolated_points;                // exact rational coincidences
    std::vector<std::pair<Rational, Rational>> isolated_boxes;  // irrational ones
};

CoincidenceSet coincidence(const PwPolyFunc& f, const PwPolyFunc& g);

// The rr-infimum in this ring.  Isolated coincidence points carry no open
// support and are excluded.
PwPolyFunc pl_meet(const PwPolyFunc& f, const PwPolyFunc& g);

PwPolyFunc pl_restrict(const PwPolyFunc& f, const Rational& a, const Rational& b);

// Closure of the cozero set, as maximal closed intervals.
std::vector<std::pair<Rational, Rational>> pl_support_closure(const PwPolyFunc& f);

struct not_orthogonal_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct not_zero_at_boundary : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LiftResult {
    std::vector<PwPolyFunc> lifted;
    // per element, the regions zeroed by the correction step
    std::vector<std::vector<std::pair<Rational, Rational>>> corrections;
};

// Lifts a pairwise rr-orthogonal family on the closed subinterval [a, b] to
// pairwise rr-orthogonal functions on [lo, hi] restricting back to the
// inputs.  candidates, when given, supplies the initial extensions (which
// may collide with earlier lifts; the correction zeroes the collisions).
LiftResult pl_lift_orthogonal(const std::vector<PwPolyFunc>& fs, const Rational& a,
                              const Rational& b, const Rational& lo, const Rational& hi,
                              const std::vector<std::optional<PwPolyFunc>>& candidates = {});

// order_core family adapter over a fixed domain.
struct PlRing {
    Rational lo, hi;
    using Elem = PwPolyFunc;
    Elem zero() const { return pl_constant(lo, hi, 0); }
    Elem one() const { return pl_constant(lo, hi, 1); }
    Elem add(const Elem& a, const Elem& b) const { return pl_add(a, b); }
    Elem neg(const Elem& a) const { return pl_neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return pl_mul(a, b); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::vector<Elem> lower_bound_candidates(const Elem& a, const Elem& b) const;
};

}  // namespace rro::pl
