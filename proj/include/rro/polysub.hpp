#pragma once

// Finitely generated subalgebras of finite products of polynomial rings over
// Q or Z/p, with degree-bounded membership decided by exact linear algebra.
// Membership questions are answered relative to the degree caps (D on
// generator monomials, d on K[x,y,z] coefficients); refusals carry the rank
// data of the solved system.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rro/plring.hpp"  // Rational

namespace rro::alg {

using pl::Rational;

// Coefficient field: p = 0 means Q, otherwise the prime field Z/p with
// values normalized into 0..p-1.
struct Field {
    long long p = 0;

    Rational norm(Rational x) const;
    Rational add(const Rational& a, const Rational& b) const { return norm(a + b); }
    Rational sub(const Rational& a, const Rational& b) const { return norm(a - b); }
    Rational mul(const Rational& a, const Rational& b) const { return norm(a * b); }
    Rational div(const Rational& a, const Rational& b) const;
};

// exponents of x, y, z
using Exp = std::array<int, 3>;

// sparse multivariate polynomial in x, y, z
struct MultiPoly {
    std::map<Exp, Rational> terms;

    bool operator==(const MultiPoly&) const = default;
    bool is_zero() const { return terms.empty(); }
};

MultiPoly mp_make(const Field& k, std::map<Exp, Rational> terms);
MultiPoly mp_monomial(const Field& k, Exp e, Rational c);
MultiPoly mp_add(const Field& k, const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_mul(const Field& k, const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_scale(const Field& k, const MultiPoly& a, Exp shift, const Rational& c);
int mp_total_degree(const MultiPoly& a);  // -1 for zero

using Tuple = std::vector<MultiPoly>;

Tuple tuple_mul(const Field& k, const Tuple& a, const Tuple& b);
bool tuple_eq(const Tuple& a, const Tuple& b);

// componentwise rr-order in a product of polynomial domains
bool rr_le_tuple(const Tuple& u, const Tuple& v);

struct TupleAlgebra {
    Field k;
    int factors = 0;
    std::vector<std::string> gen_names;
    std::vector<Tuple> gens;  // includes the all-ones tuple
};

struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MembershipCertificate {
    bool member = false;
    int degree_cap = 0, coeff_cap = 0;
    // representation: coefficient per (generator exponent vector, coefficient monomial)
    struct Term {
        std::vector<int> gen_exps;
        Exp coeff_mono;
        Rational coeff;
    };
    std::vector<Term> representation;
    // refusal data
    long long rows = 0, cols = 0, rank = 0, nonzeros = 0;
};

// target in span{ m(gens) * c : deg m <= D (zero constant term), deg c <= d }?
// Positive certificates are re-evaluated against the target before returning.
MembershipCertificate bounded_membership(const TupleAlgebra& a, const Tuple& target, int max_gen_deg,
                                         int max_coeff_deg, long long nnz_cap = 200000);

// The four-minimal-primes example: r, s, a, b, b1, b2, b3, 1 over K[x,y,z].
TupleAlgebra goldie4_algebra(const Field& k, bool with_z = true);

struct Goldie4Report {
    bool lower_bounds_ok = false;   // a, b below both r and s
    bool incomparable_ok = false;   // a and b not rr-related
    bool strata_ok = false;         // vanishing components per monomial stratum
    MembershipCertificate refusal;  // for (0, y, y, y)
    bool passed = false;
};

Goldie4Report goldie4_verify(int max_gen_deg, int max_coeff_deg, const Field& k,
                             bool with_z = true, long long nnz_cap = 200000);

}  // namespace rro::alg
