#pragma once

// Exact integer-lattice arithmetic on row bases in Hermite normal form.
//
// A lattice is the set of integer combinations of the rows of a basis
// matrix.  All bases handed out by this module are in canonical row HNF:
// pivot columns strictly increasing, pivot entries positive, entries above
// a pivot reduced into [0, pivot).  Two lattices are equal iff their
// canonical bases are identical.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rro::lat {

using Int = long long;
using Vec = std::vector<Int>;

struct Mat {
    int cols = 0;
    std::vector<Vec> rows;

    bool operator==(const Mat&) const = default;
};

Mat make_mat(int cols, std::vector<Vec> rows);

// Canonical row HNF of the lattice spanned by the rows of m.  Zero rows are
// dropped; the result has at most m.cols rows.
Mat hnf(Mat m);

// HNF together with a unimodular transform: U * m = H, where the rows of U
// past H's rank span the left kernel {u : u*m = 0}.
struct HnfTransform {
    Mat h;       // canonical HNF, zero rows removed
    Mat u;       // rows aligned with h followed by kernel rows
    int rank;    // number of rows of h
};
HnfTransform hnf_with_transform(const Mat& m);

// Left kernel {u : u*m = 0} as a canonical lattice basis.
Mat left_kernel(const Mat& m);

// Membership of v in the row lattice of a canonical basis h, optionally with
// the integer coefficients of v against h's rows.
bool lattice_contains(const Mat& h, std::span<const Int> v);
std::optional<Vec> lattice_coefficients(const Mat& h, std::span<const Int> v);

// Smallest lattice containing both operands.
Mat lattice_sum(const Mat& a, const Mat& b);

// Intersection of two lattices.
Mat lattice_intersect(const Mat& a, const Mat& b);

bool lattice_subset(const Mat& inner, const Mat& outer);
bool lattice_equal(const Mat& a, const Mat& b);

// One solution x of x*a = b, if any (a need not be in HNF).
std::optional<Vec> solve_left(const Mat& a, std::span<const Int> b);

// Canonical coset representative of v modulo the lattice h (h canonical):
// subtracts row multiples until every pivot column entry lies in [0, pivot).
Vec reduce_mod_lattice(const Mat& h, Vec v);

}  // namespace rro::lat
