#include "rro/zkring.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace rro::zk {

namespace {

constexpr int kMaxRefinedWidth = 12;

std::optional<std::vector<Int>> squarefree_factors(Int m) {
    std::vector<Int> ps;
    Int x = m;
    for (Int p = 2; p * p <= x; ++p) {
        if (x % p == 0) {
            x /= p;
            if (x % p == 0) return std::nullopt;
            ps.push_back(p);
        }
    }
    if (x > 1) ps.push_back(x);
    return ps;
}

Int mod_norm(Int v, Int m) {
    if (m <= 0) return v;
    Int r = v % m;
    return r < 0 ? r + m : r;
}

Int egcd(Int a, Int b, Int& x, Int& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    Int x1, y1;
    Int g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

Int crt_pair(Int r1, Int m1, Int r2, Int m2) {
    Int x, y;
    Int g = egcd(m1, m2, x, y);
    assert(g == 1);
    (void)g;
    return mod_norm(r1 + m1 * mod_norm(x * (r2 - r1), m2), m1 * m2);
}

// Deterministic value order 0, 1, -1, 2, -2, ...
Int signed_value(long long idx) {
    long long h = (idx + 1) / 2;
    return (idx % 2 == 1) ? h : -h;
}

Mat vanish_lattice(int rwidth, const Vec& rmoduli, uint32_t mask) {
    std::vector<Vec> rows;
    for (int i = 0; i < rwidth; ++i) {
        Vec row(rwidth, 0);
        if (mask & (1u << i)) {
            if (rmoduli[i] == 0) continue;  // Z coordinate pinned to 0
            row[i] = rmoduli[i];
        } else {
            row[i] = 1;
        }
        rows.push_back(std::move(row));
    }
    return lat::hnf(lat::make_mat(rwidth, std::move(rows)));
}

}  // namespace

// Private hook used to fill the cached classification during construction.
struct ClassAccess {
    static void store(CongruenceRing& r, const Classification& c) {
        r.class_verdict_ = static_cast<int>(c.verdict);
        r.class_witness_ = c.witness;
    }
    static Classification load(const CongruenceRing& r, std::string note) {
        Classification c;
        c.verdict = static_cast<RingClass>(r.class_verdict_);
        c.witness = r.class_witness_;
        c.note = std::move(note);
        return c;
    }
    static bool ready(const CongruenceRing& r) { return r.class_verdict_ >= 0; }
};

namespace {

Classification compute_classification(const CongruenceRing& r) {
    Classification out;

    // Scan realizable support patterns in ascending vanish-mask order.  The
    // annihilator of any element with support P is the vanish-on-P
    // sublattice; it is generated by an idempotent exactly when the union of
    // its basis supports equals the support of the largest idempotent of the
    // ring avoiding P.
    for (uint32_t s : r.realizable_vanish_masks()) {
        uint32_t p = (~s) & r.full_mask();
        Mat annlat =
            lat::lattice_intersect(r.rlattice(), vanish_lattice(r.rwidth(), r.rmoduli(), p));
        uint32_t union_supp = 0;
        for (const auto& row : annlat.rows)
            for (int i = 0; i < r.rwidth(); ++i)
                if (mod_norm(row[i], r.rmoduli()[i]) != 0) union_supp |= 1u << i;
        uint32_t e_mask = r.best_idempotent_avoiding(p);
        if (union_supp != e_mask) {
            out.verdict = RingClass::Neither;
            out.witness = r.realize_zero_pattern(s);
            return out;
        }
    }

    bool boolean = true;
    for (Int m : r.rmoduli())
        if (m != 2) boolean = false;
    out.verdict = boolean ? RingClass::Boolean : RingClass::WeaklyBaer;
    return out;
}

}  // namespace

// --- construction ----------------------------------------------------------

Vec CongruenceRing::refine(std::span<const Int> v) const {
    assert(static_cast<int>(v.size()) == width_);
    Vec rv(rwidth_, 0);
    for (int i = 0; i < width_; ++i)
        for (int idx : origin_refined_[i]) rv[idx] = mod_norm(v[i], rmoduli_[idx]);
    return rv;
}

Vec CongruenceRing::unrefine(std::span<const Int> rv) const {
    assert(static_cast<int>(rv.size()) == rwidth_);
    Vec v(width_, 0);
    for (int i = 0; i < width_; ++i) {
        const auto& idxs = origin_refined_[i];
        if (moduli_[i] == 0) {
            v[i] = rv[idxs[0]];
        } else {
            Int r = 0, m = 1;
            for (int idx : idxs) {
                Int res = mod_norm(rv[idx], rmoduli_[idx]);
                r = (m == 1) ? res : crt_pair(r, m, res, rmoduli_[idx]);
                m *= rmoduli_[idx];
            }
            v[i] = r;
        }
    }
    return v;
}

CongruenceRing::Elem CongruenceRing::reduce(Vec v) const {
    for (int i = 0; i < width_; ++i) v[i] = mod_norm(v[i], moduli_[i]);
    return v;
}

CongruenceRing CongruenceRing::from_congruences(int width, Vec moduli,
                                                std::vector<Constraint> constraints) {
    if (width <= 0)
        throw ring_spec_error(RingSpecFault::EmptyWidth, "ring width must be positive");
    if (static_cast<int>(moduli.size()) != width)
        throw ring_spec_error(RingSpecFault::BadConstraint, "moduli length mismatch");

    CongruenceRing r;
    r.width_ = width;
    r.moduli_ = moduli;
    r.congruence_form_ = true;

    // Refine composite squarefree moduli into prime coordinates.
    r.origin_refined_.resize(width);
    for (int i = 0; i < width; ++i) {
        if (moduli[i] < 0)
            throw ring_spec_error(RingSpecFault::NonSquarefreeModulus, "negative modulus");
        if (moduli[i] == 0) {
            r.origin_refined_[i] = {r.rwidth_};
            r.rmoduli_.push_back(0);
            r.refined_origin_.push_back(i);
            ++r.rwidth_;
        } else if (moduli[i] == 1) {
            throw ring_spec_error(RingSpecFault::NonSquarefreeModulus,
                                  "modulus 1 gives the zero ring");
        } else {
            auto ps = squarefree_factors(moduli[i]);
            if (!ps)
                throw ring_spec_error(
                    RingSpecFault::NonSquarefreeModulus,
                    "modulus " + std::to_string(moduli[i]) + " is not squarefree");
            for (Int p : *ps) {
                r.origin_refined_[i].push_back(r.rwidth_);
                r.rmoduli_.push_back(p);
                r.refined_origin_.push_back(i);
                ++r.rwidth_;
            }
        }
    }
    if (r.rwidth_ > kMaxRefinedWidth)
        throw ring_spec_error(RingSpecFault::TooWide, "refined width exceeds the supported cap");

    std::sort(constraints.begin(), constraints.end());
    constraints.erase(std::unique(constraints.begin(), constraints.end()), constraints.end());
    r.constraints_ = constraints;
    struct RefCon {
        int a, b;
        Int n;
    };
    std::vector<RefCon> refcons;
    for (const auto& c : constraints) {
        if (c.i < 0 || c.i >= width || c.j < 0 || c.j >= width || c.i == c.j || c.n < 0)
            throw ring_spec_error(RingSpecFault::BadConstraint, "constraint indices out of range");
        Int mi = moduli[c.i], mj = moduli[c.j];
        if (c.n == 0) {
            if (mi != mj)
                throw ring_spec_error(RingSpecFault::BadConstraint,
                                      "equality constraint between different moduli");
            if (mi == 0) {
                refcons.push_back({r.origin_refined_[c.i][0], r.origin_refined_[c.j][0], 0});
            } else {
                for (size_t t = 0; t < r.origin_refined_[c.i].size(); ++t) {
                    int a = r.origin_refined_[c.i][t];
                    refcons.push_back({a, r.origin_refined_[c.j][t], r.rmoduli_[a]});
                }
            }
        } else {
            if ((mi != 0 && mi % c.n != 0) || (mj != 0 && mj % c.n != 0))
                throw ring_spec_error(RingSpecFault::BadConstraint,
                                      "congruence modulus must divide both coordinate moduli");
            if (mi == 0 && mj == 0) {
                refcons.push_back({r.origin_refined_[c.i][0], r.origin_refined_[c.j][0], c.n});
            } else {
                auto ps = squarefree_factors(c.n);  // n divides a squarefree modulus
                if (!ps)
                    throw ring_spec_error(RingSpecFault::BadConstraint,
                                          "constraint modulus invalid");
                auto refined_for = [&](int orig, Int p) -> int {
                    for (int idx : r.origin_refined_[orig])
                        if (r.rmoduli_[idx] == p || r.rmoduli_[idx] == 0) return idx;
                    return -1;
                };
                for (Int p : *ps) {
                    int a = refined_for(c.i, p), b = refined_for(c.j, p);
                    assert(a >= 0 && b >= 0);
                    refcons.push_back({a, b, p});
                }
            }
        }
    }

    // Cut the solution lattice down one congruence at a time, working in the
    // coefficient space of the current basis.
    std::vector<Vec> basis(r.rwidth_, Vec(r.rwidth_, 0));
    for (int i = 0; i < r.rwidth_; ++i) basis[i][i] = 1;
    for (const auto& rc : refcons) {
        int rank = static_cast<int>(basis.size());
        Mat m;
        m.cols = 1;
        for (int l = 0; l < rank; ++l) m.rows.push_back({basis[l][rc.a] - basis[l][rc.b]});
        if (rc.n > 0) m.rows.push_back({rc.n});
        Mat ker = lat::left_kernel(m);
        std::vector<Vec> nb;
        for (const auto& krow : ker.rows) {
            Vec x(r.rwidth_, 0);
            for (int l = 0; l < rank; ++l)
                for (int c = 0; c < r.rwidth_; ++c) x[c] += krow[l] * basis[l][c];
            nb.push_back(std::move(x));
        }
        basis = lat::hnf(lat::make_mat(r.rwidth_, std::move(nb))).rows;
    }
    for (int i = 0; i < r.rwidth_; ++i)
        if (r.rmoduli_[i] > 0) {
            Vec row(r.rwidth_, 0);
            row[i] = r.rmoduli_[i];
            basis.push_back(std::move(row));
        }
    r.rlattice_ = lat::hnf(lat::make_mat(r.rwidth_, std::move(basis)));

    r.finish_construction();
    return r;
}

CongruenceRing CongruenceRing::from_lattice(int width, Vec moduli, std::vector<Vec> basis) {
    CongruenceRing ambient = from_congruences(width, moduli, {});
    CongruenceRing r;
    r.width_ = ambient.width_;
    r.moduli_ = ambient.moduli_;
    r.congruence_form_ = false;
    r.original_basis_ = basis;
    r.rwidth_ = ambient.rwidth_;
    r.rmoduli_ = ambient.rmoduli_;
    r.refined_origin_ = ambient.refined_origin_;
    r.origin_refined_ = ambient.origin_refined_;

    std::vector<Vec> rows;
    for (const auto& b : basis) {
        if (static_cast<int>(b.size()) != width)
            throw ring_spec_error(RingSpecFault::BadConstraint, "basis row width mismatch");
        rows.push_back(r.refine(b));
    }
    for (int i = 0; i < r.rwidth_; ++i)
        if (r.rmoduli_[i] > 0) {
            Vec row(r.rwidth_, 0);
            row[i] = r.rmoduli_[i];
            rows.push_back(std::move(row));
        }
    r.rlattice_ = lat::hnf(lat::make_mat(r.rwidth_, std::move(rows)));

    r.finish_construction();
    return r;
}

void CongruenceRing::finish_construction() {
    full_mask_ = (1u << rwidth_) - 1;

    if (!lat::lattice_contains(rlattice_, Vec(rwidth_, 1)))
        throw ring_spec_error(RingSpecFault::NotUnital, "ring does not contain 1");
    for (const auto& a : rlattice_.rows)
        for (const auto& b : rlattice_.rows) {
            Vec prod(rwidth_);
            for (int c = 0; c < rwidth_; ++c) prod[c] = mod_norm(a[c] * b[c], rmoduli_[c]);
            if (!lat::lattice_contains(rlattice_, prod))
                throw ring_spec_error(RingSpecFault::NotMultiplicativelyClosed,
                                      "basis product escapes the lattice", unrefine(a),
                                      unrefine(b));
        }

    full_ambient_ = static_cast<int>(rlattice_.rows.size()) == rwidth_;
    for (int i = 0; i < rwidth_ && full_ambient_; ++i)
        for (int j = 0; j < rwidth_ && full_ambient_; ++j)
            if (rlattice_.rows[i][j] != (i == j ? 1 : 0)) full_ambient_ = false;

    // Idempotents are exactly the 0/1 vectors in the lattice.
    for (uint32_t m = 0; m <= full_mask_; ++m) {
        Vec cand(rwidth_, 0);
        for (int i = 0; i < rwidth_; ++i)
            if (m & (1u << i)) cand[i] = 1;
        if (full_ambient_ || lat::lattice_contains(rlattice_, cand)) idem_masks_.push_back(m);
    }
    for (uint32_t m : idem_masks_) {
        if (m == 0) continue;
        bool atom = true;
        for (uint32_t o : idem_masks_)
            if (o != 0 && o != m && (o & m) == o) {
                atom = false;
                break;
            }
        if (atom) atom_masks_.push_back(m);
    }
    best_idem_.assign(static_cast<size_t>(full_mask_) + 1, 0);
    for (uint32_t m = 0; m <= full_mask_; ++m) {
        uint32_t e = 0;
        for (uint32_t a : atom_masks_)
            if ((a & m) == a) e |= a;
        best_idem_[m] = e;
    }

    realizable_flag_.assign(static_cast<size_t>(full_mask_) + 1, 0);
    for (uint32_t s = 0; s <= full_mask_; ++s)
        if (realize_zero_pattern(s)) {
            realizable_flag_[s] = 1;
            realizable_vanish_.push_back(s);
        }

    ClassAccess::store(*this, compute_classification(*this));
}

// --- element arithmetic ------------------------------------------------------

CongruenceRing::Elem CongruenceRing::add(const Elem& a, const Elem& b) const {
    Elem c(width_);
    for (int i = 0; i < width_; ++i) c[i] = mod_norm(a[i] + b[i], moduli_[i]);
    return c;
}

CongruenceRing::Elem CongruenceRing::neg(const Elem& a) const {
    Elem c(width_);
    for (int i = 0; i < width_; ++i) c[i] = mod_norm(-a[i], moduli_[i]);
    return c;
}

CongruenceRing::Elem CongruenceRing::mul(const Elem& a, const Elem& b) const {
    Elem c(width_);
    for (int i = 0; i < width_; ++i) c[i] = mod_norm(a[i] * b[i], moduli_[i]);
    return c;
}

long long CongruenceRing::size_of(const Elem& a) const {
    long long s = 0;
    for (Int v : a) s = std::max(s, std::llabs(v));
    return s;
}

bool CongruenceRing::contains(const Vec& v) const {
    if (static_cast<int>(v.size()) != width_)
        throw std::invalid_argument("element width mismatch");
    if (full_ambient_) return true;
    return lat::lattice_contains(rlattice_, refine(v));
}

uint32_t CongruenceRing::support_mask(const Elem& a) const {
    Vec rv = refine(a);
    uint32_t m = 0;
    for (int i = 0; i < rwidth_; ++i)
        if (rv[i] != 0) m |= 1u << i;
    return m;
}

CongruenceRing::Elem CongruenceRing::idempotent_from_mask(uint32_t mask) const {
    Vec rv(rwidth_, 0);
    for (int i = 0; i < rwidth_; ++i)
        if (mask & (1u << i)) rv[i] = 1;
    return reduce(unrefine(rv));
}

std::vector<CongruenceRing::Elem> CongruenceRing::elements_within(long long bound) const {
    std::vector<std::vector<Int>> values(width_);
    for (int i = 0; i < width_; ++i) {
        if (moduli_[i] == 0) {
            for (long long t = 0; t <= 2 * bound; ++t) values[i].push_back(signed_value(t));
        } else {
            for (Int v = 0; v < moduli_[i] && v <= bound; ++v) values[i].push_back(v);
        }
    }
    std::vector<Elem> out;
    Elem cur(width_, 0);
    std::vector<size_t> idx(width_, 0);
    while (true) {
        for (int i = 0; i < width_; ++i) cur[i] = values[i][idx[i]];
        if (contains(cur)) out.push_back(cur);
        int pos = width_ - 1;
        while (pos >= 0) {
            if (++idx[pos] < values[pos].size()) break;
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

std::vector<CongruenceRing::Elem> CongruenceRing::lower_bound_candidates(const Elem& a,
                                                                         const Elem& b) const {
    // In a product of domains a common lower bound c has, coordinatewise,
    // c in {0, a} and c in {0, b}; its support is confined to the coincidence
    // set, so this list is complete and Meet/Zero verdicts are absolute.
    Vec ra = refine(a), rb = refine(b);
    uint32_t coin = 0;
    for (int i = 0; i < rwidth_; ++i)
        if (ra[i] != 0 && ra[i] == rb[i]) coin |= 1u << i;
    std::vector<Elem> out;
    uint32_t t = coin;
    Vec cand(rwidth_, 0);
    while (true) {
        for (int i = 0; i < rwidth_; ++i) cand[i] = (t & (1u << i)) ? ra[i] : 0;
        if (full_ambient_ || lat::lattice_contains(rlattice_, cand))
            out.push_back(reduce(unrefine(cand)));
        if (t == 0) break;
        t = (t - 1) & coin;
    }
    return out;
}

bool CongruenceRing::lattice_equal_to(const CongruenceRing& other) const {
    return width_ == other.width_ && moduli_ == other.moduli_ &&
           lat::lattice_equal(rlattice_, other.rlattice_);
}

// --- zero-pattern realizability ------------------------------------------------

std::optional<CongruenceRing::Elem> CongruenceRing::realize_zero_pattern(
    uint32_t vanish_mask) const {
    Mat vs = lat::lattice_intersect(rlattice_, vanish_lattice(rwidth_, rmoduli_, vanish_mask));
    int rank = static_cast<int>(vs.rows.size());

    std::vector<int> comp;
    for (int i = 0; i < rwidth_; ++i)
        if (!(vanish_mask & (1u << i))) comp.push_back(i);
    if (comp.empty()) return zero();
    if (rank == 0) return std::nullopt;

    for (int i : comp) {
        bool forced = true;
        for (const auto& row : vs.rows)
            if (mod_norm(row[i], rmoduli_[i]) != 0) {
                forced = false;
                break;
            }
        if (forced) return std::nullopt;
    }

    // Finite-prime coordinates first: prime by prime, find coefficients in
    // F_p^rank avoiding every hyperplane l_i(t) = 0, then combine by CRT.
    // Exhaustion of F_p^rank is a proof of non-realizability for that prime.
    std::map<Int, std::vector<int>> by_prime;
    for (int i : comp)
        if (rmoduli_[i] > 0) by_prime[rmoduli_[i]].push_back(i);

    Vec t0(rank, 0);
    Int big_p = 1;
    for (const auto& [p, coords] : by_prime) {
        long long space = 1;
        for (int l = 0; l < rank; ++l) {
            space *= p;
            if (space > 8'000'000LL)
                throw std::runtime_error("zero-pattern prime search space too large");
        }
        std::vector<Int> cur(rank, 0);
        bool found = false;
        for (long long step = 0; step < space; ++step) {
            bool ok = true;
            for (int i : coords) {
                Int acc = 0;
                for (int l = 0; l < rank; ++l) acc += cur[l] * vs.rows[l][i];
                if (mod_norm(acc, p) == 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                found = true;
                break;
            }
            int pos = rank - 1;
            while (pos >= 0) {
                if (++cur[pos] < p) break;
                cur[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        if (!found) return std::nullopt;
        for (int l = 0; l < rank; ++l)
            t0[l] = (big_p == 1) ? cur[l] : crt_pair(t0[l], big_p, cur[l], p);
        big_p *= p;
    }

    // Z coordinates: perturb t = t0 + P*u.  Every remaining constraint is a
    // nonzero affine form in u, so small u work; a short deterministic
    // odometer is tried first and a seeded box sample covers the rest (a box
    // of side > 2*#forms has nonvanishing points in every coordinate form).
    auto attempt = [&](const Vec& u) -> std::optional<Elem> {
        Vec x(rwidth_, 0);
        for (int l = 0; l < rank; ++l)
            for (int c = 0; c < rwidth_; ++c) x[c] += (t0[l] + big_p * u[l]) * vs.rows[l][c];
        for (int i : comp)
            if (mod_norm(x[i], rmoduli_[i]) == 0) return std::nullopt;
        return reduce(unrefine(x));
    };

    long long nforms = static_cast<long long>(comp.size());
    long long probe = 1;
    for (int l = 0; l < rank && probe < 50'000; ++l) probe *= 5;
    probe = std::min(probe, 50'000LL);
    Vec u(rank, 0);
    for (long long step = 0; step < probe; ++step) {
        long long s = step;
        for (int l = 0; l < rank; ++l) {
            u[l] = signed_value(s % 5);
            s /= 5;
        }
        if (auto got = attempt(u)) return got;
    }
    std::mt19937_64 gen(0x5eedu);
    long long side = 2 * nforms + 3;
    for (int draws = 0; draws < 10000; ++draws) {
        for (int l = 0; l < rank; ++l) u[l] = static_cast<Int>(gen() % side) - nforms - 1;
        if (auto got = attempt(u)) return got;
    }
    throw std::runtime_error("zero-pattern realization sampling failed");
}

// --- idempotents ----------------------------------------------------------------

IdempotentLattice idempotents(const CongruenceRing& r) {
    IdempotentLattice il;
    std::map<uint32_t, int> index;
    for (uint32_t m : r.idempotent_masks()) {
        index[m] = static_cast<int>(il.elems.size());
        il.masks.push_back(m);
        il.elems.push_back(r.idempotent_from_mask(m));
    }
    for (uint32_t a : r.atom_masks()) il.atoms.push_back(index[a]);
    int n = static_cast<int>(il.elems.size());
    il.join_table.assign(n, std::vector<int>(n, 0));
    il.meet_table.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            il.join_table[i][j] = index.at(il.masks[i] | il.masks[j]);
            il.meet_table[i][j] = index.at(il.masks[i] & il.masks[j]);
        }
    return il;
}

// --- annihilators ------------------------------------------------------------------

AnnIdeal ann(const CongruenceRing& r, const CongruenceRing::Elem& x) {
    if (!r.contains(x)) throw std::invalid_argument("ann: element not in ring");
    uint32_t supp = r.support_mask(x);
    AnnIdeal out;
    out.basis =
        lat::lattice_intersect(r.rlattice(), vanish_lattice(r.rwidth(), r.rmoduli(), supp));
    for (const auto& row : out.basis.rows)
        for (int i = 0; i < r.rwidth(); ++i)
            if (mod_norm(row[i], r.rmoduli()[i]) != 0) out.support |= 1u << i;
    out.e_hat_mask = r.best_idempotent_avoiding(supp);
    out.e_hat = r.idempotent_from_mask(out.e_hat_mask);
    return out;
}

// --- classification -------------------------------------------------------------------

const char* ring_class_name(RingClass c) {
    switch (c) {
        case RingClass::Boolean: return "boolean";
        case RingClass::WeaklyBaer: return "wB";
        case RingClass::AwbNotWb: return "awB-not-wB";
        case RingClass::Neither: return "neither";
    }
    return "?";
}

Classification classify(const CongruenceRing& r) {
    assert(ClassAccess::ready(r));
    return ClassAccess::load(
        r,
        "B(R) is finite, so annihilators generated by idempotents are generated by their "
        "largest idempotent: awB and wB coincide for this family");
}

// --- meets and sups ---------------------------------------------------------------------

CongruenceRing::Elem wb_meet(const CongruenceRing& r, const CongruenceRing::Elem& a,
                             const CongruenceRing::Elem& b) {
    if (!r.is_weakly_baer()) throw not_weakly_baer("wb_meet requires a weakly Baer ring");
    if (!r.contains(a) || !r.contains(b))
        throw std::invalid_argument("wb_meet: element not in ring");
    Vec ra = r.refine(a), rb = r.refine(b);
    uint32_t diff = 0;
    for (int i = 0; i < r.rwidth(); ++i)
        if (ra[i] != rb[i]) diff |= 1u << i;
    uint32_t e = r.best_idempotent_avoiding(diff);
    Vec m(r.rwidth(), 0);
    for (int i = 0; i < r.rwidth(); ++i)
        if (e & (1u << i)) m[i] = ra[i];
    return r.reduce(r.unrefine(m));
}

SupResult rr_sup(const CongruenceRing& r, const CongruenceRing::Elem& a,
                 const CongruenceRing::Elem& b) {
    if (!r.is_weakly_baer()) throw not_weakly_baer("rr_sup requires a weakly Baer ring");
    if (!r.contains(a) || !r.contains(b))
        throw std::invalid_argument("rr_sup: element not in ring");
    Vec ra = r.refine(a), rb = r.refine(b);
    uint32_t am = 0, bm = 0, cm = 0;
    for (int i = 0; i < r.rwidth(); ++i) {
        bool x = ra[i] != 0, y = rb[i] != 0;
        if (x && y) {
            if (ra[i] != rb[i]) return SupResult{std::nullopt, r.refined_origin()[i]};
            am |= 1u << i;
        } else if (x) {
            bm |= 1u << i;
        } else if (y) {
            cm |= 1u << i;
        }
    }
    // With (*) satisfied the indicators of A, B and C are idempotents of the
    // ring: supports in a weakly Baer ring are unions of atom supports.
    for (uint32_t m : {am, bm, cm}) {
        bool found = false;
        for (uint32_t e : r.idempotent_masks())
            if (e == m) found = true;
        if (!found)
            throw std::logic_error("rr_sup: partition indicator is not an idempotent of the ring");
    }
    Vec c(r.rwidth(), 0);
    for (int i = 0; i < r.rwidth(); ++i) {
        if ((am | bm) & (1u << i)) c[i] = ra[i];
        else if (cm & (1u << i)) c[i] = rb[i];
    }
    return SupResult{r.reduce(r.unrefine(c)), -1};
}

// --- spectrum -------------------------------------------------------------------------------

std::vector<MinimalPrime> minimal_primes(const CongruenceRing& r) {
    std::vector<Mat> kernels(r.rwidth());
    for (int i = 0; i < r.rwidth(); ++i)
        kernels[i] = lat::lattice_intersect(r.rlattice(),
                                            vanish_lattice(r.rwidth(), r.rmoduli(), 1u << i));
    std::vector<MinimalPrime> uniq;
    for (int i = 0; i < r.rwidth(); ++i) {
        bool merged = false;
        for (auto& mp : uniq)
            if (lat::lattice_equal(mp.kernel, kernels[i])) {
                mp.coords.push_back(i);
                merged = true;
                break;
            }
        if (!merged) uniq.push_back(MinimalPrime{kernels[i], {i}});
    }
    std::vector<MinimalPrime> out;
    for (size_t i = 0; i < uniq.size(); ++i) {
        bool minimal = true;
        for (size_t j = 0; j < uniq.size() && minimal; ++j)
            if (i != j && lat::lattice_subset(uniq[j].kernel, uniq[i].kernel) &&
                !lat::lattice_equal(uniq[j].kernel, uniq[i].kernel))
                minimal = false;
        if (minimal) out.push_back(uniq[i]);
    }
    return out;
}

std::vector<PierceStalk> pierce_stalks(const CongruenceRing& r) {
    std::vector<PierceStalk> out;
    for (uint32_t am : r.atom_masks()) {
        std::vector<int> coords;
        for (int i = 0; i < r.rwidth(); ++i)
            if (am & (1u << i)) coords.push_back(i);
        Vec smoduli;
        for (int c : coords) smoduli.push_back(r.rmoduli()[c]);
        std::vector<Vec> rows;
        for (const auto& row : r.rlattice().rows) {
            Vec pr;
            for (int c : coords) pr.push_back(row[c]);
            rows.push_back(std::move(pr));
        }
        CongruenceRing stalk =
            CongruenceRing::from_lattice(static_cast<int>(coords.size()), smoduli, rows);
        // Equal-kernel criterion: a unital subring of a product of domains is
        // a domain iff no element has proper nonempty support, i.e. all its
        // coordinate kernels coincide.
        auto primes = minimal_primes(stalk);
        bool domain =
            primes.size() == 1 && static_cast<int>(primes[0].coords.size()) == stalk.rwidth();
        out.push_back(PierceStalk{r.idempotent_from_mask(am), am, std::move(stalk), domain});
    }
    return out;
}

// --- rr-goodness ------------------------------------------------------------------------------

namespace {

struct PatternAnalysis {
    bool fails = false;
    std::vector<uint32_t> valid;
    std::vector<uint32_t> maximals;
    int chain_len = 0;
};

PatternAnalysis analyze_pattern(const CongruenceRing& r, uint32_t k_mask, const Vec& rvals) {
    PatternAnalysis pa;
    Vec cand(r.rwidth(), 0);
    uint32_t t = k_mask;
    uint32_t union_valid = 0;
    while (true) {
        for (int i = 0; i < r.rwidth(); ++i) cand[i] = (t & (1u << i)) ? rvals[i] : 0;
        if (r.is_full_ambient() || lat::lattice_contains(r.rlattice(), cand)) {
            pa.valid.push_back(t);
            union_valid |= t;
        }
        if (t == 0) break;
        t = (t - 1) & k_mask;
    }
    bool top_valid = false;
    for (uint32_t v : pa.valid)
        if (v == union_valid) top_valid = true;
    pa.fails = !top_valid;
    for (uint32_t v : pa.valid) {
        bool maximal = true;
        for (uint32_t w : pa.valid)
            if (w != v && (v & w) == v) {
                maximal = false;
                break;
            }
        if (maximal) pa.maximals.push_back(v);
    }
    for (uint32_t v : pa.valid) pa.chain_len = std::max(pa.chain_len, std::popcount(v) + 1);
    return pa;
}

}  // namespace

RrGoodVerdict is_rr_good_bounded(const CongruenceRing& r, long long bound) {
    RrGoodVerdict verdict;
    Classification cls = classify(r);
    bool wb = cls.verdict == RingClass::WeaklyBaer || cls.verdict == RingClass::Boolean;
    size_t nprimes = minimal_primes(r).size();

    // Pairs are grouped by coincidence pattern (K, v): the common lower
    // bounds of any pair realizing the pattern are exactly the restrictions
    // of v to subsets of K that lie in the ring, so one scan over patterns
    // covers all pairs within the bound.
    std::vector<std::vector<Int>> values(r.rwidth());
    for (int i = 0; i < r.rwidth(); ++i) {
        if (r.rmoduli()[i] == 0) {
            for (long long v = 1; v <= bound; ++v) {
                values[i].push_back(v);
                values[i].push_back(-v);
            }
        } else {
            for (Int v = 1; v < r.rmoduli()[i] && v <= bound; ++v) values[i].push_back(v);
        }
    }

    std::optional<std::pair<Vec, uint32_t>> failing;
    std::vector<uint32_t> failing_valid, failing_maximals;
    std::vector<CongruenceRing::Elem> bounded_elems;

    for (uint32_t k_mask = 0; k_mask <= r.full_mask(); ++k_mask) {
        std::vector<int> coords;
        bool feasible = true;
        for (int i = 0; i < r.rwidth(); ++i)
            if (k_mask & (1u << i)) {
                coords.push_back(i);
                if (values[i].empty()) feasible = false;
            }
        if (!feasible) continue;
        std::vector<size_t> idx(coords.size(), 0);
        while (true) {
            Vec rvals(r.rwidth(), 0);
            for (size_t t = 0; t < coords.size(); ++t) rvals[coords[t]] = values[coords[t]][idx[t]];
            ++verdict.patterns_checked;
            PatternAnalysis pa = analyze_pattern(r, k_mask, rvals);
            verdict.max_chain_len = std::max(verdict.max_chain_len, pa.chain_len);
            if (pa.fails && !failing) {
                // A NotGood verdict needs an actual pair within the bound
                // realizing the pattern: same restriction to K and no
                // accidental coincidence elsewhere.
                if (bounded_elems.empty()) bounded_elems = r.elements_within(bound);
                std::vector<const CongruenceRing::Elem*> match;
                for (const auto& e : bounded_elems) {
                    Vec re = r.refine(e);
                    bool ok = true;
                    for (int c : coords)
                        if (re[c] != rvals[c]) ok = false;
                    if (ok) match.push_back(&e);
                }
                for (size_t ia = 0; ia < match.size() && !failing; ++ia)
                    for (size_t ib = 0; ib < match.size() && !failing; ++ib) {
                        Vec rea = r.refine(*match[ia]), reb = r.refine(*match[ib]);
                        uint32_t coin = 0;
                        for (int i = 0; i < r.rwidth(); ++i)
                            if (rea[i] != 0 && rea[i] == reb[i]) coin |= 1u << i;
                        if (coin != k_mask) continue;
                        failing = std::make_pair(rvals, k_mask);
                        failing_valid = pa.valid;
                        failing_maximals = pa.maximals;
                        verdict.pair = std::make_pair(*match[ia], *match[ib]);
                    }
            }
            if (coords.empty()) break;
            int pos = static_cast<int>(coords.size()) - 1;
            while (pos >= 0) {
                if (++idx[pos] < values[coords[pos]].size()) break;
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }

    if (failing) {
        if (wb || nprimes <= 3)
            throw std::logic_error("is_rr_good_bounded: certificate contradicts a failing pattern");
        verdict.kind = GoodKind::NotGood;
        auto to_elem = [&](uint32_t t) {
            Vec c(r.rwidth(), 0);
            for (int i = 0; i < r.rwidth(); ++i)
                if (t & (1u << i)) c[i] = failing->first[i];
            return r.reduce(r.unrefine(c));
        };
        verdict.maximals =
            std::make_pair(to_elem(failing_maximals[0]), to_elem(failing_maximals[1]));
        std::vector<uint32_t> sorted = failing_valid;
        std::sort(sorted.begin(), sorted.end(), [](uint32_t a, uint32_t b) {
            return std::popcount(a) < std::popcount(b);
        });
        std::vector<uint32_t> chain_masks;
        for (uint32_t v : sorted) {
            if (v == 0) continue;
            if (chain_masks.empty() ||
                ((chain_masks.back() & v) == chain_masks.back() && v != chain_masks.back()))
                chain_masks.push_back(v);
        }
        for (uint32_t m : chain_masks) verdict.chain.push_back(to_elem(m));
        return verdict;
    }

    if (wb) {
        verdict.kind = GoodKind::Good;
        verdict.certificate = "weakly Baer rings are rr-good";
    } else if (nprimes <= 3) {
        verdict.kind = GoodKind::Good;
        verdict.certificate = "three or fewer minimal primes";
    } else {
        verdict.kind = GoodKind::GoodWithinBound;
    }
    return verdict;
}

// --- weakly Baer hull ---------------------------------------------------------------------------

HullResult wb_hull(const CongruenceRing& r) {
    for (int i = 0; i < r.rwidth(); ++i) {
        bool nonzero = false;
        for (const auto& row : r.rlattice().rows)
            if (mod_norm(row[i], r.rmoduli()[i]) != 0) nonzero = true;
        if (!nonzero)
            throw not_essential_extension("ambient coordinate meets the ring only in 0");
    }

    // e(r) is the ambient idempotent supported on z(r), one per realizable
    // zero pattern; the subring generated needs the patterns closed under
    // intersection (products of the adjoined idempotents).
    std::set<uint32_t> patterns(r.realizable_vanish_masks().begin(),
                                r.realizable_vanish_masks().end());
    std::set<uint32_t> closure = patterns;
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<uint32_t> add;
        for (uint32_t a : closure)
            for (uint32_t b : closure)
                if (!closure.count(a & b)) add.push_back(a & b);
        for (uint32_t m : add)
            if (closure.insert(m).second) grew = true;
    }

    std::vector<Vec> orows;
    for (const auto& row : r.rlattice().rows) {
        orows.push_back(r.unrefine(row));
        for (uint32_t m : closure) {
            Vec x(r.rwidth(), 0);
            for (int i = 0; i < r.rwidth(); ++i)
                if (m & (1u << i)) x[i] = row[i];
            orows.push_back(r.unrefine(x));
        }
    }

    HullResult out{CongruenceRing::from_lattice(r.width(), r.moduli(), orows), {}};
    for (uint32_t s : patterns) {
        Vec e(r.rwidth(), 0);
        for (int i = 0; i < r.rwidth(); ++i)
            if (s & (1u << i)) e[i] = 1;
        if (!lat::lattice_contains(r.rlattice(), e))
            out.adjoined.push_back(r.reduce(r.unrefine(e)));
    }
    Classification c = classify(out.hull);
    if (c.verdict != RingClass::WeaklyBaer && c.verdict != RingClass::Boolean)
        throw std::logic_error("wb_hull: constructed hull is not weakly Baer");
    return out;
}

// --- homomorphisms --------------------------------------------------------------------------------

RingHom make_hom(CongruenceRing source, CongruenceRing target, std::vector<int> assign) {
    if (static_cast<int>(assign.size()) != target.width())
        throw ill_formed_hom("assignment length must match target width");
    for (int j = 0; j < target.width(); ++j) {
        int s = assign[j];
        if (s < 0 || s >= source.width()) throw ill_formed_hom("assignment index out of range");
        Int ms = source.moduli()[s], mt = target.moduli()[j];
        if (mt == 0 && ms != 0) throw ill_formed_hom("cannot map a finite coordinate onto Z");
        if (mt != 0 && ms != 0 && ms % mt != 0)
            throw ill_formed_hom("target modulus must divide the source modulus");
    }
    RingHom h{std::move(source), std::move(target), std::move(assign)};
    for (const auto& row : h.source.rlattice().rows) {
        CongruenceRing::Elem x = h.source.reduce(h.source.unrefine(row));
        if (!h.target.contains(apply_hom(h, x)))
            throw ill_formed_hom("homomorphism image escapes the target ring");
    }
    return h;
}

CongruenceRing::Elem apply_hom(const RingHom& h, const CongruenceRing::Elem& x) {
    CongruenceRing::Elem y(h.target.width());
    for (int j = 0; j < h.target.width(); ++j) y[j] = x[h.assign[j]];
    return h.target.reduce(std::move(y));
}

CongruenceRing equalizer(const RingHom& phi, const RingHom& psi) {
    if (!phi.source.lattice_equal_to(psi.source) || !phi.target.lattice_equal_to(psi.target))
        throw std::invalid_argument("equalizer: homomorphisms have different endpoints");
    std::vector<Constraint> extra;
    for (int j = 0; j < phi.target.width(); ++j) {
        int a = phi.assign[j], b = psi.assign[j];
        if (a == b) continue;
        extra.push_back(Constraint{std::min(a, b), std::max(a, b), phi.target.moduli()[j]});
    }
    const CongruenceRing& r = phi.source;
    if (r.has_congruence_form()) {
        std::vector<Constraint> cons = r.constraints();
        cons.insert(cons.end(), extra.begin(), extra.end());
        return CongruenceRing::from_congruences(r.width(), r.moduli(), cons);
    }
    CongruenceRing shape = CongruenceRing::from_congruences(r.width(), r.moduli(), extra);
    Mat inter = lat::lattice_intersect(r.rlattice(), shape.rlattice());
    std::vector<Vec> orows;
    for (const auto& row : inter.rows) orows.push_back(r.unrefine(row));
    return CongruenceRing::from_lattice(r.width(), r.moduli(), orows);
}

}  // namespace rro::zk
