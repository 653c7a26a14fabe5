#include "rro/plring.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace rro::pl {

namespace {

void trim(std::vector<Rational>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

int sign_of(const Rational& x) { return x == 0 ? 0 : (x > 0 ? 1 : -1); }

// polynomial remainder (pseudo-free: exact over Q)
Poly poly_rem(Poly a, const Poly& b) {
    while (!poly_is_zero(a) && poly_degree(a) >= poly_degree(b)) {
        Rational q = a.c.back() / b.c.back();
        int shift = poly_degree(a) - poly_degree(b);
        for (size_t i = 0; i < b.c.size(); ++i) a.c[i + shift] -= q * b.c[i];
        trim(a.c);
    }
    return a;
}

std::vector<Poly> sturm_sequence(const Poly& p) {
    std::vector<Poly> s;
    s.push_back(p);
    Poly d = poly_derivative(p);
    if (!poly_is_zero(d)) s.push_back(d);
    while (s.size() >= 2 && !poly_is_zero(s.back())) {
        Poly r = poly_rem(s[s.size() - 2], s.back());
        if (poly_is_zero(r)) break;
        s.push_back(poly_neg(r));
    }
    return s;
}

int sign_variations(const std::vector<Poly>& s, const Rational& x) {
    int v = 0, last = 0;
    for (const auto& p : s) {
        int sg = sign_of(poly_eval(p, x));
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++v;
        last = sg;
    }
    return v;
}

// --- integer factorization for the rational root theorem ---------------------

BigInt big_gcd(BigInt a, BigInt b) {
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool miller_rabin(const BigInt& n) {
    if (n < 2) return false;
    for (BigInt p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    BigInt d = n - 1;
    int r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    auto powmod = [&](BigInt base, BigInt exp, const BigInt& mod) {
        BigInt acc = 1;
        base %= mod;
        while (exp > 0) {
            if (exp % 2 == 1) acc = acc * base % mod;
            base = base * base % mod;
            exp /= 2;
        }
        return acc;
    };
    for (BigInt a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        BigInt x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r && witness; ++i) {
            x = x * x % n;
            if (x == n - 1) witness = false;
        }
        if (witness) return false;
    }
    return true;
}

void factor_into(BigInt n, std::map<BigInt, int>& out) {
    if (n <= 1) return;
    for (BigInt p = 2; p * p <= n && p < 100000; ++p)
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    if (n == 1) return;
    if (miller_rabin(n)) {
        ++out[n];
        return;
    }
    // Pollard rho
    BigInt x = 2, y = 2, d = 1, c = 1;
    while (d == 1 || d == n) {
        x = 2;
        y = 2;
        d = 1;
        auto f = [&](const BigInt& v) { return (v * v + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            BigInt diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            d = big_gcd(diff, n);
        }
        ++c;
    }
    factor_into(d, out);
    factor_into(n / d, out);
}

std::vector<BigInt> divisors_of(const BigInt& n, size_t cap = 200000) {
    std::map<BigInt, int> f;
    factor_into(n < 0 ? -n : n, f);
    std::vector<BigInt> divs{1};
    for (const auto& [p, e] : f) {
        size_t base = divs.size();
        BigInt pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * pk);
                if (divs.size() > cap)
                    throw std::runtime_error("rational root candidate set too large");
            }
        }
    }
    return divs;
}

}  // namespace

// --- polynomials -----------------------------------------------------------

Poly poly_make(std::vector<Rational> coeffs) {
    trim(coeffs);
    return Poly{std::move(coeffs)};
}

bool poly_is_zero(const Poly& p) { return p.c.empty(); }

int poly_degree(const Poly& p) { return static_cast<int>(p.c.size()) - 1; }

Poly poly_add(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
    return poly_make(std::move(c));
}

Poly poly_neg(const Poly& a) {
    Poly out = a;
    for (auto& x : out.c) x = -x;
    return out;
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_neg(b)); }

Poly poly_mul(const Poly& a, const Poly& b) {
    if (poly_is_zero(a) || poly_is_zero(b)) return {};
    std::vector<Rational> c(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    return poly_make(std::move(c));
}

Rational poly_eval(const Poly& p, const Rational& x) {
    Rational acc = 0;
    for (size_t i = p.c.size(); i-- > 0;) acc = acc * x + p.c[i];
    return acc;
}

Poly poly_derivative(const Poly& p) {
    if (p.c.size() <= 1) return {};
    std::vector<Rational> c(p.c.size() - 1);
    for (size_t i = 1; i < p.c.size(); ++i) c[i - 1] = p.c[i] * static_cast<int>(i);
    return poly_make(std::move(c));
}

Poly poly_div_exact(const Poly& a, const Poly& b) {
    if (poly_is_zero(b)) throw std::invalid_argument("division by the zero polynomial");
    Poly rem = a, q;
    q.c.assign(a.c.size(), 0);
    while (!poly_is_zero(rem) && poly_degree(rem) >= poly_degree(b)) {
        Rational c = rem.c.back() / b.c.back();
        int shift = poly_degree(rem) - poly_degree(b);
        q.c[shift] += c;
        for (size_t i = 0; i < b.c.size(); ++i) rem.c[i + shift] -= c * b.c[i];
        trim(rem.c);
    }
    if (!poly_is_zero(rem)) throw std::invalid_argument("inexact polynomial division");
    trim(q.c);
    return q;
}

Poly poly_gcd(Poly a, Poly b) {
    while (!poly_is_zero(b)) {
        Poly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!poly_is_zero(a))
        for (auto& x : a.c) x /= a.c.back();  // monic for canonicity
    return a;
}

int sturm_count(const Poly& p, const Rational& lo, const Rational& hi) {
    if (poly_is_zero(p)) throw std::invalid_argument("sturm_count of the zero polynomial");
    auto s = sturm_sequence(p);
    return sign_variations(s, lo) - sign_variations(s, hi);
}

std::vector<Rational> rational_roots_in(const Poly& p, const Rational& lo, const Rational& hi) {
    if (poly_is_zero(p)) throw std::invalid_argument("roots of the zero polynomial");
    std::vector<Rational> roots;
    Poly q = p;
    // factor out x^v
    size_t v = 0;
    while (v < q.c.size() && q.c[v] == 0) ++v;
    if (v > 0) {
        if (lo <= 0 && 0 <= hi) roots.push_back(0);
        q.c.erase(q.c.begin(), q.c.begin() + v);
    }
    if (q.c.size() <= 1) {
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    // primitive integer coefficients
    BigInt denlcm = 1;
    for (const auto& c : q.c)
        denlcm = denlcm / big_gcd(denlcm, denominator(c)) * denominator(c);
    std::vector<BigInt> ic(q.c.size());
    for (size_t i = 0; i < q.c.size(); ++i)
        ic[i] = numerator(q.c[i]) * (denlcm / denominator(q.c[i]));
    auto p_divs = divisors_of(ic.front());
    auto q_divs = divisors_of(ic.back());
    std::set<Rational> found;
    for (const auto& pn : p_divs)
        for (const auto& qd : q_divs) {
            if (big_gcd(pn, qd) != 1) continue;
            for (int sgn : {1, -1}) {
                Rational cand(sgn * pn, qd);
                if (cand < lo || cand > hi) continue;
                if (poly_eval(q, cand) == 0) found.insert(cand);
            }
        }
    roots.insert(roots.end(), found.begin(), found.end());
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<std::pair<Rational, Rational>> isolate_irrational_roots(const Poly& p,
                                                                    const Rational& lo,
                                                                    const Rational& hi) {
    // squarefree part, with all rational linear factors removed
    Poly sf = poly_div_exact(p, poly_gcd(p, poly_derivative(p)));
    std::vector<Rational> rational = rational_roots_in(sf, lo, hi);
    for (const Rational& r : rational) {
        Poly lin = poly_make({-r, 1});
        while (poly_eval(sf, r) == 0) sf = poly_div_exact(sf, lin);
    }
    std::vector<std::pair<Rational, Rational>> out;
    if (poly_degree(sf) < 1) return out;
    // sf now has only irrational roots, all simple, and rational endpoints
    // are never roots
    auto count = [&](const Rational& a, const Rational& b) { return sturm_count(sf, a, b); };
    std::vector<std::pair<Rational, Rational>> work{{lo, hi}};
    while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        int n = count(a, b);
        if (n == 0) continue;
        if (n == 1) {
            // shrink until the closed box avoids every rational root of p
            bool dirty = true;
            while (dirty) {
                dirty = false;
                for (const Rational& r : rational)
                    if (a <= r && r <= b) dirty = true;
                if (!dirty) break;
                Rational mid = (a + b) / 2;
                if (count(a, mid) == 1) b = mid;
                else a = mid;
            }
            out.emplace_back(a, b);
            continue;
        }
        Rational mid = (a + b) / 2;
        work.emplace_back(a, mid);
        work.emplace_back(mid, b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- piecewise functions ------------------------------------------------------

PwPolyFunc pl_make(std::vector<Rational> cuts, std::vector<Poly> pieces) {
    if (cuts.size() < 2 || pieces.size() + 1 != cuts.size())
        throw std::invalid_argument("piecewise function needs n pieces and n+1 cuts");
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        if (!(cuts[i] < cuts[i + 1])) throw std::invalid_argument("cuts must increase strictly");
    for (size_t i = 0; i + 1 < pieces.size(); ++i)
        if (poly_eval(pieces[i], cuts[i + 1]) != poly_eval(pieces[i + 1], cuts[i + 1]))
            throw std::invalid_argument("pieces disagree at a shared breakpoint");
    // canonical form: merge equal neighbours
    PwPolyFunc f;
    f.cuts.push_back(cuts.front());
    for (size_t i = 0; i < pieces.size(); ++i) {
        if (!f.pieces.empty() && f.pieces.back() == pieces[i]) {
            f.cuts.back() = cuts[i + 1];
        } else {
            f.pieces.push_back(pieces[i]);
            f.cuts.push_back(cuts[i + 1]);
        }
    }
    return f;
}

PwPolyFunc pl_constant(const Rational& lo, const Rational& hi, const Rational& value) {
    return pl_make({lo, hi}, {poly_make({value})});
}

Rational pl_eval(const PwPolyFunc& f, const Rational& x) {
    if (x < f.cuts.front() || x > f.cuts.back())
        throw std::invalid_argument("evaluation outside the domain");
    for (size_t i = 0; i < f.pieces.size(); ++i)
        if (x <= f.cuts[i + 1]) return poly_eval(f.pieces[i], x);
    return poly_eval(f.pieces.back(), x);
}

bool pl_is_zero(const PwPolyFunc& f) {
    for (const auto& p : f.pieces)
        if (!poly_is_zero(p)) return false;
    return true;
}

namespace {

std::vector<Rational> merged_cuts(const PwPolyFunc& f, const PwPolyFunc& g) {
    if (f.cuts.front() != g.cuts.front() || f.cuts.back() != g.cuts.back())
        throw domain_mismatch("piecewise functions live on different intervals");
    std::vector<Rational> cuts = f.cuts;
    cuts.insert(cuts.end(), g.cuts.begin(), g.cuts.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

const Poly& piece_at(const PwPolyFunc& f, const Rational& left_cut) {
    for (size_t i = 0; i < f.pieces.size(); ++i)
        if (left_cut < f.cuts[i + 1]) return f.pieces[i];
    return f.pieces.back();
}

PwPolyFunc combine(const PwPolyFunc& f, const PwPolyFunc& g, Poly (*op)(const Poly&, const Poly&)) {
    auto cuts = merged_cuts(f, g);
    std::vector<Poly> pieces;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        pieces.push_back(op(piece_at(f, cuts[i]), piece_at(g, cuts[i])));
    return pl_make(std::move(cuts), std::move(pieces));
}

}  // namespace

PwPolyFunc pl_add(const PwPolyFunc& f, const PwPolyFunc& g) { return combine(f, g, poly_add); }
PwPolyFunc pl_sub(const PwPolyFunc& f, const PwPolyFunc& g) { return combine(f, g, poly_sub); }
PwPolyFunc pl_mul(const PwPolyFunc& f, const PwPolyFunc& g) { return combine(f, g, poly_mul); }

PwPolyFunc pl_neg(const PwPolyFunc& f) {
    PwPolyFunc out = f;
    for (auto& p : out.pieces) p = poly_neg(p);
    return out;
}

bool pl_rr_le(const PwPolyFunc& f, const PwPolyFunc& g) {
    // f*(f-g) = 0 piecewise: on each refined piece f = 0 or f = g.
    auto cuts = merged_cuts(f, g);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Poly& pf = piece_at(f, cuts[i]);
        const Poly& pg = piece_at(g, cuts[i]);
        if (!poly_is_zero(pf) && !(pf == pg)) return false;
    }
    return true;
}

CoincidenceSet coincidence(const PwPolyFunc& f, const PwPolyFunc& g) {
    CoincidenceSet cs;
    PwPolyFunc d = pl_sub(f, g);
    const Rational lo = d.cuts.front(), hi = d.cuts.back();

    // maximal runs of zero pieces of d
    size_t i = 0;
    while (i < d.pieces.size()) {
        if (!poly_is_zero(d.pieces[i])) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < d.pieces.size() && poly_is_zero(d.pieces[j + 1])) ++j;
        CoincidenceSet::Interval iv;
        iv.lo = d.cuts[i];
        iv.hi = d.cuts[j + 1];
        iv.f_vanishes_lo = pl_eval(f, iv.lo) == 0;
        iv.f_vanishes_hi = pl_eval(f, iv.hi) == 0;
        cs.intervals.push_back(std::move(iv));
        i = j + 1;
    }

    // isolated zeros of d inside nonzero pieces, minus interval endpoints
    auto inside_interval = [&](const Rational& x) {
        for (const auto& iv : cs.intervals)
            if (iv.lo <= x && x <= iv.hi) return true;
        return false;
    };
    std::set<Rational> pts;
    for (size_t k = 0; k < d.pieces.size(); ++k) {
        if (poly_is_zero(d.pieces[k])) continue;
        for (const Rational& r : rational_roots_in(d.pieces[k], d.cuts[k], d.cuts[k + 1]))
            if (!inside_interval(r)) pts.insert(r);
        for (auto [a, b] : isolate_irrational_roots(d.pieces[k], d.cuts[k], d.cuts[k + 1]))
            cs.isolated_boxes.emplace_back(std::max(a, lo), std::min(b, hi));
    }
    cs.isolated_points.assign(pts.begin(), pts.end());
    return cs;
}

PwPolyFunc pl_meet(const PwPolyFunc& f, const PwPolyFunc& g) {
    const Rational lo = f.cuts.front(), hi = f.cuts.back();
    CoincidenceSet cs = coincidence(f, g);

    // For each maximal coincidence interval [A, B], the support of a lower
    // bound can only switch at A (when A is the domain edge or f(A) = 0), at
    // B likewise, or at a rational zero of f inside.  The meet takes f on
    // [min anchor, max anchor].
    std::vector<std::pair<Rational, Rational>> support;
    for (const auto& iv : cs.intervals) {
        std::vector<Rational> anchors;
        if (iv.lo == lo || iv.f_vanishes_lo) anchors.push_back(iv.lo);
        if (iv.hi == hi || iv.f_vanishes_hi) anchors.push_back(iv.hi);
        for (size_t k = 0; k < f.pieces.size(); ++k) {
            Rational a = std::max(f.cuts[k], iv.lo), b = std::min(f.cuts[k + 1], iv.hi);
            if (!(a < b)) continue;
            if (poly_is_zero(f.pieces[k])) {
                anchors.push_back(a);
                anchors.push_back(b);
            } else {
                for (const Rational& r : rational_roots_in(f.pieces[k], a, b))
                    anchors.push_back(r);
            }
        }
        if (anchors.empty()) continue;
        Rational cmin = *std::min_element(anchors.begin(), anchors.end());
        Rational cmax = *std::max_element(anchors.begin(), anchors.end());
        if (cmin < cmax) support.emplace_back(cmin, cmax);
    }

    // assemble h = f on the support, 0 elsewhere
    std::vector<Rational> cuts = f.cuts;
    for (const auto& [a, b] : support) {
        cuts.push_back(a);
        cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Poly> pieces;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        bool inside = false;
        for (const auto& [a, b] : support)
            if (a <= cuts[i] && cuts[i + 1] <= b) inside = true;
        pieces.push_back(inside ? piece_at(f, cuts[i]) : Poly{});
    }
    PwPolyFunc h = pl_make(std::move(cuts), std::move(pieces));

    // The computed support satisfies condition (*): each boundary anchor is a
    // domain endpoint or a vanishing point of f.
    for (const auto& [a, b] : support) {
        if (a != lo && pl_eval(f, a) != 0)
            throw std::logic_error("pl_meet: left support anchor violates (*)");
        if (b != hi && pl_eval(f, b) != 0)
            throw std::logic_error("pl_meet: right support anchor violates (*)");
    }
    return h;
}

PwPolyFunc pl_restrict(const PwPolyFunc& f, const Rational& a, const Rational& b) {
    if (a < f.cuts.front() || b > f.cuts.back() || !(a < b))
        throw std::invalid_argument("restriction range outside the domain");
    std::vector<Rational> cuts{a};
    std::vector<Poly> pieces;
    for (size_t i = 0; i < f.pieces.size(); ++i) {
        Rational plo = std::max(f.cuts[i], a), phi = std::min(f.cuts[i + 1], b);
        if (!(plo < phi)) continue;
        pieces.push_back(f.pieces[i]);
        cuts.push_back(phi);
    }
    return pl_make(std::move(cuts), std::move(pieces));
}

std::vector<std::pair<Rational, Rational>> pl_support_closure(const PwPolyFunc& f) {
    std::vector<std::pair<Rational, Rational>> out;
    size_t i = 0;
    while (i < f.pieces.size()) {
        if (poly_is_zero(f.pieces[i])) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < f.pieces.size() && !poly_is_zero(f.pieces[j + 1])) ++j;
        out.emplace_back(f.cuts[i], f.cuts[j + 1]);
        i = j + 1;
    }
    return out;
}

namespace {

PwPolyFunc zero_on_closed_intervals(const PwPolyFunc& f,
                                    const std::vector<std::pair<Rational, Rational>>& regions) {
    std::vector<Rational> cuts = f.cuts;
    for (const auto& [a, b] : regions) {
        cuts.push_back(a);
        cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Poly> pieces;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        bool zeroed = false;
        for (const auto& [a, b] : regions)
            if (a <= cuts[i] && cuts[i + 1] <= b) zeroed = true;
        pieces.push_back(zeroed ? Poly{} : piece_at(f, cuts[i]));
    }
    return pl_make(std::move(cuts), std::move(pieces));
}

}  // namespace

LiftResult pl_lift_orthogonal(const std::vector<PwPolyFunc>& fs, const Rational& a,
                              const Rational& b, const Rational& lo, const Rational& hi,
                              const std::vector<std::optional<PwPolyFunc>>& candidates) {
    if (!(lo <= a && a < b && b <= hi))
        throw std::invalid_argument("subdomain must be a closed subinterval of the domain");
    for (const auto& f : fs) {
        if (f.cuts.front() != a || f.cuts.back() != b)
            throw domain_mismatch("input functions must live on the subdomain");
        if (a > lo && pl_eval(f, a) != 0)
            throw not_zero_at_boundary("input does not vanish at the left subdomain end");
        if (b < hi && pl_eval(f, b) != 0)
            throw not_zero_at_boundary("input does not vanish at the right subdomain end");
    }
    for (size_t i = 0; i < fs.size(); ++i)
        for (size_t j = i + 1; j < fs.size(); ++j)
            if (!pl_is_zero(pl_meet(fs[i], fs[j])))
                throw not_orthogonal_input("inputs are not pairwise rr-orthogonal");

    auto extend_by_zero = [&](const PwPolyFunc& f) {
        std::vector<Rational> cuts{lo};
        std::vector<Poly> pieces;
        if (lo < a) {
            pieces.push_back(Poly{});
            cuts.push_back(a);
        }
        for (size_t i = 0; i < f.pieces.size(); ++i) {
            pieces.push_back(f.pieces[i]);
            cuts.push_back(f.cuts[i + 1]);
        }
        if (b < hi) {
            pieces.push_back(Poly{});
            cuts.push_back(hi);
        }
        return pl_make(std::move(cuts), std::move(pieces));
    };

    LiftResult out;
    for (size_t n = 0; n < fs.size(); ++n) {
        PwPolyFunc g =
            (n < candidates.size() && candidates[n]) ? *candidates[n] : extend_by_zero(fs[n]);
        if (g.cuts.front() != lo || g.cuts.back() != hi)
            throw domain_mismatch("candidate lift lives on the wrong domain");
        if (!(pl_restrict(g, a, b) == fs[n]))
            throw std::invalid_argument("candidate lift does not restrict to the input");

        // Correction: zero g on the closures of coz(g ^ F_i) for the lifts
        // already in place.  g vanishes on each closure boundary, so the
        // modified function stays continuous.
        std::vector<std::pair<Rational, Rational>> regions;
        for (const auto& fi : out.lifted)
            for (const auto& reg : pl_support_closure(pl_meet(g, fi))) regions.push_back(reg);
        PwPolyFunc corrected = regions.empty() ? g : zero_on_closed_intervals(g, regions);

        if (!(pl_restrict(corrected, a, b) == fs[n]))
            throw std::logic_error("correction reached into the C-embedded subdomain");
        for (const auto& fi : out.lifted)
            if (!pl_is_zero(pl_meet(corrected, fi)))
                throw std::logic_error("corrected lift still meets an earlier one");

        out.lifted.push_back(std::move(corrected));
        out.corrections.push_back(std::move(regions));
    }
    return out;
}

std::vector<PwPolyFunc> PlRing::lower_bound_candidates(const Elem& a, const Elem& b) const {
    // The meet restricted to subsets of its support intervals dominates every
    // lower bound, which is all the oracle's maximality analysis needs.
    PwPolyFunc m = pl_meet(a, b);
    auto supports = pl_support_closure(m);
    if (supports.size() > 12) throw std::runtime_error("candidate family too large");
    std::vector<Elem> out;
    for (uint32_t mask = 0; mask < (1u << supports.size()); ++mask) {
        std::vector<std::pair<Rational, Rational>> zero_regions;
        for (size_t i = 0; i < supports.size(); ++i)
            if (!(mask & (1u << i))) zero_regions.push_back(supports[i]);
        out.push_back(zero_regions.empty() ? m : zero_on_closed_intervals(m, zero_regions));
    }
    return out;
}

}  // namespace rro::pl
