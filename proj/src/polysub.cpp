#include "rro/polysub.hpp"

#include <algorithm>
#include <numeric>

namespace rro::alg {

Rational Field::norm(Rational x) const {
    if (p == 0) return x;
    using boost::multiprecision::cpp_int;
    cpp_int num = numerator(x), den = denominator(x);
    cpp_int pp = p;
    cpp_int dm = den % pp;
    if (dm == 0) throw std::invalid_argument("denominator divisible by the field characteristic");
    // modular inverse of den via Fermat
    auto powmod = [&](cpp_int b, cpp_int e) {
        cpp_int acc = 1;
        b %= pp;
        if (b < 0) b += pp;
        while (e > 0) {
            if (e % 2 == 1) acc = acc * b % pp;
            b = b * b % pp;
            e /= 2;
        }
        return acc;
    };
    cpp_int v = num % pp;
    if (v < 0) v += pp;
    v = v * powmod(dm, pp - 2) % pp;
    return Rational(v);
}

Rational Field::div(const Rational& a, const Rational& b) const {
    if (b == 0) throw std::invalid_argument("division by zero");
    if (p == 0) return a / b;
    return norm(a / b);
}

MultiPoly mp_make(const Field& k, std::map<Exp, Rational> terms) {
    MultiPoly out;
    for (auto& [e, c] : terms) {
        Rational v = k.norm(c);
        if (v != 0) out.terms.emplace(e, std::move(v));
    }
    return out;
}

MultiPoly mp_monomial(const Field& k, Exp e, Rational c) {
    return mp_make(k, {{e, std::move(c)}});
}

MultiPoly mp_add(const Field& k, const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out = a;
    for (const auto& [e, c] : b.terms) {
        auto it = out.terms.find(e);
        if (it == out.terms.end()) {
            out.terms.emplace(e, c);
        } else {
            it->second = k.add(it->second, c);
            if (it->second == 0) out.terms.erase(it);
        }
    }
    return out;
}

MultiPoly mp_mul(const Field& k, const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            Exp e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            Rational v = k.mul(ca, cb);
            auto it = out.terms.find(e);
            if (it == out.terms.end()) {
                if (v != 0) out.terms.emplace(e, std::move(v));
            } else {
                it->second = k.add(it->second, v);
                if (it->second == 0) out.terms.erase(it);
            }
        }
    return out;
}

MultiPoly mp_scale(const Field& k, const MultiPoly& a, Exp shift, const Rational& c) {
    MultiPoly out;
    if (c == 0) return out;
    for (const auto& [e, v] : a.terms) {
        Exp ne{e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]};
        Rational nv = k.mul(v, c);
        if (nv != 0) out.terms.emplace(ne, std::move(nv));
    }
    return out;
}

int mp_total_degree(const MultiPoly& a) {
    int d = -1;
    for (const auto& [e, c] : a.terms) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

Tuple tuple_mul(const Field& k, const Tuple& a, const Tuple& b) {
    if (a.size() != b.size()) throw std::invalid_argument("tuple arity mismatch");
    Tuple out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = mp_mul(k, a[i], b[i]);
    return out;
}

bool tuple_eq(const Tuple& a, const Tuple& b) { return a == b; }

bool rr_le_tuple(const Tuple& u, const Tuple& v) {
    if (u.size() != v.size()) throw std::invalid_argument("tuple arity mismatch");
    for (size_t i = 0; i < u.size(); ++i)
        if (!u[i].is_zero() && !(u[i] == v[i])) return false;
    return true;
}

namespace {

// sparse vector over global row ids, sorted by id
using SparseVec = std::vector<std::pair<int, Rational>>;

struct EchelonSpan {
    Field k;
    struct Row {
        SparseVec v;
        std::map<int, Rational> comb;  // combination of original column ids
    };
    std::vector<Row> rows;
    std::map<int, size_t> by_lead;

    // Reduce v against the echelon rows; comb accumulates the combination.
    void reduce(SparseVec& v, std::map<int, Rational>& comb) const {
        while (!v.empty()) {
            int lead = v.front().first;
            auto it = by_lead.find(lead);
            if (it == by_lead.end()) return;
            const Row& row = rows[it->second];
            Rational factor = k.div(v.front().second, row.v.front().second);
            // v -= factor * row.v
            SparseVec out;
            out.reserve(v.size() + row.v.size());
            size_t i = 0, j = 0;
            while (i < v.size() || j < row.v.size()) {
                if (j == row.v.size() || (i < v.size() && v[i].first < row.v[j].first)) {
                    out.push_back(v[i++]);
                } else if (i == v.size() || row.v[j].first < v[i].first) {
                    out.emplace_back(row.v[j].first, k.mul(-factor, row.v[j].second));
                    ++j;
                } else {
                    Rational nv = k.sub(v[i].second, k.mul(factor, row.v[j].second));
                    if (nv != 0) out.emplace_back(v[i].first, std::move(nv));
                    ++i;
                    ++j;
                }
            }
            v = std::move(out);
            for (const auto& [col, c] : row.comb) {
                Rational nc = k.sub(comb.count(col) ? comb[col] : Rational(0), k.mul(factor, c));
                if (nc == 0) comb.erase(col);
                else comb[col] = std::move(nc);
            }
        }
    }

    bool insert(SparseVec v, int col_id) {
        std::map<int, Rational> comb{{col_id, Rational(1)}};
        reduce(v, comb);
        if (v.empty()) return false;
        by_lead[v.front().first] = rows.size();
        rows.push_back(Row{std::move(v), std::move(comb)});
        return true;
    }
};

struct RowIndex {
    std::map<std::pair<int, Exp>, int> ids;  // (component, monomial) -> row
    int get(int component, const Exp& e) {
        auto key = std::make_pair(component, e);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(ids.size());
        ids.emplace(key, id);
        return id;
    }
};

SparseVec tuple_to_vec(const Tuple& t, RowIndex& rows) {
    SparseVec v;
    for (size_t comp = 0; comp < t.size(); ++comp)
        for (const auto& [e, c] : t[comp].terms)
            v.emplace_back(rows.get(static_cast<int>(comp), e), c);
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

// all exponent vectors of x,y,z with total degree <= d
std::vector<Exp> coeff_monomials(int d) {
    std::vector<Exp> out;
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j)
            for (int l = 0; i + j + l <= d; ++l) out.push_back(Exp{i, j, l});
    return out;
}

// multi-indices over n generators with 1 <= total degree <= cap
void gen_monomials(int n, int cap, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        int total = std::accumulate(cur.begin(), cur.end(), 0);
        if (total >= 1) out.push_back(cur);
        return;
    }
    int used = std::accumulate(cur.begin(), cur.end(), 0);
    for (int e = 0; e + used <= cap; ++e) {
        cur.push_back(e);
        gen_monomials(n, cap, cur, out);
        cur.pop_back();
    }
}

}  // namespace

MembershipCertificate bounded_membership(const TupleAlgebra& a, const Tuple& target,
                                         int max_gen_deg, int max_coeff_deg, long long nnz_cap) {
    if (max_gen_deg < 0 || max_coeff_deg < 0)
        throw std::invalid_argument("degree caps must be nonnegative");
    if (static_cast<int>(target.size()) != a.factors)
        throw std::invalid_argument("target arity mismatch");

    MembershipCertificate cert;
    cert.degree_cap = max_gen_deg;
    cert.coeff_cap = max_coeff_deg;

    std::vector<std::vector<int>> monos;
    std::vector<int> cur;
    gen_monomials(static_cast<int>(a.gens.size()), max_gen_deg, cur, monos);
    auto coeffs = coeff_monomials(max_coeff_deg);

    RowIndex rows;
    EchelonSpan span{a.k, {}, {}};

    struct Provenance {
        std::vector<int> gen_exps;
        Exp coeff_mono;
    };
    std::vector<Provenance> columns;
    std::map<SparseVec, int> seen;  // column dedup: identical vectors are one column
    long long nnz = 0;

    for (const auto& m : monos) {
        // value of the generator monomial
        Tuple value(a.factors, MultiPoly{});
        for (auto& c : value) c = mp_monomial(a.k, Exp{0, 0, 0}, 1);
        for (size_t gi = 0; gi < a.gens.size(); ++gi)
            for (int e = 0; e < m[gi]; ++e) value = tuple_mul(a.k, value, a.gens[gi]);
        bool zero = true;
        for (const auto& c : value)
            if (!c.is_zero()) zero = false;
        if (zero) continue;
        for (const auto& cm : coeffs) {
            Tuple scaled(a.factors);
            for (int comp = 0; comp < a.factors; ++comp)
                scaled[comp] = mp_scale(a.k, value[comp], cm, 1);
            SparseVec v = tuple_to_vec(scaled, rows);
            if (v.empty()) continue;
            if (seen.count(v)) continue;
            nnz += static_cast<long long>(v.size());
            if (nnz > nnz_cap) throw cap_exceeded("membership system exceeds the size cap");
            int col_id = static_cast<int>(columns.size());
            seen.emplace(v, col_id);
            columns.push_back(Provenance{m, cm});
            span.insert(std::move(v), col_id);
        }
    }

    cert.cols = static_cast<long long>(columns.size());
    cert.rank = static_cast<long long>(span.rows.size());
    cert.nonzeros = nnz;

    SparseVec tv = tuple_to_vec(target, rows);
    cert.rows = static_cast<long long>(rows.ids.size());
    std::map<int, Rational> comb;
    span.reduce(tv, comb);
    if (!tv.empty()) {
        cert.member = false;
        return cert;
    }

    cert.member = true;
    for (const auto& [col, c] : comb) {
        // reduce() accumulated -factor contributions; the representation is
        // target = sum (-comb) columns
        Rational coeff = a.k.sub(Rational(0), c);
        if (coeff == 0) continue;
        cert.representation.push_back(
            MembershipCertificate::Term{columns[col].gen_exps, columns[col].coeff_mono, coeff});
    }

    // re-evaluate the representation against the target
    Tuple acc(a.factors, MultiPoly{});
    for (const auto& term : cert.representation) {
        Tuple value(a.factors);
        for (auto& c : value) c = mp_monomial(a.k, Exp{0, 0, 0}, 1);
        for (size_t gi = 0; gi < a.gens.size(); ++gi)
            for (int e = 0; e < term.gen_exps[gi]; ++e) value = tuple_mul(a.k, value, a.gens[gi]);
        for (int comp = 0; comp < a.factors; ++comp)
            acc[comp] = mp_add(a.k, acc[comp],
                               mp_scale(a.k, value[comp], term.coeff_mono, term.coeff));
    }
    if (!tuple_eq(acc, target))
        throw std::logic_error("membership certificate failed re-evaluation");
    return cert;
}

TupleAlgebra goldie4_algebra(const Field& k, bool with_z) {
    TupleAlgebra a;
    a.k = k;
    a.factors = 4;
    auto X = [&](int i, int j, int l) { return mp_monomial(k, Exp{i, j, l}, 1); };
    MultiPoly zero;
    MultiPoly x = X(1, 0, 0), y = X(0, 1, 0), z = X(0, 0, 1), one = X(0, 0, 0);
    MultiPoly x2x = mp_add(k, X(2, 0, 0), x);

    a.gen_names = {"r", "s", "a", "b"};
    a.gens.push_back({x2x, y, y, y});
    a.gens.push_back({x, y, y, y});
    a.gens.push_back({zero, y, y, zero});
    a.gens.push_back({zero, zero, y, y});
    if (with_z) {
        a.gen_names.insert(a.gen_names.end(), {"b1", "b2", "b3"});
        a.gens.push_back({zero, z, zero, zero});
        a.gens.push_back({zero, zero, z, zero});
        a.gens.push_back({zero, zero, zero, z});
    }
    a.gen_names.push_back("1");
    a.gens.push_back({one, one, one, one});
    return a;
}

Goldie4Report goldie4_verify(int max_gen_deg, int max_coeff_deg, const Field& k, bool with_z,
                             long long nnz_cap) {
    Goldie4Report rep;
    TupleAlgebra alg = goldie4_algebra(k, with_z);
    const Tuple& r = alg.gens[0];
    const Tuple& s = alg.gens[1];
    const Tuple& a = alg.gens[2];
    const Tuple& b = alg.gens[3];

    rep.lower_bounds_ok = rr_le_tuple(a, r) && rr_le_tuple(a, s) && rr_le_tuple(b, r) &&
                          rr_le_tuple(b, s);
    rep.incomparable_ok = !rr_le_tuple(a, b) && !rr_le_tuple(b, a);

    // Stratum vanishing: monomials involving a (resp. b, resp. both) vanish
    // in components 1 and 4 (resp. 1 and 2, resp. 1, 2 and 4).
    rep.strata_ok = true;
    std::vector<std::vector<int>> monos;
    std::vector<int> cur;
    gen_monomials(static_cast<int>(alg.gens.size()), std::min(max_gen_deg, 3), cur, monos);
    for (const auto& m : monos) {
        Tuple value(alg.factors);
        for (auto& c : value) c = mp_monomial(alg.k, Exp{0, 0, 0}, 1);
        for (size_t gi = 0; gi < alg.gens.size(); ++gi)
            for (int e = 0; e < m[gi]; ++e) value = tuple_mul(alg.k, value, alg.gens[gi]);
        bool has_a = m[2] > 0, has_b = m[3] > 0;
        if (has_a && !value[0].is_zero()) rep.strata_ok = false;
        if (has_a && !value[3].is_zero()) rep.strata_ok = false;
        if (has_b && !value[0].is_zero()) rep.strata_ok = false;
        if (has_b && !value[1].is_zero()) rep.strata_ok = false;
    }

    MultiPoly zero;
    MultiPoly y = mp_monomial(alg.k, Exp{0, 1, 0}, 1);
    Tuple target{zero, y, y, y};
    rep.refusal = bounded_membership(alg, target, max_gen_deg, max_coeff_deg, nnz_cap);

    rep.passed = rep.lower_bounds_ok && rep.incomparable_ok && rep.strata_ok &&
                 !rep.refusal.member;
    return rep;
}

}  // namespace rro::alg
