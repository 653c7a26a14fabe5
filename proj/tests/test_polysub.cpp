#include "rro/polysub.hpp"

#include <bit>
#include <functional>
#include <map>

#include "doctest.h"

using namespace rro;
using alg::Exp;
using alg::Field;
using alg::MultiPoly;
using alg::Tuple;

namespace {

MultiPoly mono(const Field& k, int i, int j, int l, long long c = 1) {
    return alg::mp_monomial(k, Exp{i, j, l}, pl::Rational(c));
}

}  // namespace

TEST_CASE("field arithmetic") {
    Field q{0};
    CHECK(q.add(pl::Rational(1, 2), pl::Rational(1, 3)) == pl::Rational(5, 6));
    Field f2{2};
    CHECK(f2.add(1, 1) == 0);
    CHECK(f2.mul(3, 5) == 1);
    Field f5{5};
    CHECK(f5.div(1, 2) == 3);  // 2 * 3 = 6 = 1 mod 5
}

TEST_CASE("multipoly arithmetic") {
    Field q{0};
    auto x = mono(q, 1, 0, 0), y = mono(q, 0, 1, 0);
    auto p = alg::mp_add(q, x, y);
    auto p2 = alg::mp_mul(q, p, p);  // x^2 + 2xy + y^2
    CHECK(p2.terms.size() == 3);
    CHECK(p2.terms.at(Exp{1, 1, 0}) == 2);
    CHECK(alg::mp_total_degree(p2) == 2);
    Field f2{2};
    auto q2 = alg::mp_mul(f2, alg::mp_add(f2, mono(f2, 1, 0, 0), mono(f2, 0, 1, 0)),
                          alg::mp_add(f2, mono(f2, 1, 0, 0), mono(f2, 0, 1, 0)));
    CHECK(q2.terms.size() == 2);  // (x+y)^2 = x^2 + y^2 over F_2
}

TEST_CASE("componentwise rr order on tuples") {
    Field q{0};
    auto alg4 = alg::goldie4_algebra(q);
    const Tuple &r = alg4.gens[0], &s = alg4.gens[1], &a = alg4.gens[2], &b = alg4.gens[3];
    CHECK(alg::rr_le_tuple(a, r));
    CHECK(alg::rr_le_tuple(a, s));
    CHECK(alg::rr_le_tuple(b, r));
    CHECK(alg::rr_le_tuple(b, s));
    CHECK_FALSE(alg::rr_le_tuple(a, b));
    CHECK_FALSE(alg::rr_le_tuple(b, a));
    Tuple zero(4, MultiPoly{});
    CHECK(alg::rr_le_tuple(zero, r));
    CHECK_FALSE(alg::rr_le_tuple(r, s));
}

TEST_CASE("bounded membership: positives re-evaluate, generator is a member") {
    Field f2{2};
    auto a4 = alg::goldie4_algebra(f2);
    // a generator is in the span at D = 1, d = 0
    auto c1 = alg::bounded_membership(a4, a4.gens[2], 1, 0);
    CHECK(c1.member);
    CHECK(!c1.representation.empty());
    // a product of two generators needs D = 2
    auto rs = alg::tuple_mul(f2, a4.gens[0], a4.gens[1]);
    auto c2 = alg::bounded_membership(a4, rs, 2, 2);
    CHECK(c2.member);
    // refusal is monotone: the same product is refused at D = 1 with small d
    auto c3 = alg::bounded_membership(a4, rs, 1, 1);
    CHECK_FALSE(c3.member);
}

TEST_CASE("the goldie4 target is refused") {
    Field f2{2};
    auto a4 = alg::goldie4_algebra(f2);
    MultiPoly y = mono(f2, 0, 1, 0);
    Tuple target{MultiPoly{}, y, y, y};
    auto cert = alg::bounded_membership(a4, target, 3, 3);
    CHECK_FALSE(cert.member);
    CHECK(cert.rank > 0);
    CHECK(cert.cols >= cert.rank);

    Field q{0};
    auto aq = alg::goldie4_algebra(q);
    MultiPoly yq = mono(q, 0, 1, 0);
    Tuple tq{MultiPoly{}, yq, yq, yq};
    CHECK_FALSE(alg::bounded_membership(aq, tq, 3, 3).member);
    // the z = 0 reduction refuses as well
    auto ared = alg::goldie4_algebra(q, false);
    CHECK_FALSE(alg::bounded_membership(ared, tq, 3, 3).member);
}

TEST_CASE("membership agrees with an independent dense GF(2) elimination") {
    // Second route for the solver: assemble the same degree-capped column
    // space, then decide membership by plain dense Gaussian elimination over
    // bit rows.
    Field f2{2};
    auto a4 = alg::goldie4_algebra(f2);
    const int D = 2, d = 2;

    // enumerate generator monomials (total degree 1..D) and coefficient
    // monomials (degree <= d) exactly as the solver defines them
    std::vector<std::vector<int>> monos;
    std::vector<int> cur;
    std::function<void(size_t)> rec = [&](size_t gi) {
        if (gi == a4.gens.size()) {
            int total = 0;
            for (int e : cur) total += e;
            if (total >= 1) monos.push_back(cur);
            return;
        }
        int used = 0;
        for (int e : cur) used += e;
        for (int e = 0; e + used <= D; ++e) {
            cur.push_back(e);
            rec(gi + 1);
            cur.pop_back();
        }
    };
    rec(0);

    std::map<std::pair<int, Exp>, int> row_ids;
    auto row_of = [&](int comp, const Exp& e) {
        auto key = std::make_pair(comp, e);
        auto it = row_ids.find(key);
        if (it != row_ids.end()) return it->second;
        int id = static_cast<int>(row_ids.size());
        row_ids.emplace(key, id);
        return id;
    };
    auto tuple_bits = [&](const Tuple& t) {
        std::vector<uint64_t> bits;
        for (size_t comp = 0; comp < t.size(); ++comp)
            for (const auto& [e, c] : t[comp].terms)
                if (c != 0) {
                    int r = row_of(static_cast<int>(comp), e);
                    if (r / 64 >= static_cast<int>(bits.size())) bits.resize(r / 64 + 1, 0);
                    bits[r / 64] ^= 1ull << (r % 64);
                }
        return bits;
    };

    std::vector<std::vector<uint64_t>> columns;
    for (const auto& m : monos) {
        Tuple value(a4.factors);
        for (auto& c : value) c = alg::mp_monomial(f2, Exp{0, 0, 0}, 1);
        for (size_t gi = 0; gi < a4.gens.size(); ++gi)
            for (int e = 0; e < m[gi]; ++e) value = alg::tuple_mul(f2, value, a4.gens[gi]);
        for (int i = 0; i <= d; ++i)
            for (int j = 0; i + j <= d; ++j)
                for (int l = 0; i + j + l <= d; ++l) {
                    Tuple scaled(a4.factors);
                    for (int comp = 0; comp < a4.factors; ++comp)
                        scaled[comp] = alg::mp_scale(f2, value[comp], Exp{i, j, l}, 1);
                    columns.push_back(tuple_bits(scaled));
                }
    }

    auto dense_member = [&](const Tuple& target) {
        size_t words = 0;
        for (const auto& c : columns) words = std::max(words, c.size());
        std::vector<uint64_t> tv = tuple_bits(target);
        words = std::max(words, tv.size());
        auto widen = [&](std::vector<uint64_t> v) {
            v.resize(words, 0);
            return v;
        };
        std::vector<std::vector<uint64_t>> basis;
        std::vector<int> leads;
        auto reduce = [&](std::vector<uint64_t> v) {
            for (size_t r = 0; r < basis.size(); ++r)
                if ((v[leads[r] / 64] >> (leads[r] % 64)) & 1)
                    for (size_t w = 0; w < words; ++w) v[w] ^= basis[r][w];
            return v;
        };
        auto lead_of = [&](const std::vector<uint64_t>& v) {
            for (size_t w = 0; w < words; ++w)
                if (v[w]) return static_cast<int>(w * 64 + std::countr_zero(v[w]));
            return -1;
        };
        for (const auto& craw : columns) {
            auto v = reduce(widen(craw));
            int l = lead_of(v);
            if (l >= 0) {
                basis.push_back(std::move(v));
                leads.push_back(l);
            }
        }
        auto v = reduce(widen(tv));
        return lead_of(v) < 0;
    };

    MultiPoly y = mono(f2, 0, 1, 0);
    std::vector<std::pair<Tuple, const char*>> targets = {
        {{MultiPoly{}, y, y, y}, "goldie target"},
        {a4.gens[2], "generator a"},
        {alg::tuple_mul(f2, a4.gens[0], a4.gens[1]), "r*s"},
        {alg::tuple_mul(f2, a4.gens[2], a4.gens[3]), "a*b"},
        {{y, y, y, y}, "(y,y,y,y)"},
    };
    for (const auto& [t, name] : targets) {
        auto cert = alg::bounded_membership(a4, t, D, d);
        INFO(name);
        CHECK(cert.member == dense_member(t));
    }
}

TEST_CASE("goldie4_verify") {
    auto rep = alg::goldie4_verify(3, 3, Field{2});
    CHECK(rep.passed);
    CHECK(rep.lower_bounds_ok);
    CHECK(rep.incomparable_ok);
    CHECK(rep.strata_ok);
    CHECK_FALSE(rep.refusal.member);

    auto repq = alg::goldie4_verify(4, 4, Field{0});
    CHECK(repq.passed);

    // cap errors surface as cap_exceeded
    CHECK_THROWS_AS((void)alg::goldie4_verify(4, 4, Field{2}, true, 50), alg::cap_exceeded);
}
