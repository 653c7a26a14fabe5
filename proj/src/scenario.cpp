#include "rro/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include "rro/lifting.hpp"
#include "rro/order_core.hpp"
#include "rro/polysub.hpp"
#include "rro/seqring.hpp"

namespace rro::scen {

using zk::CongruenceRing;
using Elem = CongruenceRing::Elem;

// --- random rings ------------------------------------------------------------

zk::CongruenceRing random_congruence_ring(RandomSource& rng, int width,
                                          const std::vector<long long>& moduli_pool,
                                          int max_constraints, int min_minimal_primes) {
    for (int attempt = 0; attempt < 500; ++attempt) {
        lat::Vec moduli(width);
        for (auto& m : moduli) m = moduli_pool[rng.uniform(moduli_pool.size())];
        std::vector<zk::Constraint> cons;
        int n_cons = static_cast<int>(rng.uniform(max_constraints + 1));
        for (int c = 0; c < n_cons && width >= 2; ++c) {
            // uniform over coordinate pairs, then over the compatible moduli
            int pair = static_cast<int>(rng.uniform(width * (width - 1) / 2));
            int i = 0;
            while (pair >= width - 1 - i) {
                pair -= width - 1 - i;
                ++i;
            }
            int j = i + 1 + pair;
            std::vector<long long> ns;
            for (long long n : {2, 3, 5})
                if ((moduli[i] == 0 || moduli[i] % n == 0) &&
                    (moduli[j] == 0 || moduli[j] % n == 0))
                    ns.push_back(n);
            if (ns.empty()) continue;
            cons.push_back(zk::Constraint{i, j, ns[rng.uniform(ns.size())]});
        }
        try {
            CongruenceRing r = CongruenceRing::from_congruences(width, moduli, cons);
            if (min_minimal_primes > 0 &&
                static_cast<int>(minimal_primes(r).size()) < min_minimal_primes)
                continue;
            return r;
        } catch (const zk::ring_spec_error&) {
            continue;
        }
    }
    throw std::runtime_error("random ring generation did not converge");
}

// --- JSON conversions -----------------------------------------------------------

Json elem_to_json(const Elem& e) { return Json(e); }

Elem elem_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("element must be an integer array");
    return j.get<Elem>();
}

Json ring_to_json(const CongruenceRing& r) {
    Json j;
    j["width"] = r.width();
    j["moduli"] = r.moduli();
    if (r.has_congruence_form()) {
        Json cons = Json::array();
        for (const auto& c : r.constraints()) cons.push_back({c.i + 1, c.j + 1, c.n});
        j["constraints"] = cons;
    } else {
        Json basis = Json::array();
        for (const auto& row : r.rlattice().rows) basis.push_back(r.unrefine(row));
        j["basis"] = basis;
    }
    return j;
}

CongruenceRing ring_from_json(const Json& j) {
    int width = j.at("width").get<int>();
    lat::Vec moduli = j.at("moduli").get<lat::Vec>();
    if (j.contains("basis")) {
        std::vector<lat::Vec> basis;
        for (const auto& row : j.at("basis")) basis.push_back(row.get<lat::Vec>());
        return CongruenceRing::from_lattice(width, moduli, basis);
    }
    std::vector<zk::Constraint> cons;
    if (j.contains("constraints"))
        for (const auto& c : j.at("constraints")) {
            if (!c.is_array() || c.size() != 3)
                throw std::invalid_argument("constraint must be [i, j, n]");
            cons.push_back(
                zk::Constraint{c[0].get<int>() - 1, c[1].get<int>() - 1, c[2].get<long long>()});
        }
    return CongruenceRing::from_congruences(width, moduli, cons);
}

Json rational_to_json(const pl::Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return Json(os.str());
}

pl::Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return pl::Rational(j.get<long long>());
    if (!j.is_string()) throw std::invalid_argument("rational must be an integer or \"p/q\"");
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return pl::Rational(pl::BigInt(s));
    return pl::Rational(pl::BigInt(s.substr(0, slash)), pl::BigInt(s.substr(slash + 1)));
}

Json plfunc_to_json(const pl::PwPolyFunc& f) {
    Json j;
    j["domain"] = {rational_to_json(f.cuts.front()), rational_to_json(f.cuts.back())};
    Json pieces = Json::array();
    for (size_t i = 0; i < f.pieces.size(); ++i) {
        Json piece;
        piece["until"] = rational_to_json(f.cuts[i + 1]);
        Json coeffs = Json::array();
        if (f.pieces[i].c.empty()) coeffs.push_back(rational_to_json(0));
        for (const auto& c : f.pieces[i].c) coeffs.push_back(rational_to_json(c));
        piece["coeffs"] = coeffs;
        pieces.push_back(piece);
    }
    j["pieces"] = pieces;
    return j;
}

pl::PwPolyFunc plfunc_from_json(const Json& j) {
    pl::Rational lo = rational_from_json(j.at("domain").at(0));
    pl::Rational hi = rational_from_json(j.at("domain").at(1));
    std::vector<pl::Rational> cuts{lo};
    std::vector<pl::Poly> pieces;
    for (const auto& piece : j.at("pieces")) {
        std::vector<pl::Rational> coeffs;
        for (const auto& c : piece.at("coeffs")) coeffs.push_back(rational_from_json(c));
        pieces.push_back(pl::poly_make(std::move(coeffs)));
        cuts.push_back(rational_from_json(piece.at("until")));
    }
    if (cuts.back() != hi) throw std::invalid_argument("last piece must end at the domain end");
    return pl::pl_make(std::move(cuts), std::move(pieces));
}

namespace {

seq::EvPerSeq seq_from_json(const Json& j) {
    seq::EvPerSeq s;
    if (j.contains("prefix")) s.prefix = j.at("prefix").get<std::vector<long long>>();
    s.period = j.at("period").get<std::vector<long long>>();
    return seq::canonical(std::move(s));
}

Json seq_to_json(const seq::EvPerSeq& s) {
    Json j;
    j["prefix"] = s.prefix;
    j["period"] = s.period;
    return j;
}

alg::Tuple tuple_from_json(const alg::Field& k, const Json& j) {
    alg::Tuple t;
    for (const auto& comp : j) {
        std::map<alg::Exp, pl::Rational> terms;
        for (const auto& term : comp) {
            if (!term.is_array() || term.size() != 4)
                throw std::invalid_argument("polynomial term must be [i, j, k, coeff]");
            alg::Exp e{term[0].get<int>(), term[1].get<int>(), term[2].get<int>()};
            terms[e] = rational_from_json(term[3]);
        }
        t.push_back(alg::mp_make(k, std::move(terms)));
    }
    return t;
}

// --- expectation matching ----------------------------------------------------

bool match_subset(const Json& expect, const Json& actual) {
    if (expect.is_object()) {
        if (!actual.is_object()) return false;
        for (auto it = expect.begin(); it != expect.end(); ++it) {
            if (!actual.contains(it.key())) return false;
            if (!match_subset(it.value(), actual.at(it.key()))) return false;
        }
        return true;
    }
    if (expect.is_array()) {
        if (!actual.is_array() || expect.size() != actual.size()) return false;
        for (size_t i = 0; i < expect.size(); ++i)
            if (!match_subset(expect[i], actual[i])) return false;
        return true;
    }
    return expect == actual;
}

bool match_contains(const Json& expect, const Json& actual) {
    // every expect[key] item must match some element of the actual[key] array
    for (auto it = expect.begin(); it != expect.end(); ++it) {
        if (!actual.contains(it.key()) || !actual.at(it.key()).is_array()) return false;
        for (const auto& item : it.value()) {
            bool found = false;
            for (const auto& got : actual.at(it.key()))
                if (match_subset(item, got)) found = true;
            if (!found) return false;
        }
    }
    return true;
}

// --- op handlers ----------------------------------------------------------------

struct Ctx {
    std::map<std::string, CongruenceRing> rings;
    std::map<std::string, zk::RingHom> homs;
    RandomSource rng{0};
    RunOptions opts;
    std::string dot;
};

CongruenceRing resolve_ring(Ctx& ctx, const Json& ref) {
    if (ref.is_string()) {
        auto it = ctx.rings.find(ref.get<std::string>());
        if (it == ctx.rings.end())
            throw std::invalid_argument("unknown ring reference " + ref.get<std::string>());
        return it->second;
    }
    return ring_from_json(ref);
}

zk::RingHom resolve_hom(Ctx& ctx, const Json& ref) {
    if (ref.is_string()) {
        auto it = ctx.homs.find(ref.get<std::string>());
        if (it == ctx.homs.end())
            throw std::invalid_argument("unknown hom reference " + ref.get<std::string>());
        return it->second;
    }
    CongruenceRing src = resolve_ring(ctx, ref.at("source"));
    CongruenceRing tgt = resolve_ring(ctx, ref.at("target"));
    std::vector<int> assign;
    for (const auto& a : ref.at("assign")) assign.push_back(a.get<int>() - 1);
    return zk::make_hom(std::move(src), std::move(tgt), std::move(assign));
}

long long arg_bound(const Ctx& ctx, const Json& req, long long fallback) {
    if (ctx.opts.bound) return *ctx.opts.bound;
    if (req.contains("bound")) return req.at("bound").get<long long>();
    return fallback;
}

Json classification_to_json(const zk::Classification& c) {
    Json j;
    j["verdict"] = zk::ring_class_name(c.verdict);
    if (c.witness) j["witness"] = elem_to_json(*c.witness);
    j["note"] = c.note;
    return j;
}

Json handle_request(Ctx& ctx, const Json& req) {
    const std::string op = req.at("op").get<std::string>();
    Json out;

    if (op == "make_ring") {
        CongruenceRing r = resolve_ring(ctx, req.at("ring"));
        out["ring"] = ring_to_json(r);
        out["classification"] = classification_to_json(zk::classify(r));
        if (req.contains("as")) ctx.rings.emplace(req.at("as").get<std::string>(), r);
    } else if (op == "contains") {
        CongruenceRing r = resolve_ring(ctx, req.at("ring"));
        out["contains"] = r.contains(elem_from_json(req.at("v")));
    } else if (op == "classify") {
        out = classification_to_json(zk::classify(resolve_ring(ctx, req.at("ring"))));
    } else if (op == "idempotents") {
        auto il = zk::idempotents(resolve_ring(ctx, req.at("ring")));
        out["count"] = il.elems.size();
        Json elems = Json::array();
        for (const auto& e : il.elems) elems.push_back(elem_to_json(e));
        out["elems"] = elems;
        Json atoms = Json::array();
        for (int a : il.atoms) atoms.push_back(elem_to_json(il.elems[a]));
        out["atoms"] = atoms;
    } else if (op == "ann") {
        CongruenceRing r = resolve_ring(ctx, req.at("ring"));
        auto ai = zk::ann(r, elem_from_json(req.at("r")));
        Json basis = Json::array();
        for (const auto& row : ai.basis.rows) basis.push_back(r.unrefine(row));
        out["basis"] = basis;
        Json supp = Json::array();
        for (int i = 0; i < r.rwidth(); ++i)
            if (ai.support & (1u << i)) supp.push_back(i + 1);
        out["support"] = supp;
        out["e_hat"] = elem_to_json(ai.e_hat);
    } else if (op == "rr_le") {
        CongruenceRing r = resolve_ring(ctx, req.at("ring"));
        out["le"] = core::rr_le(r, elem_from_json(req.at("a")), elem_from_json(req.at("b")));
    } else if (op == "meet") {
        CongruenceRing r = resolve_ring(ctx, req.at("ring"));
        Elem a = elem_from_json(req.at("a")), b = elem_from_json(req.at("b"));
        auto m = core::meet_oracle(r, a, b,
                                   arg_bound(ctx, req, std::max(r.size_of(a), r.size_of(b))));
        out["kind"] = m.kind == core::MeetKind::Meet
                          ? "meet"
                          : (m.kind == core::MeetKind::Zero ? "zero" : "inconclusive");
        if (m.is_meet()) out["value"] = elem_to_json(m.value);
        out["certified"] = m.certified;
        Json chain = Json::array();
        for (const auto& c : m.chain) chain.push_back(elem_to_json(c));
        out["chain"] = chain;
        if (m.incomparable) {
            out["incomparable"] = {elem_to_json(m.incomparable->first),
                                   elem_to_json(m.incomparable->second)};
        }
    } else if (op == "orthogonal") {
        CongruenceRing r = resolve_ring(ctx, req.at("ring"));
        Elem a = elem_from_json(req.at("a")), b = elem_from_json(req.at("b"));
        out["orthogonal"] = core::rr_orthogonal(
            r, a, b, arg_bound(ctx, req, std::max(r.size_of(a), r.size_of(b))));
    } else if (op == "wb_meet") {
        CongruenceRing r = resolve_ring(ctx, req.at("ring"));
        out["value"] =
            elem_to_json(zk::wb_meet(r, elem_from_json(req.at("a")), elem_from_json(req.at("b"))));
    } else if (op == "rr_sup") {
        CongruenceRing r = resolve_ring(ctx, req.at("ring"));
        auto s = zk::rr_sup(r, elem_from_json(req.at("a")), elem_from_json(req.at("b")));
        if (s.sup) out["sup"] = elem_to_json(*s.sup);
        else out["bad_coordinate"] = s.bad_coordinate + 1;
    } else if (op == "minimal_primes") {
        CongruenceRing r = resolve_ring(ctx, req.at("ring"));
        auto primes = zk::minimal_primes(r);
        out["count"] = primes.size();
        Json ks = Json::array();
        for (const auto& p : primes) {
            Json coords = Json::array();
            for (int c : p.coords) coords.push_back(c + 1);
            ks.push_back(coords);
        }
        out["kernel_coords"] = ks;
    } else if (op == "pierce_stalks") {
        CongruenceRing r = resolve_ring(ctx, req.at("ring"));
        auto stalks = zk::pierce_stalks(r);
        Json js = Json::array();
        bool all_domains = true;
        for (const auto& s : stalks) {
            Json one;
            one["atom"] = elem_to_json(s.atom);
            one["width"] = s.stalk.width();
            one["is_domain"] = s.is_domain;
            all_domains = all_domains && s.is_domain;
            js.push_back(one);
        }
        out["stalks"] = js;
        out["all_domains"] = all_domains;
        auto v = zk::classify(r).verdict;
        out["classification"] = zk::ring_class_name(v);
        out["consistent"] = (all_domains == (v == zk::RingClass::WeaklyBaer ||
                                             v == zk::RingClass::Boolean));
    } else if (op == "is_rr_good") {
        CongruenceRing r = resolve_ring(ctx, req.at("ring"));
        auto v = zk::is_rr_good_bounded(r, arg_bound(ctx, req, 4));
        out["kind"] = v.kind == zk::GoodKind::Good
                          ? "good"
                          : (v.kind == zk::GoodKind::NotGood ? "not_good" : "good_within_bound");
        out["certificate"] = v.certificate;
        out["patterns_checked"] = v.patterns_checked;
        out["max_chain_len"] = v.max_chain_len;
        if (v.pair) out["pair"] = {elem_to_json(v.pair->first), elem_to_json(v.pair->second)};
        if (v.maximals)
            out["maximals"] = {elem_to_json(v.maximals->first), elem_to_json(v.maximals->second)};
    } else if (op == "wb_hull") {
        CongruenceRing r = resolve_ring(ctx, req.at("ring"));
        auto h = zk::wb_hull(r);
        auto adjoined = h.adjoined;
        std::sort(adjoined.begin(), adjoined.end());
        Json adj = Json::array();
        for (const auto& e : adjoined) adj.push_back(elem_to_json(e));
        out["adjoined"] = adj;
        out["hull"] = ring_to_json(h.hull);
        out["hull_is_full_ambient"] = h.hull.is_full_ambient();
        auto v = zk::classify(h.hull).verdict;
        out["hull_wb"] =
            (v == zk::RingClass::WeaklyBaer || v == zk::RingClass::Boolean);
        auto hh = zk::wb_hull(h.hull);
        out["idempotent"] = hh.hull.lattice_equal_to(h.hull) && hh.adjoined.empty();
        if (req.contains("as")) ctx.rings.emplace(req.at("as").get<std::string>(), h.hull);
    } else if (op == "equalizer") {
        auto phi = resolve_hom(ctx, req.at("phi"));
        auto psi = resolve_hom(ctx, req.at("psi"));
        CongruenceRing e = zk::equalizer(phi, psi);
        out["ring"] = ring_to_json(e);
        out["classification"] = classification_to_json(zk::classify(e));
        if (req.contains("as")) ctx.rings.emplace(req.at("as").get<std::string>(), e);
    } else if (op == "hom_check") {
        auto hc = lift::hom_check(resolve_hom(ctx, req.at("hom")));
        out["surjective"] = hc.surjective;
        out["idempotent_surjective"] = hc.idempotent_surjective;
    } else if (op == "max_orthogonal_idempotent") {
        CongruenceRing r = resolve_ring(ctx, req.at("ring"));
        out["e"] = elem_to_json(lift::max_orthogonal_idempotent(
            r, elem_from_json(req.at("a")), elem_from_json(req.at("b"))));
    } else if (op == "lift_orthogonal") {
        auto h = resolve_hom(ctx, req.at("hom"));
        std::vector<Elem> targets;
        for (const auto& t : req.at("targets")) targets.push_back(elem_from_json(t));
        std::vector<std::optional<Elem>> hints;
        if (req.contains("preimages"))
            for (const auto& p : req.at("preimages"))
                hints.push_back(p.is_null() ? std::nullopt
                                            : std::optional<Elem>(elem_from_json(p)));
        auto rep = lift::lift_orthogonal(h, targets, hints);
        Json lifted = Json::array();
        for (const auto& l : rep.lifted) lifted.push_back(elem_to_json(l));
        out["lifted"] = lifted;
        Json steps = Json::array();
        for (const auto& s : rep.steps) {
            Json step;
            step["preimage"] = elem_to_json(s.preimage);
            step["epsilon"] = elem_to_json(s.epsilon);
            Json idems = Json::array();
            for (const auto& e : s.idems) idems.push_back(elem_to_json(e));
            step["idempotents"] = idems;
            steps.push_back(step);
        }
        out["steps"] = steps;
        out["ok"] = true;
    } else if (op == "hom_preserves_meets") {
        auto rep =
            lift::hom_preserves_meets_check(resolve_hom(ctx, req.at("hom")), arg_bound(ctx, req, 6));
        out["kernel_idempotent_generated"] = rep.kernel_idempotent_generated;
        out["pairs_checked"] = rep.pairs_checked;
        Json vs = Json::array();
        for (const auto& v : rep.violations) {
            Json one;
            one["a"] = elem_to_json(v.a);
            one["b"] = elem_to_json(v.b);
            one["meet_mapped"] = elem_to_json(v.meet_mapped);
            one["meet_of_images"] = elem_to_json(v.meet_of_images);
            vs.push_back(one);
        }
        out["violations"] = vs;
    } else if (op == "random_goodness_sweep") {
        int width = req.at("width").get<int>();
        int count = req.at("count").get<int>();
        long long bound = arg_bound(ctx, req, 5);
        std::vector<long long> pool{0, 2, 3};
        if (req.contains("moduli_pool")) pool = req.at("moduli_pool").get<std::vector<long long>>();
        int min_primes = req.value("min_minimal_primes", 0);
        int goods = 0, withins = 0, notgoods = 0, consistent = 0;
        for (int i = 0; i < count; ++i) {
            CongruenceRing r =
                random_congruence_ring(ctx.rng, width, pool, req.value("max_constraints", 3),
                                       min_primes);
            auto v = zk::is_rr_good_bounded(r, bound);
            auto cls = zk::classify(r).verdict;
            bool wb = cls == zk::RingClass::WeaklyBaer || cls == zk::RingClass::Boolean;
            if (v.kind == zk::GoodKind::Good) ++goods;
            if (v.kind == zk::GoodKind::GoodWithinBound) ++withins;
            if (v.kind == zk::GoodKind::NotGood) ++notgoods;
            // With four or more minimal primes enforced, Good must coincide
            // with the wB classification; otherwise the three-primes
            // certificate covers non-wB rings and only NotGood contradicts.
            bool this_consistent = (min_primes >= 4) ? (wb == (v.kind == zk::GoodKind::Good))
                                                     : (v.kind != zk::GoodKind::NotGood);
            if (this_consistent) ++consistent;
        }
        out["count"] = count;
        out["good"] = goods;
        out["good_within_bound"] = withins;
        out["not_good"] = notgoods;
        out["consistent"] = consistent;
        out["all_good"] = (goods == count);
        out["all_consistent"] = (consistent == count);
    } else if (op == "seq_in_ring") {
        seq::SeqRingSpec spec{req.at("p").get<long long>()};
        out["in_ring"] = seq::seq_in_ring(spec, seq_from_json(req.at("s")));
    } else if (op == "seq_rr_le") {
        out["le"] = seq::seq_rr_le(seq_from_json(req.at("a")), seq_from_json(req.at("b")));
    } else if (op == "seq_chain") {
        seq::SeqRingSpec spec{req.at("p").get<long long>()};
        auto cert = seq::meet_nonexistence_certificate(
            spec, seq_from_json(req.at("r")), seq_from_json(req.at("s")), req.at("n").get<int>(),
            req.value("limit", 12));
        out["chain_length"] = cert.chain.size();
        out["masks_checked"] = cert.masks_checked;
        out["verified"] = true;
        Json chain = Json::array();
        for (const auto& h : cert.chain) chain.push_back(seq_to_json(h));
        out["chain"] = chain;
    } else if (op == "seq_idempotent_support") {
        seq::SeqRingSpec spec{req.at("p").get<long long>()};
        auto kind = seq::seq_idempotent_support(spec, seq_from_json(req.at("e")));
        out["kind"] = kind == seq::SupportKind::Finite ? "finite" : "cofinite";
    } else if (op == "pl_arith") {
        auto f = plfunc_from_json(req.at("f"));
        std::string kind = req.at("kind").get<std::string>();
        if (kind == "neg") {
            out["result"] = plfunc_to_json(pl::pl_neg(f));
        } else {
            auto g = plfunc_from_json(req.at("g"));
            if (kind == "add") out["result"] = plfunc_to_json(pl::pl_add(f, g));
            else if (kind == "mul") out["result"] = plfunc_to_json(pl::pl_mul(f, g));
            else throw std::invalid_argument("unknown arith kind " + kind);
        }
    } else if (op == "pl_rr_le") {
        out["le"] = pl::pl_rr_le(plfunc_from_json(req.at("f")), plfunc_from_json(req.at("g")));
    } else if (op == "pl_coincidence") {
        auto cs = pl::coincidence(plfunc_from_json(req.at("f")), plfunc_from_json(req.at("g")));
        Json ivs = Json::array();
        for (const auto& iv : cs.intervals) {
            Json one;
            one["lo"] = rational_to_json(iv.lo);
            one["hi"] = rational_to_json(iv.hi);
            one["f_vanishes_lo"] = iv.f_vanishes_lo;
            one["f_vanishes_hi"] = iv.f_vanishes_hi;
            ivs.push_back(one);
        }
        out["intervals"] = ivs;
        Json pts = Json::array();
        for (const auto& p : cs.isolated_points) pts.push_back(rational_to_json(p));
        out["isolated_points"] = pts;
        Json boxes = Json::array();
        for (const auto& [a, b] : cs.isolated_boxes)
            boxes.push_back({rational_to_json(a), rational_to_json(b)});
        out["isolated_boxes"] = boxes;
    } else if (op == "pl_meet") {
        out["meet"] = plfunc_to_json(
            pl::pl_meet(plfunc_from_json(req.at("f")), plfunc_from_json(req.at("g"))));
    } else if (op == "pl_restrict") {
        out["result"] = plfunc_to_json(pl::pl_restrict(plfunc_from_json(req.at("f")),
                                                       rational_from_json(req.at("a")),
                                                       rational_from_json(req.at("b"))));
    } else if (op == "pl_lift") {
        std::vector<pl::PwPolyFunc> fs;
        for (const auto& f : req.at("fs")) fs.push_back(plfunc_from_json(f));
        std::vector<std::optional<pl::PwPolyFunc>> cands;
        if (req.contains("candidates"))
            for (const auto& c : req.at("candidates"))
                cands.push_back(c.is_null() ? std::nullopt
                                            : std::optional<pl::PwPolyFunc>(plfunc_from_json(c)));
        auto res = pl::pl_lift_orthogonal(fs, rational_from_json(req.at("subdomain").at(0)),
                                          rational_from_json(req.at("subdomain").at(1)),
                                          rational_from_json(req.at("domain").at(0)),
                                          rational_from_json(req.at("domain").at(1)), cands);
        Json lifted = Json::array();
        for (const auto& l : res.lifted) lifted.push_back(plfunc_to_json(l));
        out["lifted"] = lifted;
        out["ok"] = true;
    } else if (op == "goldie4") {
        alg::Field k{req.value("p", 2LL)};
        int d1 = ctx.opts.degree ? *ctx.opts.degree : req.at("D").get<int>();
        int d2 = ctx.opts.coeff_degree ? *ctx.opts.coeff_degree : req.at("d").get<int>();
        auto rep = alg::goldie4_verify(d1, d2, k, req.value("with_z", true),
                                       req.value("cap", 200000LL));
        out["passed"] = rep.passed;
        out["lower_bounds_ok"] = rep.lower_bounds_ok;
        out["incomparable_ok"] = rep.incomparable_ok;
        out["strata_ok"] = rep.strata_ok;
        out["refused"] = !rep.refusal.member;
        out["rank"] = rep.refusal.rank;
        out["rows"] = rep.refusal.rows;
        out["cols"] = rep.refusal.cols;
    } else if (op == "bounded_membership") {
        alg::Field k{req.value("p", 2LL)};
        alg::TupleAlgebra a;
        if (req.at("algebra").is_string() && req.at("algebra").get<std::string>() == "goldie4") {
            a = alg::goldie4_algebra(k, req.value("with_z", true));
        } else {
            const Json& aj = req.at("algebra");
            a.k = k;
            a.factors = aj.at("factors").get<int>();
            for (const auto& g : aj.at("generators")) a.gens.push_back(tuple_from_json(k, g));
            for (size_t i = 0; i < a.gens.size(); ++i)
                a.gen_names.push_back("g" + std::to_string(i + 1));
        }
        alg::Tuple target = tuple_from_json(k, req.at("target"));
        int d1 = ctx.opts.degree ? *ctx.opts.degree : req.at("D").get<int>();
        int d2 = ctx.opts.coeff_degree ? *ctx.opts.coeff_degree : req.at("d").get<int>();
        auto cert = alg::bounded_membership(a, target, d1, d2, req.value("cap", 200000LL));
        out["member"] = cert.member;
        out["rank"] = cert.rank;
        out["rows"] = cert.rows;
        out["cols"] = cert.cols;
        out["nonzeros"] = cert.nonzeros;
        out["representation_terms"] = cert.representation.size();
    } else if (op == "dot_idempotents") {
        CongruenceRing r = resolve_ring(ctx, req.at("ring"));
        ctx.dot = dot_idempotent_lattice(r);
        out["dot_bytes"] = ctx.dot.size();
    } else {
        throw std::invalid_argument("unknown op " + op);
    }
    return out;
}

}  // namespace

// --- runner ----------------------------------------------------------------------

RunOutcome run_scenario(const Json& scenario, const RunOptions& opts) {
    RunOutcome outcome;
    Json report;
    report["scenario"] = scenario.value("name", "unnamed");
    uint64_t seed = opts.seed ? *opts.seed : scenario.value("seed", 0ull);
    report["seed"] = seed;

    Ctx ctx;
    ctx.rng = RandomSource(seed);
    ctx.opts = opts;

    try {
        if (scenario.contains("rings"))
            for (auto it = scenario.at("rings").begin(); it != scenario.at("rings").end(); ++it)
                ctx.rings.emplace(it.key(), ring_from_json(it.value()));
        if (scenario.contains("homs"))
            for (auto it = scenario.at("homs").begin(); it != scenario.at("homs").end(); ++it)
                ctx.homs.emplace(it.key(), resolve_hom(ctx, it.value()));
    } catch (const std::exception& e) {
        outcome.exit_code = 2;
        report["error"] = std::string("scenario setup: ") + e.what();
        outcome.report = report;
        return outcome;
    }

    bool all_ok = true;
    bool cap_hit = false;
    Json results = Json::array();
    for (const auto& req : scenario.value("requests", Json::array())) {
        Json entry;
        entry["op"] = req.value("op", "?");
        auto started = std::chrono::steady_clock::now();
        bool ok = true;
        try {
            Json result = handle_request(ctx, req);
            entry["result"] = result;
            if (req.contains("expect") && !match_subset(req.at("expect"), result)) ok = false;
            if (req.contains("expect_contains") &&
                !match_contains(req.at("expect_contains"), result))
                ok = false;
            if (req.contains("expect_error")) ok = false;  // expected an error, got none
        } catch (const alg::cap_exceeded& e) {
            entry["error"] = e.what();
            cap_hit = true;
            ok = false;
        } catch (const std::exception& e) {
            entry["error"] = e.what();
            ok = req.contains("expect_error") &&
                 std::string(e.what()).find(req.at("expect_error").get<std::string>()) !=
                     std::string::npos;
        }
        if (opts.timing)
            entry["ms"] = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - started)
                              .count();
        entry["ok"] = ok;
        all_ok = all_ok && ok;
        results.push_back(entry);
    }
    report["results"] = results;
    report["pass"] = all_ok;
    outcome.report = report;
    outcome.dot = ctx.dot;
    outcome.exit_code = all_ok ? 0 : (cap_hit ? 3 : 1);
    return outcome;
}

RunOutcome run_scenario_text(const std::string& text, const RunOptions& opts) {
    Json scenario = Json::parse(text, nullptr, false);
    if (scenario.is_discarded()) {
        RunOutcome out;
        out.exit_code = 2;
        out.report = Json{{"error", "scenario file does not parse as JSON"}};
        return out;
    }
    return run_scenario(scenario, opts);
}

std::string render_text_report(const Json& report) {
    std::ostringstream os;
    os << "scenario " << report.value("scenario", "?") << " (seed "
       << report.value("seed", 0ull) << ")\n";
    for (const auto& r : report.value("results", Json::array())) {
        os << (r.value("ok", false) ? "  [ ok ] " : "  [FAIL] ") << r.value("op", "?");
        if (r.contains("ms")) os << "  (" << r.at("ms").get<double>() << " ms)";
        os << "\n";
        if (r.contains("error")) os << "         error: " << r.at("error").get<std::string>() << "\n";
    }
    os << (report.value("pass", false) ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string dot_idempotent_lattice(const zk::CongruenceRing& r) {
    auto il = zk::idempotents(r);
    std::ostringstream os;
    os << "digraph idempotents {\n  rankdir=BT;\n";
    auto label = [&](size_t i) {
        std::ostringstream l;
        l << "\"(";
        for (size_t c = 0; c < il.elems[i].size(); ++c) {
            if (c) l << ",";
            l << il.elems[i][c];
        }
        l << ")\"";
        return l.str();
    };
    for (size_t i = 0; i < il.elems.size(); ++i) os << "  " << label(i) << ";\n";
    // Hasse edges: covers in the subset order of the masks
    for (size_t i = 0; i < il.masks.size(); ++i)
        for (size_t j = 0; j < il.masks.size(); ++j) {
            if (i == j || (il.masks[i] & il.masks[j]) != il.masks[i]) continue;
            bool cover = true;
            for (size_t k = 0; k < il.masks.size() && cover; ++k) {
                if (k == i || k == j) continue;
                if ((il.masks[i] & il.masks[k]) == il.masks[i] &&
                    (il.masks[k] & il.masks[j]) == il.masks[k])
                    cover = false;
            }
            if (cover) os << "  " << label(i) << " -> " << label(j) << ";\n";
        }
    os << "}\n";
    return os.str();
}

// --- builtins ------------------------------------------------------------------------

namespace {

const std::map<std::string, std::string>& builtin_map() {
    static const std::map<std::string, std::string> builtins = {
        {"z6-counterexample", R"({
  "name": "z6-counterexample",
  "rings": {"Z": {"width": 1, "moduli": [0]}, "Z6": {"width": 2, "moduli": [2, 3]}},
  "homs": {"phi": {"source": "Z", "target": "Z6", "assign": [1, 1]}},
  "requests": [
    {"op": "hom_check", "hom": "phi",
     "expect": {"surjective": true, "idempotent_surjective": false}},
    {"op": "hom_preserves_meets", "hom": "phi", "bound": 13,
     "expect": {"kernel_idempotent_generated": false},
     "expect_contains": {"violations": [
        {"a": [7], "b": [13], "meet_mapped": [0, 0], "meet_of_images": [1, 1]}]}}
  ]
})"},
        {"notlattice-chain", R"({
  "name": "notlattice-chain",
  "requests": [
    {"op": "seq_in_ring", "p": 2, "s": {"period": [1, 3]}, "expect": {"in_ring": true}},
    {"op": "seq_rr_le", "a": {"prefix": [1], "period": [0]}, "b": {"period": [1]},
     "expect": {"le": true}},
    {"op": "seq_chain", "p": 2, "r": {"period": [1]}, "s": {"period": [1, 3]},
     "n": 6, "limit": 12,
     "expect": {"chain_length": 6, "verified": true}}
  ]
})"},
        {"goldie3-good", R"({
  "name": "goldie3-good",
  "seed": 31,
  "requests": [
    {"op": "random_goodness_sweep", "width": 3, "count": 30, "bound": 5,
     "moduli_pool": [0, 2, 3, 5],
     "expect": {"all_good": true}}
  ]
})"},
        {"goldie4", R"({
  "name": "goldie4",
  "requests": [
    {"op": "goldie4", "p": 2, "D": 3, "d": 3,
     "expect": {"passed": true, "refused": true}}
  ]
})"},
        {"eq-bad", R"({
  "name": "eq-bad",
  "rings": {"R": {"width": 2, "moduli": [0, 0]}, "S": {"width": 1, "moduli": [2]}},
  "homs": {"phi": {"source": "R", "target": "S", "assign": [1]},
           "psi": {"source": "R", "target": "S", "assign": [2]}},
  "requests": [
    {"op": "equalizer", "phi": "phi", "psi": "psi",
     "expect": {"classification": {"verdict": "neither", "witness": [0, 2]}}}
  ]
})"},
        {"wb-hull-roundtrip", R"({
  "name": "wb-hull-roundtrip",
  "rings": {"R": {"width": 2, "moduli": [0, 0], "constraints": [[1, 2, 2]]}},
  "requests": [
    {"op": "classify", "ring": "R", "expect": {"verdict": "neither"}},
    {"op": "wb_hull", "ring": "R",
     "expect": {"adjoined": [[0, 1], [1, 0]], "hull_is_full_ambient": true,
                "hull_wb": true, "idempotent": true}}
  ]
})"},
        {"pl-sine-analog", R"({
  "name": "pl-sine-analog",
  "requests": [
    {"op": "pl_meet",
     "f": {"domain": [0, 2], "pieces": [{"until": 1, "coeffs": [0, 1, -1]},
                                         {"until": 2, "coeffs": [2, -3, 1]}]},
     "g": {"domain": [0, 2], "pieces": [{"until": 1, "coeffs": [0, 1, -1]},
                                         {"until": 2, "coeffs": [-2, 3, -1]}]},
     "expect": {"meet": {"domain": ["0", "2"],
                          "pieces": [{"until": "1", "coeffs": ["0", "1", "-1"]},
                                     {"until": "2", "coeffs": ["0"]}]}}}
  ]
})"},
        {"cozbad", R"({
  "name": "cozbad",
  "requests": [
    {"op": "pl_meet",
     "f": {"domain": [-1, 1], "pieces": [{"until": 1, "coeffs": ["1/4", -1, 1]}]},
     "g": {"domain": [-1, 1], "pieces": [{"until": 0, "coeffs": ["1/4", -1, 2]},
                                          {"until": "1/2", "coeffs": ["1/4", -1, 1]},
                                          {"until": 1, "coeffs": ["1/2", -2, 2]}]},
     "expect": {"meet": {"domain": ["-1", "1"], "pieces": [{"until": "1", "coeffs": ["0"]}]}}},
    {"op": "pl_meet",
     "f": {"domain": [0, 1], "pieces": [{"until": 1, "coeffs": ["1/4", -1, 1]}]},
     "g": {"domain": [0, 1], "pieces": [{"until": "1/2", "coeffs": ["1/4", -1, 1]},
                                         {"until": 1, "coeffs": ["1/2", -2, 2]}]},
     "expect": {"meet": {"domain": ["0", "1"],
                          "pieces": [{"until": "1/2", "coeffs": ["1/4", "-1", "1"]},
                                     {"until": "1", "coeffs": ["0"]}]}}}
  ]
})"},
        {"liftwb-demo", R"({
  "name": "liftwb-demo",
  "rings": {"R": {"width": 4, "moduli": [0, 0, 0, 0]}, "S": {"width": 2, "moduli": [0, 0]}},
  "homs": {"pr": {"source": "R", "target": "S", "assign": [1, 2]}},
  "requests": [
    {"op": "lift_orthogonal", "hom": "pr",
     "targets": [[1, 0], [0, 1]],
     "preimages": [[1, 0, 1, 2], [0, 1, 1, 1]],
     "expect": {"ok": true, "lifted": [[1, 0, 1, 2], [0, 1, 0, 1]]}}
  ]
})"},
        {"pierce-stalks", R"({
  "name": "pierce-stalks",
  "rings": {"R": {"width": 2, "moduli": [0, 0], "constraints": [[1, 2, 2]]},
            "Z2": {"width": 2, "moduli": [0, 0]}},
  "requests": [
    {"op": "pierce_stalks", "ring": "R",
     "expect": {"all_domains": false, "classification": "neither", "consistent": true}},
    {"op": "pierce_stalks", "ring": "Z2",
     "expect": {"all_domains": true, "classification": "wB", "consistent": true}},
    {"op": "dot_idempotents", "ring": "Z2"}
  ]
})"},
    };
    return builtins;
}

}  // namespace

std::vector<std::string> list_scenarios() {
    std::vector<std::string> names;
    for (const auto& [name, text] : builtin_map()) names.push_back(name);
    return names;
}

const std::string& builtin_scenario(const std::string& name) {
    auto it = builtin_map().find(name);
    if (it == builtin_map().end()) throw std::invalid_argument("unknown builtin scenario " + name);
    return it->second;
}

}  // namespace rro::scen
