#include "rro/lifting.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "rro/order_core.hpp"

namespace rro::lift {

namespace {

using lat::Int;
using lat::Mat;
using lat::Vec;

// Refined view of the coordinate map: each refined target coordinate reads
// one refined source coordinate through a reduction (0 means equality on Z).
struct RefinedPull {
    int src;
    Int mod;
};

std::vector<RefinedPull> refined_pulls(const RingHom& h) {
    std::vector<RefinedPull> pulls(h.target.rwidth());
    for (int u = 0; u < h.target.rwidth(); ++u) {
        int j = h.target.refined_origin()[u];
        Int q = h.target.rmoduli()[u];
        int s = h.assign[j];
        int src = -1;
        // locate the refined source coordinate carrying this prime (or the
        // single Z coordinate)
        for (int rs = 0; rs < h.source.rwidth(); ++rs) {
            if (h.source.refined_origin()[rs] != s) continue;
            if (h.source.rmoduli()[rs] == 0 || h.source.rmoduli()[rs] == q) {
                src = rs;
                break;
            }
        }
        if (src < 0) throw std::logic_error("refined pull resolution failed");
        pulls[u] = RefinedPull{src, q};
    }
    return pulls;
}

}  // namespace

HomCheck hom_check(const RingHom& h) {
    HomCheck out;
    out.ok = true;

    // Surjectivity: the image lattice (plus the target's ambient relations)
    // must equal the target lattice.
    std::vector<Vec> img;
    for (const auto& row : h.source.rlattice().rows) {
        Elem x = h.source.reduce(h.source.unrefine(row));
        img.push_back(h.target.refine(apply_hom(h, x)));
    }
    for (int i = 0; i < h.target.rwidth(); ++i)
        if (h.target.rmoduli()[i] > 0) {
            Vec row(h.target.rwidth(), 0);
            row[i] = h.target.rmoduli()[i];
            img.push_back(std::move(row));
        }
    Mat image = lat::hnf(lat::make_mat(h.target.rwidth(), std::move(img)));
    out.surjective = lat::lattice_equal(image, h.target.rlattice());

    std::set<Elem> target_idems;
    for (uint32_t m : h.target.idempotent_masks())
        target_idems.insert(h.target.idempotent_from_mask(m));
    std::set<Elem> mapped;
    for (uint32_t m : h.source.idempotent_masks())
        mapped.insert(apply_hom(h, h.source.idempotent_from_mask(m)));
    out.idempotent_surjective = mapped == target_idems;
    return out;
}

lat::Mat hom_kernel(const RingHom& h) {
    // Per refined source coordinate, the strongest vanishing requirement
    // imposed by the coordinates reading it.
    auto pulls = refined_pulls(h);
    std::vector<Int> need(h.source.rwidth(), -1);  // -1 none, 0 exact zero, else modulus
    for (const auto& p : pulls) {
        if (p.mod == 0) need[p.src] = 0;
        else if (need[p.src] != 0)
            need[p.src] = (need[p.src] == -1) ? p.mod : std::lcm(need[p.src], p.mod);
    }
    std::vector<Vec> rows;
    for (int i = 0; i < h.source.rwidth(); ++i) {
        Vec row(h.source.rwidth(), 0);
        if (need[i] == -1) row[i] = 1;
        else if (need[i] == 0) continue;
        else row[i] = need[i];
        rows.push_back(std::move(row));
    }
    return lat::lattice_intersect(h.source.rlattice(),
                                  lat::hnf(lat::make_mat(h.source.rwidth(), std::move(rows))));
}

std::optional<Elem> hom_preimage(const RingHom& h, const Elem& target_value) {
    if (!h.target.contains(target_value))
        throw std::invalid_argument("hom_preimage: value not in target ring");
    auto pulls = refined_pulls(h);
    Vec tv = h.target.refine(target_value);

    // Solve t * A = b where the first rows of A run over the source basis
    // evaluated at the pulled coordinates and the rest are modulus slacks.
    const Mat& basis = h.source.rlattice();
    int m = static_cast<int>(basis.rows.size());
    int cols = h.target.rwidth();
    std::vector<Vec> arows;
    for (int l = 0; l < m; ++l) {
        Vec row(cols, 0);
        for (int u = 0; u < cols; ++u) row[u] = basis.rows[l][pulls[u].src];
        arows.push_back(std::move(row));
    }
    for (int u = 0; u < cols; ++u)
        if (pulls[u].mod > 0) {
            Vec row(cols, 0);
            row[u] = pulls[u].mod;
            arows.push_back(std::move(row));
        }
    Mat a = lat::make_mat(cols, std::move(arows));
    auto sol = lat::solve_left(a, tv);
    if (!sol) return std::nullopt;

    Vec x(h.source.rwidth(), 0);
    for (int l = 0; l < m; ++l)
        for (int c = 0; c < h.source.rwidth(); ++c) x[c] += (*sol)[l] * basis.rows[l][c];

    Mat ker = hom_kernel(h);
    x = lat::reduce_mod_lattice(ker, std::move(x));
    return h.source.reduce(h.source.unrefine(x));
}

Elem max_orthogonal_idempotent(const CongruenceRing& r, const Elem& a, const Elem& b) {
    Elem c = zk::wb_meet(r, a, b);  // throws not_weakly_baer when unavailable
    auto ai = zk::ann(r, c);
    Elem e = ai.e_hat;

    // Checked maximality over the finite idempotent lattice.
    if (!core::rr_orthogonal(r, a, r.mul(e, b), r.size_of(a) + r.size_of(b) + 1))
        throw std::logic_error("max_orthogonal_idempotent: candidate is not orthogonalizing");
    for (uint32_t f : r.idempotent_masks()) {
        if (f == ai.e_hat_mask || (f & ai.e_hat_mask) != ai.e_hat_mask) continue;
        Elem fe = r.idempotent_from_mask(f);
        if (core::rr_orthogonal(r, a, r.mul(fe, b), r.size_of(a) + r.size_of(b) + 1))
            throw std::logic_error("max_orthogonal_idempotent: larger idempotent also works");
    }
    return e;
}

LiftReport lift_orthogonal(const RingHom& h, const std::vector<Elem>& targets,
                           const std::vector<std::optional<Elem>>& preimage_hints) {
    LiftReport rep;
    HomCheck hc = hom_check(h);
    rep.surjective = hc.surjective;
    rep.idempotent_surjective = hc.idempotent_surjective;
    auto cls = zk::classify(h.source);
    rep.source_wb =
        cls.verdict == zk::RingClass::WeaklyBaer || cls.verdict == zk::RingClass::Boolean;
    if (!rep.surjective) throw hypothesis_failure("surjective", "homomorphism is not surjective");
    if (!rep.idempotent_surjective)
        throw hypothesis_failure("idempotent_surjective", "B(R) does not map onto B(S)");
    if (!rep.source_wb) throw hypothesis_failure("source_wb", "source ring is not weakly Baer");

    long long tbound = 1;
    for (const auto& s : targets) tbound = std::max(tbound, h.target.size_of(s) + 1);
    for (size_t i = 0; i < targets.size(); ++i)
        for (size_t j = i + 1; j < targets.size(); ++j)
            if (!core::rr_orthogonal(h.target, targets[i], targets[j], tbound))
                throw not_orthogonal_input("targets are not pairwise rr-orthogonal");

    for (size_t n = 0; n < targets.size(); ++n) {
        LiftStep step;
        if (n < preimage_hints.size() && preimage_hints[n]) {
            step.preimage = *preimage_hints[n];
            if (!h.source.contains(step.preimage) ||
                apply_hom(h, step.preimage) != targets[n])
                throw std::invalid_argument("preimage hint does not lift the target element");
        } else {
            auto u = hom_preimage(h, targets[n]);
            if (!u) throw std::logic_error("surjective homomorphism has no preimage");
            step.preimage = *u;
        }

        const Elem& u = step.preimage;
        for (const auto& r : rep.lifted) {
            step.meets.push_back(zk::wb_meet(h.source, r, u));
            step.idems.push_back(max_orthogonal_idempotent(h.source, r, u));
        }
        // The complements 1 - e_i are pairwise orthogonal idempotents; their
        // sum subtracted from 1 is the correcting idempotent.
        Elem one = h.source.one();
        for (size_t i = 0; i < step.idems.size(); ++i)
            for (size_t j = i + 1; j < step.idems.size(); ++j) {
                Elem ci = h.source.add(one, h.source.neg(step.idems[i]));
                Elem cj = h.source.add(one, h.source.neg(step.idems[j]));
                if (h.source.mul(ci, cj) != h.source.zero())
                    throw std::logic_error("complement idempotents are not orthogonal");
            }
        Elem eps = one;
        for (const auto& e : step.idems)
            eps = h.source.add(eps, h.source.neg(h.source.add(one, h.source.neg(e))));
        step.epsilon = eps;
        step.lifted = h.source.mul(eps, u);

        if (apply_hom(h, step.lifted) != targets[n])
            throw std::logic_error("corrected lift no longer maps to the target element");
        long long sbound = h.source.size_of(step.lifted) + 1;
        for (const auto& r : rep.lifted) {
            sbound = std::max(sbound, h.source.size_of(r) + 1);
            if (!core::rr_orthogonal(h.source, r, step.lifted, sbound))
                throw std::logic_error("lifted family is not rr-orthogonal");
        }
        rep.lifted.push_back(step.lifted);
        rep.steps.push_back(std::move(step));
    }
    return rep;
}

MeetPreservationReport hom_preserves_meets_check(const RingHom& h, long long bound,
                                                 size_t violation_cap) {
    MeetPreservationReport rep;
    auto good_src = zk::is_rr_good_bounded(h.source, bound);
    auto good_tgt = zk::is_rr_good_bounded(h.target, bound);
    if (good_src.kind == zk::GoodKind::NotGood || good_tgt.kind == zk::GoodKind::NotGood)
        throw std::invalid_argument("hom_preserves_meets_check requires rr-good rings within bound");

    Mat ker = hom_kernel(h);
    uint32_t eps_mask = 0;
    for (uint32_t m : h.source.idempotent_masks()) {
        Elem e = h.source.idempotent_from_mask(m);
        if (apply_hom(h, e) == h.target.zero()) eps_mask |= m;
    }
    // The ideal generated by the kernel's idempotents is generated by their
    // join; compare it with the kernel lattice.
    std::vector<Vec> jrows;
    for (const auto& row : h.source.rlattice().rows) {
        Vec x(h.source.rwidth(), 0);
        for (int i = 0; i < h.source.rwidth(); ++i)
            if (eps_mask & (1u << i)) x[i] = row[i];
        jrows.push_back(std::move(x));
    }
    Mat j = lat::hnf(lat::make_mat(h.source.rwidth(), std::move(jrows)));
    rep.kernel_idempotent_generated = lat::lattice_equal(j, ker);

    auto meet_of = [](const CongruenceRing& r, const Elem& a, const Elem& b) -> Elem {
        long long bnd = std::max(r.size_of(a), r.size_of(b)) + 1;
        auto m = core::meet_oracle(r, a, b, bnd);
        if (m.is_zero()) return r.zero();
        if (!m.is_meet())
            throw std::logic_error("meet does not exist inside an rr-good check");
        return m.value;
    };

    auto elems = h.source.elements_within(bound);
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j2 = i; j2 < elems.size(); ++j2) {
            ++rep.pairs_checked;
            Elem ms = meet_of(h.source, elems[i], elems[j2]);
            Elem fa = apply_hom(h, elems[i]), fb = apply_hom(h, elems[j2]);
            Elem mt = meet_of(h.target, fa, fb);
            if (apply_hom(h, ms) != mt) {
                if (rep.kernel_idempotent_generated)
                    throw std::logic_error(
                        "idempotent-generated kernel must preserve meets (lsl iv)");
                if (rep.violations.size() < violation_cap)
                    rep.violations.push_back(MeetViolation{elems[i], elems[j2],
                                                           apply_hom(h, ms), mt});
            }
        }
    return rep;
}

}  // namespace rro::lift
