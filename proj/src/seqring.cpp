#include "rro/seqring.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace rro::seq {

namespace {

Int mod_norm(Int v, Int m) {
    Int r = v % m;
    return r < 0 ? r + m : r;
}

// prefix length and period length after aligning two sequences.
std::pair<long long, long long> alignment(const EvPerSeq& a, const EvPerSeq& b) {
    long long pre = std::max(a.prefix.size(), b.prefix.size());
    long long per = std::lcm<long long>(a.period.size(), b.period.size());
    return {pre, per};
}

EvPerSeq build_from(const EvPerSeq& a, const EvPerSeq& b, Int (*op)(Int, Int)) {
    auto [pre, per] = alignment(a, b);
    EvPerSeq out;
    for (long long n = 0; n < pre; ++n) out.prefix.push_back(op(seq_at(a, n), seq_at(b, n)));
    for (long long n = pre; n < pre + per; ++n) out.period.push_back(op(seq_at(a, n), seq_at(b, n)));
    return canonical(std::move(out));
}

}  // namespace

EvPerSeq canonical(EvPerSeq s) {
    if (s.period.empty()) s.period.push_back(0);
    // primitive period
    size_t len = s.period.size();
    for (size_t d = 1; d <= len / 2; ++d) {
        if (len % d != 0) continue;
        bool rep = true;
        for (size_t i = d; i < len && rep; ++i)
            if (s.period[i] != s.period[i % d]) rep = false;
        if (rep) {
            s.period.resize(d);
            break;
        }
    }
    // absorb the prefix tail into a rotation of the period
    while (!s.prefix.empty() && s.prefix.back() == s.period.back()) {
        s.prefix.pop_back();
        std::rotate(s.period.rbegin(), s.period.rbegin() + 1, s.period.rend());
    }
    return s;
}

Int seq_at(const EvPerSeq& s, long long n) {
    if (n < static_cast<long long>(s.prefix.size())) return s.prefix[n];
    return s.period[(n - s.prefix.size()) % s.period.size()];
}

EvPerSeq seq_add(const EvPerSeq& a, const EvPerSeq& b) {
    return build_from(a, b, [](Int x, Int y) { return x + y; });
}

EvPerSeq seq_mul(const EvPerSeq& a, const EvPerSeq& b) {
    return build_from(a, b, [](Int x, Int y) { return x * y; });
}

EvPerSeq seq_neg(const EvPerSeq& a) {
    EvPerSeq out = a;
    for (Int& x : out.prefix) x = -x;
    for (Int& x : out.period) x = -x;
    return canonical(std::move(out));
}

bool seq_is_zero(const EvPerSeq& a) {
    for (Int x : a.prefix)
        if (x != 0) return false;
    for (Int x : a.period)
        if (x != 0) return false;
    return true;
}

bool seq_rr_le(const EvPerSeq& a, const EvPerSeq& b) {
    auto [pre, per] = alignment(a, b);
    for (long long n = 0; n < pre + per; ++n) {
        Int x = seq_at(a, n);
        if (x != 0 && x != seq_at(b, n)) return false;
    }
    return true;
}

bool seq_in_ring(const SeqRingSpec& spec, const EvPerSeq& s) {
    EvPerSeq c = canonical(s);
    Int r = mod_norm(c.period[0], spec.p);
    for (Int x : c.period)
        if (mod_norm(x, spec.p) != r) return false;
    return true;
}

ChainCertificate meet_nonexistence_certificate(const SeqRingSpec& spec, const EvPerSeq& r,
                                               const EvPerSeq& s, int n, long long limit) {
    EvPerSeq cr = canonical(r), cs = canonical(s);
    if (!seq_in_ring(spec, cr) || !seq_in_ring(spec, cs))
        throw std::invalid_argument("certificate inputs must lie in the ring");
    if (cr == cs) throw chain_not_found("r = s: the meet exists trivially");

    // The first n coincidence positions with nonzero common value.
    auto [pre, per] = alignment(cr, cs);
    std::vector<long long> positions;
    for (long long k = 0; k < pre + per * (n + 2) && static_cast<int>(positions.size()) < n; ++k)
        if (seq_at(cr, k) != 0 && seq_at(cr, k) == seq_at(cs, k)) positions.push_back(k);
    if (static_cast<int>(positions.size()) < n)
        throw chain_not_found("fewer coincidence positions than requested chain length");

    ChainCertificate cert;
    cert.description_limit = limit;
    auto restriction_to = [&](int count) {
        EvPerSeq h;
        h.prefix.assign(positions[count - 1] + 1, 0);
        for (int i = 0; i < count; ++i) h.prefix[positions[i]] = seq_at(cr, positions[i]);
        h.period = {0};
        return canonical(std::move(h));
    };
    for (int k = 1; k <= n; ++k) cert.chain.push_back(restriction_to(k));
    const EvPerSeq& top = cert.chain.back();

    // Exhaustive scan over eventually periodic 0/1 masks of description
    // length <= limit.
    for (long long plen = 0; plen <= limit; ++plen) {
        for (long long qlen = 1; plen + qlen <= limit; ++qlen) {
            long long bits = plen + qlen;
            for (long long word = 0; word < (1LL << bits); ++word) {
                EvPerSeq mask;
                for (long long i = 0; i < plen; ++i)
                    mask.prefix.push_back((word >> i) & 1);
                for (long long i = plen; i < bits; ++i)
                    mask.period.push_back((word >> i) & 1);
                ++cert.masks_checked;
                EvPerSeq cand = seq_mul(canonical(mask), cr);
                if (!seq_rr_le(cand, cr) || !seq_rr_le(cand, cs)) continue;
                if (!seq_in_ring(spec, cand)) continue;
                if (!seq_rr_le(top, cand)) continue;
                // An in-ring dominating candidate must have finite support and
                // therefore sits below a longer finite restriction.
                bool finite_support = true;
                for (Int x : canonical(cand).period)
                    if (x != 0) finite_support = false;
                if (!finite_support)
                    throw certificate_failed(cand,
                                             "in-ring candidate with infinite support dominates "
                                             "the chain: the meet may exist");
            }
        }
    }
    return cert;
}

SupportKind seq_idempotent_support(const SeqRingSpec& spec, const EvPerSeq& e) {
    (void)spec;  // mixed 0/1 periods are outside the ring for every prime p
    EvPerSeq c = canonical(e);
    for (Int x : c.prefix)
        if (x != 0 && x != 1) throw not_idempotent("entries must be 0 or 1");
    for (Int x : c.period)
        if (x != 0 && x != 1) throw not_idempotent("entries must be 0 or 1");
    bool has0 = false, has1 = false;
    for (Int x : c.period) (x == 0 ? has0 : has1) = true;
    if (has0 && has1)
        throw not_in_ring("support is neither finite nor cofinite: not constant mod p");
    return has1 ? SupportKind::Cofinite : SupportKind::Finite;
}

long long SeqRing::size_of(const Elem& a) const {
    EvPerSeq c = canonical(a);
    long long s = static_cast<long long>(c.prefix.size() + c.period.size());
    for (Int x : c.prefix) s = std::max(s, std::llabs(x));
    for (Int x : c.period) s = std::max(s, std::llabs(x));
    return s;
}

std::vector<EvPerSeq> SeqRing::elements_within(long long bound) const {
    std::set<std::pair<std::vector<Int>, std::vector<Int>>> seen;
    std::vector<EvPerSeq> out;
    long long values = 2 * bound + 1;
    for (long long plen = 0; plen <= bound; ++plen)
        for (long long qlen = 1; plen + qlen <= bound; ++qlen) {
            long long total = 1;
            for (long long i = 0; i < plen + qlen; ++i) {
                total *= values;
                if (total > 2'000'000LL)
                    throw std::runtime_error("sequence enumeration too large");
            }
            for (long long word = 0; word < total; ++word) {
                long long w = word;
                EvPerSeq s;
                for (long long i = 0; i < plen; ++i) {
                    s.prefix.push_back(static_cast<Int>(w % values) - bound);
                    w /= values;
                }
                for (long long i = 0; i < qlen; ++i) {
                    s.period.push_back(static_cast<Int>(w % values) - bound);
                    w /= values;
                }
                EvPerSeq c = canonical(std::move(s));
                if (!seq_in_ring(spec, c)) continue;
                auto key = std::make_pair(c.prefix, c.period);
                if (seen.insert(key).second) out.push_back(std::move(c));
            }
        }
    return out;
}

}  // namespace rro::seq
