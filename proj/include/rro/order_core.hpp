#pragma once

// The reduced-ring order a <= b  iff  a*b = a*a, and generic meet /
// orthogonality oracles over any ring family exposing exact arithmetic.
//
// A family may additionally provide
//   elements_within(bound)        -- bounded enumerator, used by the
//                                    brute-force fallback;
//   lower_bound_candidates(a, b)  -- the complete list of common lower
//                                    bounds of a and b (a support-confinement
//                                    argument makes this finite).  When
//                                    present, Meet/Zero verdicts are certified
//                                    rather than bound-relative.

#include <concepts>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rro::core {

template <typename F>
concept RrFamily = requires(const F& f, const typename F::Elem& a, const typename F::Elem& b) {
    { f.zero() } -> std::convertible_to<typename F::Elem>;
    { f.one() } -> std::convertible_to<typename F::Elem>;
    { f.add(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.neg(a) } -> std::convertible_to<typename F::Elem>;
    { f.mul(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.eq(a, b) } -> std::convertible_to<bool>;
};

template <typename F>
concept HasEnumerator = requires(const F& f, long long bound) {
    { f.elements_within(bound) } -> std::convertible_to<std::vector<typename F::Elem>>;
};

template <typename F>
concept HasCandidates = requires(const F& f, const typename F::Elem& a, const typename F::Elem& b) {
    { f.lower_bound_candidates(a, b) } -> std::convertible_to<std::vector<typename F::Elem>>;
};

template <typename F>
concept HasValidator = requires(const F& f, const typename F::Elem& a) {
    { f.is_member(a) } -> std::convertible_to<bool>;
};

template <typename F>
concept HasSize = requires(const F& f, const typename F::Elem& a) {
    { f.size_of(a) } -> std::convertible_to<long long>;
};

struct element_not_in_ring : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct bound_too_small : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <RrFamily F>
bool rr_le(const F& f, const typename F::Elem& a, const typename F::Elem& b) {
    if constexpr (HasValidator<F>) {
        if (!f.is_member(a) || !f.is_member(b))
            throw element_not_in_ring("rr_le: element not in ring");
    }
    return f.eq(f.mul(a, b), f.mul(a, a));
}

// Unchecked variant for inner loops over elements already known to be members.
template <RrFamily F>
bool rr_le_unchecked(const F& f, const typename F::Elem& a, const typename F::Elem& b) {
    return f.eq(f.mul(a, b), f.mul(a, a));
}

enum class MeetKind { Meet, Zero, Inconclusive };

template <typename Elem>
struct MeetResult {
    MeetKind kind = MeetKind::Inconclusive;
    Elem value{};                          // set when kind == Meet
    std::vector<Elem> chain;               // strictly increasing common lower bounds
    std::optional<std::pair<Elem, Elem>> incomparable;  // two maximal lower bounds
    bool certified = false;                // verdict absolute, not just within bound

    bool is_meet() const { return kind == MeetKind::Meet; }
    bool is_zero() const { return kind == MeetKind::Zero; }
};

namespace detail {

// Verdict from an explicit list of common lower bounds (which always
// includes 0).  `complete` marks the list as provably exhaustive.
template <RrFamily F>
MeetResult<typename F::Elem> analyze_lower_bounds(const F& f,
                                                  std::vector<typename F::Elem> lbs,
                                                  bool complete) {
    using Elem = typename F::Elem;
    MeetResult<Elem> res;
    res.certified = complete;

    // Drop zero and duplicates.
    std::vector<Elem> nz;
    for (auto& c : lbs) {
        if (f.eq(c, f.zero())) continue;
        bool dup = false;
        for (const auto& seen : nz)
            if (f.eq(seen, c)) { dup = true; break; }
        if (!dup) nz.push_back(std::move(c));
    }
    if (nz.empty()) {
        res.kind = MeetKind::Zero;
        return res;
    }

    std::vector<size_t> maximal;
    for (size_t i = 0; i < nz.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < nz.size() && !dominated; ++j)
            if (i != j && rr_le_unchecked(f, nz[i], nz[j]) && !f.eq(nz[i], nz[j]))
                dominated = true;
        if (!dominated) maximal.push_back(i);
    }

    // Longest increasing chain through the lower bounds, as evidence.
    std::vector<int> best(nz.size(), 1), pred(nz.size(), -1);
    for (size_t i = 0; i < nz.size(); ++i)
        for (size_t j = 0; j < nz.size(); ++j)
            if (i != j && rr_le_unchecked(f, nz[j], nz[i]) && !f.eq(nz[j], nz[i]) &&
                best[j] + 1 > best[i]) {
                best[i] = best[j] + 1;
                pred[i] = static_cast<int>(j);
            }
    size_t top = 0;
    for (size_t i = 1; i < nz.size(); ++i)
        if (best[i] > best[top]) top = i;
    std::vector<Elem> chain;
    for (int at = static_cast<int>(top); at >= 0; at = pred[at]) chain.push_back(nz[at]);
    res.chain.assign(chain.rbegin(), chain.rend());

    if (maximal.size() == 1) {
        res.kind = MeetKind::Meet;
        res.value = nz[maximal[0]];
        return res;
    }
    res.kind = MeetKind::Inconclusive;
    res.incomparable = std::make_pair(nz[maximal[0]], nz[maximal[1]]);
    return res;
}

}  // namespace detail

// Brute-force meet oracle.  With a support-confinement hook the verdict is
// exact; otherwise all common lower bounds of representation size <= bound
// are enumerated and the verdict is relative to the bound.
template <RrFamily F>
MeetResult<typename F::Elem> meet_oracle(const F& f, const typename F::Elem& a,
                                         const typename F::Elem& b, long long bound) {
    if constexpr (HasValidator<F>) {
        if (!f.is_member(a) || !f.is_member(b))
            throw element_not_in_ring("meet_oracle: element not in ring");
    }
    if constexpr (HasSize<F>) {
        if (f.size_of(a) > bound || f.size_of(b) > bound)
            throw bound_too_small("meet_oracle: bound does not contain the inputs");
    }
    if constexpr (HasCandidates<F>) {
        return detail::analyze_lower_bounds(f, f.lower_bound_candidates(a, b), true);
    } else {
        static_assert(HasEnumerator<F>, "family provides neither candidates nor an enumerator");
        // Bound-relative search with growth detection: rerun at increasing
        // frontiers and watch the maximal lower bound.  A maximum that still
        // moves at the requested bound is reported as inconclusive, with the
        // chain of successive maxima as evidence.
        using Elem = typename F::Elem;
        long long start = bound;
        if constexpr (HasSize<F>) start = std::max(f.size_of(a), f.size_of(b));
        start = std::max(1LL, std::min(start, bound));
        std::vector<Elem> maxima;
        bool grew_at_top = false;
        MeetResult<Elem> last;
        for (long long b2 = start; b2 <= bound; ++b2) {
            std::vector<Elem> lbs;
            for (auto& c : f.elements_within(b2))
                if (rr_le_unchecked(f, c, a) && rr_le_unchecked(f, c, b))
                    lbs.push_back(std::move(c));
            last = detail::analyze_lower_bounds(f, std::move(lbs), false);
            if (last.kind == MeetKind::Inconclusive) return last;  // incomparable maximals
            if (last.kind == MeetKind::Meet) {
                if (maxima.empty() || !f.eq(maxima.back(), last.value)) {
                    maxima.push_back(last.value);
                    grew_at_top = (b2 == bound && maxima.size() > 1);
                }
            }
        }
        if (grew_at_top) {
            MeetResult<Elem> res;
            res.kind = MeetKind::Inconclusive;
            res.chain = std::move(maxima);
            res.certified = false;
            return res;
        }
        // Successive maxima form a chain (each later maximum dominates every
        // lower bound found at the smaller frontier); keep them as evidence.
        if (last.kind == MeetKind::Meet && maxima.size() > 1) last.chain = std::move(maxima);
        return last;
    }
}

// Orthogonality: meet equal to zero.  a*b = 0 short-circuits (if ab = 0 then
// the meet vanishes in any reduced ring).
template <RrFamily F>
bool rr_orthogonal(const F& f, const typename F::Elem& a, const typename F::Elem& b,
                   long long bound) {
    if (f.eq(f.mul(a, b), f.zero())) return true;
    return meet_oracle(f, a, b, bound).is_zero();
}

}  // namespace rro::core
