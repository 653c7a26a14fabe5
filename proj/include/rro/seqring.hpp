#pragma once

// Eventually periodic integer sequences and the ring of sequences eventually
// constant mod p.  Meets can fail to exist here: the certificate op produces
// an unbounded strictly increasing chain of common lower bounds and checks
// that no representable candidate dominates it.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rro::seq {

using Int = long long;

// prefix then period, repeating forever; canonical form has a primitive
// period and the shortest possible prefix.
struct EvPerSeq {
    std::vector<Int> prefix;
    std::vector<Int> period;  // nonempty

    bool operator==(const EvPerSeq&) const = default;
};

EvPerSeq canonical(EvPerSeq s);
Int seq_at(const EvPerSeq& s, long long n);
EvPerSeq seq_add(const EvPerSeq& a, const EvPerSeq& b);
EvPerSeq seq_neg(const EvPerSeq& a);
EvPerSeq seq_mul(const EvPerSeq& a, const EvPerSeq& b);
bool seq_is_zero(const EvPerSeq& a);

// a <= b in the rr-order of the ambient product of copies of Z.
bool seq_rr_le(const EvPerSeq& a, const EvPerSeq& b);

struct SeqRingSpec {
    Int p = 2;  // prime
};

// eventually constant mod p: all period entries share a residue.
bool seq_in_ring(const SeqRingSpec& spec, const EvPerSeq& s);

struct chain_not_found : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct certificate_failed : std::runtime_error {
    EvPerSeq violating;
    certificate_failed(EvPerSeq v, const std::string& what)
        : std::runtime_error(what), violating(std::move(v)) {}
};

struct ChainCertificate {
    std::vector<EvPerSeq> chain;  // h_1 < h_2 < ... < h_N, common lower bounds
    long long masks_checked = 0;
    long long description_limit = 0;
};

// Strictly increasing chain of N common lower bounds of r and s, plus an
// exhaustive scan over eventually periodic 0/1 support masks of description
// length <= limit: any in-ring candidate dominating h_N must have finite
// support (and is then below a longer chain element), otherwise its period
// carries two residues mod p and the candidate is outside the ring.
ChainCertificate meet_nonexistence_certificate(const SeqRingSpec& spec, const EvPerSeq& r,
                                               const EvPerSeq& s, int n, long long limit = 12);

enum class SupportKind { Finite, Cofinite };

struct not_idempotent : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct not_in_ring : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

SupportKind seq_idempotent_support(const SeqRingSpec& spec, const EvPerSeq& e);

// order_core family adapter.
struct SeqRing {
    SeqRingSpec spec;
    using Elem = EvPerSeq;
    Elem zero() const { return canonical({{}, {0}}); }
    Elem one() const { return canonical({{}, {1}}); }
    Elem add(const Elem& a, const Elem& b) const { return seq_add(a, b); }
    Elem neg(const Elem& a) const { return seq_neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return seq_mul(a, b); }
    bool eq(const Elem& a, const Elem& b) const { return canonical(a) == canonical(b); }
    bool is_member(const Elem& a) const { return seq_in_ring(spec, a); }
    long long size_of(const Elem& a) const;
    std::vector<Elem> elements_within(long long bound) const;
};

}  // namespace rro::seq
