#pragma once

// Orthogonal-set lifting along coordinate homomorphisms of congruence rings:
// hypothesis checks, the largest idempotent e with a ^ eb = 0, the inductive
// epsilon-correction, and the meet-preservation audit.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rro/zkring.hpp"

namespace rro::lift {

using zk::CongruenceRing;
using zk::RingHom;
using Elem = CongruenceRing::Elem;

struct hypothesis_failure : std::runtime_error {
    std::string flag;
    hypothesis_failure(std::string f, const std::string& what)
        : std::runtime_error(what), flag(std::move(f)) {}
};
struct not_orthogonal_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct HomCheck {
    bool ok = false;
    bool surjective = false;
    bool idempotent_surjective = false;
};

HomCheck hom_check(const RingHom& h);

// Kernel of the homomorphism as a sublattice of the source (refined).
lat::Mat hom_kernel(const RingHom& h);

// Deterministic preimage: particular solution reduced to the canonical coset
// representative modulo the kernel lattice.
std::optional<Elem> hom_preimage(const RingHom& h, const Elem& target_value);

// Largest idempotent e of a weakly Baer ring with a ^ (e*b) = 0 (checked
// maximal over the finite idempotent lattice).
Elem max_orthogonal_idempotent(const CongruenceRing& r, const Elem& a, const Elem& b);

struct LiftStep {
    Elem preimage;            // the chosen u
    std::vector<Elem> meets;  // c_i = r_i ^ u
    std::vector<Elem> idems;  // e_i, largest with r_i ^ e_i*u = 0
    Elem epsilon;
    Elem lifted;
};

struct LiftReport {
    std::vector<Elem> lifted;
    std::vector<LiftStep> steps;
    bool source_wb = false;
    bool surjective = false;
    bool idempotent_surjective = false;
};

// Lifts a pairwise rr-orthogonal family along h.  preimage_hints, when
// given, supplies the arbitrary liftings u (useful for adversarial cases);
// entries may be null to fall back to the deterministic choice.
LiftReport lift_orthogonal(const RingHom& h, const std::vector<Elem>& targets,
                           const std::vector<std::optional<Elem>>& preimage_hints = {});

struct MeetViolation {
    Elem a, b;
    Elem meet_mapped;   // phi(a ^ b)
    Elem meet_of_images;
};

struct MeetPreservationReport {
    bool kernel_idempotent_generated = false;
    long long pairs_checked = 0;
    std::vector<MeetViolation> violations;  // capped
};

MeetPreservationReport hom_preserves_meets_check(const RingHom& h, long long bound,
                                                 size_t violation_cap = 100000);

}  // namespace rro::lift
