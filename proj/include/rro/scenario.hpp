#pragma once

// Scenario runner: JSON descriptors in, deterministic JSON reports out.
// Built-in scenarios reproduce the named examples end to end.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rro/plring.hpp"
#include "rro/zkring.hpp"

namespace rro::scen {

using Json = nlohmann::json;

// splitmix64: platform-independent deterministic randomness for sweeps.
struct RandomSource {
    uint64_t state = 0x9e3779b97f4a7c15ull;
    explicit RandomSource(uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ull) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    uint64_t uniform(uint64_t n) { return n == 0 ? 0 : next() % n; }
    long long range(long long lo, long long hi) {  // inclusive
        return lo + static_cast<long long>(uniform(static_cast<uint64_t>(hi - lo + 1)));
    }
};

// Random pairwise-congruence ring.  With min_minimal_primes set, rings whose
// minimal spectrum is smaller are rerolled (with three or fewer minimal
// primes the ring is rr-good outright, which some sweeps must avoid).
zk::CongruenceRing random_congruence_ring(RandomSource& rng, int width,
                                          const std::vector<long long>& moduli_pool,
                                          int max_constraints, int min_minimal_primes = 0);

// --- JSON conversions --------------------------------------------------------

Json ring_to_json(const zk::CongruenceRing& r);
zk::CongruenceRing ring_from_json(const Json& j);
Json elem_to_json(const zk::CongruenceRing::Elem& e);
zk::CongruenceRing::Elem elem_from_json(const Json& j);

Json rational_to_json(const pl::Rational& q);
pl::Rational rational_from_json(const Json& j);
Json plfunc_to_json(const pl::PwPolyFunc& f);
pl::PwPolyFunc plfunc_from_json(const Json& j);

// --- scenarios ----------------------------------------------------------------

struct RunOptions {
    std::optional<long long> bound;
    std::optional<int> degree;
    std::optional<int> coeff_degree;
    std::optional<uint64_t> seed;
    bool timing = false;
    std::string format = "json";  // or "text"
};

struct RunOutcome {
    int exit_code = 0;  // 0 ok, 1 expectation failure, 2 parse error, 3 cap exceeded
    Json report;
    std::string dot;  // last DOT emission, if any
};

RunOutcome run_scenario(const Json& scenario, const RunOptions& opts);
RunOutcome run_scenario_text(const std::string& text, const RunOptions& opts);

std::vector<std::string> list_scenarios();
const std::string& builtin_scenario(const std::string& name);

std::string render_text_report(const Json& report);
std::string dot_idempotent_lattice(const zk::CongruenceRing& r);

}  // namespace rro::scen
