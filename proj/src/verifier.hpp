// Executable checks of the identities and region classifications.
#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "cf.hpp"
#include "regions.hpp"
#include "rng.hpp"

namespace cf {

using json = nlohmann::ordered_json;

struct CheckReport {
    std::string name;
    uint64_t samples = 0;
    uint64_t failure_count = 0;
    std::vector<json> failures;  // first few, replayable
    double elapsed = 0;          // seconds; kept out of the JSON unless asked for
    json details = json::object();

    static constexpr size_t kKeptFailures = 20;

    bool pass() const { return failure_count == 0; }
    void fail(json input);
    // adds counts and failures of a sub-check and records its summary under details["subchecks"]
    void absorb(const CheckReport& sub);
    json to_json(bool timing = false) const;
};

struct VerifyConfig {
    uint64_t samples = 10000;  // per claim for frs; scaled for the other checks
    unsigned depth = 20;       // dual-orbit depth
    unsigned mono_depth = 50;  // monotonicity depth
    uint64_t seed = 42;
    unsigned grid = 0;  // coverage grid; 0 picks from samples
};

CheckReport verify_inversions(const VerifyConfig& cfg);
CheckReport verify_frs(const VerifyConfig& cfg);
CheckReport verify_dual_inclusions(const VerifyConfig& cfg);
CheckReport verify_dual_orbit(const VerifyConfig& cfg);
CheckReport verify_monotonicity(const VerifyConfig& cfg);
CheckReport verify_special(const VerifyConfig& cfg);

// Two-sided check of T^n(prefix & <digits>) = target plus grid coverage; prefix_k = 0 means all of U.
CheckReport check_image_claim(int prefix_k, const std::vector<EisensteinInt>& digits, const Region& target,
                              uint64_t samples, uint64_t seed, unsigned grid = 8);

const std::vector<std::string>& check_names();  // inversions, frs, dual, orbit, monotonic, special
CheckReport run_check(const std::string& which, const VerifyConfig& cfg);
std::vector<CheckReport> run_checks(const std::string& which, const VerifyConfig& cfg);  // "all" expands

// ---- exact sampling helpers ----

// Uniform dyadic point in the box with 2^bits steps per axis.
FieldElement sample_box(Stream& s, const Region::Box& b, unsigned bits = 16);
const Region::Box& hexagon_box();
// Rejection sampling; throws Error(Internal) if max_tries is exhausted.
FieldElement sample_region(Stream& s, const Region& r, const Region::Box& b, unsigned bits = 16,
                           size_t max_tries = 1000000);
// Point of the open hexagon with 2^bits steps per axis (large bits give long orbits).
FieldElement sample_U(Stream& s, unsigned bits);

// A rational point on |z - c|^2 = r_sq, found by a small search.
std::optional<FieldElement> rational_point_on_circle(const FieldElement& c, const mpq_class& r_sq);
// Further rational points through the chord of random rational slope from a base point.
FieldElement circle_point(const FieldElement& c, const FieldElement& base, const mpq_class& slope);
std::vector<FieldElement> points_on_primitive(const Primitive& p, size_t count, Stream& s, unsigned bits = 16);

// Random exact point on L_j (open segment or arc inside the open hexagon).
FieldElement sample_L(int j, Stream& s, unsigned bits);

// z whose orbit reaches the special point after `depth` random admissible inverse branches;
// the last pre-special point has modulus < 1.
struct SpecialPreimage {
    FieldElement z;
    std::vector<EisensteinInt> digits;  // digits before reaching the special point
};
std::optional<SpecialPreimage> special_preimage(SpecialPoint p, unsigned depth, Stream& s);

}  // namespace cf
