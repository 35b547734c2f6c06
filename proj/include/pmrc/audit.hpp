#pragma once

#include <optional>
#include <string>
#include <utility>

#include "pmrc/code.hpp"

namespace pmrc::audit {

// What a passive eavesdropper sees: the stored data of `storage_nodes`, and
// for `repair_nodes` additionally every symbol ever passed to them for
// repair. Exact repair makes a helper's symbol a function of (helper
// content, failed id) only, so capturing the symbol of every possible helper
// dominates any bounded-depth failure history.
struct EavesdropperView {
    std::vector<int> storage_nodes; // 1-based, stored data only
    std::vector<int> repair_nodes;  // 1-based, stored data + repair downloads

    void validate(int n) const;
};

// The captured symbols for one concrete (message, randomness) assignment,
// in a deterministic order (storage nodes ascending, then repair nodes
// ascending with helper symbols by ascending helper id).
FeVec capture_view(const RegeneratingCode& code, const EavesdropperView& view,
                   std::span<const uint32_t> message, std::span<const uint32_t> randomness);

struct LeakageReport {
    bool secure = false;
    long combinations = 0; // (message, randomness) pairs enumerated
    // two messages whose view distributions differ, when leaky
    std::optional<std::pair<FeVec, FeVec>> witness;
};

// Exhaustive mutual-information test: enumerates every (message, randomness)
// pair and compares the conditional view distributions across messages.
// Secure iff they are all identical (I(U;E) = 0). Throws BudgetExceeded when
// q^(B* + R) exceeds the budget.
LeakageReport leakage_oracle(const RegeneratingCode& code, const EavesdropperView& view,
                             long budget = 8'000'000);

enum class Recoverability { determined, underdetermined };

// Appendix step 1 (H(R | E, U) = 0): subtract the message contribution from
// the view and solve for the random symbols; determined iff unique.
Recoverability randomness_recoverability(const RegeneratingCode& code,
                                         const EavesdropperView& view,
                                         std::span<const uint32_t> message);

struct RankReport {
    int rank = 0;   // rank of the (message, randomness) -> view map
    int R = 0;
    bool pass = false; // rank <= R  (appendix step 2, H(E) <= R)
};

RankReport entropy_rank_check(const RegeneratingCode& code, const EavesdropperView& view);

struct IndependenceReport {
    bool holds = true;
    std::string witness; // human-readable description when violated
};

// Checks that every helper's passed symbol is invariant across helper-set
// contexts, for every (failed, helper) pair.
IndependenceReport helper_independence(const RegeneratingCode& code, uint64_t seed = 1);

struct FuzzReport {
    long repair_trials = 0, repair_failures = 0;
    long recon_trials = 0, recon_failures = 0;
    long detect_trials = 0, detect_failures = 0;
    bool exhaustive = false;

    long failures() const { return repair_failures + recon_failures + detect_failures; }
};

// Randomized (or exhaustive, when the single-symbol pattern space fits the
// trial budget) corruption sweep over the repair, reconstruction, and
// detection paths for every feasible p <= p_max.
FuzzReport adversary_fuzz(const RegeneratingCode& code, int p_max, long trials, uint64_t seed);

} // namespace pmrc::audit
