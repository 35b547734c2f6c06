#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "pmrc/audit.hpp"
#include "pmrc/code.hpp"

namespace pmrc::cluster {

// Adversary strategies for compromised participants.
enum class AdversaryStrategy { uniform_random, flip_one };

struct Event {
    enum class Kind { fail, repair, reconstruct, compromise, tap_storage, tap_repair };
    Kind kind;
    int node = 0;              // fail / repair target / compromise / taps
    std::vector<int> helpers;  // repair
    std::vector<int> readers;  // reconstruct
    int p = 0;                 // repair / reconstruct
};

struct EventOutcome {
    std::string description;
    bool ok = true;
    std::string error; // error kind when not ok (RepairFailed etc.)
};

// Deterministic single-process cluster: nodes hold shares, events inject
// failures, adversarial corruption, and eavesdropper taps. Compromised
// locations are tracked for the adversary model but never consulted by the
// decoding paths.
class ClusterState {
public:
    ClusterState(std::shared_ptr<const RegeneratingCode> code, std::span<const uint32_t> message,
                 uint64_t seed, AdversaryStrategy strategy = AdversaryStrategy::uniform_random);

    const RegeneratingCode& code() const { return *code_; }
    uint64_t seed() const { return seed_; }

    bool is_live(int node) const { return nodes_.at(node).has_value(); }
    const Share& share(int node) const;
    const std::vector<uint32_t>& message() const { return message_; }
    const std::set<int>& compromised() const { return compromised_; }
    const audit::EavesdropperView& taps() const { return taps_; }
    const FeVec& captured() const { return captured_; }
    const std::vector<EventOutcome>& event_log() const { return log_; }

    // True iff every live share equals the encoder's original.
    bool shares_match_encoder() const;

    // Applies one event; invalid events are logged as rejected, not thrown.
    EventOutcome apply(const Event& ev);

private:
    EventOutcome apply_checked(const Event& ev);
    FeVec emitted_symbols(int helper, int failed);
    Share read_share(int node);

    std::shared_ptr<const RegeneratingCode> code_;
    std::vector<uint32_t> message_;
    std::vector<Share> original_;
    std::map<int, std::optional<Share>> nodes_;
    std::set<int> compromised_;
    audit::EavesdropperView taps_;
    FeVec captured_;
    std::vector<EventOutcome> log_;
    uint64_t seed_;
    RandomSource rng_;
    AdversaryStrategy strategy_;
};

struct RunReport {
    long events_applied = 0;
    long repairs_ok = 0, repairs_failed = 0;
    long reconstructs_exact = 0, reconstructs_mismatched = 0, reconstructs_failed = 0;
    long taps = 0;
    bool shares_match_encoder = true;
    std::vector<EventOutcome> log;
};

RunReport run_script(ClusterState& state, const std::vector<Event>& events);

} // namespace pmrc::cluster
