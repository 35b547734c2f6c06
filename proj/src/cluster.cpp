#include "pmrc/cluster.hpp"

#include <algorithm>

namespace pmrc::cluster {

ClusterState::ClusterState(std::shared_ptr<const RegeneratingCode> code,
                           std::span<const uint32_t> message, uint64_t seed,
                           AdversaryStrategy strategy)
    : code_(std::move(code)), message_(message.begin(), message.end()), seed_(seed),
      rng_(code_->field(), seed), strategy_(strategy) {
    original_ = code_->encode(message, rng_);
    for (const auto& s : original_) nodes_[s.node] = s;
}

const Share& ClusterState::share(int node) const {
    const auto& slot = nodes_.at(node);
    if (!slot) throw InvalidParams("node " + std::to_string(node) + " is failed");
    return *slot;
}

bool ClusterState::shares_match_encoder() const {
    for (const auto& [node, slot] : nodes_) {
        if (slot && !(*slot == original_[static_cast<size_t>(node - 1)])) return false;
    }
    return true;
}

FeVec ClusterState::emitted_symbols(int helper, int failed) {
    FeVec sym = code_->helper_symbol(share(helper), failed);
    if (compromised_.count(helper)) {
        // A captured node passes arbitrary data; both strategies guarantee
        // the passed symbols differ from the honest ones.
        const uint32_t q = code_->field().modulus();
        if (strategy_ == AdversaryStrategy::flip_one) {
            sym[0] = code_->field().add(sym[0], 1);
        } else {
            for (auto& v : sym) v = code_->field().add(v, 1 + static_cast<uint32_t>(rng_.draw_u64() % (q - 1)));
        }
    }
    return sym;
}

Share ClusterState::read_share(int node) {
    Share s = share(node);
    if (compromised_.count(node)) {
        const uint32_t q = code_->field().modulus();
        if (strategy_ == AdversaryStrategy::flip_one) {
            s.stripes[0][0] = code_->field().add(s.stripes[0][0], 1);
        } else {
            for (auto& stripe : s.stripes)
                for (auto& v : stripe)
                    v = code_->field().add(v, 1 + static_cast<uint32_t>(rng_.draw_u64() % (q - 1)));
        }
    }
    return s;
}

EventOutcome ClusterState::apply(const Event& ev) {
    EventOutcome out;
    try {
        out = apply_checked(ev);
    } catch (const Error& e) {
        // Invalid events are recorded and skipped so scripted runs replay
        // deterministically end to end.
        out.ok = false;
        out.error = e.kind();
        out.description = "event rejected: " + std::string(e.what());
    }
    log_.push_back(out);
    return out;
}

EventOutcome ClusterState::apply_checked(const Event& ev) {
    EventOutcome out;
    switch (ev.kind) {
    case Event::Kind::fail: {
        if (!nodes_.count(ev.node)) throw InvalidParams("fail: unknown node");
        nodes_[ev.node].reset();
        out.description = "fail node " + std::to_string(ev.node);
        break;
    }
    case Event::Kind::repair: {
        if (!nodes_.count(ev.node)) throw InvalidParams("repair: unknown node");
        if (nodes_[ev.node]) throw InvalidParams("repair target is not failed");
        out.description = "repair node " + std::to_string(ev.node) + " (p=" +
                          std::to_string(ev.p) + ")";
        std::vector<HelperSymbols> hs;
        bool tapped = std::find(taps_.repair_nodes.begin(), taps_.repair_nodes.end(), ev.node) !=
                      taps_.repair_nodes.end();
        try {
            for (int h : ev.helpers) hs.push_back({h, emitted_symbols(h, ev.node)});
            if (tapped) {
                for (const auto& h : hs)
                    captured_.insert(captured_.end(), h.symbols.begin(), h.symbols.end());
            }
            const Share repaired = code_->repair(ev.node, hs, ev.p);
            nodes_[ev.node] = repaired;
        } catch (const Error& e) {
            // Corruption beyond p: surfaced in the log, not fatal.
            out.ok = false;
            out.error = e.kind();
            out.description += " -> RepairFailed(" + e.kind() + ")";
        }
        break;
    }
    case Event::Kind::reconstruct: {
        out.description = "reconstruct from " + std::to_string(ev.readers.size()) +
                          " nodes (p=" + std::to_string(ev.p) + ")";
        try {
            std::vector<Share> sh;
            for (int r : ev.readers) sh.push_back(read_share(r));
            const auto got = code_->reconstruct(sh, ev.p);
            if (got != message_) {
                out.ok = false;
                out.error = "mismatch";
                out.description += " -> mismatch";
            }
        } catch (const Error& e) {
            out.ok = false;
            out.error = e.kind();
            out.description += " -> ReconstructFailed(" + e.kind() + ")";
        }
        break;
    }
    case Event::Kind::compromise: {
        if (!nodes_.count(ev.node)) throw InvalidParams("compromise: unknown node");
        compromised_.insert(ev.node);
        out.description = "compromise node " + std::to_string(ev.node);
        break;
    }
    case Event::Kind::tap_storage: {
        taps_.storage_nodes.push_back(ev.node);
        taps_.validate(code_->n());
        const Share& s = share(ev.node);
        for (const auto& stripe : s.stripes)
            captured_.insert(captured_.end(), stripe.begin(), stripe.end());
        out.description = "tap storage of node " + std::to_string(ev.node);
        break;
    }
    case Event::Kind::tap_repair: {
        taps_.repair_nodes.push_back(ev.node);
        taps_.validate(code_->n());
        out.description = "tap repairs of node " + std::to_string(ev.node);
        break;
    }
    }
    return out;
}

RunReport run_script(ClusterState& state, const std::vector<Event>& events) {
    RunReport rep;
    for (const auto& ev : events) {
        const EventOutcome out = state.apply(ev);
        ++rep.events_applied;
        switch (ev.kind) {
        case Event::Kind::repair:
            out.ok ? ++rep.repairs_ok : ++rep.repairs_failed;
            break;
        case Event::Kind::reconstruct:
            if (out.ok)
                ++rep.reconstructs_exact;
            else if (out.error == "mismatch")
                ++rep.reconstructs_mismatched;
            else
                ++rep.reconstructs_failed;
            break;
        case Event::Kind::tap_storage:
        case Event::Kind::tap_repair:
            ++rep.taps;
            break;
        default:
            break;
        }
    }
    rep.shares_match_encoder = state.shares_match_encoder();
    rep.log = state.event_log();
    return rep;
}

} // namespace pmrc::cluster
