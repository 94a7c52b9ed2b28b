#include "ltdps/mpps.hpp"

#include <algorithm>

namespace ltdps {

int buffer_units_for(TrafficClass tc) {
    switch (tc) {
        case TrafficClass::Data: return 1;
        case TrafficClass::Voice: return 4;
        case TrafficClass::Video: return 8;
    }
    return 1;
}

const char* to_string(DirectiveKind kind) {
    switch (kind) {
        case DirectiveKind::None: return "None";
        case DirectiveKind::ReserveStage1: return "ReserveStage1";
        case DirectiveKind::ReserveStage2: return "ReserveStage2";
        case DirectiveKind::Handoff: return "Handoff";
    }
    return "?";
}

Bytes encode_report_payload(const RssiReport& report) {
    Bytes out;
    out.reserve(3 + 2 * report.neighbors.size());
    out.push_back(static_cast<std::uint8_t>(report.current_ap));
    out.push_back(static_cast<std::uint8_t>(report.current_rssi));
    out.push_back(static_cast<std::uint8_t>(report.neighbors.size()));
    for (const Reading& r : report.neighbors) {
        out.push_back(static_cast<std::uint8_t>(r.ap));
        out.push_back(static_cast<std::uint8_t>(r.rssi));
    }
    return out;
}

std::optional<RssiReport> decode_report_payload(std::span<const std::uint8_t> payload,
                                                std::uint16_t mn_id, long tick) {
    if (payload.size() < 3) return std::nullopt;
    RssiReport report;
    report.mn_id = mn_id;
    report.tick = tick;
    report.current_ap = payload[0];
    report.current_rssi = payload[1];
    const std::size_t n = payload[2];
    if (n > 4 || payload.size() != 3 + 2 * n) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
        report.neighbors.push_back({payload[3 + 2 * i], payload[4 + 2 * i]});
    }
    return report;
}

void ReservationLedger::reserve(int mn_id, ApId ap, int stage, TrafficClass tc,
                                long tick) {
    if (stage != 1 && stage != 2) {
        throw ProtocolError("reservation stage must be 1 or 2");
    }
    auto it = entries_.find({ap, mn_id});
    if (stage == 2) {
        if (it == entries_.end() || it->second.stage < 1) {
            throw ProtocolError("stage-2 reservation without stage-1");
        }
        it->second.stage = 2;
        it->second.traffic_class = tc;
        it->second.units = buffer_units_for(tc);
        it->second.tick = tick;
        return;
    }
    entries_[{ap, mn_id}] = Reservation{1, tc, buffer_units_for(tc), tick};
}

std::optional<Reservation> ReservationLedger::find(int mn_id, ApId ap) const {
    const auto it = entries_.find({ap, mn_id});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ReservationLedger::release(int mn_id, ApId ap) {
    entries_.erase({ap, mn_id});
}

void ReservationLedger::release_all(int mn_id) {
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (it->first.second == mn_id) {
            it = entries_.erase(it);
        } else {
            ++it;
        }
    }
}

int ReservationLedger::total_units() const {
    int sum = 0;
    for (const auto& [key, r] : entries_) sum += r.units;
    return sum;
}

int ReservationLedger::active_count() const {
    return static_cast<int>(entries_.size());
}

int ReservationLedger::expire(long now, int timeout) {
    int dropped = 0;
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (now - it->second.tick > timeout) {
            it = entries_.erase(it);
            ++dropped;
        } else {
            ++it;
        }
    }
    return dropped;
}

PredictionServer::PredictionServer(GridTopology grid, ServerConfig cfg)
    : grid_(std::move(grid)), cfg_(std::move(cfg)) {}

void PredictionServer::log(const std::string& message) {
    events_.push_back(message);
}

Directive PredictionServer::make_directive(DirectiveKind kind,
                                           const NodeState& node,
                                           long tick) const {
    Directive d;
    d.kind = kind;
    d.mn_id = node.track.mn_id;
    d.target_ap = node.target.value_or(-1);
    d.traffic_class = node.traffic_class;
    d.buffer_units = buffer_units_for(node.traffic_class);
    d.tick = tick;
    return d;
}

void PredictionServer::select_target(NodeState& node, ApId target,
                                     const std::string& method, long tick) {
    if (node.target && *node.target != target) {
        ledger_.release(node.track.mn_id, *node.target);
        node.stage = 0;
        node.handoff_issued = false;
    }
    (void)tick;
    node.target = target;
    node.method = method;
}

void PredictionServer::push_reservation_chain(NodeState& node,
                                              const RssiSample& sample,
                                              bool force_handoff, long tick,
                                              std::vector<Directive>& out) {
    if (!node.target) return;
    const ApId target = *node.target;
    const int target_rssi = sample.reading_for(target).value_or(0);

    if (node.stage == 0) {
        ledger_.reserve(node.track.mn_id, target, 1, node.traffic_class, tick);
        out.push_back(make_directive(DirectiveKind::ReserveStage1, node, tick));
        node.stage = 1;
    }
    const bool stage2_due = target_rssi >= cfg_.rssi.region_threshold;
    const bool handoff_due =
        force_handoff ||
        (!node.handoff_issued && should_handoff(node.track, sample, target, cfg_.rssi));
    if (node.stage == 1 && (stage2_due || handoff_due)) {
        ledger_.reserve(node.track.mn_id, target, 2, node.traffic_class, tick);
        out.push_back(make_directive(DirectiveKind::ReserveStage2, node, tick));
        node.stage = 2;
    }
    if (node.stage == 2 && handoff_due && !node.handoff_issued) {
        out.push_back(make_directive(DirectiveKind::Handoff, node, tick));
        ledger_.release(node.track.mn_id, target);
        node.handoff_issued = true;
    }
}

std::vector<Directive> PredictionServer::handle_report(const RssiReport& report) {
    std::vector<Directive> out;

    RssiSample sample;
    sample.tick = report.tick;
    sample.readings = report.neighbors;
    std::stable_sort(sample.readings.begin(), sample.readings.end(),
                     [](const Reading& a, const Reading& b) {
                         if (a.rssi != b.rssi) return a.rssi > b.rssi;
                         return a.ap < b.ap;
                     });
    if (sample.readings.size() > 4) sample.readings.resize(4);

    const int expired = ledger_.expire(report.tick, cfg_.reservation_timeout);
    if (expired > 0) {
        log("released " + std::to_string(expired) + " expired reservations at tick " +
            std::to_string(report.tick));
    }

    auto located = locate_region(sample, grid_, cfg_.rssi);

    const auto it = nodes_.find(report.mn_id);
    if (it == nodes_.end()) {
        if (!located) {
            log("mn " + std::to_string(report.mn_id) + ": unidentifiable region");
            NodeState ghost;
            ghost.track.mn_id = report.mn_id;
            out.push_back(make_directive(DirectiveKind::None, ghost, report.tick));
            return out;
        }
        NodeState node;
        node.track.mn_id = report.mn_id;
        node.track.current_ap = located->ap;
        node.track.current_region = located->region;
        node.track.last_sample = sample;
        node.visits.push_back({located->ap, located->region});
        nodes_.emplace(report.mn_id, std::move(node));
        return out;
    }

    NodeState& node = it->second;
    const Motion motion = detect_motion(node.track.last_sample, sample, cfg_.rssi);
    node.track.motion = motion;
    if (motion == Motion::Stationary) {
        ++node.track.sample_streak;
    } else {
        node.track.sample_streak = 0;
    }

    if (!located) {
        log("mn " + std::to_string(report.mn_id) + ": unidentifiable region");
        out.push_back(make_directive(DirectiveKind::None, node, report.tick));
        node.track.last_sample = sample;
        return out;
    }

    // Losing the current AP entirely is the node-side backup trigger: after
    // enough weak ticks the handoff goes to the strongest adjacent reading.
    const int current_rssi = sample.reading_for(node.track.current_ap).value_or(0);
    if (current_rssi < cfg_.rssi.delta_e) {
        ++node.weak_ticks;
    } else {
        node.weak_ticks = 0;
    }

    if (located->region != node.track.current_region) {
        // The node actually crossed into a new region; close out the move.
        const ApId arrived = located->ap;
        if (grid_.aps_adjacent(node.track.current_ap, arrived) ||
            arrived == node.track.current_ap) {
            if (arrived != node.track.current_ap) {
                if (!node.handoff_issued) {
                    select_target(node, arrived, node.method.empty() ? "tracking"
                                                                     : node.method,
                                  report.tick);
                    push_reservation_chain(node, sample, true, report.tick, out);
                }
                // Only an association change is a path step; crossing a cell
                // boundary while staying on the same AP just moves the region.
                node.visits.push_back({arrived, located->region});
            }
            node.track.current_ap = arrived;
            node.track.current_region = located->region;
        } else {
            log("mn " + std::to_string(report.mn_id) +
                ": discontinuous movement, tracking restarted");
            if (node.target) ledger_.release(node.track.mn_id, *node.target);
            node.visits.clear();
            node.visits.push_back({arrived, located->region});
            node.track.current_ap = arrived;
            node.track.current_region = located->region;
        }
        node.target.reset();
        node.stage = 0;
        node.handoff_issued = false;
        node.weak_ticks = 0;
    } else {
        // Same region. A decisively stronger AP within it re-associates the
        // node without any server directive. A tie between the two strongest
        // readings is ambiguous and stays with the miner instead.
        const bool top_two_tied =
            sample.readings.size() >= 2 &&
            similar(sample.readings[0].rssi, sample.readings[1].rssi, cfg_.rssi);
        if (located->ap != node.track.current_ap && !top_two_tied &&
            sample.reading_for(located->ap).value_or(0) >
                current_rssi + cfg_.rssi.delta_e &&
            grid_.aps_adjacent(located->ap, node.track.current_ap)) {
            node.visits.push_back({located->ap, located->region});
            node.track.current_ap = located->ap;
        }

        if (node.weak_ticks >= cfg_.weak_ticks_for_backup) {
            // Backup path: the node is losing its AP, hand off to the
            // strongest adjacent reading right away.
            for (const Reading& r : sample.readings) {
                if (r.ap != node.track.current_ap &&
                    grid_.aps_adjacent(r.ap, node.track.current_ap)) {
                    select_target(node, r.ap, "backup", report.tick);
                    push_reservation_chain(node, sample, true, report.tick, out);
                    break;
                }
            }
            node.weak_ticks = 0;
        } else if (motion == Motion::Moving) {
            const DirectionReading reading = infer_direction(sample, cfg_.rssi);
            const auto next_region = predict_region(node.track, reading, grid_);
            std::optional<ApId> target;
            std::string method;
            if (next_region) {
                const auto candidates =
                    grid_.candidate_next_aps(node.track.current_ap, *next_region);
                if (candidates.empty()) {
                    log("mn " + std::to_string(report.mn_id) +
                        ": empty candidate set for region " +
                        std::to_string(*next_region));
                } else if (candidates.size() == 1) {
                    target = candidates.front();
                    method = "tracking";
                } else {
                    const auto prediction =
                        predict_next_ap(db_, node.track.current_ap, candidates,
                                        cfg_.scoring);
                    target = prediction->ap;
                    method = "mining";
                }
            } else {
                // Indecisive readings: mine over the APs of the current
                // region the node could re-attach to.
                std::vector<ApId> candidates;
                for (ApId ap : grid_.region_aps(node.track.current_region)) {
                    if (ap != node.track.current_ap &&
                        grid_.aps_adjacent(ap, node.track.current_ap)) {
                        candidates.push_back(ap);
                    }
                }
                const auto prediction = predict_next_ap(
                    db_, node.track.current_ap, candidates, cfg_.scoring);
                if (prediction) {
                    target = prediction->ap;
                    method = "mining";
                } else {
                    log("mn " + std::to_string(report.mn_id) +
                        ": no prediction candidates");
                }
            }
            if (target) {
                select_target(node, *target, method, report.tick);
                push_reservation_chain(node, sample, false, report.tick, out);
            }
        }
    }

    node.track.last_sample = sample;
    return out;
}

std::vector<Directive> PredictionServer::handle_packet(
    std::span<const std::uint8_t> bytes, const BlockCipher& cipher,
    NonceState& nonces, long tick) {
    const auto packet = decode_packet(bytes, cipher.block_size());
    std::vector<Directive> out;
    const VerifyOutcome outcome =
        packet ? verify(*packet, cipher, nonces) : VerifyOutcome::Tampered;
    if (outcome != VerifyOutcome::Accepted) {
        log(std::string("packet rejected: ") + to_string(outcome));
        out.push_back(Directive{DirectiveKind::None, packet ? packet->mn_id : 0, -1,
                                TrafficClass::Data, 0, tick});
        return out;
    }
    if (packet->msg_type != static_cast<std::uint8_t>(MsgType::Report)) {
        log("packet rejected: not a report");
        out.push_back(Directive{DirectiveKind::None, packet->mn_id, -1,
                                TrafficClass::Data, 0, tick});
        return out;
    }
    const auto report = decode_report_payload(packet->payload, packet->mn_id, tick);
    if (!report) {
        log("packet rejected: malformed report payload");
        out.push_back(Directive{DirectiveKind::None, packet->mn_id, -1,
                                TrafficClass::Data, 0, tick});
        return out;
    }
    return handle_report(*report);
}

std::optional<MobilePath> PredictionServer::commit_path(int mn_id) {
    const auto it = nodes_.find(mn_id);
    if (it == nodes_.end()) {
        log("mn " + std::to_string(mn_id) + ": unknown node, nothing to commit");
        return std::nullopt;
    }
    NodeState& node = it->second;
    if (node.visits.size() < 2) {
        log("mn " + std::to_string(mn_id) + ": path too short, discarded");
        return std::nullopt;
    }
    MobilePath path{node.visits};
    if (!db_.record_path(path, grid_)) {
        log("mn " + std::to_string(mn_id) + ": invalid path, not recorded");
        node.visits.clear();
        node.visits.push_back({node.track.current_ap, node.track.current_region});
        return std::nullopt;
    }
    if (history_file_) {
        append_path_history(*history_file_, path);
    }
    node.visits.clear();
    node.visits.push_back({node.track.current_ap, node.track.current_region});
    return path;
}

void PredictionServer::set_traffic_class(int mn_id, TrafficClass tc) {
    nodes_[mn_id].traffic_class = tc;
    nodes_[mn_id].track.mn_id = mn_id;
}

void PredictionServer::set_history_file(std::string filename) {
    history_file_ = std::move(filename);
}

std::string PredictionServer::prediction_method(int mn_id) const {
    const auto it = nodes_.find(mn_id);
    return it == nodes_.end() ? "" : it->second.method;
}

}  // namespace ltdps
