#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ltdps/grid.hpp"
#include "ltdps/miner.hpp"
#include "ltdps/path.hpp"
#include "ltdps/rssi.hpp"
#include "ltdps/security.hpp"
#include "ltdps/tracker.hpp"

namespace ltdps {

enum class TrafficClass { Data, Voice, Video };

/// Buffer units needed per class: data 1, voice 4, video 8.
int buffer_units_for(TrafficClass tc);

enum class DirectiveKind { None, ReserveStage1, ReserveStage2, Handoff };

const char* to_string(DirectiveKind kind);

struct Directive {
    DirectiveKind kind = DirectiveKind::None;
    int mn_id = 0;
    ApId target_ap = -1;
    TrafficClass traffic_class = TrafficClass::Data;
    int buffer_units = 0;
    long tick = 0;
};

/// One node's periodic report: current attachment plus up to four
/// neighboring AP readings.
struct RssiReport {
    int mn_id = 0;
    ApId current_ap = 0;
    int current_rssi = 0;
    std::vector<Reading> neighbors;
    long tick = 0;
};

/// Report <-> packet payload, byte exact:
///   [current_ap:1][current_rssi:1][n:1][(ap:1, rssi:1) x n]
Bytes encode_report_payload(const RssiReport& report);
std::optional<RssiReport> decode_report_payload(std::span<const std::uint8_t> payload,
                                                std::uint16_t mn_id, long tick);

struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Reservation {
    int stage = 0;  // 1 or 2
    TrafficClass traffic_class = TrafficClass::Data;
    int units = 0;
    long tick = 0;  // when the current stage was entered
};

/// Per-AP bookkeeping of reserved buffer units. At most one active
/// reservation per (node, AP); stage 2 is only legal on top of stage 1.
class ReservationLedger {
public:
    void reserve(int mn_id, ApId ap, int stage, TrafficClass tc, long tick);
    std::optional<Reservation> find(int mn_id, ApId ap) const;
    void release(int mn_id, ApId ap);
    void release_all(int mn_id);

    int total_units() const;
    int active_count() const;

    /// Releases reservations whose last stage change is older than
    /// now - timeout; returns how many were dropped.
    int expire(long now, int timeout);

private:
    std::map<std::pair<ApId, int>, Reservation> entries_;  // (ap, mn) -> r
};

struct ServerConfig {
    RssiConfig rssi;
    ScoringConfig scoring;
    int stationary_streak = 3;   // reports before a node counts as settled
    int reservation_timeout = 5; // ticks a reservation survives without handoff
    int weak_ticks_for_backup = 2;
};

/// The prediction server: consumes reports, tracks each node, predicts the
/// next AP (tracking first, mining when the candidate set is ambiguous),
/// and emits reservation and handoff directives. Reports are processed in
/// tick order by a single logical loop; per-node state is independent.
class PredictionServer {
public:
    PredictionServer(GridTopology grid, ServerConfig cfg);

    std::vector<Directive> handle_report(const RssiReport& report);

    /// Wire entry point: verify, decode and process a sealed report packet.
    /// Rejected packets produce a None directive and a log entry.
    std::vector<Directive> handle_packet(std::span<const std::uint8_t> bytes,
                                         const BlockCipher& cipher,
                                         NonceState& nonces, long tick);

    /// Stores the node's recorded visits as a path: appended to the history
    /// file (when set) and counted into the pattern database. Paths shorter
    /// than two visits are discarded. The visit buffer restarts from the
    /// node's current attachment.
    std::optional<MobilePath> commit_path(int mn_id);

    void set_traffic_class(int mn_id, TrafficClass tc);
    void set_history_file(std::string filename);

    PatternDatabase& database() { return db_; }
    const PatternDatabase& database() const { return db_; }
    const ReservationLedger& ledger() const { return ledger_; }
    const GridTopology& grid() const { return grid_; }
    const std::vector<std::string>& event_log() const { return events_; }

    /// Last prediction method used for a node: "tracking", "mining" or "".
    std::string prediction_method(int mn_id) const;

private:
    struct NodeState {
        TrackState track;
        std::vector<PathStep> visits;
        std::optional<ApId> target;
        int stage = 0;  // 0 none, 1, 2
        std::string method;
        bool handoff_issued = false;
        int weak_ticks = 0;
        TrafficClass traffic_class = TrafficClass::Data;
    };

    void select_target(NodeState& node, ApId target, const std::string& method,
                       long tick);
    void push_reservation_chain(NodeState& node, const RssiSample& sample,
                                bool force_handoff, long tick,
                                std::vector<Directive>& out);
    Directive make_directive(DirectiveKind kind, const NodeState& node,
                             long tick) const;
    void log(const std::string& message);

    GridTopology grid_;
    ServerConfig cfg_;
    PatternDatabase db_;
    ReservationLedger ledger_;
    std::map<int, NodeState> nodes_;
    std::optional<std::string> history_file_;
    std::vector<std::string> events_;
};

}  // namespace ltdps
