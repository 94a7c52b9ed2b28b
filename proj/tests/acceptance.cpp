// Acceptance suite: one check per release criterion, one verdict line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ltdps/baselines.hpp"
#include "ltdps/eval.hpp"
#include "ltdps/grid.hpp"
#include "ltdps/miner.hpp"
#include "ltdps/mobility.hpp"
#include "ltdps/security.hpp"

using namespace ltdps;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok,
            const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", number,
                name.c_str(), detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

// --- criterion 1: grid oracle ---------------------------------------------

void criterion_grid() {
    const auto start = std::chrono::steady_clock::now();
    GridTopology grid;
    bool ok = true;
    std::string detail;

    const std::vector<std::pair<RegionId, std::vector<ApId>>> region_map = {
        {0, {0}},          {1, {0, 1}},       {2, {1, 2}},
        {3, {2, 3}},       {4, {3, 4}},       {5, {4}},
        {6, {0, 5}},       {7, {0, 1, 5, 6}}, {8, {1, 2, 6, 7}},
        {9, {2, 3, 7, 8}}, {10, {3, 4, 8, 9}}, {11, {4, 9}},
    };
    for (const auto& [region, aps] : region_map) {
        if (grid.region_aps(region) != aps) {
            ok = false;
            detail = "region " + std::to_string(region) + " mismatch";
        }
    }

    const std::vector<std::pair<ApId, std::vector<ApId>>> neighbor_sets = {
        {19, {13, 14, 18, 23, 24}},
        {13, {7, 8, 9, 12, 14, 17, 18, 19}},
        {22, {16, 17, 18, 21, 23}},
        {21, {15, 16, 17, 20, 22}},
        {15, {10, 11, 16, 20, 21}},
    };
    for (const auto& [ap, neighbors] : neighbor_sets) {
        if (grid.ap_neighbors(ap) != neighbors) {
            ok = false;
            detail = "neighbors of AP " + std::to_string(ap) + " mismatch";
        }
    }

    const std::vector<std::tuple<ApId, RegionId, std::vector<ApId>>> candidates = {
        {19, 15, {13}},
        {13, 9, {7, 8}},
        {21, 18, {15}},
        {15, 19, {10, 11, 16}},
        {22, 25, {16, 21}},
    };
    for (const auto& [ap, region, expected] : candidates) {
        if (grid.candidate_next_aps(ap, region) != expected) {
            ok = false;
            detail = "candidates for AP " + std::to_string(ap) + " into region " +
                     std::to_string(region) + " mismatch";
        }
    }

    const double elapsed = seconds_since(start);
    if (elapsed >= 1.0) {
        ok = false;
        detail = "too slow";
    }
    if (ok) {
        char buf[96];
        std::snprintf(buf, sizeof(buf),
                      "12 region rows, 5 neighbor sets, 5 candidate sets (%.3fs)",
                      elapsed);
        detail = buf;
    }
    report(1, "grid oracle", ok, detail);
}

// --- criterion 2: accuracy metric ------------------------------------------

void criterion_accuracy_metric() {
    struct Fixture {
        std::vector<ApId> original;
        std::vector<ApId> predicted;
        int expected_pct;
    };
    const std::vector<Fixture> fixtures = {
        {{7, 2, 6, 1}, {1, 6, 0}, 33},
        {{13, 7, 1, 0, 6}, {7, 1, 0, 5}, 75},
        {{23, 17, 16, 11, 6}, {17, 16, 11, 5}, 75},
        {{22, 21, 15, 16}, {21, 15, 10}, 67},
        {{11, 5, 0}, {5, 0}, 100},
        {{14, 9, 8, 2, 1, 0}, {9, 8, 2, 1, 0}, 100},
        {{17, 12, 6, 11}, {11, 6, 11}, 67},
        {{12, 11, 5, 6}, {11, 5, 0}, 67},
        {{8, 7, 2, 1, 0}, {7, 2, 1, 0}, 100},
        {{19, 13, 8, 9, 4, 3}, {13, 8, 3, 4, 3}, 80},
    };
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        PathResult result;
        for (ApId ap : fixtures[i].original) result.original.steps.push_back({ap, 0});
        for (std::size_t k = 0; k < fixtures[i].predicted.size(); ++k) {
            const ApId actual = fixtures[i].original[k + 1];
            const ApId predicted = fixtures[i].predicted[k];
            result.predicted.push_back(
                {predicted, actual, predicted == actual ? 1 : 2});
        }
        const int pct = accuracy_percent(path_accuracy(result));
        if (pct != fixtures[i].expected_pct) {
            ok = false;
            detail = "path " + std::to_string(i + 1) + " gave " +
                     std::to_string(pct) + "%, expected " +
                     std::to_string(fixtures[i].expected_pct) + "%";
        }
    }
    if (ok) detail = "all 10 path accuracies reproduced";
    report(2, "accuracy metric", ok, detail);
}

// --- criterion 3: mining formula --------------------------------------------

void criterion_mining_formula() {
    bool ok = true;
    std::string detail;
    ScoringConfig cfg;  // corruption factor 0.5

    Rng rng(303);
    for (int i = 0; i < 200 && ok; ++i) {
        PatternDatabase db;
        const long x1 = rng.uniform_int(0, 2000);
        const long x2 = rng.uniform_int(0, 2000);
        db.add_direct(15, 10, 707);
        db.add_indirect(15, 11, 10, x1);
        db.add_indirect(15, 16, 10, x2);
        const double got = score_candidate(db, 15, 10, {11, 16}, cfg);
        const double want = 707.0 + 0.5 * static_cast<double>(x1 + x2);
        if (std::abs(got - want) > 1e-9) {
            ok = false;
            detail = "score mismatch for x1=" + std::to_string(x1) +
                     " x2=" + std::to_string(x2);
        }
    }

    PatternDatabase pairs;
    pairs.add_direct(13, 7, 238);
    pairs.add_direct(13, 8, 367);
    pairs.add_direct(22, 16, 162);
    pairs.add_direct(22, 21, 272);
    const auto first = predict_next_ap(pairs, 13, {7, 8}, cfg);
    const auto second = predict_next_ap(pairs, 22, {16, 21}, cfg);
    if (!first || first->ap != 8) {
        ok = false;
        detail = "counts {238, 367} should predict AP8";
    }
    if (!second || second->ap != 21) {
        ok = false;
        detail = "counts {162, 272} should predict AP21";
    }
    if (ok) detail = "score formula (200 random count pairs) and both argmax picks";
    report(3, "mining formula", ok, detail);
}

// --- criteria 4 and 5: stochastic bands and frequency ranks ------------------

void criteria_bands_and_ranks() {
    const auto start = std::chrono::steady_clock::now();
    const int runs = 20;
    double sum_ltdps = 0.0, sum_tm = 0.0, sum_ip = 0.0;
    int ltdps_wins = 0;
    bool ranks_ok = true;
    std::string rank_detail;

    for (int run = 0; run < runs; ++run) {
        ExperimentConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(run + 1);
        cfg.history_size = 10000;
        cfg.test_paths = 10;
        const ExperimentReport report_data = run_experiment(cfg);

        double ltdps = 0.0, tm = 0.0, ip = 0.0;
        for (const SchemeReport& sr : report_data.schemes) {
            if (sr.scheme == Scheme::LTDPS) ltdps = sr.mean_accuracy;
            if (sr.scheme == Scheme::TM) tm = sr.mean_accuracy;
            if (sr.scheme == Scheme::IP) ip = sr.mean_accuracy;
        }
        sum_ltdps += ltdps;
        sum_tm += tm;
        sum_ip += ip;
        if (ltdps > tm && ltdps > ip) ++ltdps_wins;

        for (const SchemeReport& sr : report_data.schemes) {
            if (sr.scheme != Scheme::LTDPS) continue;
            for (const PathResult& r : sr.paths) {
                bool all_correct = true;
                for (const PredictedTransition& t : r.predicted) {
                    if (t.rank < 1 || t.rank > 3) {
                        ranks_ok = false;
                        rank_detail = "rank " + std::to_string(t.rank) +
                                      " outside {1,2,3} in run " +
                                      std::to_string(run + 1);
                    }
                    if (t.predicted != t.actual) all_correct = false;
                }
                if ((max_frequency_deviation(r) == 1) != all_correct) {
                    ranks_ok = false;
                    rank_detail = "max deviation / correctness mismatch in run " +
                                  std::to_string(run + 1);
                }
            }
        }
    }

    const double mean_ltdps = sum_ltdps / runs * 100.0;
    const double mean_tm = sum_tm / runs * 100.0;
    const double mean_ip = sum_ip / runs * 100.0;
    const double elapsed = seconds_since(start);

    bool ok = true;
    std::string detail;
    if (mean_ltdps < 60.0 || mean_ltdps > 95.0) {
        ok = false;
        detail = "LTDPS mean outside [60,95]";
    }
    if (mean_tm < 20.0 || mean_tm > 60.0) {
        ok = false;
        detail = "TM mean outside [20,60]";
    }
    if (mean_ip < 15.0 || mean_ip > 60.0) {
        ok = false;
        detail = "IP mean outside [15,60]";
    }
    if (ltdps_wins < 19) {
        ok = false;
        detail = "LTDPS won only " + std::to_string(ltdps_wins) + "/20 runs";
    }
    if (elapsed >= 60.0) {
        ok = false;
        detail = "too slow";
    }
    if (ok) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "means LTDPS %.1f%% / TM %.1f%% / IP %.1f%%, LTDPS best in "
                      "%d/20 runs (%.1fs)",
                      mean_ltdps, mean_tm, mean_ip, ltdps_wins, elapsed);
        detail = buf;
    }
    report(4, "end-to-end accuracy bands", ok, detail);
    report(5, "frequency-rank bounds", ranks_ok,
           ranks_ok ? "ranks in {1,2,3}; max deviation 1 iff all hops correct"
                    : rank_detail);
}

// --- criterion 6: mobility models --------------------------------------------

void criterion_mobility() {
    bool ok = true;
    std::string detail;
    const AreaBounds area{6.0, 6.0};

    {
        GaussMarkovParams params;
        params.alpha = 1.0;
        Rng rng(601);
        KinematicState state{3.0, 3.0, 1.37, 0.81};
        for (int i = 0; i < 1000; ++i) {
            state = step_gauss_markov(state, params, area, rng);
            if (state.v != 1.37 || state.theta != 0.81) {
                ok = false;
                detail = "alpha=1 drifted at step " + std::to_string(i);
                break;
            }
        }
    }

    if (ok) {
        GaussMarkovParams params;
        params.alpha = 0.0;
        Rng rng(602);
        KinematicState state{3.0, 3.0, 1.0, 0.0};
        std::vector<double> speeds;
        speeds.reserve(10000);
        for (int i = 0; i < 10000; ++i) {
            state = step_gauss_markov(state, params, area, rng);
            speeds.push_back(state.v);
        }
        double mean = 0.0;
        for (double s : speeds) mean += s;
        mean /= static_cast<double>(speeds.size());
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i + 1 < speeds.size(); ++i) {
            num += (speeds[i] - mean) * (speeds[i + 1] - mean);
        }
        for (double s : speeds) den += (s - mean) * (s - mean);
        if (std::abs(num / den) >= 0.05) {
            ok = false;
            detail = "alpha=0 lag-1 autocorrelation too high";
        }
    }

    if (ok) {
        const WalkStateMatrix matrix = WalkStateMatrix::chiang_default();
        Rng rng(603);
        WalkAxisState state;
        long from_to[3][3] = {};
        long from_total[3] = {};
        for (int i = 0; i < 100000; ++i) {
            const auto [next, move] = step_prob_walk(state, matrix, 1.0, rng);
            ++from_to[state.x][next.x];
            ++from_total[state.x];
            state = next;
        }
        for (int from = 0; from < 3 && ok; ++from) {
            for (int to = 0; to < 3 && ok; ++to) {
                const double freq = static_cast<double>(from_to[from][to]) /
                                    static_cast<double>(from_total[from]);
                if (std::abs(freq - matrix.p[static_cast<std::size_t>(from)]
                                            [static_cast<std::size_t>(to)]) >= 0.02) {
                    ok = false;
                    detail = "transition frequency off for " +
                             std::to_string(from) + "->" + std::to_string(to);
                }
            }
        }
    }

    if (ok) {
        BoundlessParams params;
        params.v_max = 2.0;
        params.a_max = 1.0;
        params.max_angular_change = 0.8;
        Rng rng(604);
        KinematicState state{0.5, 0.5, 1.0, 0.3};
        for (int i = 0; i < 20000; ++i) {
            state = step_boundless(state, params, area, rng);
            const bool in_bounds = state.x >= 0.0 && state.x < area.width &&
                                   state.y >= 0.0 && state.y < area.height;
            if (!in_bounds || state.v < 0.0 || state.v > params.v_max) {
                ok = false;
                detail = "torus step left bounds at step " + std::to_string(i);
                break;
            }
        }
    }

    if (ok) {
        detail = "memory weighting, walk matrix empirics, torus bounds and "
                 "speed clamp";
    }
    report(6, "mobility model checks", ok, detail);
}

// --- criterion 7: secured exchange -------------------------------------------

void criterion_security() {
    bool ok = true;
    std::string detail;
    const SharedKey key = SharedKey::from_hex("0f1e2d3c4b5a6978");

    {
        Rng rng(701);
        const auto transcript = run_handshake(7, key, {}, rng);
        if (transcript.size() < 4) {
            ok = false;
            detail = "handshake too short";
        } else {
            for (std::size_t i = 0; i < transcript.size(); ++i) {
                if (transcript[i].outcome != VerifyOutcome::Accepted) {
                    ok = false;
                    detail = "clean handshake rejected at message " +
                             std::to_string(i + 1);
                }
            }
        }
    }

    if (ok) {
        const auto cipher = make_default_cipher(key);
        Rng rng(702);
        Bytes payload(42);
        for (auto& b : payload) b = rng.byte();
        Bytes nonce(cipher->block_size());
        for (auto& b : nonce) b = rng.byte();
        const SecurePacket packet =
            seal(MsgType::Report, 7, payload, nonce, *cipher);
        const Bytes wire = encode_packet(packet);
        if (wire.size() != 64) {
            ok = false;
            detail = "expected a 64-byte packet, got " +
                     std::to_string(wire.size());
        }
        for (std::size_t bit = 0; ok && bit < wire.size() * 8; ++bit) {
            Bytes flipped = wire;
            flipped[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
            NonceState nonces;
            nonces.issue(nonce);
            if (verify_bytes(flipped, *cipher, nonces) != VerifyOutcome::Tampered) {
                ok = false;
                detail = "bit flip " + std::to_string(bit) + " not flagged";
            }
        }
    }

    if (ok) {
        Rng rng(703);
        HandshakeAttack attack;
        attack.replay_report = true;
        const auto transcript = run_handshake(7, key, {}, rng, attack);
        if (transcript.empty() ||
            transcript.back().outcome != VerifyOutcome::Replayed) {
            ok = false;
            detail = "replayed report not flagged";
        }
    }

    if (ok) {
        const auto cipher = make_default_cipher(key);
        Rng rng(704);
        for (int i = 0; i < 1000 && ok; ++i) {
            Bytes payload(rng.uniform_index(120));
            for (auto& b : payload) b = rng.byte();
            std::optional<Bytes> nonce;
            if (rng.uniform_int(0, 1) == 1) {
                nonce = Bytes(cipher->block_size());
                for (auto& b : *nonce) b = rng.byte();
            }
            const SecurePacket packet = seal(
                MsgType::Report,
                static_cast<std::uint16_t>(rng.uniform_index(65536)), payload,
                nonce, *cipher);
            const Bytes wire = encode_packet(packet);
            const auto decoded = decode_packet(wire, cipher->block_size());
            if (!decoded || encode_packet(*decoded) != wire) {
                ok = false;
                detail = "wire round trip failed at packet " + std::to_string(i);
            }
        }
    }

    if (ok) {
        detail = "clean exchange, 512 exhaustive bit flips, replay detection, "
                 "1000 wire round trips";
    }
    report(7, "secured report exchange", ok, detail);
}

// --- criterion 8: shared oracle ----------------------------------------------

void criterion_shared_oracle() {
    GridTopology grid;
    Rng rng = Rng(801).fork(1);
    std::vector<MobilePath> history;
    history.reserve(10000);
    PatternDatabase db;
    for (int i = 0; i < 10000; ++i) {
        history.push_back(gen_region_path(grid, 3, 6, rng));
        db.record_path(history.back(), grid);
    }
    const TransitionMatrix tm = build_tm(history, grid);

    bool ok = db.path_count() == 10000;
    std::string detail = ok ? "" : "path count mismatch";
    long total = 0;
    for (ApId from = 0; from < grid.ap_count() && ok; ++from) {
        for (ApId to = 0; to < grid.ap_count() && ok; ++to) {
            if (tm.count(from, to) != db.direct_count(from, to)) {
                ok = false;
                detail = "count mismatch at " + std::to_string(from) + "->" +
                         std::to_string(to);
            }
            total += tm.count(from, to);
        }
    }
    if (ok && total != db.total_direct()) {
        ok = false;
        detail = "totals diverge";
    }
    if (ok) {
        detail = "transition matrix equals mined direct counts over 10000 paths (" +
                 std::to_string(total) + " transitions)";
    }
    report(8, "shared transition oracle", ok, detail);
}

}  // namespace

int main() {
    criterion_grid();
    criterion_accuracy_metric();
    criterion_mining_formula();
    criteria_bands_and_ranks();
    criterion_mobility();
    criterion_security();
    criterion_shared_oracle();

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
