#include "ltdps/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ltdps {

const char* to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::LTDPS: return "LTDPS";
        case Scheme::TM: return "TM";
        case Scheme::IP: return "IP";
    }
    return "?";
}

std::optional<Scheme> scheme_from_string(const std::string& name) {
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(c)));
    if (lower == "ltdps") return Scheme::LTDPS;
    if (lower == "tm") return Scheme::TM;
    if (lower == "ip") return Scheme::IP;
    return std::nullopt;
}

double path_accuracy(const PathResult& result) {
    if (result.predicted.empty()) {
        throw std::invalid_argument("no predictions in path result");
    }
    int correct = 0;
    for (const PredictedTransition& t : result.predicted) {
        if (t.predicted == t.actual) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(result.predicted.size());
}

int accuracy_percent(double fraction) {
    return static_cast<int>(std::lround(fraction * 100.0));
}

int error_count(const PathResult& result) {
    int errors = 0;
    for (const PredictedTransition& t : result.predicted) {
        if (t.predicted != t.actual) ++errors;
    }
    return errors;
}

int max_frequency_deviation(const PathResult& result) {
    int worst = 1;
    for (const PredictedTransition& t : result.predicted) {
        worst = std::max(worst, t.rank);
    }
    return worst;
}

std::vector<PathResult> evaluate_scheme(Scheme scheme, const PatternDatabase& db,
                                        const TransitionMatrix& tm,
                                        const std::vector<MobilePath>& test_set,
                                        const GridTopology& grid,
                                        const ScoringConfig& scoring, Rng& rng) {
    std::vector<PathResult> results;
    results.reserve(test_set.size());
    for (const MobilePath& path : test_set) {
        PathResult result;
        result.original = path;
        for (std::size_t k = 1; k < path.steps.size(); ++k) {
            const ApId from = path.steps[k - 1].ap;
            const ApId actual = path.steps[k].ap;
            PredictedTransition t{};
            t.actual = actual;
            switch (scheme) {
                case Scheme::LTDPS: {
                    const RegionId next_region = path.steps[k].region;
                    const auto candidates = grid.candidate_next_aps(from, next_region);
                    const auto prediction =
                        predict_next_ap(db, from, candidates, scoring);
                    if (!prediction) {
                        throw std::runtime_error(
                            "empty candidate set on a valid test path");
                    }
                    t.predicted = prediction->ap;
                    t.rank = static_cast<int>(prediction->rank_table.size()) + 1;
                    for (std::size_t i = 0; i < prediction->rank_table.size(); ++i) {
                        if (prediction->rank_table[i].ap == actual) {
                            t.rank = static_cast<int>(i) + 1;
                            break;
                        }
                    }
                    break;
                }
                case Scheme::TM: {
                    t.predicted = tm_predict(tm, from, 1).front();
                    t.rank = tm_rank(tm, from, actual);
                    break;
                }
                case Scheme::IP: {
                    t.predicted = ip_predict(grid, from, rng);
                    t.rank = t.predicted == actual
                                 ? 1
                                 : static_cast<int>(grid.ap_neighbors(from).size());
                    break;
                }
            }
            result.predicted.push_back(t);
        }
        results.push_back(std::move(result));
    }
    return results;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.history_size < 1 || cfg.test_paths < 1) {
        throw std::invalid_argument("history_size and test_paths must be positive");
    }
    const GridTopology grid(cfg.ap_rows, cfg.ap_cols);
    const Rng root(cfg.seed);
    Rng history_rng = root.fork(1);
    Rng test_rng = root.fork(2);
    Rng ip_rng = root.fork(3);

    PatternDatabase db;
    TransitionMatrix tm(grid);
    long transitions = 0;
    for (int i = 0; i < cfg.history_size; ++i) {
        const MobilePath path =
            gen_region_path(grid, cfg.min_len, cfg.max_len, history_rng);
        db.record_path(path, grid);
        for (std::size_t k = 1; k < path.steps.size(); ++k) {
            tm.add(path.steps[k - 1].ap, path.steps[k].ap);
        }
        transitions += static_cast<long>(path.steps.size()) - 1;
    }

    std::vector<MobilePath> test_set;
    test_set.reserve(static_cast<std::size_t>(cfg.test_paths));
    for (int i = 0; i < cfg.test_paths; ++i) {
        test_set.push_back(gen_region_path(grid, cfg.min_len, cfg.max_len, test_rng));
    }

    ExperimentReport report;
    report.config = cfg;
    report.history_transitions = transitions;
    for (Scheme scheme : cfg.schemes) {
        SchemeReport sr;
        sr.scheme = scheme;
        sr.paths = evaluate_scheme(scheme, db, tm, test_set, grid, cfg.scoring, ip_rng);
        double sum = 0.0;
        for (const PathResult& r : sr.paths) sum += path_accuracy(r);
        sr.mean_accuracy = sr.paths.empty() ? 0.0 : sum / static_cast<double>(sr.paths.size());
        report.schemes.push_back(std::move(sr));
    }
    return report;
}

std::string format_ap_sequence(const MobilePath& path) {
    std::ostringstream out;
    for (std::size_t i = 0; i < path.steps.size(); ++i) {
        if (i > 0) out << "->";
        out << path.steps[i].ap;
    }
    return out.str();
}

std::string format_predicted_path(const PathResult& result) {
    std::ostringstream out;
    out << result.original.steps.front().ap;
    for (const PredictedTransition& t : result.predicted) {
        out << "->";
        if (t.predicted == t.actual) {
            out << t.predicted;
        } else {
            out << t.predicted << '(' << t.actual << ',' << t.rank << ')';
        }
    }
    return out.str();
}

void write_report_csv(const ExperimentReport& report, std::ostream& out) {
    out << "scheme,path_index,original_path,predicted_path,accuracy_pct,error_count\n";
    for (const SchemeReport& sr : report.schemes) {
        for (std::size_t i = 0; i < sr.paths.size(); ++i) {
            const PathResult& r = sr.paths[i];
            out << to_string(sr.scheme) << ',' << i + 1 << ','
                << format_ap_sequence(r.original) << ',' << format_predicted_path(r)
                << ',' << accuracy_percent(path_accuracy(r)) << ',' << error_count(r)
                << '\n';
        }
    }
}

void write_report_csv(const ExperimentReport& report, const std::string& filename) {
    std::ofstream out(filename, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report: " + filename);
    write_report_csv(report, out);
}

void write_summary_csv(const ExperimentReport& report, std::ostream& out) {
    out << "scheme,mean_accuracy_pct,accuracy_per_path,max_freq_deviation_per_path\n";
    for (const SchemeReport& sr : report.schemes) {
        out << to_string(sr.scheme) << ',';
        const double mean_pct = sr.mean_accuracy * 100.0;
        out << std::fixed;
        out.precision(1);
        out << mean_pct;
        out.unsetf(std::ios::fixed);
        out << ',';
        for (std::size_t i = 0; i < sr.paths.size(); ++i) {
            if (i > 0) out << ';';
            out << accuracy_percent(path_accuracy(sr.paths[i]));
        }
        out << ',';
        for (std::size_t i = 0; i < sr.paths.size(); ++i) {
            if (i > 0) out << ';';
            out << max_frequency_deviation(sr.paths[i]);
        }
        out << '\n';
    }
}

void write_summary_csv(const ExperimentReport& report, const std::string& filename) {
    std::ofstream out(filename, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write summary: " + filename);
    write_summary_csv(report, out);
}

}  // namespace ltdps
