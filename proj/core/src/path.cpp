#include "ltdps/path.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace ltdps {

bool path_valid(const MobilePath& path, const GridTopology& grid) {
    for (std::size_t i = 0; i < path.steps.size(); ++i) {
        const PathStep& step = path.steps[i];
        if (!grid.ap_in_bounds(step.ap) || !grid.region_in_bounds(step.region)) {
            return false;
        }
        const std::vector<ApId> aps = grid.region_aps(step.region);
        if (std::find(aps.begin(), aps.end(), step.ap) == aps.end()) {
            return false;
        }
        if (i > 0 && !grid.aps_adjacent(path.steps[i - 1].ap, step.ap)) {
            return false;
        }
    }
    return true;
}

std::string format_path(const MobilePath& path) {
    std::ostringstream out;
    for (std::size_t i = 0; i < path.steps.size(); ++i) {
        if (i > 0) out << ',';
        out << path.steps[i].ap << '(' << path.steps[i].region << ')';
    }
    return out.str();
}

namespace {

void skip_spaces(std::string_view s, std::size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

int parse_number(std::string_view s, std::size_t& pos) {
    skip_spaces(s, pos);
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) {
        throw ParseError("expected number at column " + std::to_string(start + 1));
    }
    return std::stoi(std::string(s.substr(start, pos - start)));
}

}  // namespace

MobilePath parse_path(std::string_view line) {
    MobilePath path;
    std::size_t pos = 0;
    skip_spaces(line, pos);
    while (pos < line.size()) {
        PathStep step{};
        step.ap = parse_number(line, pos);
        skip_spaces(line, pos);
        if (pos >= line.size() || line[pos] != '(') {
            throw ParseError("expected '(' at column " + std::to_string(pos + 1));
        }
        ++pos;
        step.region = parse_number(line, pos);
        skip_spaces(line, pos);
        if (pos >= line.size() || line[pos] != ')') {
            throw ParseError("expected ')' at column " + std::to_string(pos + 1));
        }
        ++pos;
        path.steps.push_back(step);
        skip_spaces(line, pos);
        if (pos < line.size()) {
            if (line[pos] != ',') {
                throw ParseError("expected ',' at column " + std::to_string(pos + 1));
            }
            ++pos;
            skip_spaces(line, pos);
            if (pos >= line.size()) {
                throw ParseError("trailing ',' at end of line");
            }
        }
    }
    if (path.empty()) {
        throw ParseError("empty path line");
    }
    return path;
}

std::vector<MobilePath> load_path_history(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) {
        throw std::runtime_error("cannot open history file: " + filename);
    }
    std::vector<MobilePath> paths;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            paths.push_back(parse_path(line));
        } catch (const ParseError& e) {
            throw ParseError(filename + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return paths;
}

void save_path_history(const std::string& filename,
                       const std::vector<MobilePath>& paths) {
    std::ofstream out(filename, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write history file: " + filename);
    }
    for (const MobilePath& path : paths) {
        out << format_path(path) << '\n';
    }
}

void append_path_history(const std::string& filename, const MobilePath& path) {
    std::ofstream out(filename, std::ios::binary | std::ios::app);
    if (!out) {
        throw std::runtime_error("cannot append to history file: " + filename);
    }
    out << format_path(path) << '\n';
}

}  // namespace ltdps
