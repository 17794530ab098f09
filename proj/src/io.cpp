#include "billiards/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "billiards/errors.hpp"

namespace billiards {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json diagonal_to_json(const GeneralizedDiagonal& diag, const TriangleShape& tri) {
    // Exit data is derived from the record as written, so reading a file and
    // writing it back reproduces it byte for byte.
    GeneralizedDiagonal d = diag;
    d.endpoint = to_long(to_double(d.endpoint));
    d.final_pose.alpha_vertex = to_long(to_double(d.final_pose.alpha_vertex));
    const ExitTriangle e = exit_triangle(compute_rose(d, tri, RoseSide::Clockwise), tri);
    nlohmann::json j;
    j["source_vertex"] = std::string(vertex_name(d.source_vertex));
    j["comb"] = to_string(d.comb);
    j["direction"] = d.direction;
    j["algebraic_length"] = d.algebraic_length;
    j["geometric_length"] = d.geometric_length;
    j["endpoint"] = {static_cast<double>(d.endpoint.x), static_cast<double>(d.endpoint.y)};
    j["target"] = std::string(vertex_name(d.target));
    j["final_pose"] = {{"m", d.final_pose.angle.m},
                       {"l", d.final_pose.angle.l},
                       {"half", d.final_pose.half},
                       {"ax", static_cast<double>(d.final_pose.alpha_vertex.x)},
                       {"ay", static_cast<double>(d.final_pose.alpha_vertex.y)}};
    j["exit_position"] = {{"m", e.angle.m}, {"l", e.angle.l}, {"half", e.half}};
    j["theta"] = e.theta;
    j["boundary_case"] = e.boundary_case;
    return j;
}

GeneralizedDiagonal diagonal_from_json(const nlohmann::json& j) {
    GeneralizedDiagonal d;
    d.source_vertex = parse_vertex(j.at("source_vertex").get<std::string>());
    d.comb = parse_combinatorics(j.at("comb").get<std::string>());
    d.direction = j.at("direction").get<double>();
    d.algebraic_length = j.at("algebraic_length").get<int>();
    d.geometric_length = j.at("geometric_length").get<double>();
    const auto& ep = j.at("endpoint");
    d.endpoint = {ep.at(0).get<double>(), ep.at(1).get<double>()};
    d.target = parse_vertex(j.at("target").get<std::string>());
    const auto& fp = j.at("final_pose");
    d.final_pose.angle = {fp.at("m").get<int>(), fp.at("l").get<int>()};
    d.final_pose.half = fp.at("half").get<int>();
    d.final_pose.alpha_vertex = {fp.at("ax").get<double>(), fp.at("ay").get<double>()};
    return d;
}

void write_diagonals_jsonl(std::ostream& os, const std::vector<GeneralizedDiagonal>& diags, const TriangleShape& tri) {
    for (const auto& d : diags) os << diagonal_to_json(d, tri).dump() << '\n';
}

std::vector<GeneralizedDiagonal> read_diagonals_jsonl(std::istream& is) {
    std::vector<GeneralizedDiagonal> out;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(diagonal_from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

void write_counts_csv(std::ostream& os, const ComplexityCounts& counts) {
    os << "n,Q_V0,Q_V1,Q_V2,P\n";
    for (std::size_t k = 0; k < counts.P.size(); ++k) {
        os << k << ',' << counts.Q[0][k] << ',' << counts.Q[1][k] << ',' << counts.Q[2][k] << ',' << counts.P[k] << '\n';
    }
}

std::vector<std::pair<int, double>> read_series_csv(std::istream& is, const std::string& column) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorCode::InsufficientData, "empty series file");
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
            cells.push_back(cell);
        }
        return cells;
    };
    const auto header = split(line);
    std::size_t col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == column) col = i;
    }
    if (col == header.size() || header.empty() || header[0] != "n") {
        throw Error(ErrorCode::ParseError, "line 1: expected a header with columns n and " + column);
    }
    std::vector<std::pair<int, double>> out;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split(line);
        try {
            if (cells.size() <= col) throw std::invalid_argument("missing column");
            std::size_t pos = 0;
            const int n = std::stoi(cells[0], &pos);
            if (pos != cells[0].size()) throw std::invalid_argument("bad n");
            const double v = std::stod(cells[col], &pos);
            if (pos != cells[col].size()) throw std::invalid_argument("bad value");
            out.emplace_back(n, v);
        } catch (const std::exception& e) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

void write_gap_csv(std::ostream& os, const GapReport& r) {
    os << "level,Q_level,min_gap,fitted_a\n";
    for (const auto& row : r.rows) {
        os << row.level << ',' << row.q << ',' << format_double(row.min_gap) << ',' << format_double(row.fitted_a)
           << '\n';
    }
}

nlohmann::json gap_to_json(const GapReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"level", row.level}, {"Q_level", row.q}, {"min_gap", row.min_gap}, {"fitted_a", row.fitted_a}});
    }
    return {{"level", r.level}, {"min_gap", r.min_gap}, {"fitted_a", r.fitted_a}, {"rows", rows}};
}

nlohmann::json kite_pose_to_json(const KitePose& pose) {
    return {{"m", pose.angle.m},
            {"l", pose.angle.l},
            {"ax", static_cast<double>(pose.alpha_vertex.x)},
            {"ay", static_cast<double>(pose.alpha_vertex.y)},
            {"depth", pose.depth}};
}

void write_partition_jsonl(std::ostream& os, const IndexedPartition& xi) {
    for (const auto& c : xi.cuts) {
        os << nlohmann::json{{"level", xi.level}, {"direction", c.direction}, {"index", c.index}}.dump() << '\n';
    }
}

}  // namespace billiards
