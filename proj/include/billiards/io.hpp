#pragma once
// Serialization of diagonals, counts and reports. Doubles are written with
// 17 significant digits so files round-trip exactly.

#include <iosfwd>
#include <string>
#include <vector>

#include "billiards/enumeration.hpp"
#include "billiards/partitions.hpp"
#include "json.hpp"

namespace billiards {

std::string format_double(double v);

/// One JSON-lines record; exit data comes from the clockwise rose.
nlohmann::json diagonal_to_json(const GeneralizedDiagonal& d, const TriangleShape& tri);
GeneralizedDiagonal diagonal_from_json(const nlohmann::json& j);

void write_diagonals_jsonl(std::ostream& os, const std::vector<GeneralizedDiagonal>& diags, const TriangleShape& tri);
/// Throws Error{ParseError} naming the 1-based line of the first bad record.
std::vector<GeneralizedDiagonal> read_diagonals_jsonl(std::istream& is);

/// Columns n, Q_V0, Q_V1, Q_V2, P.
void write_counts_csv(std::ostream& os, const ComplexityCounts& counts);
/// (n, P_n) pairs from a counts file; the P column is located by header name.
std::vector<std::pair<int, double>> read_series_csv(std::istream& is, const std::string& column = "P");

void write_gap_csv(std::ostream& os, const GapReport& r);
nlohmann::json gap_to_json(const GapReport& r);

/// {m, l, ax, ay, depth}
nlohmann::json kite_pose_to_json(const KitePose& pose);

/// Cut records {direction, index} of one partition, one per line.
void write_partition_jsonl(std::ostream& os, const IndexedPartition& xi);

}  // namespace billiards
