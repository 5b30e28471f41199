#pragma once

#include "catzero/measures.hpp"
#include "catzero/mm_invariants.hpp"
#include "catzero/montecarlo.hpp"
#include "catzero/spaces/euclidean.hpp"
#include "catzero/spaces/hyperboloid.hpp"
#include "catzero/spaces/metric_tree.hpp"

#include "json.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace catzero::io {

inline constexpr int kSchemaVersion = 1;

/// Malformed input file; the message names the line/column or JSON field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyMeasure =
    std::variant<FiniteMeasure<MetricTree>, FiniteMeasure<Hyperboloid>, FiniteMeasure<Euclidean>>;

/// Measure file:
///   {"schema_version": 1,
///    "space": {"kind": "tree", "vertices": [...], "edges": [[u, v, length], ...]}
///           | {"kind": "hyperboloid" | "euclidean", "dimension": m},
///    "atoms": [{"point": P, "weight": w}, ...]}
/// Tree points are {"edge": [u, v], "offset": s} (s measured from u) or
/// {"vertex": id}; manifold points are coordinate arrays (m + 1 entries on the
/// hyperboloid, m in euclidean space).
AnyMeasure parse_measure(const nlohmann::json& doc);
AnyMeasure load_measure_file(const std::filesystem::path& path);
nlohmann::json measure_to_json(const AnyMeasure& measure);

/// {"schema_version": 1, "distances": [[...], ...], "weights": [...]}
mm::FiniteMMSpace parse_mm_space(const nlohmann::json& doc);
mm::FiniteMMSpace load_mm_space_file(const std::filesystem::path& path);

/// Parses JSON text; syntax errors become ParseError with line and column.
nlohmann::json parse_json_text(std::string_view text, std::string_view source);
std::string read_file(const std::filesystem::path& path);

nlohmann::json tail_report_to_json(const mc::TailReport& report);
mc::TailReport tail_report_from_json(const nlohmann::json& doc);

/// Columns r, exceed_count, empirical, ci_low, ci_high, bound; 17 significant digits.
std::string tail_report_csv(const mc::TailReport& report);

/// %.17g: round-trip safe.
std::string format_number(double x);

std::string sha256_hex(std::string_view bytes);

}  // namespace catzero::io
