#include "catzero/cli/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace catzero::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing field \"" + key + "\"");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

std::int64_t integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<std::int64_t>();
}

const json& array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array");
  return v;
}

Coords coords(const json& v, const std::string& where, Eigen::Index expected) {
  array(v, where);
  if (static_cast<Eigen::Index>(v.size()) != expected) {
    fail(where, "expected " + std::to_string(expected) + " coordinates, got " + std::to_string(v.size()));
  }
  Coords c(expected);
  for (Eigen::Index i = 0; i < expected; ++i) c[i] = number(v[static_cast<std::size_t>(i)], where + "[" + std::to_string(i) + "]");
  return c;
}

void check_schema(const json& doc, const std::string& where) {
  const auto version = integer(field(doc, "schema_version", where), where + ".schema_version");
  if (version != kSchemaVersion) fail(where + ".schema_version", "unsupported version " + std::to_string(version));
}

MetricTree parse_tree(const json& space) {
  std::vector<std::int64_t> vertices;
  const json& vs = array(field(space, "vertices", "space"), "space.vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) vertices.push_back(integer(vs[i], "space.vertices[" + std::to_string(i) + "]"));
  std::vector<MetricTree::Edge> edges;
  const json& es = array(field(space, "edges", "space"), "space.edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = "space.edges[" + std::to_string(i) + "]";
    if (!es[i].is_array() || es[i].size() != 3) fail(where, "expected [u, v, length]");
    edges.push_back({integer(es[i][0], where + "[0]"), integer(es[i][1], where + "[1]"), number(es[i][2], where + "[2]")});
  }
  try {
    return MetricTree(std::move(vertices), std::move(edges));
  } catch (const ValidationError& e) {
    fail("space", e.what());
  }
}

TreePoint parse_tree_point(const MetricTree& tree, const json& p, const std::string& where) {
  if (!p.is_object()) fail(where, "expected {\"edge\": [u, v], \"offset\": s} or {\"vertex\": id}");
  if (p.contains("vertex")) {
    try {
      return tree.vertex_point(integer(p["vertex"], where + ".vertex"));
    } catch (const InvalidPointError& e) {
      fail(where, e.what());
    }
  }
  const json& e = field(p, "edge", where);
  if (!e.is_array() || e.size() != 2) fail(where + ".edge", "expected [u, v]");
  const auto u = integer(e[0], where + ".edge[0]");
  const auto v = integer(e[1], where + ".edge[1]");
  const auto index = tree.find_edge(u, v);
  if (!index) fail(where + ".edge", "no edge joins " + std::to_string(u) + " and " + std::to_string(v));
  double offset = number(field(p, "offset", where), where + ".offset");
  if (tree.edge(*index).u != u) offset = tree.edge_length(*index) - offset;
  try {
    return tree.point(*index, offset);
  } catch (const InvalidPointError& err) {
    fail(where, err.what());
  }
}

template <class S, class ParsePoint>
FiniteMeasure<S> parse_atoms(S space, const json& doc, ParsePoint&& parse_point) {
  const json& atoms = array(field(doc, "atoms", "measure"), "atoms");
  std::vector<typename FiniteMeasure<S>::Atom> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string where = "atoms[" + std::to_string(i) + "]";
    out.push_back({parse_point(field(atoms[i], "point", where), where + ".point"),
                   number(field(atoms[i], "weight", where), where + ".weight")});
  }
  try {
    return FiniteMeasure<S>::make(std::move(space), std::move(out));
  } catch (const ValidationError& e) {
    fail("atoms", e.what());
  }
}

json coords_json(const Coords& c) {
  json out = json::array();
  for (Eigen::Index i = 0; i < c.size(); ++i) out.push_back(c[i]);
  return out;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte > 0 ? byte - 1 : 0, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte);
    throw ParseError(std::string(source) + ": parse error at line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ": " + e.what());
  }
}

AnyMeasure parse_measure(const json& doc) {
  check_schema(doc, "measure");
  const json& space = field(doc, "space", "measure");
  const json& kind_field = field(space, "kind", "space");
  if (!kind_field.is_string()) fail("space.kind", "expected a string");
  const std::string kind = kind_field.get<std::string>();

  if (kind == "tree") {
    MetricTree tree = parse_tree(space);
    const MetricTree& ref = tree;
    return parse_atoms(tree, doc, [&](const json& p, const std::string& where) { return parse_tree_point(ref, p, where); });
  }
  if (kind == "hyperboloid" || kind == "euclidean") {
    const auto m = integer(field(space, "dimension", "space"), "space.dimension");
    try {
      if (kind == "hyperboloid") {
        const Hyperboloid h(static_cast<int>(m));
        return parse_atoms(h, doc, [&](const json& p, const std::string& where) {
          try {
            return h.point(coords(p, where, m + 1));
          } catch (const InvalidPointError& e) {
            fail(where, e.what());
          }
        });
      }
      const Euclidean e(static_cast<int>(m));
      return parse_atoms(e, doc, [&](const json& p, const std::string& where) {
        try {
          return e.point(coords(p, where, m));
        } catch (const InvalidPointError& err) {
          fail(where, err.what());
        }
      });
    } catch (const ValidationError& e) {
      fail("space.dimension", e.what());
    }
  }
  fail("space.kind", "unknown kind \"" + kind + "\" (expected tree, hyperboloid or euclidean)");
}

AnyMeasure load_measure_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_measure(parse_json_text(text, path.string()));
  } catch (const ParseError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw ParseError(path.string() + ": " + what);
  }
}

json measure_to_json(const AnyMeasure& any) {
  return std::visit(
      [](const auto& measure) {
        using S = typename std::decay_t<decltype(measure)>::Space;
        json doc;
        doc["schema_version"] = kSchemaVersion;
        json atoms = json::array();
        const S& space = measure.space();
        if constexpr (std::is_same_v<S, MetricTree>) {
          json vertices = json::array();
          json edges = json::array();
          for (std::size_t i = 0; i < space.vertex_count(); ++i) vertices.push_back(space.vertex_id(i));
          for (std::size_t e = 0; e < space.edge_count(); ++e) {
            edges.push_back({space.edge(e).u, space.edge(e).v, space.edge(e).length});
          }
          doc["space"] = {{"kind", "tree"}, {"vertices", vertices}, {"edges", edges}};
          for (const auto& a : measure.atoms()) {
            const auto& edge = space.edge(a.point.edge);
            atoms.push_back({{"point", {{"edge", {edge.u, edge.v}}, {"offset", a.point.offset}}}, {"weight", a.weight}});
          }
        } else {
          doc["space"] = {{"kind", std::string(S::kind)}, {"dimension", space.dimension()}};
          for (const auto& a : measure.atoms()) atoms.push_back({{"point", coords_json(a.point.coords)}, {"weight", a.weight}});
        }
        doc["atoms"] = atoms;
        return doc;
      },
      any);
}

mm::FiniteMMSpace parse_mm_space(const json& doc) {
  check_schema(doc, "mm-space");
  const json& rows = array(field(doc, "distances", "mm-space"), "distances");
  const json& weights = array(field(doc, "weights", "mm-space"), "weights");
  const auto n = static_cast<Eigen::Index>(weights.size());
  if (static_cast<Eigen::Index>(rows.size()) != n) fail("distances", "expected " + std::to_string(n) + " rows");
  Eigen::MatrixXd d(n, n);
  std::vector<double> w;
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::string where = "distances[" + std::to_string(i) + "]";
    const json& row = array(rows[static_cast<std::size_t>(i)], where);
    if (static_cast<Eigen::Index>(row.size()) != n) fail(where, "expected " + std::to_string(n) + " entries");
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = number(row[static_cast<std::size_t>(j)], where + "[" + std::to_string(j) + "]");
    w.push_back(number(weights[static_cast<std::size_t>(i)], "weights[" + std::to_string(i) + "]"));
  }
  try {
    return mm::FiniteMMSpace::make(std::move(d), std::move(w));
  } catch (const ValidationError& e) {
    fail("mm-space", e.what());
  }
}

mm::FiniteMMSpace load_mm_space_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_mm_space(parse_json_text(text, path.string()));
  } catch (const ParseError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw ParseError(path.string() + ": " + what);
  }
}

json tail_report_to_json(const mc::TailReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"r", row.r},
                    {"exceed_count", row.exceed_count},
                    {"empirical", row.empirical},
                    {"ci_low", row.ci_low},
                    {"ci_high", row.ci_high},
                    {"bound", row.theory_bound}});
  }
  return {{"schema_version", kSchemaVersion},
          {"space_kind", report.space_kind},
          {"bound", report.bound_name},
          {"manifold_dimension", report.manifold_dimension},
          {"diameter", report.diameter},
          {"barycenter", report.barycenter},
          {"n", report.n},
          {"trials", report.trials},
          {"seed", report.seed},
          {"confidence", report.confidence},
          {"dominated", report.dominated()},
          {"rows", rows}};
}

mc::TailReport tail_report_from_json(const json& doc) {
  check_schema(doc, "report");
  mc::TailReport report;
  try {
    report.space_kind = doc.at("space_kind").get<std::string>();
    report.bound_name = doc.at("bound").get<std::string>();
    report.manifold_dimension = doc.at("manifold_dimension").get<int>();
    report.diameter = doc.at("diameter").get<double>();
    report.barycenter = doc.at("barycenter").get<std::vector<double>>();
    report.n = doc.at("n").get<std::size_t>();
    report.trials = doc.at("trials").get<std::size_t>();
    report.seed = doc.at("seed").get<std::uint64_t>();
    report.confidence = doc.at("confidence").get<double>();
    for (const auto& row : doc.at("rows")) {
      report.rows.push_back({row.at("r").get<double>(), row.at("exceed_count").get<std::uint64_t>(),
                             row.at("empirical").get<double>(), row.at("ci_low").get<double>(),
                             row.at("ci_high").get<double>(), row.at("bound").get<double>()});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  return report;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string tail_report_csv(const mc::TailReport& report) {
  std::string out = "r,exceed_count,empirical,ci_low,ci_high,bound\n";
  for (const auto& row : report.rows) {
    out += format_number(row.r) + "," + std::to_string(row.exceed_count) + "," + format_number(row.empirical) +
           "," + format_number(row.ci_low) + "," + format_number(row.ci_high) + "," +
           format_number(row.theory_bound) + "\n";
  }
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

}  // namespace catzero::io
