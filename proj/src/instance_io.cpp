#include "obsel/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace obsel {

using nlohmann::json;

namespace {

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

Position position_of(std::string_view text, std::size_t byte) {
  Position pos;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

// Line of the first occurrence of "key", or 1 if absent.
std::size_t key_line(std::string_view text, std::string_view key) {
  std::string quoted = "\"" + std::string(key) + "\"";
  auto at = text.find(quoted);
  return at == std::string_view::npos ? 1 : position_of(text, at).line;
}

class Loader {
 public:
  explicit Loader(std::string_view text) : text_(text) {}

  Instance run() {
    json doc;
    try {
      doc = json::parse(text_.begin(), text_.end());
    } catch (const json::parse_error& e) {
      // nlohmann reports the byte *after* the offending character.
      Position pos = position_of(text_, e.byte == 0 ? 0 : e.byte - 1);
      throw ParseError(pos.line, pos.column, e.what());
    }
    if (!doc.is_object()) fail("", "instance must be a JSON object");

    std::size_t n = positive(doc, "n");
    std::size_t m = positive(doc, "m");

    std::vector<Edge> edges;
    const json& jedges = require(doc, "edges");
    if (!jedges.is_array()) fail("edges", "\"edges\" must be an array");
    for (const json& pair : jedges) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
          !pair[1].is_number_integer()) {
        fail("edges", "each edge must be a pair of integers [from, to]");
      }
      auto from = pair[0].get<long long>();
      auto to = pair[1].get<long long>();
      if (from < 1 || to < 1 || static_cast<std::size_t>(from) > n ||
          static_cast<std::size_t>(to) > n) {
        fail("edges", "edge [" + std::to_string(from) + ", " + std::to_string(to) +
                          "] out of range for n=" + std::to_string(n));
      }
      edges.push_back({static_cast<Index>(from - 1), static_cast<Index>(to - 1)});
    }

    std::vector<std::string> labels;
    if (doc.contains("labels")) {
      const json& jl = doc["labels"];
      if (!jl.is_array()) fail("labels", "\"labels\" must be an array of strings");
      for (const json& l : jl) {
        if (!l.is_string()) fail("labels", "\"labels\" must be an array of strings");
        labels.push_back(l.get<std::string>());
      }
    }

    const json& jcosts = require(doc, "costs");
    if (!jcosts.is_array()) fail("costs", "\"costs\" must be an array of rows");
    if (jcosts.size() != m) {
      fail("costs", "\"costs\" has " + std::to_string(jcosts.size()) + " rows, expected m=" +
                        std::to_string(m));
    }
    std::vector<CostMatrix::Entry> entries;
    entries.reserve(m * n);
    for (std::size_t i = 0; i < m; ++i) {
      const json& row = jcosts[i];
      if (!row.is_array() || row.size() != n) {
        fail("costs", "cost row " + std::to_string(i + 1) + " must have n=" +
                          std::to_string(n) + " entries");
      }
      for (const json& v : row) {
        if (v.is_null()) {
          entries.emplace_back(std::nullopt);
        } else if (v.is_number()) {
          entries.emplace_back(v.get<double>());
        } else {
          fail("costs", "cost entries must be numbers or null");
        }
      }
    }

    try {
      StructuredSystem system(n, std::move(edges), std::move(labels));
      CostMatrix costs(m, n, std::move(entries));
      return Instance{std::move(system), std::move(costs)};
    } catch (const ValidationError& e) {
      std::string what = e.what();
      std::string_view key = what.find("label") != std::string::npos  ? "labels"
                             : what.find("edge") != std::string::npos ? "edges"
                                                                      : "costs";
      fail(key, what);
    }
  }

 private:
  [[noreturn]] void fail(std::string_view key, const std::string& what) const {
    std::size_t line = key.empty() ? 1 : key_line(text_, key);
    throw ValidationError("line " + std::to_string(line) + ": " + what);
  }

  const json& require(const json& doc, const char* key) const {
    if (!doc.contains(key)) fail("", std::string("missing required field \"") + key + "\"");
    return doc[key];
  }

  std::size_t positive(const json& doc, const char* key) const {
    const json& v = require(doc, key);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
      fail(key, std::string("\"") + key + "\" must be a positive integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
  }

  std::string_view text_;
};

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
            what),
      line_(line),
      column_(column) {}

void check_dimensions(const StructuredSystem& system, const CostMatrix& costs) {
  if (system.size() != costs.states()) {
    throw ValidationError("cost matrix covers " + std::to_string(costs.states()) +
                          " states but the system has n=" + std::to_string(system.size()));
  }
}

Instance load_system(std::string_view text) { return Loader(text).run(); }

Instance load_system_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_system(buf.str());
}

std::string dump_system(const Instance& instance) {
  const StructuredSystem& sys = instance.system;
  const CostMatrix& c = instance.costs;
  std::ostringstream out;
  out << "{\n  \"n\": " << sys.size() << ",\n  \"edges\": [";
  bool first = true;
  for (const Edge& e : sys.edges()) {
    out << (first ? "" : ", ") << '[' << e.from + 1 << ", " << e.to + 1 << ']';
    first = false;
  }
  out << "],\n  \"m\": " << c.sensors() << ",\n  \"costs\": [\n";
  for (std::size_t i = 0; i < c.sensors(); ++i) {
    out << "    [";
    for (std::size_t j = 0; j < c.states(); ++j) {
      const auto& e = c.at(i, j);
      out << (j ? ", " : "") << (e ? json(*e).dump() : "null");
    }
    out << ']' << (i + 1 < c.sensors() ? ",\n" : "\n");
  }
  out << "  ]";
  if (sys.has_custom_labels()) {
    out << ",\n  \"labels\": [";
    for (std::size_t i = 0; i < sys.size(); ++i) {
      out << (i ? ", " : "") << json(sys.label(i)).dump();
    }
    out << ']';
  }
  out << "\n}\n";
  return out.str();
}

std::uint64_t instance_digest(const Instance& instance) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : dump_system(instance)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace obsel
