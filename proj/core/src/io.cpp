#include "regdecomp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

namespace regdecomp {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw io_error(msg); }

[[noreturn]] void fail_line(std::size_t line, const std::string& msg) {
  fail("line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& token, std::size_t line) {
  const std::string t = trim(token);
  if (t.empty()) fail_line(line, "empty numeric field");
  double out = 0.0;
  const char* begin = t.data();
  const char* end = begin + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) {
    fail_line(line, "cannot parse '" + t + "' as a decimal");
  }
  if (!std::isfinite(out)) fail_line(line, "non-finite value '" + t + "'");
  return out;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) lines.push_back(current);
  return lines;
}

}  // namespace

StepTensor parse_csv_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  const auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) {
      if (li + 1 == lines.size()) break;
      fail_line(li + 1, "blank row inside the matrix");
    }
    std::vector<double> row;
    std::stringstream ss(lines[li]);
    std::string field;
    while (std::getline(ss, field, ',')) {
      row.push_back(parse_double(field, li + 1));
    }
    if (lines[li].back() == ',') fail_line(li + 1, "trailing comma");
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail_line(li + 1, "row length differs from the first row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail("empty CSV matrix");
  if (rows.size() != rows.front().size()) {
    fail("CSV matrix must be square: " + std::to_string(rows.size()) +
         " rows of " + std::to_string(rows.front().size()) + " columns");
  }
  const int n = static_cast<int>(rows.size());
  std::vector<double> values;
  values.reserve(rows.size() * rows.size());
  for (const auto& row : rows) {
    values.insert(values.end(), row.begin(), row.end());
  }
  return StepTensor(2, n, Measure::kProbability, std::move(values));
}

StepTensor parse_edge_list(const std::string& text) {
  std::vector<std::pair<long, long>> edges;
  long max_vertex = -1;
  const auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string line = trim(lines[li]);
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b, extra;
    if (!(ss >> a >> b) || (ss >> extra)) {
      fail_line(li + 1, "expected exactly two vertex indices");
    }
    auto parse_vertex = [&](const std::string& tok) {
      long v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size() || v < 0) {
        fail_line(li + 1, "cannot parse '" + tok + "' as a vertex index");
      }
      return v;
    };
    const long u = parse_vertex(a);
    const long v = parse_vertex(b);
    max_vertex = std::max({max_vertex, u, v});
    edges.emplace_back(u, v);
  }
  if (edges.empty()) fail("empty edge list");
  const long n = max_vertex + 1;
  const std::size_t cells = cell_count_for(2, static_cast<int>(n));
  std::vector<double> values(cells, 0.0);
  for (const auto& [u, v] : edges) {
    values[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) +
           static_cast<std::size_t>(v)] = 1.0;
    values[static_cast<std::size_t>(v) * static_cast<std::size_t>(n) +
           static_cast<std::size_t>(u)] = 1.0;
  }
  return StepTensor(2, static_cast<int>(n), Measure::kProbability,
                    std::move(values));
}

nlohmann::json tensor_to_json(const StepTensor& t) {
  nlohmann::json j;
  j["order"] = t.order();
  j["resolution"] = t.resolution();
  j["measure"] =
      t.measure() == Measure::kProbability ? "probability" : "counting";
  j["values"] = t.values();
  return j;
}

StepTensor tensor_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail("tensor JSON must be an object");
  for (const char* key : {"order", "resolution", "measure", "values"}) {
    if (!j.contains(key)) {
      fail(std::string("tensor JSON lacks the '") + key + "' key");
    }
  }
  if (!j["order"].is_number_integer() || !j["resolution"].is_number_integer()) {
    fail("tensor JSON order and resolution must be integers");
  }
  const auto order = j["order"].get<std::int64_t>();
  const auto resolution = j["resolution"].get<std::int64_t>();
  if (order < 1 || resolution < 1 || order > 64 || resolution > (1 << 26)) {
    fail("tensor JSON order/resolution out of range");
  }
  if (!j["measure"].is_string()) fail("tensor JSON measure must be a string");
  const auto measure_name = j["measure"].get<std::string>();
  Measure measure = Measure::kProbability;
  if (measure_name == "counting") {
    measure = Measure::kCounting;
  } else if (measure_name != "probability") {
    fail("tensor JSON measure must be 'probability' or 'counting'");
  }
  if (!j["values"].is_array()) fail("tensor JSON values must be an array");
  std::size_t cells = 0;
  try {
    cells = cell_count_for(static_cast<int>(order), static_cast<int>(resolution));
  } catch (const precondition_error& e) {
    fail(std::string("tensor JSON dimensions unsupported: ") + e.what());
  }
  if (j["values"].size() != cells) {
    fail("tensor JSON values length " + std::to_string(j["values"].size()) +
         " does not match resolution^order = " + std::to_string(cells));
  }
  std::vector<double> values;
  values.reserve(cells);
  for (const auto& v : j["values"]) {
    if (!v.is_number()) fail("tensor JSON values must all be numbers");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail("tensor JSON values must be finite");
    values.push_back(x);
  }
  return StepTensor(static_cast<int>(order), static_cast<int>(resolution),
                    measure, std::move(values));
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail("read failure on '" + path + "'");
  return buffer.str();
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

TensorFormat sniff(const std::string& path, const std::string& text) {
  if (has_suffix(path, ".json")) return TensorFormat::kJson;
  if (has_suffix(path, ".csv")) return TensorFormat::kCsv;
  for (const auto& line : split_lines(text)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '{') return TensorFormat::kJson;
    if (t.find(',') != std::string::npos) return TensorFormat::kCsv;
    return TensorFormat::kEdgeList;
  }
  fail("'" + path + "' is empty");
}

}  // namespace

StepTensor ingest(const std::string& path, TensorFormat format) {
  const std::string text = read_file(path);
  if (format == TensorFormat::kAuto) format = sniff(path, text);
  switch (format) {
    case TensorFormat::kCsv:
      return parse_csv_matrix(text);
    case TensorFormat::kEdgeList:
      return parse_edge_list(text);
    case TensorFormat::kJson: {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("JSON parse failure in '") + path + "': " + e.what());
      }
      return tensor_from_json(j);
    }
    case TensorFormat::kAuto:
      break;
  }
  fail("unresolved tensor format for '" + path + "'");
}

void write_tensor_json(const StepTensor& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot open '" + path + "' for writing");
  out << tensor_to_json(t).dump(2) << '\n';
  if (!out) fail("write failure on '" + path + "'");
}

}  // namespace regdecomp
