#include "basket/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "basket/stats.hpp"

namespace basket {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Splits one CSV record. Fields may be double-quoted; a doubled quote inside
// a quoted field is a literal quote. Unquoted fields are trimmed.
std::vector<std::string> split_csv_line(const std::string& line, const std::string& where) {
  std::vector<std::string> fields;
  size_t i = 0;
  const size_t n = line.size();
  while (true) {
    std::string field;
    // Skip leading blanks before a potential quote.
    size_t start = i;
    while (start < n && (line[start] == ' ' || line[start] == '\t')) ++start;
    if (start < n && line[start] == '"') {
      i = start + 1;
      bool closed = false;
      while (i < n) {
        if (line[i] == '"') {
          if (i + 1 < n && line[i + 1] == '"') {
            field.push_back('"');
            i += 2;
          } else {
            ++i;
            closed = true;
            break;
          }
        } else {
          field.push_back(line[i]);
          ++i;
        }
      }
      if (!closed) throw std::runtime_error(where + ": unterminated quoted field");
      while (i < n && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i < n && line[i] != ',') {
        throw std::runtime_error(where + ": unexpected text after closing quote");
      }
    } else {
      while (i < n && line[i] != ',') {
        field.push_back(line[i]);
        ++i;
      }
      field = trim(field);
    }
    fields.push_back(std::move(field));
    if (i >= n) break;
    ++i;  // past the comma
    if (i == n) {  // trailing comma: one final empty field
      fields.emplace_back();
      break;
    }
  }
  return fields;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

bool blank(const std::string& line) { return trim(line).empty(); }

long long parse_int(const std::string& text, const std::string& where, const std::string& what) {
  const std::string t = trim(text);
  if (t.empty()) throw std::runtime_error(where + ": empty " + what + " value");
  size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(t, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error(where + ": " + what + " value '" + t + "' is not an integer");
  }
  if (pos != t.size()) {
    throw std::runtime_error(where + ": " + what + " value '" + t + "' is not an integer");
  }
  return value;
}

double parse_double(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  if (t.empty()) throw std::runtime_error(where + ": empty numeric value");
  size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error(where + ": value '" + t + "' is not a number");
  }
  if (pos != t.size()) throw std::runtime_error(where + ": value '" + t + "' is not a number");
  return value;
}

// Maps lowercased header names to column indexes.
std::map<std::string, size_t> header_index(const std::vector<std::string>& header) {
  std::map<std::string, size_t> index;
  for (size_t c = 0; c < header.size(); ++c) {
    const std::string key = lower(trim(header[c]));
    if (!key.empty() && index.find(key) == index.end()) index[key] = c;
  }
  return index;
}

size_t find_column(const std::map<std::string, size_t>& index,
                   const std::vector<std::string>& aliases, const std::string& where,
                   const std::string& required_desc) {
  for (const auto& alias : aliases) {
    const auto it = index.find(alias);
    if (it != index.end()) return it->second;
  }
  throw std::runtime_error(where + ": missing required column '" + aliases.front() + "' (" +
                           required_desc + ")");
}

std::string cell(const std::vector<std::string>& fields, size_t col, const std::string& where) {
  if (col >= fields.size()) {
    throw std::runtime_error(where + ": row has too few fields");
  }
  return fields[col];
}

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Quotes a CSV field only when it needs it.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace

DataFormat data_format_from_string(const std::string& s) {
  if (s == "wide") return DataFormat::wide;
  if (s == "long") return DataFormat::long_format;
  throw std::invalid_argument("unknown data format '" + s + "' (expected wide or long)");
}

TrialData ingest_csv(const std::string& path, DataFormat format) {
  const std::vector<std::string> lines = read_lines(path);
  size_t first = 0;
  while (first < lines.size() && blank(lines[first])) ++first;
  if (first == lines.size()) throw std::runtime_error(path + ": no header row found");
  const std::string header_where = path + " line " + std::to_string(first + 1);
  const auto header = header_index(split_csv_line(lines[first], header_where));

  TrialData data;
  if (format == DataFormat::wide) {
    const size_t name_col = find_column(header, {"basket", "baskets"}, header_where,
                                        "wide format needs basket, responders, evaluable");
    const size_t resp_col = find_column(header, {"responders"}, header_where,
                                        "wide format needs basket, responders, evaluable");
    const size_t size_col = find_column(header, {"evaluable"}, header_where,
                                        "wide format needs basket, responders, evaluable");
    std::set<std::string> seen;
    for (size_t r = first + 1; r < lines.size(); ++r) {
      if (blank(lines[r])) continue;
      const std::string where = path + " line " + std::to_string(r + 1);
      const auto fields = split_csv_line(lines[r], where);
      const std::string name = cell(fields, name_col, where);
      if (name.empty()) throw std::runtime_error(where + ": empty basket name");
      if (!seen.insert(name).second) {
        throw std::runtime_error(where + ": duplicate basket name '" + name + "'");
      }
      const long long responders = parse_int(cell(fields, resp_col, where), where, "responders");
      const long long evaluable = parse_int(cell(fields, size_col, where), where, "evaluable");
      if (evaluable <= 0) {
        throw std::runtime_error(where + ": basket '" + name + "' has evaluable=" +
                                 std::to_string(evaluable) + " (must be positive)");
      }
      if (responders < 0) {
        throw std::runtime_error(where + ": basket '" + name + "' has negative responders");
      }
      if (responders > evaluable) {
        throw std::runtime_error(where + ": basket '" + name + "' has responders=" +
                                 std::to_string(responders) + " exceeding evaluable=" +
                                 std::to_string(evaluable));
      }
      data.basket_names.push_back(name);
      data.responses.push_back(static_cast<int>(responders));
      data.sizes.push_back(static_cast<int>(evaluable));
    }
  } else {
    const size_t name_col = find_column(header, {"basket", "baskets"}, header_where,
                                        "long format needs basket, responder");
    const size_t resp_col = find_column(header, {"responder", "response"}, header_where,
                                        "long format needs basket, responder");
    std::map<std::string, size_t> slot;  // basket name -> index, first appearance
    for (size_t r = first + 1; r < lines.size(); ++r) {
      if (blank(lines[r])) continue;
      const std::string where = path + " line " + std::to_string(r + 1);
      const auto fields = split_csv_line(lines[r], where);
      const std::string name = cell(fields, name_col, where);
      if (name.empty()) throw std::runtime_error(where + ": empty basket name");
      const long long outcome = parse_int(cell(fields, resp_col, where), where, "responder");
      if (outcome != 0 && outcome != 1) {
        throw std::runtime_error(where + ": responder value must be 0 or 1, got " +
                                 std::to_string(outcome));
      }
      auto it = slot.find(name);
      if (it == slot.end()) {
        it = slot.emplace(name, data.basket_names.size()).first;
        data.basket_names.push_back(name);
        data.responses.push_back(0);
        data.sizes.push_back(0);
      }
      data.responses[it->second] += static_cast<int>(outcome);
      data.sizes[it->second] += 1;
    }
  }
  if (data.basket_names.empty()) throw std::runtime_error(path + ": no data rows found");
  try {
    data.validate();
  } catch (const std::exception& err) {
    throw std::runtime_error(path + ": " + err.what());
  }
  return data;
}

Matrix prior_matrix_from_csv(const std::string& path, int baskets) {
  std::vector<std::string> lines;
  try {
    lines = read_lines(path);
  } catch (const std::exception& err) {
    throw std::invalid_argument(err.what());
  }
  Matrix grid;
  for (size_t r = 0; r < lines.size(); ++r) {
    if (blank(lines[r])) continue;
    const std::string where = path + " line " + std::to_string(r + 1);
    const auto fields = split_csv_line(lines[r], where);
    std::vector<double> row;
    row.reserve(fields.size());
    try {
      for (const auto& f : fields) row.push_back(parse_double(f, where));
    } catch (const std::exception& err) {
      throw std::invalid_argument(err.what());
    }
    if (static_cast<int>(row.size()) != baskets) {
      throw std::invalid_argument(where + ": expected " + std::to_string(baskets) +
                                  " columns, got " + std::to_string(row.size()));
    }
    grid.push_back(std::move(row));
  }
  if (static_cast<int>(grid.size()) != baskets) {
    throw std::invalid_argument(path + ": expected " + std::to_string(baskets) + " rows, got " +
                                std::to_string(grid.size()));
  }
  return grid;
}

std::string exchangeogram_svg(const Matrix& matrix, const std::vector<std::string>& names) {
  const int J = static_cast<int>(matrix.size());
  if (J < 1) throw std::invalid_argument("exchangeogram needs at least one basket");
  if (names.size() != matrix.size()) {
    throw std::invalid_argument("exchangeogram name count does not match the matrix");
  }
  for (const auto& row : matrix) {
    if (row.size() != matrix.size()) throw std::invalid_argument("exchangeogram matrix not square");
  }

  size_t longest = 0;
  for (const auto& n : names) longest = std::max(longest, n.size());
  const int cell_px = 64;
  const int left = 16 + 8 * static_cast<int>(longest);
  const int top = 12;
  const int width = left + J * cell_px + 20;
  const int height = top + J * cell_px + 80;

  std::string svg;
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                "viewBox=\"0 0 %d %d\" font-family=\"Helvetica, Arial, sans-serif\">\n",
                width, height, width, height);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"#ffffff\"/>\n", width,
                height);
  svg += buf;

  for (int i = 0; i < J; ++i) {
    // Row label, right-aligned against the first column.
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" text-anchor=\"end\" font-size=\"13\" "
                  "fill=\"#000000\">%s</text>\n",
                  left - 8, top + i * cell_px + 37, escape_xml(names[static_cast<size_t>(i)]).c_str());
    svg += buf;
    for (int j = 0; j <= i; ++j) {
      double v = matrix[static_cast<size_t>(i)][static_cast<size_t>(j)];
      const double vc = std::min(1.0, std::max(0.0, v));
      // Linear ramp from white to a deep blue.
      const int r = static_cast<int>(std::lround(255.0 - vc * (255.0 - 8.0)));
      const int g = static_cast<int>(std::lround(255.0 - vc * (255.0 - 81.0)));
      const int b = static_cast<int>(std::lround(255.0 - vc * (255.0 - 156.0)));
      const int x = left + j * cell_px;
      const int y = top + i * cell_px;
      const char* text_fill = vc > 0.55 ? "#ffffff" : "#000000";
      std::snprintf(buf, sizeof(buf),
                    "<g data-row=\"%d\" data-col=\"%d\"><rect x=\"%d\" y=\"%d\" width=\"%d\" "
                    "height=\"%d\" fill=\"rgb(%d,%d,%d)\" stroke=\"#ffffff\" stroke-width=\"1\"/>"
                    "<text x=\"%d\" y=\"%d\" text-anchor=\"middle\" font-size=\"14\" "
                    "fill=\"%s\">%.2f</text></g>\n",
                    i, j, x, y, cell_px, cell_px, r, g, b, x + cell_px / 2, y + cell_px / 2 + 5,
                    text_fill, v);
      svg += buf;
    }
  }
  for (int j = 0; j < J; ++j) {
    const int cx = left + j * cell_px + cell_px / 2;
    const int by = top + J * cell_px + 16;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" text-anchor=\"end\" font-size=\"13\" fill=\"#000000\" "
                  "transform=\"rotate(-55 %d %d)\">%s</text>\n",
                  cx, by, cx, by, escape_xml(names[static_cast<size_t>(j)]).c_str());
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

std::string densities_csv(const MemFit& fit, const ClusterAssignment& assignment,
                          int grid_points) {
  std::string out = "entity_type,entity_name,x,density\n";
  char buf[128];
  const auto emit = [&](const std::string& type, const std::string& name,
                        const std::vector<double>& draws) {
    const auto curve = kde_curve(draws, grid_points);
    const std::string prefix = type + "," + csv_field(name) + ",";
    for (const auto& [x, density] : curve) {
      std::snprintf(buf, sizeof(buf), "%.9g,%.9g\n", x, density);
      out += prefix + buf;
    }
  };
  for (size_t j = 0; j < fit.pi_draws.size(); ++j) {
    emit("basket", fit.data.basket_names[j], fit.pi_draws[j]);
  }
  for (size_t c = 0; c < assignment.clusters.size(); ++c) {
    std::vector<double> pooled;
    for (int m : assignment.clusters[c]) {
      const auto& draws = fit.pi_draws[static_cast<size_t>(m)];
      pooled.insert(pooled.end(), draws.begin(), draws.end());
    }
    emit("cluster", assignment.labels[c], pooled);
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace basket
