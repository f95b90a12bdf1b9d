#include "hamlie/isofile.hpp"

#include <fstream>
#include <sstream>

namespace hamlie {

namespace {

std::vector<std::string> bracket_split(const std::string& s, int line) {
  if (s.empty() || s.front() != '[' || s.back() != ']')
    throw ParseError("expected a bracketed list", line, 1);
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    char c = s[k];
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

Mat parse_matrix(const std::string& value, int rows, int cols, const Field& field, int line,
                 const std::string& key) {
  auto row_texts = bracket_split(value, line);
  if (static_cast<int>(row_texts.size()) != rows)
    throw ParseError(key + " needs " + std::to_string(rows) + " rows", line, 1);
  Mat m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (int r = 0; r < rows; ++r) {
    auto cells = bracket_split(row_texts[static_cast<std::size_t>(r)], line);
    if (static_cast<int>(cells.size()) != cols)
      throw ParseError(key + " row " + std::to_string(r + 1) + " needs " + std::to_string(cols) +
                           " entries",
                       line, 1);
    for (int c = 0; c < cols; ++c)
      m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
          parse_scalar(cells[static_cast<std::size_t>(c)], field);
  }
  return m;
}

} // namespace

IsoDocument parse_iso(const std::string& text, const Shape& shape, const Field& field) {
  IsoDocument doc;
  doc.iso = identity_iso(shape);
  const auto& l = shape.l();

  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", number, 1);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));

    auto indexed = [&](const std::string& prefix) -> std::optional<int> {
      if (key.rfind(prefix + "[", 0) != 0 || key.back() != ']') return std::nullopt;
      return std::stoi(key.substr(prefix.size() + 1, key.size() - prefix.size() - 2));
    };

    if (key == "nu") {
      for (const auto& pair : bracket_split(value, number)) {
        std::string p = pair;
        if (p.empty() || p.front() != '(' || p.back() != ')')
          throw ParseError("nu entries are (p,q) pairs", number, 1);
        auto comma = p.find(',');
        int from = std::stoi(p.substr(1, comma - 1));
        int to = std::stoi(p.substr(comma + 1, p.size() - comma - 2));
        doc.iso.nu[from] = to;
      }
    } else if (auto p = indexed("a")) {
      doc.iso.ab.try_emplace(*p, Scalar(0), Scalar(1));
      doc.iso.ab[*p].first = parse_scalar(value, field);
    } else if (auto p = indexed("b")) {
      doc.iso.ab.try_emplace(*p, Scalar(0), Scalar(1));
      doc.iso.ab[*p].second = parse_scalar(value, field);
    } else if (key == "B15") {
      doc.iso.B15 = parse_matrix(value, l[0], l[4], field, number, key);
    } else if (key == "B25") {
      doc.iso.B25 = parse_matrix(value, l[1], l[4], field, number, key);
    } else if (key == "B55") {
      doc.iso.B55 = parse_matrix(value, l[4], l[4], field, number, key);
    } else if (key == "B16") {
      doc.iso.B16 = parse_matrix(value, l[0], l[5], field, number, key);
    } else if (key == "B26") {
      doc.iso.B26 = parse_matrix(value, l[1], l[5], field, number, key);
    } else if (key == "B36") {
      doc.iso.B36 = parse_matrix(value, l[2] + l[3], l[5], field, number, key);
    } else if (key == "B56") {
      doc.iso.B56 = parse_matrix(value, l[4], l[5], field, number, key);
    } else if (key == "B66") {
      doc.iso.B66 = parse_matrix(value, l[5], l[5], field, number, key);
    } else if (key == "chi") {
      Character chi;
      for (const auto& cell : bracket_split(value, number))
        chi.values.push_back(parse_scalar(cell, field));
      doc.chi = std::move(chi);
    } else {
      throw ParseError("unknown key '" + key + "'", number, 1);
    }
  }
  return doc;
}

IsoDocument load_iso_file(const std::string& path, const Shape& shape, const Field& field) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open iso file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_iso(ss.str(), shape, field);
}

} // namespace hamlie
