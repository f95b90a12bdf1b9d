#include "hamlie/specfile.hpp"

#include <fstream>
#include <sstream>

namespace hamlie {

namespace {

struct Line {
  int number;
  std::string key, value;
  int value_col;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (blank) continue;
    if (eq == std::string::npos) throw ParseError("expected key = value", number, 1);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    Line l;
    l.number = number;
    l.key = trim(line.substr(0, eq));
    l.value = trim(line.substr(eq + 1));
    l.value_col = static_cast<int>(eq) + 2;
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<std::string> split_top_level(const std::string& s, char open, char close, char sep,
                                         int line, int col) {
  if (s.empty() || s.front() != open || s.back() != close)
    throw ParseError("expected a bracketed list", line, col);
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    char c = s[k];
    if (c == open || c == '(') ++depth;
    if (c == close || c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

} // namespace

AlgebraSpecDocument parse_spec(const std::string& text) {
  AlgebraSpecDocument doc;
  bool saw_shape = false;
  std::vector<std::pair<Line, std::string>> basis_pending;
  Field field = Field::rational();
  std::vector<Line> lines = split_lines(text);

  // field first so basis entries can mention sqrt(d)
  for (const auto& l : lines) {
    if (l.key != "field") continue;
    if (l.value == "rational") {
      field = Field::rational();
    } else if (l.value.rfind("quadratic:", 0) == 0) {
      try {
        field = Field::quadratic(std::stol(l.value.substr(10)));
      } catch (const std::exception& e) {
        throw ParseError(std::string("bad field: ") + e.what(), l.number, l.value_col);
      }
    } else {
      throw ParseError("field must be 'rational' or 'quadratic:<d>'", l.number, l.value_col);
    }
  }
  doc.field = field;

  for (const auto& l : lines) {
    if (l.key == "field") continue;
    if (l.key == "name") {
      doc.name = l.value;
    } else if (l.key == "shape.l") {
      auto parts = split_top_level(l.value, '[', ']', ',', l.number, l.value_col);
      if (parts.size() != 7)
        throw ParseError("shape.l needs exactly 7 entries", l.number, l.value_col);
      for (int k = 0; k < 7; ++k) {
        try {
          doc.l[k] = std::stoi(parts[k]);
        } catch (const std::exception&) {
          throw ParseError("bad shape entry '" + parts[k] + "'", l.number, l.value_col);
        }
      }
      saw_shape = true;
    } else if (l.key == "gamma.basis") {
      auto rows = split_top_level(l.value, '[', ']', ',', l.number, l.value_col);
      for (const auto& row : rows) {
        auto entries = split_top_level(row, '[', ']', ',', l.number, l.value_col);
        GroupVector v;
        for (const auto& e : entries) {
          try {
            v.push_back(parse_scalar(e, field));
          } catch (const ParseError& pe) {
            throw ParseError(std::string("bad basis entry: ") + pe.what(), l.number, l.value_col);
          }
        }
        doc.basis.push_back(std::move(v));
      }
    } else {
      throw ParseError("unknown key '" + l.key + "'", l.number, 1);
    }
  }
  if (!saw_shape) throw ParseError("missing shape.l", 1, 1);
  int dim = 0;
  for (int k = 0; k < 7; ++k) dim += doc.l[k];
  dim *= 2;
  for (std::size_t k = 0; k < doc.basis.size(); ++k)
    if (static_cast<int>(doc.basis[k].size()) != dim)
      throw ParseError("basis row " + std::to_string(k + 1) + " has length " +
                           std::to_string(doc.basis[k].size()) + ", expected " +
                           std::to_string(dim),
                       1, 1);
  return doc;
}

std::string format_spec(const AlgebraSpecDocument& doc) {
  std::string out;
  if (!doc.name.empty()) out += "name = " + doc.name + "\n";
  out += "shape.l = [";
  for (int k = 0; k < 7; ++k) out += (k ? "," : "") + std::to_string(doc.l[k]);
  out += "]\n";
  out += "field = " + doc.field.str() + "\n";
  out += "gamma.basis = [";
  for (std::size_t r = 0; r < doc.basis.size(); ++r) {
    out += r ? ",[" : "[";
    for (std::size_t c = 0; c < doc.basis[r].size(); ++c)
      out += (c ? "," : "") + doc.basis[r][c].display();
    out += "]";
  }
  out += "]\n";
  return out;
}

AlgebraPtr spec_to_algebra(const AlgebraSpecDocument& doc) {
  Shape s = Shape::build(doc.l);
  return Algebra::make(Lattice::build(s, doc.field, doc.basis));
}

AlgebraSpecDocument load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

} // namespace hamlie
