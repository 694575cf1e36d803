#include "p2rigid/groupfile.hpp"

#include <cctype>
#include <sstream>

#include "p2rigid/errors.hpp"

namespace p2r {

namespace {

class ExprParser {
 public:
  ExprParser(const std::string& s, int conductor, int line, int column)
      : s_(s), n_(conductor), line_(line), column_(column) {}

  CycloNum parse() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    CycloNum v = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, column_ + static_cast<int>(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  long integer(bool allow_sign) {
    skip();
    bool neg = false;
    if (allow_sign && pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 15) fail("integer literal too long");
    const long v = std::stol(s_.substr(start, pos_ - start));
    return neg ? -v : v;
  }

  CycloNum expr() {
    CycloNum v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  CycloNum term() {
    CycloNum v = unary();
    while (eat('*')) v *= unary();
    return v;
  }

  CycloNum unary() {
    if (eat('-')) return -unary();
    skip();
    const bool is_z = pos_ < s_.size() && s_[pos_] == 'z';
    CycloNum v = atom();
    if (eat('^')) {
      const long e = integer(is_z);
      if (is_z) return CycloNum::zeta(n_, e);
      if (e > 64) fail("exponent too large");
      v = v.pow(e);
    }
    return v;
  }

  CycloNum atom() {
    skip();
    if (pos_ == s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == 'z') {
      ++pos_;
      return CycloNum::zeta(n_, 1);
    }
    if (c == '(') {
      ++pos_;
      CycloNum v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const long p = integer(false);
      long q = 1;
      if (eat('/')) {
        q = integer(false);
        if (q == 0) fail("zero denominator");
      }
      return CycloNum(Rational(p, q), n_).embed(n_);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  int n_;
  int line_;
  int column_;
  std::size_t pos_ = 0;
};

CycloNum parse_at(const std::string& text, int conductor, int line, int column) {
  return ExprParser(text, conductor, line, column).parse();
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

CycloNum parse_cyclo_expr(const std::string& text, int conductor) {
  if (conductor < 1 || conductor > kMaxConductor) throw ConductorError("conductor out of range");
  return parse_at(text, conductor, 1, 1);
}

GroupFile parse_group_file(const std::string& text) {
  GroupFile f;
  bool have_conductor = false;
  std::vector<std::array<std::array<CycloNum, 3>, 3>> grids;
  std::vector<int> grid_lines;
  int rows_in_current = 3;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    if (trim(line).empty()) continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", line_no, 1);
    const std::string key = trim(line.substr(0, colon));
    const std::string value = line.substr(colon + 1);
    const int value_col = static_cast<int>(colon) + 2;
    if (key == "conductor") {
      if (have_conductor) throw ParseError("duplicate conductor", line_no, 1);
      const std::string v = trim(value);
      if (v.empty() || v.size() > 9 || v.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("conductor must be a positive integer", line_no, value_col);
      const long n = std::stol(v);
      if (n < 1 || n > kMaxConductor)
        throw ConductorError("line " + std::to_string(line_no) + ": conductor " + v + " outside 1.." +
                             std::to_string(kMaxConductor));
      f.conductor = static_cast<int>(n);
      have_conductor = true;
    } else if (key == "generator") {
      if (!have_conductor) throw ParseError("generator before conductor", line_no, 1);
      if (!trim(value).empty()) throw ParseError("unexpected text after 'generator:'", line_no, value_col);
      if (rows_in_current != 3) throw ParseError("generator needs exactly three rows", line_no, 1);
      grids.emplace_back();
      grid_lines.push_back(line_no);
      rows_in_current = 0;
    } else if (key == "row") {
      if (grids.empty() || rows_in_current == 3) throw ParseError("row outside a generator block", line_no, 1);
      std::size_t start = colon + 1;
      int entry = 0;
      for (;;) {
        const std::size_t comma = line.find(',', start);
        const std::string piece = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (entry == 3) throw ParseError("row has more than three entries", line_no, static_cast<int>(start) + 1);
        grids.back()[rows_in_current][entry] = parse_at(piece, f.conductor, line_no, static_cast<int>(start) + 1);
        ++entry;
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (entry != 3) throw ParseError("row has fewer than three entries", line_no, static_cast<int>(line.size()));
      ++rows_in_current;
    } else {
      throw ParseError("unknown key '" + key + "'", line_no, 1);
    }
  }
  if (!have_conductor) throw ParseError("missing 'conductor:' line", line_no + 1, 1);
  if (grids.empty()) throw ParseError("no generators", line_no + 1, 1);
  if (rows_in_current != 3) throw ParseError("generator needs exactly three rows", line_no + 1, 1);
  for (std::size_t i = 0; i < grids.size(); ++i) {
    const Mat3 m = Mat3::from_rows(grids[i]).embed(f.conductor);
    if (det(m).is_zero())
      throw InputError("line " + std::to_string(grid_lines[i]) + ": generator " + std::to_string(i + 1) +
                       " is singular");
    f.generators.push_back(m);
  }
  return f;
}

std::string serialize_group_file(const GroupFile& f) {
  std::ostringstream out;
  out << "conductor: " << f.conductor << "\n";
  for (const auto& g : f.generators) {
    const Mat3 m = g.embed(f.conductor);
    out << "generator:\n";
    for (int i = 0; i < 3; ++i) {
      out << "row: ";
      for (int j = 0; j < 3; ++j) out << (j ? ", " : "") << m(i, j).embed(f.conductor).to_string();
      out << "\n";
    }
  }
  return out.str();
}

ProjPoint parse_point(const std::string& text, int conductor) {
  if (conductor < 1 || conductor > kMaxConductor) throw ConductorError("conductor out of range");
  Vec3 v;
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t comma = text.find(',', start);
    if ((i < 2) != (comma != std::string::npos)) throw ParseError("a point needs exactly three coordinates", 1, 1);
    v[i] = parse_at(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start), conductor, 1,
                    static_cast<int>(start) + 1);
    start = comma + 1;
  }
  return ProjPoint::normalize(v);
}

}  // namespace p2r
