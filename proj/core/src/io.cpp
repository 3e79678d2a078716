#include "lociso/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "lociso/error.hpp"

namespace lociso {

void write_structure(std::ostream& out, const Structure& m) {
  out << "lociso-structure v1\nlanguage";
  for (const Symbol& s : m.language().symbols()) out << ' ' << s.name << '/' << s.arity;
  out << "\nelements\n";
  for (ElementId e : m.canonical_order()) out << m.id(e) << '\n';
  out << "frontier\n";
  for (ElementId e : m.frontier()) out << m.id(e) << '\n';
  out << "tuples\n";
  std::vector<TupleId> order(m.tuple_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](TupleId a, TupleId b) {
    if (m.tuple_symbol(a) != m.tuple_symbol(b)) return m.tuple_symbol(a) < m.tuple_symbol(b);
    auto x = m.tuple_args(a), y = m.tuple_args(b);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), [&](ElementId p, ElementId q) {
      return m.canonical_rank(p) < m.canonical_rank(q);
    });
  });
  for (TupleId t : order) {
    out << m.language()[m.tuple_symbol(t)].name << '(';
    bool first = true;
    for (ElementId a : m.tuple_args(t)) {
      if (!first) out << ',';
      out << m.id(a);
      first = false;
    }
    out << ")\n";
  }
  out << "end\n";
}

std::string write_structure(const Structure& m) {
  std::ostringstream out;
  write_structure(out, m);
  return out.str();
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, std::size_t column, const std::string& what) {
  fail(Errc::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool valid_symbol_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return !std::isdigit(static_cast<unsigned char>(s.front()));
}

}  // namespace

RawStructure parse_structure(std::string_view text) {
  RawStructure raw;
  enum class Section { Header, Language, Elements, Frontier, Tuples, Done } section = Section::Header;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const char* line_start = text.data() + pos;
    std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    // 1-based column of a position inside the current line.
    auto column = [&](std::string_view at) { return static_cast<std::size_t>(at.data() - line_start) + 1; };
    if (line.empty() || line.front() == '#') {
      if (nl == text.size()) break;
      continue;
    }
    if (section == Section::Done) parse_fail(line_no, column(line), "content after 'end'");
    if (section == Section::Header) {
      if (line != "lociso-structure v1") parse_fail(line_no, column(line), "expected header 'lociso-structure v1'");
      section = Section::Language;
    } else if (section == Section::Language) {
      if (line.substr(0, 8) != "language") parse_fail(line_no, column(line), "expected 'language' line");
      std::string_view rest = line.substr(8);
      while (true) {
        std::size_t b = rest.find_first_not_of(" \t");
        if (b == std::string_view::npos) break;
        std::size_t e = rest.find_first_of(" \t", b);
        std::string_view tok = rest.substr(b, e == std::string_view::npos ? rest.npos : e - b);
        rest = e == std::string_view::npos ? std::string_view{} : rest.substr(e);
        std::string item(tok);
        auto slash = item.find('/');
        if (slash == std::string::npos) parse_fail(line_no, column(tok), "symbol '" + item + "' lacks '/arity'");
        std::string name = item.substr(0, slash);
        if (!valid_symbol_name(name)) parse_fail(line_no, column(tok), "bad symbol name '" + name + "'");
        std::uint32_t arity = 0;
        try {
          std::size_t used = 0;
          unsigned long a = std::stoul(item.substr(slash + 1), &used);
          if (used != item.size() - slash - 1) throw std::invalid_argument("trailing");
          arity = static_cast<std::uint32_t>(a);
        } catch (const std::exception&) {
          parse_fail(line_no, column(tok) + slash + 1, "bad arity in '" + item + "'");
        }
        try {
          raw.language.add(name, arity);
        } catch (const Error& e) {
          parse_fail(line_no, column(tok), e.what());
        }
      }
      section = Section::Elements;
    } else if (line == "elements" && section == Section::Elements) {
      continue;
    } else if (line == "frontier" && (section == Section::Elements)) {
      section = Section::Frontier;
    } else if (line == "tuples" && (section == Section::Frontier || section == Section::Elements)) {
      section = Section::Tuples;
    } else if (line == "end") {
      section = Section::Done;
    } else if (section == Section::Elements) {
      if (line.find_first_of(" \t(),") != std::string_view::npos)
        parse_fail(line_no, column(line.substr(line.find_first_of(" \t(),"))), "bad element id");
      raw.elements.emplace_back(line);
    } else if (section == Section::Frontier) {
      if (line.find_first_of(" \t(),") != std::string_view::npos)
        parse_fail(line_no, column(line.substr(line.find_first_of(" \t(),"))), "bad frontier id");
      raw.frontier.emplace_back(line);
    } else if (section == Section::Tuples) {
      auto open = line.find('(');
      if (open == std::string_view::npos || line.back() != ')') parse_fail(line_no, column(line), "expected symbol(args)");
      RawTuple t;
      t.symbol = std::string(trim(line.substr(0, open)));
      std::string_view inner = line.substr(open + 1, line.size() - open - 2);
      std::size_t p = 0;
      while (true) {
        std::size_t comma = inner.find(',', p);
        std::string_view arg = trim(inner.substr(p, comma == std::string_view::npos ? inner.npos : comma - p));
        if (arg.empty()) parse_fail(line_no, column(inner.substr(p)), "empty tuple argument");
        t.args.emplace_back(arg);
        if (comma == std::string_view::npos) break;
        p = comma + 1;
      }
      raw.tuples.push_back(std::move(t));
    } else {
      parse_fail(line_no, column(line), "unexpected line '" + std::string(line) + "'");
    }
    if (nl == text.size()) break;
  }
  if (section != Section::Done) parse_fail(line_no, 1, "missing 'end'");
  return raw;
}

Structure read_structure(std::string_view text) { return validate_structure(parse_structure(text)); }

Structure read_structure(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_structure(buf.str());
}

Structure load_structure(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::InvalidArgument, "cannot open '" + path + "'");
  return read_structure(in);
}

void save_structure(const std::string& path, const Structure& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::InvalidArgument, "cannot write '" + path + "'");
  write_structure(out, m);
}

}  // namespace lociso
