#include "idcalc/parse.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace idcalc {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;
  int line;

  explicit Cursor(std::string_view text, int line_no) : s(text), line(line_no) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, static_cast<int>(pos) + 1);
  }
  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    skip_ws();
    if (pos >= s.size() || !ident_start(s[pos])) fail("expected identifier");
    std::size_t start = pos;
    while (pos < s.size() && ident_char(s[pos])) ++pos;
    return std::string(s.substr(start, pos - start));
  }
  bool at_ident() {
    skip_ws();
    return pos < s.size() && ident_start(s[pos]);
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }

  // <vars> ::= '(' ')' | ident+
  std::vector<std::string> var_list() {
    skip_ws();
    if (pos < s.size() && s[pos] == '(') {
      ++pos;
      expect(')');
      return {};
    }
    std::vector<std::string> names;
    if (!at_ident()) fail("expected variable list or ()");
    while (at_ident()) names.push_back(ident());
    return names;
  }
};

Kind kind_from_keyword(const std::string& kw, const Cursor& cur) {
  if (kw == "dep") return Kind::Dep;
  if (kw == "ind") return Kind::Ind;
  if (kw == "abs") return Kind::AbsInd;
  if (kw == "cind") return Kind::CondInd;
  cur.fail("unknown atom kind '" + kw + "'");
}

Atom parse_atom_at(Cursor& cur, VarTable& vars) {
  Kind kind = kind_from_keyword(cur.ident(), cur);
  cur.expect('(');
  std::vector<std::vector<std::string>> comps;
  comps.push_back(cur.var_list());
  for (int i = 1; i < component_count(kind); ++i) {
    cur.expect(',');
    comps.push_back(cur.var_list());
  }
  cur.expect(')');
  try {
    return canonicalize(kind, comps, vars);
  } catch (const AtomError& e) {
    cur.fail(e.what());
  }
}

std::string strip_comment(std::string_view line) {
  auto hash = line.find('#');
  std::string out(hash == std::string_view::npos ? line : line.substr(0, hash));
  if (!out.empty() && out.back() == '\r') out.pop_back();
  return out;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c == ' ' || c == '\t'; });
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.emplace_back(text.substr(start));
      break;
    }
    lines.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

Atom parse_atom(std::string_view text, VarTable& vars, int line_no) {
  Cursor cur(text, line_no);
  Atom a = parse_atom_at(cur, vars);
  if (!cur.at_end()) cur.fail("trailing input after atom");
  return a;
}

std::string print_vars(Mask m, const VarTable& vars) {
  if (m == 0) return "()";
  std::vector<std::string> names;
  mask_for_each(m, [&](int id) { names.push_back(vars.name(id)); });
  std::sort(names.begin(), names.end());
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ' ';
    out += names[i];
  }
  return out;
}

std::string print_atom(const Atom& a, const VarTable& vars) {
  std::string out(kind_name(a.kind));
  out += '(';
  out += print_vars(a.lhs, vars);
  if (a.kind == Kind::CondInd) {
    out += ", ";
    out += print_vars(a.cond, vars);
  }
  if (a.kind != Kind::AbsInd) {
    out += ", ";
    out += print_vars(a.rhs, vars);
  }
  out += ')';
  return out;
}

Problem parse_problem(std::string_view text, VarTable& vars) {
  std::vector<Atom> sigma;
  std::optional<Atom> goal;
  int goal_line = 0;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = strip_comment(lines[i]);
    if (blank(line)) continue;
    int line_no = static_cast<int>(i) + 1;
    std::size_t turn = line.find("|-");
    if (turn != std::string::npos) {
      if (goal) throw ParseError("multiple |- lines", line_no, static_cast<int>(turn) + 1);
      std::string before = line.substr(0, turn);
      if (!blank(before)) throw ParseError("text before |-", line_no, 1);
      goal = parse_atom(line.substr(turn + 2), vars, line_no);
      goal_line = line_no;
    } else {
      if (goal) throw ParseError("premise after |- line", line_no, 1);
      sigma.push_back(parse_atom(line, vars, line_no));
    }
  }
  if (!goal) throw ParseError("missing |- query line", static_cast<int>(lines.size()), 1);
  for (const auto& a : sigma)
    if (a.kind != goal->kind)
      throw ParseError("mixed atom kinds in problem", goal_line, 1);
  return Problem::make(goal->kind, std::move(sigma), *goal);
}

std::string print_problem(const Problem& p, const VarTable& vars) {
  std::string out;
  for (const auto& a : p.sigma) {
    out += print_atom(a, vars);
    out += '\n';
  }
  out += "|- ";
  out += print_atom(p.goal, vars);
  out += '\n';
  return out;
}

std::vector<Atom> parse_atom_list(std::string_view text, VarTable& vars) {
  std::vector<Atom> atoms;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = strip_comment(lines[i]);
    if (blank(line)) continue;
    atoms.push_back(parse_atom(line, vars, static_cast<int>(i) + 1));
  }
  return atoms;
}

Team parse_team_csv(std::string_view text, VarTable& vars) {
  auto lines = split_lines(text);
  std::vector<std::vector<std::string>> records;
  for (auto& raw : lines) {
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      auto comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    records.push_back(std::move(fields));
  }
  if (records.empty()) throw ParseError("empty team file", 1, 1);

  const auto& header = records[0];
  if (header.empty() || (header.size() == 1 && header[0].empty()))
    throw ParseError("empty header", 1, 1);

  Mask domain = 0;
  std::vector<int> header_ids;
  auto valid_ident = [](const std::string& name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    for (char ch : name)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    return true;
  };
  for (const auto& name : header) {
    if (!valid_ident(name)) throw ParseError("header name '" + name + "' is not an identifier", 1, 1);
    int id = vars.intern(name);
    if (domain & bit(id)) throw ParseError("duplicate header name '" + name + "'", 1, 1);
    domain |= bit(id);
    header_ids.push_back(id);
  }

  // Reorder each record into ascending-variable-id column order.
  std::vector<int> sorted_ids = mask_ids(domain);
  std::vector<int> pos(vars.size(), -1);
  for (std::size_t c = 0; c < sorted_ids.size(); ++c) pos[sorted_ids[c]] = static_cast<int>(c);

  std::vector<std::vector<std::string>> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != header.size())
      throw ParseError("row has " + std::to_string(records[r].size()) + " fields, expected " +
                           std::to_string(header.size()),
                       static_cast<int>(r) + 1, 1);
    std::vector<std::string> row(header.size());
    for (std::size_t c = 0; c < header.size(); ++c)
      row[pos[header_ids[c]]] = records[r][c];
    rows.push_back(std::move(row));
  }
  return Team::make(domain, std::move(rows));
}

std::string print_team_csv(const Team& team, const VarTable& vars) {
  std::string out;
  for (std::size_t c = 0; c < team.cols.size(); ++c) {
    if (c) out += ',';
    out += vars.name(team.cols[c]);
  }
  out += '\n';
  for (const auto& row : team.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

}  // namespace idcalc
