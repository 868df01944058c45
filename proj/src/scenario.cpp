#include "wcq/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "wcq/parser.hpp"

namespace wcq {

namespace {

struct Line {
  int number = 0;
  std::size_t offset = 0;  // of the value, in the whole text
  std::size_t column = 0;  // of the value, in its line
  std::string key;
  std::string value;
};

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

[[noreturn]] void syntax(const Line& l, std::size_t col, const std::string& msg, std::size_t offset) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(l.number) + ", column " + std::to_string(col) + ": " + msg,
              offset);
}

[[noreturn]] void invalid(int line, const std::string& msg) {
  throw Error(ErrorCode::ValidationError, "line " + std::to_string(line) + ": " + msg);
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

int int_field(const Line& l, const std::string& s) {
  auto v = to_int(s);
  if (!v) syntax(l, 1, "expected an integer, got '" + s + "'", l.offset);
  return *v;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> w;
  for (std::string t; is >> t;) w.push_back(t);
  return w;
}

// `name weight hdeg : d` or the resolution listing form
// `name weight (w) hdeg h d = ...`.
GeneratorDecl parse_generator(const Line& l, std::size_t& dstart) {
  GeneratorDecl g;
  const std::string& v = l.value;
  std::size_t colon = v.find(':');
  std::size_t deq = v.find(" d =");
  std::string head = v.substr(0, std::min(colon, deq));
  if (colon != std::string::npos && colon < deq) dstart = colon + 1;
  else if (deq != std::string::npos) dstart = deq + 4;
  else dstart = v.size();
  g.differential = dstart < v.size() ? trim(v.substr(dstart)) : "";
  while (dstart < v.size() && v[dstart] == ' ') ++dstart;
  auto w = words(head);
  if (w.size() == 5 && w[1] == "weight" && w[3] == "hdeg" && w[2].size() > 2 && w[2].front() == '(' &&
      w[2].back() == ')') {
    w = {w[0], w[2].substr(1, w[2].size() - 2), w[4]};
  }
  if (w.size() != 3) syntax(l, 1, "expected 'name weight hdeg : differential'", l.offset);
  if (!is_identifier(w[0])) syntax(l, 1, "bad generator name '" + w[0] + "'", l.offset);
  g.name = w[0];
  g.weight = int_field(l, w[1]);
  g.hdeg = int_field(l, w[2]);
  return g;
}

TaskSpec parse_task(const Line& l) {
  auto w = words(l.value);
  if (w.empty()) syntax(l, 1, "empty task", l.offset);
  TaskSpec t;
  t.name = w[0];
  t.line = l.number;
  const auto& known = known_tasks();
  if (std::find(known.begin(), known.end(), t.name) == known.end()) invalid(l.number, "unknown task '" + t.name + "'");
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::size_t eq = w[i].find('=');
    if (eq == std::string::npos || eq == 0) syntax(l, 1, "task parameter '" + w[i] + "' is not key=value", l.offset);
    t.params[w[i].substr(0, eq)] = w[i].substr(eq + 1);
  }
  return t;
}

}  // namespace

const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> t = {
      "q-build",     "delta-build",   "localization", "faithfulness", "basechange",   "middle-invariants",
      "eta",         "property-p",    "resolution-k", "koszul",       "koszul-tate",  "window",
      "window-image", "weights",      "sod",          "sod-vanishing", "endo",        "fiber",
      "chart-homology"};
  return t;
}

std::pair<int, int> parse_range(std::string_view s) {
  std::size_t dots = s.find("..");
  if (dots == std::string_view::npos)
    throw Error(ErrorCode::SyntaxError, "expected LO..HI, got '" + std::string(s) + "'");
  auto lo = to_int(s.substr(0, dots));
  auto hi = to_int(s.substr(dots + 2));
  if (!lo || !hi) throw Error(ErrorCode::SyntaxError, "expected LO..HI, got '" + std::string(s) + "'");
  if (*lo > *hi) throw Error(ErrorCode::ValidationError, "empty degree range " + std::string(s));
  return {*lo, *hi};
}

Scenario parse_scenario(std::string_view text) {
  Scenario sc;
  std::vector<Line> lines;
  std::size_t pos = 0;
  int number = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    std::size_t hash = raw.find('#');
    std::string_view body = raw.substr(0, hash);
    if (!trim(body).empty()) {
      std::size_t eq = body.find('=');
      Line l;
      l.number = number;
      if (eq == std::string_view::npos) {
        l.offset = pos;
        syntax(l, 1, "expected 'key = value'", pos);
      }
      l.key = trim(body.substr(0, eq));
      std::size_t vstart = eq + 1;
      while (vstart < body.size() && (body[vstart] == ' ' || body[vstart] == '\t')) ++vstart;
      l.offset = pos + vstart;
      l.column = vstart;
      l.value = trim(body.substr(vstart));
      lines.push_back(std::move(l));
    }
    if (end == text.size()) break;
    pos = end + 1;
  }

  std::map<std::string, int> seen;
  std::set<std::string> names;
  std::vector<std::pair<Line, std::size_t>> gen_lines;
  for (const auto& l : lines) {
    if (l.key == "base_ring.variables[]") {
      auto w = words(l.value);
      if (w.size() != 2) syntax(l, 1, "expected 'name weight'", l.offset);
      if (!is_identifier(w[0])) syntax(l, 1, "bad variable name '" + w[0] + "'", l.offset);
      int wt = int_field(l, w[1]);
      if (wt == 0)
        invalid(l.number, "base variable '" + w[0] +
                              "' has weight 0; weight-0 variables belong to the coefficient ring k, fold them into k");
      if (!names.insert(w[0]).second) invalid(l.number, "duplicate name '" + w[0] + "'");
      sc.variables.emplace_back(w[0], wt);
    } else if (l.key == "dg_generators[]") {
      std::size_t dstart = 0;
      GeneratorDecl g = parse_generator(l, dstart);
      if (g.hdeg >= 0) invalid(l.number, "generator '" + g.name + "' needs negative hdeg");
      if (!names.insert(g.name).second) invalid(l.number, "duplicate name '" + g.name + "'");
      sc.generators.push_back(g);
      gen_lines.emplace_back(l, dstart);
    } else if (l.key == "tasks[]") {
      sc.tasks.push_back(parse_task(l));
    } else {
      if (seen[l.key]++) invalid(l.number, "repeated key '" + l.key + "'");
      if (l.key == "label") {
        sc.label = l.value;
      } else if (l.key == "truncation.E") {
        sc.box.budget = int_field(l, l.value);
      } else if (l.key == "truncation.hmin") {
        sc.box.hmin = int_field(l, l.value);
      } else if (l.key == "truncation.degree_range") {
        try {
          sc.box.degree_range = {parse_range(l.value)};
        } catch (const Error& e) {
          if (e.code() == ErrorCode::SyntaxError) syntax(l, 1, e.what(), l.offset);
          invalid(l.number, e.what());
        }
      } else if (l.key == "output") {
        if (l.value != "text" && l.value != "structured") invalid(l.number, "output must be text or structured");
        sc.output = l.value;
      } else {
        invalid(l.number, "unknown key '" + l.key + "'");
      }
    }
  }
  try {
    sc.box.validate(1);
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, std::string("truncation: ") + e.what());
  }

  // Differentials: syntax first, against the declared variables.
  AlgebraBuilder b(1);
  for (const auto& [n, w] : sc.variables) b.add({n, {w}, 0});
  for (const auto& g : sc.generators) b.add({g.name, {g.weight}, g.hdeg});
  Algebra draft = b.draft();
  for (std::size_t i = 0; i < sc.generators.size(); ++i) {
    const auto& [l, dstart] = gen_lines[i];
    if (sc.generators[i].differential.empty()) continue;
    try {
      parse_terms(draft, sc.generators[i].differential);
    } catch (const Error& e) {
      std::size_t off = e.offset() == Error::npos ? 0 : e.offset();
      if (e.code() == ErrorCode::SyntaxError || e.code() == ErrorCode::UnknownVariable)
        syntax(l, l.column + dstart + off + 1, e.what(), l.offset + dstart + off);
      invalid(l.number, e.what());
    }
  }
  try {
    sc.algebra();
  } catch (const Error& e) {
    invalid(gen_lines.empty() ? 0 : gen_lines.back().first.number, e.what());
  }
  return sc;
}

Algebra Scenario::algebra() const {
  AlgebraBuilder b(1);
  b.set_label(label);
  for (const auto& [n, w] : variables) b.add({n, {w}, 0});
  for (const auto& g : generators) b.add({g.name, {g.weight}, g.hdeg});
  for (const auto& g : generators)
    if (!g.differential.empty()) b.set_differential(g.name, g.differential);
  return b.build();
}

}  // namespace wcq
