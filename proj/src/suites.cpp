#include "wcq/suites.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "wcq/datasets.hpp"
#include "wcq/pushforward.hpp"
#include "wcq/resolutions.hpp"
#include "wcq/wallcross.hpp"
#include "wcq/windows.hpp"

namespace wcq {

namespace {

using TaskFn = std::function<std::vector<Check>(const Algebra&, const TaskSpec&, const TruncationBox&)>;

struct TaskDef {
  std::set<std::string> params;
  TaskFn run;
};

[[noreturn]] void bad_param(const TaskSpec& t, const std::string& msg) {
  throw Error(ErrorCode::ValidationError, "line " + std::to_string(t.line) + ": task " + t.name + ": " + msg);
}

std::optional<std::string> param(const TaskSpec& t, const std::string& key) {
  auto it = t.params.find(key);
  if (it == t.params.end()) return std::nullopt;
  return it->second;
}

int int_param(const TaskSpec& t, const std::string& key, int fallback) {
  auto s = param(t, key);
  if (!s) return fallback;
  int v = 0;
  auto [p, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
  if (ec != std::errc() || p != s->data() + s->size()) bad_param(t, key + " must be an integer, got '" + *s + "'");
  return v;
}

std::vector<Element> element_list(const Algebra& r, const TaskSpec& t, const std::string& key) {
  std::vector<Element> out;
  auto s = param(t, key);
  if (!s || s->empty()) return out;
  std::stringstream ss(*s);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      out.push_back(r.parse(item));
    } catch (const Error& e) {
      bad_param(t, key + ": " + e.what());
    }
  }
  return out;
}

Chamber chamber_param(const TaskSpec& t) {
  auto s = param(t, "side").value_or("plus");
  if (s == "plus" || s == "+") return Chamber::Plus;
  if (s == "minus" || s == "-") return Chamber::Minus;
  bad_param(t, "side must be plus or minus, got '" + s + "'");
}

Check listing_check(const std::string& name, const KernelAlgebra& q) {
  Check c;
  c.name = name;
  const Algebra& a = q.algebra;
  c.note(a.describe());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Variable& v = a.var(i);
    std::string line = v.name + " weight " + degree_string(v.weight) + " hdeg " + std::to_string(v.hdeg);
    if (!a.differential(i).empty()) line += " d = " + a.element(a.differential(i)).str();
    c.note(line);
  }
  return c;
}

std::vector<Check> localization(const Algebra& r, const TaskSpec& t, const TruncationBox& box) {
  KernelAlgebra q = build_q(r);
  std::vector<Check> out;
  if (auto expr = param(t, "t")) {
    Element e = r.parse(*expr);
    auto side = param(t, "side");
    Side s;
    if (!side) {
      auto d = e.degree();
      s = d && (*d)[0] < 0 ? Side::P : Side::S;
    } else if (*side == "S" || *side == "s") {
      s = Side::S;
    } else if (*side == "P" || *side == "p") {
      s = Side::P;
    } else {
      bad_param(t, "side must be S or P");
    }
    out.push_back(check_localization_iso(q, e, s, box));
    return out;
  }
  BaseSplit split = split_base(r);
  for (auto i : split.positive) out.push_back(check_localization_iso(q, r.gen(r.var(i).name), Side::S, box));
  for (auto i : split.negative) out.push_back(check_localization_iso(q, r.gen(r.var(i).name), Side::P, box));
  return out;
}

std::vector<Check> koszul(const Algebra& r, const TaskSpec& t, const TruncationBox& box) {
  std::vector<Element> seq = element_list(r, t, "seq");
  if (seq.empty()) {
    BaseSplit split = split_base(r);
    for (auto i : split.positive) seq.push_back(r.gen(r.var(i).name));
  }
  KoszulComplex k = koszul_complex(r, seq, int_param(t, "twist", 0));
  Check c;
  c.name = "koszul homology";
  HilbertTable tab{"koszul", {}};
  int margin = budget_margin(k.algebra);
  auto [lo, hi] = box.degree_range.at(0);
  for (int n = lo; n <= hi; ++n) {
    SliceComplex s = k.slice(n, box.hmin, box.budget + margin);
    add_report(tab, homology_dims(s, box.budget));
  }
  c.tables.push_back(std::move(tab));
  return {c};
}

std::vector<Check> koszul_tate_task(const Algebra& r, const TaskSpec& t, const TruncationBox& box) {
  ResolutionPresentation p = koszul_tate(r, element_list(r, t, "ideal"), box.hmin, box);
  Check c;
  c.name = "koszul-tate resolution";
  std::istringstream is(p.listing());
  for (std::string line; std::getline(is, line);) c.note(line);
  for (const auto& l : p.log) c.note(l);
  return {c};
}

std::vector<Check> weights(const Algebra& r, const TaskSpec& t, const TruncationBox&) {
  auto m = param(t, "mode").value_or("plus");
  WeightMode mode;
  if (m == "plus") mode = WeightMode::Plus;
  else if (m == "minus") mode = WeightMode::Minus;
  else if (m == "wallcross") mode = WeightMode::Wallcross;
  else bad_param(t, "mode must be plus, minus or wallcross");
  Check c = check_generator_weights(r, mode);
  WeightSummary w = compute_mu(r);
  c.note("mu+ = " + std::to_string(w.mu_plus) + ", mu- = " + std::to_string(w.mu_minus) +
         (w.calabi_yau ? ", Calabi-Yau" : ""));
  return {c};
}

std::vector<Check> charts(const Algebra& r, const TaskSpec& t, const TruncationBox& box) {
  std::vector<Check> out;
  auto want = param(t, "chart");
  for (const auto& ch : restrict_kernel(r)) {
    if (want) {
      std::string key = r.var(ch.x).name + "," + r.var(ch.y).name;
      if (key != *want) continue;
    }
    ChartHomology h = chart_homology(r, ch, box);
    h.check.name = "chart " + h.label;
    out.push_back(std::move(h.check));
  }
  if (want && out.empty()) bad_param(t, "no chart " + *want);
  return out;
}

const std::map<std::string, TaskDef>& registry() {
  static const std::map<std::string, TaskDef> m = {
      {"q-build", {{}, [](const Algebra& r, const TaskSpec&, const TruncationBox&) {
                     return std::vector<Check>{listing_check("Q", build_q(r))};
                   }}},
      {"delta-build", {{}, [](const Algebra& r, const TaskSpec&, const TruncationBox&) {
                         return std::vector<Check>{listing_check("Delta", build_delta(r))};
                       }}},
      {"localization", {{"t", "side"}, localization}},
      {"faithfulness", {{}, [](const Algebra& r, const TaskSpec&, const TruncationBox& b) {
                          return std::vector<Check>{check_faithfulness(build_q(r), b)};
                        }}},
      {"basechange", {{}, [](const Algebra& r, const TaskSpec&, const TruncationBox& b) {
                        return std::vector<Check>{check_basechange(r, b)};
                      }}},
      {"middle-invariants", {{}, [](const Algebra& r, const TaskSpec&, const TruncationBox& b) {
                               return std::vector<Check>{check_middle_invariants(build_q(r), b)};
                             }}},
      {"eta", {{}, [](const Algebra& r, const TaskSpec&, const TruncationBox& b) {
                 return std::vector<Check>{check_eta_injective(build_q(r), b)};
               }}},
      {"property-p", {{}, [](const Algebra& r, const TaskSpec&, const TruncationBox& b) {
                        return std::vector<Check>{check_property_p(r, b)};
                      }}},
      {"resolution-k", {{}, [](const Algebra& r, const TaskSpec&, const TruncationBox& b) {
                          return std::vector<Check>{verify_resolution_K(resolution_K(build_q(r)), b)};
                        }}},
      {"koszul", {{"seq", "twist"}, koszul}},
      {"koszul-tate", {{"ideal"}, koszul_tate_task}},
      {"window", {{"side"}, [](const Algebra& r, const TaskSpec& t, const TruncationBox& b) {
                    return std::vector<Check>{window_membership(r, chamber_param(t), b).check};
                  }}},
      {"window-image", {{"i", "side"}, [](const Algebra& r, const TaskSpec& t, const TruncationBox& b) {
                          return std::vector<Check>{window_image(r, int_param(t, "i", 0), b, chamber_param(t)).check};
                        }}},
      {"weights", {{"mode"}, weights}},
      {"sod", {{}, [](const Algebra& r, const TaskSpec&, const TruncationBox& b) {
                 return std::vector<Check>{sod_report(r, b).check};
               }}},
      {"sod-vanishing", {{"a", "b"}, [](const Algebra& r, const TaskSpec& t, const TruncationBox& b) {
                           return std::vector<Check>{
                               sod_vanishing(r, int_param(t, "a", -1), int_param(t, "b", 0), b).check};
                         }}},
      {"endo", {{}, [](const Algebra& r, const TaskSpec&, const TruncationBox& b) {
                  return std::vector<Check>{endo_ring(r, b).check};
                }}},
      {"fiber", {{}, [](const Algebra& r, const TaskSpec&, const TruncationBox& b) {
                   return std::vector<Check>{fiber_comparison(r, b).check};
                 }}},
      {"chart-homology", {{"chart"}, charts}},
      {"mukai-pipeline", {{"l"}, [](const Algebra&, const TaskSpec& t, const TruncationBox& b) {
                            return mukai_verify(int_param(t, "l", 2), b);
                          }}},
  };
  return m;
}

bool hypothesis_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::HypothesisViolation:
    case ErrorCode::NonPolynomialBase:
    case ErrorCode::EmptySide:
    case ErrorCode::NoPositiveChart:
    case ErrorCode::NoNegativeChart:
    case ErrorCode::PositiveGeneratorPresent: return true;
    default: return false;
  }
}

TaskSpec task(std::string name, std::map<std::string, std::string> params = {}) {
  TaskSpec t;
  t.name = std::move(name);
  t.params = std::move(params);
  return t;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n = {"mukai", "twopoints", "qnotasheaf", "affine-base"};
  return n;
}

void validate_tasks(const Algebra& r, const std::vector<TaskSpec>& tasks) {
  const auto& reg = registry();
  for (const auto& t : tasks) {
    auto it = reg.find(t.name);
    if (it == reg.end()) bad_param(t, "unknown task");
    for (const auto& [k, v] : t.params)
      if (!it->second.params.count(k)) bad_param(t, "unknown parameter '" + k + "'");
    for (const char* k : {"i", "a", "b", "twist", "l"}) int_param(t, k, 0);
    element_list(r, t, "seq");
    element_list(r, t, "ideal");
    if (auto e = param(t, "t")) element_list(r, t, "t");
    if (t.name == "window" || t.name == "window-image") chamber_param(t);
  }
}

Report run_tasks(const Algebra& r, const std::vector<TaskSpec>& tasks, const TruncationBox& box) {
  validate_tasks(r, tasks);
  Report rep;
  rep.subject = r.label();
  rep.box = box;
  for (const auto& t : tasks) {
    TaskResult res;
    res.task = t.name;
    auto start = std::chrono::steady_clock::now();
    try {
      res.checks = registry().at(t.name).run(r, t, box);
    } catch (const Error& e) {
      res.error = e.what();
      Check c;
      c.name = t.name;
      c.verdict = hypothesis_error(e.code()) ? Verdict::HypothesisViolation : Verdict::Fail;
      c.note(res.error);
      res.checks.push_back(std::move(c));
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.tasks.push_back(std::move(res));
  }
  return rep;
}

Report run_scenario(const Scenario& sc) {
  Report rep = run_tasks(sc.algebra(), sc.tasks, sc.box);
  rep.subject = sc.label;
  return rep;
}

Report verify_suite(const std::string& name, int l, const TruncationBox& box) {
  if (name == "mukai") {
    if (l < 1) throw Error(ErrorCode::InvalidArgument, "mukai needs l >= 1");
    return run_tasks(mukai_algebra(l),
                     {task("mukai-pipeline", {{"l", std::to_string(l)}}), task("localization"), task("basechange"),
                      task("middle-invariants"), task("eta"), task("sod"),
                      task("sod-vanishing", {{"a", "-1"}, {"b", "0"}}), task("endo")},
                     box);
  }
  if (name == "twopoints")
    return run_tasks(twopoints_algebra(), {task("window-image", {{"i", "0"}}), task("weights"), task("sod")}, box);
  if (name == "qnotasheaf")
    return run_tasks(two_homology_algebra(), {task("chart-homology"), task("endo"), task("fiber")}, box);
  if (name == "affine-base")
    return run_tasks(affine_base_algebra(),
                     {task("q-build"), task("property-p"), task("basechange"), task("chart-homology"),
                      task("window", {{"side", "plus"}}), task("window", {{"side", "minus"}})},
                     box);
  throw Error(ErrorCode::UnknownSuite, "unknown suite '" + name + "'; expected mukai, twopoints, qnotasheaf or affine-base");
}

}  // namespace wcq
