#include "wcq/report.hpp"

#include <cstdio>
#include <sstream>

namespace wcq {

Verdict Report::verdict() const {
  Verdict v = Verdict::Pass;
  for (const auto& t : tasks)
    for (const auto& c : t.checks) v = combine(v, c.verdict);
  return v;
}

int exit_code(const Report& r) {
  switch (r.verdict()) {
    case Verdict::Pass:
    case Verdict::Info: return 0;
    case Verdict::HypothesisViolation: return 2;
    case Verdict::Fail:
    case Verdict::Inconclusive: return 1;
  }
  return 1;
}

namespace {

std::string box_string(const TruncationBox& b) {
  std::string s = "E=" + std::to_string(b.budget) + " hmin=" + std::to_string(b.hmin) + " degrees";
  for (auto [lo, hi] : b.degree_range) s += " " + std::to_string(lo) + ".." + std::to_string(hi);
  return s;
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

}  // namespace

std::string render_text(const Report& r, bool timing) {
  std::ostringstream os;
  os << "subject: " << r.subject << "\n";
  os << "box: " << box_string(r.box) << "\n";
  for (const auto& t : r.tasks) {
    os << "\ntask " << t.task;
    if (timing) os << " (" << seconds(t.seconds) << " s)";
    os << "\n";
    if (!t.error.empty()) os << "  error: " << t.error << "\n";
    for (const auto& c : t.checks) {
      os << "  [" << verdict_name(c.verdict) << "] " << c.name << "\n";
      for (const auto& n : c.notes) os << "      " << n << "\n";
      for (const auto& tab : c.tables) {
        os << "      table " << tab.label << " (" << tab.entries.size() << " nonzero entries)\n";
        for (const auto& e : tab.entries)
          os << "        " << degree_string(e.degree) << " h" << e.hdeg << " " << e.dim << (e.certified ? "" : " ?")
             << "\n";
      }
    }
  }
  os << "\nverdict: " << verdict_name(r.verdict()) << "\n";
  return os.str();
}

std::string render_structured(const Report& r, bool timing) {
  std::ostringstream os;
  os << "report.subject = " << r.subject << "\n";
  os << "report.truncation.E = " << r.box.budget << "\n";
  os << "report.truncation.hmin = " << r.box.hmin << "\n";
  for (auto [lo, hi] : r.box.degree_range) os << "report.truncation.degree_range = " << lo << ".." << hi << "\n";
  for (std::size_t i = 0; i < r.tasks.size(); ++i) {
    const auto& t = r.tasks[i];
    std::string tp = "task[" + std::to_string(i) + "]";
    os << tp << ".name = " << t.task << "\n";
    if (timing) os << tp << ".seconds = " << seconds(t.seconds) << "\n";
    if (!t.error.empty()) os << tp << ".error = " << t.error << "\n";
    for (std::size_t j = 0; j < t.checks.size(); ++j) {
      const auto& c = t.checks[j];
      std::string cp = tp + ".check[" + std::to_string(j) + "]";
      os << cp << ".name = " << c.name << "\n";
      os << cp << ".verdict = " << verdict_name(c.verdict) << "\n";
      for (std::size_t k = 0; k < c.notes.size(); ++k) os << cp << ".note[" << k << "] = " << c.notes[k] << "\n";
      for (std::size_t k = 0; k < c.tables.size(); ++k) {
        std::string bp = cp + ".table[" + std::to_string(k) + "]";
        os << bp << ".label = " << c.tables[k].label << "\n";
        const auto& es = c.tables[k].entries;
        for (std::size_t m = 0; m < es.size(); ++m)
          os << bp << ".entry[" << m << "] = degree=" << degree_string(es[m].degree) << " hdeg=" << es[m].hdeg
             << " dim=" << es[m].dim << " certified=" << (es[m].certified ? "true" : "false") << "\n";
      }
    }
  }
  os << "report.verdict = " << verdict_name(r.verdict()) << "\n";
  os << "report.exit_code = " << exit_code(r) << "\n";
  return os.str();
}

}  // namespace wcq
