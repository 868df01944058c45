#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "wcq/suites.hpp"

using namespace wcq;

namespace {

constexpr int kInputError = 3;

struct Options {
  std::optional<int> budget, hmin;
  std::optional<std::string> degrees;
  int threads = 1;
  std::optional<std::string> format;
  std::string out;
  bool timing = false;
};

void apply_box(const Options& o, TruncationBox& box) {
  if (o.budget) box.budget = *o.budget;
  if (o.hmin) box.hmin = *o.hmin;
  if (o.degrees) box.degree_range = {parse_range(*o.degrees)};
  box.validate(1);
}

int emit(const Report& r, const std::string& format, const Options& o) {
  std::string text = format == "structured" ? render_structured(r, o.timing) : render_text(r, o.timing);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "wcq: cannot write " << o.out << "\n";
      return kInputError;
    }
    f << text;
  }
  return exit_code(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wall-crossing kernel checks for graded semi-free cdgas"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("--budget", o.budget, "budget E");
    c->add_option("--hmin", o.hmin, "lowest homological degree");
    c->add_option("--degrees", o.degrees, "internal degree range LO..HI");
    c->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    c->add_option("--out", o.out, "write the report here");
    c->add_flag("--timing", o.timing, "include per-task seconds");
  };

  std::string scenario_path;
  auto* run = app.add_subcommand("run", "run the tasks of a scenario file");
  run->add_option("scenario", scenario_path, "scenario file")->required();
  common(run);

  std::string suite;
  int l = 2;
  auto* verify = app.add_subcommand("verify", "run a built-in suite");
  verify->add_option("suite", suite, "mukai | twopoints | qnotasheaf | affine-base")->required();
  verify->add_option("--l", l, "number of positive variables for mukai");
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    set_threads(o.threads);
    if (*run) {
      std::ifstream f(scenario_path);
      if (!f) {
        std::cerr << "wcq: cannot read " << scenario_path << "\n";
        return kInputError;
      }
      std::stringstream ss;
      ss << f.rdbuf();
      Scenario sc = parse_scenario(ss.str());
      apply_box(o, sc.box);
      return emit(run_scenario(sc), o.format.value_or(sc.output), o);
    }
    TruncationBox box = TruncationBox::standard(1);
    apply_box(o, box);
    return emit(verify_suite(suite, l, box), o.format.value_or("text"), o);
  } catch (const Error& e) {
    std::cerr << "wcq: " << e.what() << "\n";
    return kInputError;
  }
}
