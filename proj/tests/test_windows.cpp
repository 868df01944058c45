#include "doctest.h"

#include "wcq/datasets.hpp"
#include "wcq/windows.hpp"

using namespace wcq;

namespace {

TruncationBox box() { return TruncationBox::standard(1, 8, -4, -4, 4); }

Algebra weights(const std::vector<int>& w) {
  std::vector<VariableDecl> d;
  for (std::size_t i = 0; i < w.size(); ++i) d.push_back({"t" + std::to_string(i + 1), {w[i]}, 0});
  return build_algebra(1, d, {});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("mu of the Mukai datum is (2, -2) and Calabi-Yau") {
  WeightSummary w = compute_mu(mukai_algebra(2));
  CHECK(w.mu_plus == 2);
  CHECK(w.mu_minus == -2);
  CHECK(w.calabi_yau);
}

TEST_CASE("mu of no variables and of weights (3, 1, -2)") {
  WeightSummary z = compute_mu(build_algebra(1, {}, {}));
  CHECK(z.mu_plus == 0);
  CHECK(z.mu_minus == 0);
  WeightSummary w = compute_mu(weights({3, 1, -2}));
  CHECK(w.mu_plus == 4);
  CHECK(w.mu_minus == -2);
  CHECK_FALSE(w.calabi_yau);
  CHECK(compute_mu(weights({-2, 1, 3})).mu_plus == 4);
}

TEST_CASE("weights with several components are rejected") {
  Algebra r = build_algebra(2, {{"x", {1, 0}, 0}}, {});
  CHECK(code_of([&] { compute_mu(r); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("generator weight modes") {
  for (WeightMode m : {WeightMode::Plus, WeightMode::Minus, WeightMode::Wallcross})
    CHECK(check_generator_weights(mukai_algebra(2), m).verdict == Verdict::Pass);
  Algebra tp = twopoints_algebra();
  CHECK(check_generator_weights(tp, WeightMode::Plus).verdict == Verdict::HypothesisViolation);
  CHECK(check_generator_weights(tp, WeightMode::Wallcross).verdict == Verdict::HypothesisViolation);
  CHECK(check_generator_weights(tp, WeightMode::Minus).verdict == Verdict::Pass);
  Check c = check_generator_weights(tp, WeightMode::Plus);
  REQUIRE(c.notes.size() == 1);
  CHECK(c.notes[0] == "generator e has degree 2");
  CHECK(check_generator_weights(weights({1, -1}), WeightMode::Plus).verdict == Verdict::Pass);
}

TEST_CASE("Mukai vanishing on [-1, 0] with a nonzero probe") {
  VanishingReport v = sod_vanishing(mukai_algebra(2), -1, 0, box());
  CHECK(v.check.verdict == Verdict::Pass);
  CHECK(v.dims == std::vector<std::size_t>{0, 0});
  // (R/x)_0 = k[y, e]_0 = span{1, e}
  CHECK(v.probe == 2);
}

TEST_CASE("vanishing for k[x] on [0, 0]") {
  VanishingReport v = sod_vanishing(weights({1}), 0, 0, box());
  CHECK(v.check.verdict == Verdict::Pass);
  CHECK(v.probe == 1);
}

TEST_CASE("vanishing depends only on b - i") {
  VanishingReport a = sod_vanishing(mukai_algebra(2), -1, 0, box());
  VanishingReport b = sod_vanishing(mukai_algebra(2), 2, 3, box());
  CHECK(a.dims == b.dims);
  CHECK(a.probe == b.probe);
}

TEST_CASE("a range shorter than mu+ is rejected") {
  CHECK(code_of([] { sod_vanishing(mukai_algebra(2), 0, 0, TruncationBox::standard(1)); }) ==
        ErrorCode::RangeTooShort);
}

TEST_CASE("endomorphism ring dims") {
  EndoReport m = endo_ring(mukai_algebra(2), box());
  CHECK(m.check.verdict == Verdict::Pass);
  CHECK(m.endo.at(0) == 1);
  CHECK(m.endo.at(-1) == 1);
  CHECK(m.endo.at(-2) == 0);

  EndoReport q = endo_ring(two_homology_algebra(), box());
  CHECK(q.check.verdict == Verdict::Pass);
  CHECK(q.endo.at(0) == 1);
  CHECK(q.endo.at(-1) == 2);
  CHECK(q.endo.at(-2) == 1);

  EndoReport t = endo_ring(weights({1, -1}), box());
  CHECK(t.endo.at(0) == 1);
  CHECK(t.endo.at(-1) == 0);
}

TEST_CASE("sod shapes") {
  SodDescription m = sod_report(mukai_algebra(2), box());
  CHECK(m.sign == '0');
  CHECK(m.count == 0);
  CHECK(m.copies.empty());
  CHECK(m.check.verdict == Verdict::Pass);

  SodDescription s = sod_report(weights({1, 1, 1, -1}), box());
  CHECK(s.sign == '+');
  CHECK(s.count == 2);
  REQUIRE(s.copies.size() == 2);
  CHECK(s.copies[0].twist == 2);
  CHECK(s.copies[1].twist == 1);
  CHECK(s.copies[0].description == "j*R/x(2)");
  CHECK(s.shape == "<Perf(R^Gm)_2, Perf(R^Gm)_1, Phi^wc_-(Perf(X-))>");

  SodDescription n = sod_report(weights({1, -1, -2}), box());
  CHECK(n.sign == '-');
  CHECK(n.count == 2);
  CHECK(n.copies[0].twist == -2);

  SodDescription e = sod_report(build_algebra(1, {}, {}), box());
  CHECK(e.count == 0);
  CHECK(e.shape.find("degenerate") == 0);
}

TEST_CASE("sod on twopoints flags the hypothesis") {
  SodDescription t = sod_report(twopoints_algebra(), box());
  CHECK(t.check.verdict == Verdict::HypothesisViolation);
  CHECK(t.count == 2);
}
