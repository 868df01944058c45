#include "wcq/datasets.hpp"

#include <string>

namespace wcq {

Algebra mukai_algebra(int l) {
  if (l < 1) throw Error(ErrorCode::NoPositiveChart, "the Mukai datum needs l >= 1");
  std::vector<VariableDecl> decls;
  std::string de;
  for (int i = 1; i <= l; ++i) decls.push_back({"x" + std::to_string(i), {1}, 0});
  for (int i = 1; i <= l; ++i) decls.push_back({"y" + std::to_string(i), {-1}, 0});
  for (int i = 1; i <= l; ++i) de += (i > 1 ? " + x" : "x") + std::to_string(i) + "*y" + std::to_string(i);
  decls.push_back({"e", {0}, -1});
  return build_algebra(1, decls, {{"e", de}}).relabel("mukai(l=" + std::to_string(l) + ")");
}

Algebra twopoints_algebra() {
  return build_algebra(1, {{"x1", {1}, 0}, {"x2", {1}, 0}, {"e", {2}, -1}}, {{"e", "x1*x2"}}).relabel("twopoints");
}

Algebra two_homology_algebra() {
  return build_algebra(1,
                       {{"x1", {1}, 0},
                        {"x2", {1}, 0},
                        {"y1", {-1}, 0},
                        {"y2", {-1}, 0},
                        {"e1", {0}, -1},
                        {"e2", {0}, -1}},
                       {{"e1", "x1*y1"}, {"e2", "x2*y2"}})
      .relabel("qnotasheaf");
}

Algebra affine_base_algebra() {
  return build_algebra(1, {{"x", {1}, 0}, {"y", {-1}, 0}}, {}).relabel("affine-base");
}

}  // namespace wcq
