#pragma once

#include "wcq/algebra.hpp"

namespace wcq {

// k[x1..xl, y1..yl, e], weights 1, -1, 0, d e = sum x_i y_i.
Algebra mukai_algebra(int l);
// k[x1, x2, e], weights 1, 1, 2, d e = x1 x2.
Algebra twopoints_algebra();
// k[x1, x2, y1, y2, e1, e2], d e_i = x_i y_i.
Algebra two_homology_algebra();
// k[x, y], weights 1, -1.
Algebra affine_base_algebra();

}  // namespace wcq
