#pragma once

#include "tqk/laurent.hpp"

#include <vector>

namespace tqk {

struct TorusKnot {
    i64 a = 0, b = 0;
    i64 D = 0;  // 2ab
    i64 m = 0, n = 0;  // a*n + b*m = 1, 0 < n < b
};

TorusKnot make_knot(i64 a, i64 b);

LaurentPoly alexander(const TorusKnot& K);

// Colored Jones polynomial J_l by the Morton sum; J_0 = 0, J_{-l} = -J_l.
LaurentPoly jones(const TorusKnot& K, i64 ell);

// Zero exactly when the three-term recurrence holds.
LaurentPoly jones_recurrence_residual(const TorusKnot& K, i64 ell);

// J_l(-e^{i pi/2k}), computed from the Morton sum with exact exponent
// reduction modulo 4k (t^{4k} = 1 at this root).
template <class R>
Cx<R> jones_eval(const TorusKnot& K, i64 ell, i64 k);

// All J_l(-e^{i pi/2k}) for l in [0, 2k).
template <class R>
std::vector<Cx<R>> jones_eval_all(const TorusKnot& K, i64 k);

cd jones_eval_cd(const TorusKnot& K, i64 ell, i64 k);

// Delta evaluated at e^{i theta} (double).
cd alexander_at(const TorusKnot& K, double theta);

}  // namespace tqk
