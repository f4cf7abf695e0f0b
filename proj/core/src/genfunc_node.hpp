#pragma once

// Internal tree layout shared by genfunc.cpp and genfunc_io.cpp.

#include "gflab/genfunc.hpp"

namespace gflab {

enum class NodeKind { Smooth, Heaviside, Dirac, Sum, Product, Scale, Power, Sqrt, Derivative };

struct GenFunction::Node {
    NodeKind kind;
    SmoothFn smooth;
    double x0 = 0.0;
    HeavisideProfile hprof;
    DiracProfile dprof;
    double factor = 1.0;
    int exponent = 1;
    std::shared_ptr<const Node> a, b;
};

}  // namespace gflab
