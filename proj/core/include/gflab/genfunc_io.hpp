#pragma once

#include <string>

#include "gflab/genfunc.hpp"

namespace gflab {

/// Expression tree from its JSON description. Node object schema:
///   {"node":"smooth","f":{"kind":"poly","coeffs":[...]}}
///   {"node":"smooth","f":{"kind":"const","value":c}}
///   {"node":"smooth","f":{"kind":"sin","amp":a,"freq":w,"phase":p}}
///   {"node":"heaviside","center":x0,"profile":{"tag":t,"shift":s,"width":w}}
///   {"node":"dirac","center":x0,"profile":{"tag":t}}
///   {"node":"sum","terms":[...]}        (two or more)
///   {"node":"product","factors":[...]}  (two or more)
///   {"node":"scale","factor":c,"arg":{...}}
///   {"node":"power","exponent":n,"arg":{...}}
///   {"node":"sqrt","arg":{...}}
///   {"node":"derivative","arg":{...}}
GenFunction parse_genfunction(const std::string& json_text);

/// Inverse of parse_genfunction. Throws DomainError for trees holding
/// opaque smooth functions.
std::string genfunction_to_json(const GenFunction& g);

}  // namespace gflab
