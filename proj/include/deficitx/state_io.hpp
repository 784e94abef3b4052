#pragma once

#include <stdexcept>
#include <string>

#include "deficitx/state.hpp"

namespace deficitx {

/// Malformed documents: invalid JSON, unknown/mixed/missing keys,
/// non-numeric values. Distinct from physical invalidity.
class StateSchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Accepts exactly one of the two forms per document:
///   {"x":n,"y":n,"t1":n,"t2":n,"t3":n}  or  {"a":n,...,"f":n}.
/// No physics validation is applied here.
BlochX parse_state_json(const std::string& text);

std::string state_to_json(const BlochX& s);
std::string state_to_json(const XMatrix& m);

}  // namespace deficitx
