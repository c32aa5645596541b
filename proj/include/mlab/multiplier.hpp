#pragma once

#include "mlab/abgroup.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mlab {

enum class Method { auto_select, oracle, blackburn_evens, kunneth, tails, ledger };

const char* method_name(Method m);
std::optional<Method> parse_method(const std::string& s);

struct MultiplierResult {
  AbelianGroup multiplier;
  Method method = Method::oracle;
  std::vector<std::string> trace;
};

}  // namespace mlab
