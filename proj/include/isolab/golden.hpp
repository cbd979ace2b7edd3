#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace isolab {

struct GoldenCheck {
  std::string name;
  bool pass = false;
  std::string detail;  // expected/actual text or the numeric residual
};

struct GoldenReport {
  std::string id;
  std::string title;
  std::vector<GoldenCheck> checks;
  bool pass() const;
};

// "example-1", "example-2", "example-3", "example-4", "example-8", "example-9".
std::vector<std::string> golden_ids();
// Regenerates the example and compares: exact equality of reduced rational functions for the
// symbolic layer, stated tolerances for the numeric one. PreconditionError on an unknown id.
GoldenReport reproduce_example(const std::string& id);

nlohmann::json to_json(const GoldenReport& r);

}  // namespace isolab
