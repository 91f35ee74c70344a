#pragma once

// Typed access to scenario fields. Missing or mistyped fields raise
// ValidationError naming the field.

#include <optional>
#include <string>
#include <vector>

#include "hsc/descriptors.hpp"
#include "hsc/grid.hpp"
#include "hsc/weights.hpp"
#include "output.hpp"

namespace hsc::cli {

class Params {
 public:
  explicit Params(const Json& j, std::string prefix = {});

  bool has(const std::string& key) const { return j_.contains(key); }
  const Json& raw(const std::string& key) const;
  Params sub(const std::string& key) const;

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  // Range-checked number: lo <= value <= hi.
  double number_in(const std::string& key, double fallback, double lo, double hi) const;
  int integer(const std::string& key, int fallback, int lo, int hi) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const;

  std::string field(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

 private:
  const Json& j_;
  std::string prefix_;
};

// {"window": [a, b], "h": step}; defaults [-10, 10] and 1e-3.
UniformGrid parse_grid(const Params& p);

// Function descriptor object, see README for the accepted kinds.
FunctionDescriptor parse_function(const Params& p);

// {"kind": "gevrey", "s": 2} | {"kind": "constant_one"} |
// {"kind": "custom", "values": [...]} | {"kind": "explicit_log", "log_values": [...]}
Generator parse_generator(const Params& p);

// Generator at `key` (default constant-one) built up to kmax.
WeightSequence parse_sequence(const Params& p, const std::string& key, int kmax);

}  // namespace hsc::cli
