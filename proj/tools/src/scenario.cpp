#include "scenario.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace hsc::cli {

Params::Params(const Json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
  if (!j_.is_object()) throw ValidationError(prefix_, (prefix_.empty() ? "scenario" : prefix_) + " must be an object");
}

const Json& Params::raw(const std::string& key) const {
  if (!j_.contains(key)) throw ValidationError(field(key), "missing field " + field(key));
  return j_.at(key);
}

Params Params::sub(const std::string& key) const { return Params(raw(key), field(key)); }

double Params::number(const std::string& key) const {
  const Json& v = raw(key);
  if (!v.is_number()) throw ValidationError(field(key), field(key) + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(field(key), field(key) + " must be finite");
  return d;
}

double Params::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

double Params::number_in(const std::string& key, double fallback, double lo, double hi) const {
  const double v = number(key, fallback);
  if (v < lo || v > hi)
    throw ValidationError(field(key), field(key) + " must lie in [" + format_double(lo) + ", " + format_double(hi) + "]");
  return v;
}

int Params::integer(const std::string& key, int fallback, int lo, int hi) const {
  if (!has(key)) return fallback;
  const Json& v = raw(key);
  if (!v.is_number_integer()) throw ValidationError(field(key), field(key) + " must be an integer");
  const auto i = v.get<long long>();
  if (i < lo || i > hi)
    throw ValidationError(field(key),
                          field(key) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(i);
}

bool Params::boolean(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Json& v = raw(key);
  if (!v.is_boolean()) throw ValidationError(field(key), field(key) + " must be a boolean");
  return v.get<bool>();
}

std::string Params::text(const std::string& key, const std::string& fallback) const {
  if (!has(key)) return fallback;
  const Json& v = raw(key);
  if (!v.is_string()) throw ValidationError(field(key), field(key) + " must be a string");
  return v.get<std::string>();
}

std::vector<double> Params::numbers(const std::string& key) const {
  const Json& v = raw(key);
  if (!v.is_array()) throw ValidationError(field(key), field(key) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ValidationError(field(key), field(key) + " must be an array of numbers");
    out.push_back(e.get<double>());
    if (!std::isfinite(out.back())) throw ValidationError(field(key), field(key) + " entries must be finite");
  }
  return out;
}

std::vector<double> Params::numbers(const std::string& key, std::vector<double> fallback) const {
  return has(key) ? numbers(key) : fallback;
}

UniformGrid parse_grid(const Params& p) {
  const auto window = p.numbers("window", {-10.0, 10.0});
  if (window.size() != 2 || !(window[1] > window[0]))
    throw ValidationError(p.field("window"), p.field("window") + " must be [a, b] with a < b");
  const double h = p.number("h", 1e-3);
  if (!(h > 0.0)) throw ValidationError(p.field("h"), p.field("h") + " must be positive");
  if ((window[1] - window[0]) / h > 5e7) throw ValidationError(p.field("h"), "grid has more than 5e7 nodes");
  return UniformGrid(window[0], window[1], h);
}

FunctionDescriptor parse_function(const Params& p) {
  using K = FunctionDescriptor::Kind;
  FunctionDescriptor d;
  d.kind = descriptor_kind_from_string(p.text("kind", "zero"));
  d.amp = p.number("amp", 1.0);
  d.center = p.number("center", 0.0);
  d.width = p.number("width", 1.0);
  d.frequency = p.number("frequency", 1.0);
  d.phase = p.number("phase", 0.0);
  switch (d.kind) {
    case K::custom:
      d.sample_x = p.numbers("x");
      d.sample_y = p.numbers("y");
      break;
    case K::lemma157:
      d.n_min = p.integer("n_min", 3, 1, 10'000'000);
      d.n_max = p.integer("n_max", 100, 1, 10'000'000);
      break;
    case K::theta_series:
      d.rule = p.text("rule", "harmonic");
      d.n_min = 1;
      d.n_max = p.integer("n_max", 100, 1, 10'000'000);
      break;
    case K::sum: {
      const Json& terms = p.raw("terms");
      if (!terms.is_array() || terms.empty()) throw ValidationError(p.field("terms"), "terms must be a non-empty array");
      for (std::size_t i = 0; i < terms.size(); ++i)
        d.terms.push_back(parse_function(Params(terms[i], p.field("terms") + "[" + std::to_string(i) + "]")));
      break;
    }
    case K::antiderivative:
      d.terms.push_back(parse_function(p.sub("integrand")));
      break;
    default:
      break;
  }
  if (p.has("claim")) d.claim = decay_class_from_string(p.text("claim", "none"));
  return d;
}

Generator parse_generator(const Params& p) {
  const std::string kind = p.text("kind", "constant_one");
  if (kind == "constant_one") return Generator::constant_one();
  if (kind == "gevrey") return Generator::gevrey(p.number("s"));
  if (kind == "custom") return Generator::custom(p.numbers("values"));
  if (kind == "explicit_log") return Generator::explicit_log(p.numbers("log_values"));
  throw ValidationError(p.field("kind"), "unknown sequence kind: " + kind);
}

WeightSequence parse_sequence(const Params& p, const std::string& key, int kmax) {
  const Generator g = p.has(key) ? parse_generator(p.sub(key)) : Generator::constant_one();
  return make_sequence(g, kmax);
}

}  // namespace hsc::cli
