#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "hsc/descriptors.hpp"
#include "hsc/diffeo.hpp"
#include "hsc/error.hpp"
#include "hsc/hs.hpp"
#include "hsc/jets.hpp"
#include "hsc/numerics.hpp"
#include "hsc/pathologies.hpp"
#include "hsc/spaces.hpp"
#include "hsc/weights.hpp"

namespace hsc::cli {
namespace {

Json opt(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }
Json opt(const std::optional<double>& d) { return d ? Json(*d) : Json(nullptr); }
Json opt(const std::optional<std::pair<double, double>>& s) {
  return s ? Json::array({s->first, s->second}) : Json(nullptr);
}

Json running_sup(const RunningSupDiagnostic& d) {
  return {{"sup", d.sup},
          {"tail_slope", d.tail_slope},
          {"bounded", d.bounded},
          {"first_order", d.first_order},
          {"confidence", to_string(d.confidence)}};
}

std::vector<double> t_grid(const Params& p, std::vector<double> fallback) {
  auto ts = p.numbers("t_grid", std::move(fallback));
  if (ts.empty()) throw ValidationError(p.field("t_grid"), "t_grid must not be empty");
  return ts;
}

// ---- weights ----

CommandResult weights_classify(const Params& p) {
  const int kmax = p.integer("kmax", 64, 8, 100000);
  const auto m = parse_sequence(p, "generator", kmax);
  const auto r = check_conditions(m);
  CommandResult out;
  out.result = {{"kmax", r.kmax},
                {"generator", to_string(m.generator().kind)},
                {"log_convex", r.log_convex},
                {"weakly_log_convex", opt(r.weakly_log_convex)},
                {"root_nondecreasing", opt(r.root_nondecreasing)},
                {"superadditive", opt(r.superadditive)},
                {"composition_bound", opt(r.composition_bound)},
                {"partition_bound", opt(r.partition_bound)},
                {"normalized", r.normalized},
                {"derivation_closed", running_sup(r.derivation_closed)},
                {"moderate_growth", running_sup(r.moderate_growth)},
                {"derivation_constant", r.derivation_constant},
                {"beurling_eligible", r.beurling_eligible},
                {"beurling_slope", r.beurling_slope},
                {"hypothesis_bundle", r.hypothesis_bundle}};
  return out;
}

CommandResult weights_qa(const Params& p) {
  const int kmax = p.integer("kmax", 10000, 8, 10'000'000);
  const auto m = parse_sequence(p, "generator", kmax);
  const auto r = quasianalytic_diagnostic(m);
  CommandResult out;
  out.result = {{"kmax", kmax},
                {"total", r.total},
                {"tail_slope", r.tail_slope},
                {"quasianalytic", r.quasianalytic},
                {"log_fit_coefficient", r.log_fit_coefficient},
                {"strong_nqa_sup", r.strong_nqa_sup},
                {"confidence", to_string(r.confidence)}};
  CsvTable t{{"K", "partial_sum"}, {}};
  for (std::size_t i = 0; i < r.partial_sums.size(); ++i)
    t.add({static_cast<long long>(i + 1), r.partial_sums[i]});
  out.csv = std::move(t);
  return out;
}

// ---- jets ----

NumericMode parse_mode(const Params& p) {
  const auto mode = p.text("mode", "double");
  if (mode == "double") return NumericMode::floating;
  if (mode == "rational") return NumericMode::rational;
  throw ValidationError(p.field("mode"), "mode must be double or rational");
}

Rational rational_of(const Json& v, const std::string& field) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number()) return parse_rational(v.dump());
  throw ValidationError(field, field + " must be a number or a rational string");
}

double double_of(const Json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
  throw ValidationError(field, field + " must be a number or a rational string");
}

template <class T>
Jet<T> parse_jet(const Params& p) {
  const Json& c = p.raw("coeffs");
  if (!c.is_array()) throw ValidationError(p.field("coeffs"), "coeffs must be an array");
  std::vector<T> coeffs;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto f = p.field("coeffs") + "[" + std::to_string(i) + "]";
    if constexpr (std::is_same_v<T, Rational>)
      coeffs.push_back(rational_of(c[i], f));
    else
      coeffs.push_back(double_of(c[i], f));
  }
  // optional "degree" truncates, or pads with zero coefficients
  if (p.has("degree")) coeffs.resize(static_cast<std::size_t>(p.integer("degree", 0, 0, 4096)) + 1, T(0));
  return Jet<T>(std::move(coeffs), p.number("base_point", 0.0));
}

template <class T>
Json coeff_json(const T& v) {
  if constexpr (std::is_same_v<T, Rational>)
    return to_string(v);
  else
    return v;
}

template <class T>
std::variant<double, long long, std::string> coeff_cell(const T& v) {
  if constexpr (std::is_same_v<T, Rational>)
    return to_string(v);
  else
    return v;
}

template <class T>
void emit_jet(CommandResult& out, const Jet<T>& j) {
  Json coeffs = Json::array();
  CsvTable t{{"k", "a_k"}, {}};
  for (int k = 0; k <= j.degree(); ++k) {
    coeffs.push_back(coeff_json(j[k]));
    t.add({static_cast<long long>(k), coeff_cell(j[k])});
  }
  out.result["coeffs"] = coeffs;
  out.result["base_point"] = j.base_point();
  out.result["degree"] = j.degree();
  out.csv = std::move(t);
}

template <class T>
CommandResult jets_compose_impl(const Params& p) {
  const auto f = parse_jet<T>(p.sub("f"));
  const auto g = parse_jet<T>(p.sub("g"));
  CommandResult out;
  emit_jet(out, compose_jets(f, g));
  return out;
}

template <class T>
CommandResult jets_invert_impl(const Params& p) {
  const auto f = parse_jet<T>(p.sub("f"));
  const auto inv = invert_jet(f);
  const auto back = compose_jets(f, inv);
  double residual = 0.0;
  for (int k = 1; k <= back.degree(); ++k)
    residual = std::max(residual, std::abs(to_double(back[k] - (k == 1 ? T(1) : T(0)))));
  CommandResult out;
  emit_jet(out, inv);
  out.result["compose_back_residual"] = residual;
  return out;
}

CommandResult jets_compose(const Params& p) {
  return parse_mode(p) == NumericMode::rational ? jets_compose_impl<Rational>(p) : jets_compose_impl<double>(p);
}

CommandResult jets_invert(const Params& p) {
  return parse_mode(p) == NumericMode::rational ? jets_invert_impl<Rational>(p) : jets_invert_impl<double>(p);
}

template <class T>
void emit_majorant(CommandResult& out, const MajorantSeries<T>& s) {
  Json g = Json::array(), psi = Json::array();
  CsvTable t{{"k", "a_k"}, {}};
  for (int k = 0; k <= s.N; ++k) {
    g.push_back(coeff_json(s.g_coeffs[k]));
    psi.push_back(coeff_json(s.psi_coeffs[k]));
    t.add({static_cast<long long>(k), coeff_cell(s.g_coeffs[k])});
  }
  out.result = {{"N", s.N},         {"g_coeffs", g},
                {"psi_coeffs", psi}, {"bound_ratio", s.bound_ratio},
                {"bound_holds", s.bound_holds}};
  out.csv = std::move(t);
}

CommandResult jets_majorant(const Params& p) {
  const int N = p.integer("N", 30, 2, 200);
  const auto m = parse_sequence(p, "weights", N);
  CommandResult out;
  if (parse_mode(p) == NumericMode::rational) {
    const auto w = exact_weights(m);
    const auto s = majorant_series<Rational>(rational_of(p.raw("A"), p.field("A")),
                                             rational_of(p.raw("C"), p.field("C")),
                                             rational_of(p.raw("rho"), p.field("rho")), w, N);
    emit_majorant(out, s);
  } else {
    emit_majorant(out, majorant_series(p.number("A"), p.number("C"), p.number("rho"), m, N));
  }
  out.result["mode"] = p.text("mode", "double");
  return out;
}

CommandResult jets_fdbbound(const Params& p) {
  const int gamma_max = p.integer("gamma_max", 30, 2, 400);
  const auto m = parse_sequence(p, "weights", gamma_max);
  const auto r = fdb_bound_check(p.number("A", 1.0), m, gamma_max);
  CommandResult out;
  out.result = {{"A", r.A},
                {"lhs", r.lhs},
                {"normalized", r.normalized},
                {"fitted_B", r.fitted_B},
                {"fitted_C", r.fitted_C},
                {"scan_A", r.scan_A},
                {"scan_C", r.scan_C},
                {"c_decreases", r.c_decreases}};
  return out;
}

// ---- spaces ----

SeminormQuery parse_query(const Params& p) {
  SeminormQuery q;
  q.cls = space_class_from_string(p.text("class", "B"));
  q.rho = p.number("rho", 1.0);
  q.p = p.number("p", 2.0);
  q.kmax = p.integer("kmax", 12, 1, 40);
  q.pmax = p.integer("pmax", 8, 0, 40);
  q.M = parse_sequence(p, "M", q.kmax);
  if (p.has("L")) q.L = parse_sequence(p, "L", std::max(q.pmax, 1));
  return q;
}

GridFunction sampled(const Params& p, const std::string& key, const UniformGrid& grid, int kmax = 12) {
  return grid_function(parse_function(p.sub(key)), grid, kmax);
}

Json seminorm_json(const SeminormResult& r) {
  return {{"value", r.value},       {"k", r.k},
          {"p_weight", r.p_weight}, {"x", r.x},
          {"per_order", r.per_order}, {"truncated", r.truncated},
          {"support", opt(r.support)}};
}

CommandResult spaces_seminorm(const Params& p) {
  const auto grid = parse_grid(p);
  const auto q = parse_query(p);
  const auto f = sampled(p, "function", grid, q.kmax);
  CommandResult out;
  out.result = seminorm_json(seminorm(f, q));
  return out;
}

CommandResult spaces_diagnose(const Params& p) {
  const auto grid = parse_grid(p);
  const auto q = parse_query(p);
  const auto f = sampled(p, "function", grid, q.kmax);
  const auto d = class_diagnostic(f, q, p.numbers("rho_grid", {4, 8, 16, 32}));
  Json entries = Json::array();
  for (const auto& e : d.entries)
    entries.push_back({{"rho", e.rho}, {"value", e.value}, {"tail_slope", e.tail_slope}, {"finite", e.finite}});
  CommandResult out;
  out.result = {{"entries", entries},
                {"monotone", d.monotone},
                {"finite_at_some_rho", d.finite_at_some_rho},
                {"finite_at_all_rho", d.finite_at_all_rho},
                {"confidence", to_string(d.confidence)}};
  return out;
}

CommandResult spaces_inclusions(const Params& p) {
  const auto grid = parse_grid(p);
  const auto f = sampled(p, "function", grid);
  const auto r = inclusion_report(f, p.number("p", 2.0), p.number("q", 4.0), p.integer("alpha", 2, 0, 12));
  CommandResult out;
  out.result = {{"alpha", r.alpha},
                {"weighted", {{"lhs", r.weighted_lhs}, {"rhs", r.weighted_rhs}, {"ratio", r.weighted_ratio},
                              {"constant", r.weight_constant}}},
                {"sobolev", {{"order", r.sobolev_order}, {"sup", r.sobolev_sup}, {"norm", r.sobolev_norm},
                             {"ratio", r.sobolev_ratio}}},
                {"interpolation", {{"lhs", r.interp_lhs}, {"rhs", r.interp_rhs}, {"ratio", r.interp_ratio}}}};
  return out;
}

// ---- diffeo ----

CsvTable diffeo_table(const GridFunction& f) {
  CsvTable t{{"x", "f", "f'"}, {}};
  const auto& s = f.slopes();
  for (std::size_t i = 0; i < f.size(); ++i) t.add({f.grid().x(i), f.value(i), s[i]});
  return t;
}

Diffeo parse_diffeo(const Params& p, const std::string& key, const UniformGrid& grid) {
  return Diffeo(sampled(p, key, grid));
}

CommandResult diffeo_compose(const Params& p) {
  const auto grid = parse_grid(p);
  const auto h = compose(parse_diffeo(p, "F", grid), parse_diffeo(p, "G", grid));
  CommandResult out;
  out.result = {{"witness", h.witness()}, {"sup_abs", h.f().sup_abs()}, {"support", opt(h.f().support())}};
  out.csv = diffeo_table(h.f());
  return out;
}

CommandResult diffeo_invert(const Params& p) {
  const auto grid = parse_grid(p);
  const auto r = invert(parse_diffeo(p, "F", grid));
  CommandResult out;
  out.result = {{"residual", r.residual}, {"witness", r.G.witness()}, {"support", opt(r.G.f().support())}};
  out.csv = diffeo_table(r.G.f());
  return out;
}

CommandResult diffeo_conjugate(const Params& p) {
  const auto grid = parse_grid(p);
  const auto r = conjugate(parse_diffeo(p, "G", grid), parse_diffeo(p, "H", grid));
  CommandResult out;
  out.result = {{"route_gap", r.route_gap}, {"support", opt(r.support)}, {"witness", r.result.witness()}};
  out.csv = diffeo_table(r.result.f());
  return out;
}

CommandResult diffeo_evolve(const Params& p) {
  const auto grid = parse_grid(p);
  const auto field = p.sub("field");
  VectorField X{parse_function(field.sub("profile")), field.number("c0", 1.0), field.number("c1", 0.0)};
  const double t_final = p.number_in("t_final", 1.0, 0.0, 1e6);
  const auto r = evolve(X, t_final, grid, p.numbers("t_grid", {}));
  CommandResult out;
  out.result = {{"dt", r.dt},
                {"steps", r.steps},
                {"bound_B", r.bound_B},
                {"field_support", opt(r.field_support)},
                {"bound_violations", r.bound_violations},
                {"support_violations", r.support_violations}};
  CsvTable t{{"t", "x", "f"}, {}};
  for (const auto& s : r.path)
    for (std::size_t i = 0; i < grid.size(); ++i) t.add({s.t, grid.x(i), s.phi.f().value(i)});
  out.csv = std::move(t);
  return out;
}

// ---- hs ----

BasepointRule parse_basepoint(const Params& p) {
  if (!p.has("basepoint")) return {};
  const Json& b = p.raw("basepoint");
  if (b.is_string() && b.get<std::string>() == "left_infinity") return {};
  if (b.is_number()) return {Basepoint::fixed, b.get<double>()};
  throw ValidationError(p.field("basepoint"), "basepoint must be \"left_infinity\" or a number");
}

HSDiffeo parse_hs(const Params& p, const std::string& key, const UniformGrid& grid) {
  return HSDiffeo(sampled(p, key, grid), parse_basepoint(p));
}

HSDiffeo identity_hs(const UniformGrid& grid, const BasepointRule& rule) {
  return HSDiffeo(GridFunction(grid, std::vector<double>(grid.size(), 0.0), DecayClass::D)
                      .with_slopes(std::vector<double>(grid.size(), 0.0)),
                  rule);
}

HSDiffeo start_point(const Params& p, const UniformGrid& grid) {
  return p.has("phi0") ? parse_hs(p, "phi0", grid) : identity_hs(grid, parse_basepoint(p));
}

CommandResult hs_rt(const Params& p) {
  const auto grid = parse_grid(p);
  const auto phi = parse_hs(p, "phi", grid);
  const auto g = r_transform(phi);
  const auto back = r_inverse(g);
  CommandResult out;
  out.result = {{"sup_error", sup_abs_diff(phi.f().values(), back.f().values())},
                {"gamma_floor", g.floor},
                {"in_group", phi.in_group()}};
  CsvTable t{{"x", "f", "gamma", "f_roundtrip"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i)
    t.add({grid.x(i), phi.f().value(i), g.gamma.value(i), back.f().value(i)});
  out.csv = std::move(t);
  return out;
}

CommandResult hs_geodesic(const Params& p) {
  const auto grid = parse_grid(p);
  const auto phi0 = start_point(p, grid);
  const auto ts = t_grid(p, {0.0, 0.5, 1.0});
  const bool ivp = p.has("tangent");
  std::optional<HSDiffeo> phi1;
  std::optional<GridFunction> h;
  if (ivp)
    h = sampled(p, "tangent", grid);
  else
    phi1 = parse_hs(p, "phi1", grid);
  CommandResult out;
  Json points = Json::array();
  CsvTable t{{"t", "x", "f", "gamma"}, {}};
  for (double s : ts) {
    const auto pt = ivp ? geodesic_ivp(phi0, *h, s) : geodesic_bvp(phi0, *phi1, s);
    points.push_back({{"t", s}, {"monoid", pt.monoid}, {"gamma_floor", pt.gamma.floor},
                      {"sup_abs", pt.phi.f().sup_abs()}});
    for (std::size_t i = 0; i < grid.size(); ++i)
      t.add({s, grid.x(i), pt.phi.f().value(i), pt.gamma.gamma.value(i)});
  }
  out.result = {{"mode", ivp ? "ivp" : "bvp"}, {"points", points}};
  out.csv = std::move(t);
  return out;
}

CommandResult hs_distance(const Params& p) {
  const auto grid = parse_grid(p);
  const auto r = distance(start_point(p, grid), parse_hs(p, "phi1", grid));
  CommandResult out;
  out.result = {{"value", r.value}, {"quadrature_sq", r.quadrature_sq}, {"r_norm_sq", r.r_norm_sq},
                {"rel_gap", r.rel_gap}};
  return out;
}

HSDiffeo calibrated(const Params& p, const UniformGrid& grid) {
  return r_inverse(calibrated_gamma(grid, p.number("a"), p.number("c1"), p.number("w1"), p.number("c2"),
                                    p.number("w2")));
}

CommandResult hs_shift(const Params& p) {
  const auto grid = parse_grid(p);
  std::optional<HSDiffeo> phi0, phi1;
  if (p.has("calibrated")) {
    const Json& c = p.raw("calibrated");
    if (!c.is_array() || c.size() != 2) throw ValidationError(p.field("calibrated"), "calibrated must list two pairs");
    phi0 = calibrated(Params(c[0], p.field("calibrated[0]")), grid);
    phi1 = calibrated(Params(c[1], p.field("calibrated[1]")), grid);
  } else {
    phi0 = parse_hs(p, "phi0", grid);
    phi1 = parse_hs(p, "phi1", grid);
  }
  Json rows = Json::array();
  for (double t : t_grid(p, {0.25, 0.5, 2.0})) {
    const auto r = shift_r(*phi0, *phi1, t);
    rows.push_back({{"t", r.t}, {"closed_form", r.closed_form}, {"measured", r.measured}, {"rel_gap", r.rel_gap},
                    {"constraint0", r.constraint0}, {"constraint1", r.constraint1}, {"r_norm_sq", r.r_norm_sq},
                    {"subgroup_times", r.subgroup_times}});
  }
  CommandResult out;
  out.result = {{"rows", rows}};
  return out;
}

CommandResult hs_blowup(const Params& p) {
  const auto grid = parse_grid(p);
  const auto phi0 = start_point(p, grid);
  const auto r = p.has("tangent") ? blowup_ivp(phi0, sampled(p, "tangent", grid))
                                  : blowup_bvp(phi0, parse_hs(p, "phi1", grid));
  Json points = Json::array();
  CsvTable t{{"t", "x", "f"}, {}};
  for (double s : p.numbers("t_grid", {})) {
    const auto c = r.at(s);
    points.push_back({{"t", c.t},
                      {"gamma_floor", c.gamma_floor},
                      {"monoid", c.monoid},
                      {"first_contact", opt(c.first_contact)},
                      {"monotone", c.monotone},
                      {"surjective", c.surjective},
                      {"image", Json::array({c.image_min, c.image_max})}});
    for (std::size_t i = 0; i < grid.size(); ++i) t.add({s, grid.x(i), c.phi.f().value(i)});
  }
  CommandResult out;
  out.result = {{"t0", r.t0}, {"t1", r.t1}, {"contact_x", opt(r.contact_x)}, {"points", points}};
  if (!points.empty()) out.csv = std::move(t);
  return out;
}

CommandResult hs_validate(const Params& p) {
  const auto grid = parse_grid(p);
  const auto phi0 = start_point(p, grid);
  const auto u0 = sampled(p, "u0", grid);
  std::vector<double> ts;
  if (p.has("t_grid")) {
    ts = t_grid(p, {});
  } else {
    const double frac = p.number_in("blowup_fraction", 0.5, 0.0, 1.0);
    const auto b = blowup_ivp(phi0, u0);
    if (!std::isfinite(b.t1)) throw ValidationError(p.field("blowup_fraction"), "u0 never blows up; give t_grid");
    ts = {frac * b.t1};
  }
  OracleReport oracle;
  const auto rows = validate_geodesic(phi0, u0, p.number_in("dt", 1e-4, 1e-8, 1.0), ts, &oracle);
  CommandResult out;
  Json jr = Json::array();
  CsvTable t{{"t", "sup_error", "l2_error"}, {}};
  for (const auto& r : rows) {
    jr.push_back({{"t", r.t}, {"sup_error", r.sup_error}, {"l2_error", r.l2_error}});
    t.add({r.t, r.sup_error, r.l2_error});
  }
  out.result = {{"rows", jr}, {"steps", oracle.steps}, {"dt", oracle.dt}, {"max_ux", oracle.max_ux},
                {"near_blowup", oracle.near_blowup}};
  out.csv = std::move(t);
  return out;
}

// ---- pathologies ----

std::vector<int> schedule(const Params& p) {
  std::vector<int> out;
  for (double v : p.numbers("schedule", {100, 1000, 10000})) {
    if (v != std::floor(v) || v < 1 || v > 1e7) throw ValidationError(p.field("schedule"), "schedule entries must be integers in [1, 1e7]");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

CommandResult patho_lemma157(const Params& p) {
  const auto ps = p.numbers("p", {1.5, 2.0, 4.0});
  const auto r = lemma157_profile(ps, p.integer("n_max", 10000, 3, 10'000'000), p.integer("k_max", 3, 1, 8),
                                  schedule(p), p.integer("n_min", 3, 3, 10'000'000));
  CsvTable t{{"k", "p", "series_value", "quadrature_value", "rel_gap"}, {}};
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    t.add({static_cast<long long>(row.k), row.p, row.series, row.quadrature, row.rel_gap});
    rows.push_back({{"k", row.k}, {"p", row.p}, {"series", row.series}, {"quadrature", row.quadrature},
                    {"rel_gap", row.rel_gap}, {"convergent", row.convergent}});
  }
  CommandResult out;
  out.result = {{"n_min", r.n_min},
                {"n_max", r.n_max},
                {"rows", rows},
                {"nonnegative", r.nonnegative},
                {"chi_prime_l1", r.chi_prime_l1},
                {"schedule", r.schedule},
                {"l1_prime", r.l1_prime},
                {"train_harmonic", r.train_harmonic},
                {"full_harmonic", r.full_harmonic},
                {"l1_phi", r.l1_phi}};
  out.csv = std::move(t);
  return out;
}

CommandResult patho_halflie(const Params& p) {
  const auto r = halflie_divergence(p.number("p", 2.0), p.integer("n_max", 10000, 3, 10'000'000), schedule(p));
  CsvTable t{{"window_right_edge", "term1_mass", "term2_mass"}, {}};
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    t.add({row.window_right_edge, row.term1_mass, row.term2_mass});
    rows.push_back({{"N", row.N}, {"window_right_edge", row.window_right_edge}, {"selected", row.selected},
                    {"term1_mass", row.term1_mass}, {"term2_mass", row.term2_mass}});
  }
  CommandResult out;
  out.result = {{"p", r.p},
                {"rows", rows},
                {"term1_increasing", r.term1_increasing},
                {"term1_growth", r.term1_growth},
                {"fitted_c", r.fitted_c},
                {"term2_increment", r.term2_increment},
                {"theta_max_rel_error", r.theta_max_rel_error},
                {"lower_bound_min_ratio", r.lower_bound_min_ratio}};
  out.csv = std::move(t);
  return out;
}

CommandResult patho_mu(const Params& p) {
  const int k_max = p.integer("k_max", 100, 1, 1'000'000);
  const auto m = parse_sequence(p, "generator", std::max(k_max, 8));
  const auto r = gevrey_mu_sequence(m, k_max);
  CommandResult out;
  out.result = {{"k_max", r.k_max},
                {"r_decreasing", r.r_decreasing},
                {"kr_increasing", r.kr_increasing},
                {"spacing_ok", r.spacing_ok},
                {"r4", r.r4}};
  CsvTable t{{"k", "log_mu", "log_r", "log_kr"}, {}};
  for (int k = 1; k <= k_max; ++k) t.add({static_cast<long long>(k), r.log_mu[k], r.log_r[k], r.log_kr[k]});
  out.csv = std::move(t);
  return out;
}

}  // namespace

const std::map<std::string, Command>& command_registry() {
  static const std::map<std::string, Command> registry = {
      {"weights.classify", weights_classify}, {"weights.qa", weights_qa},
      {"jets.compose", jets_compose},         {"jets.invert", jets_invert},
      {"jets.majorant", jets_majorant},       {"jets.fdbbound", jets_fdbbound},
      {"spaces.seminorm", spaces_seminorm},   {"spaces.diagnose", spaces_diagnose},
      {"spaces.inclusions", spaces_inclusions},
      {"diffeo.compose", diffeo_compose},     {"diffeo.invert", diffeo_invert},
      {"diffeo.conjugate", diffeo_conjugate}, {"diffeo.evolve", diffeo_evolve},
      {"hs.rt", hs_rt},                       {"hs.geodesic", hs_geodesic},
      {"hs.distance", hs_distance},           {"hs.shift", hs_shift},
      {"hs.blowup", hs_blowup},               {"hs.validate", hs_validate},
      {"patho.lemma157", patho_lemma157},     {"patho.halflie", patho_halflie},
      {"patho.mu", patho_mu},
  };
  return registry;
}

}  // namespace hsc::cli
