#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

#include "qforge/version.hpp"

namespace qf::cli {

namespace {

void log(const Invocation& inv, int level, const std::string& msg) {
  if (inv.verbosity >= level) std::cerr << "qforge: " << msg << "\n";
}

void check_fields(const Json& config, const std::set<std::string>& allowed) {
  if (!config.is_object()) raise(Errc::ConfigError, "config must be a JSON object");
  for (auto it = config.begin(); it != config.end(); ++it) {
    if (!allowed.count(it.key()))
      raise(Errc::ConfigError, "unknown config field: " + it.key());
  }
}

u64 get_u64(const Json& c, const std::string& key, u64 fallback) {
  if (!c.contains(key)) return fallback;
  if (!c.at(key).is_number_unsigned() && !c.at(key).is_number_integer())
    raise(Errc::ConfigError, key + " must be an integer");
  i64 v = c.at(key).get<i64>();
  if (v < 0) raise(Errc::ConfigError, key + " must be non-negative");
  return static_cast<u64>(v);
}

long get_long(const Json& c, const std::string& key, long fallback) {
  if (!c.contains(key)) return fallback;
  if (!c.at(key).is_number_integer() && !c.at(key).is_number_unsigned())
    raise(Errc::ConfigError, key + " must be an integer");
  return c.at(key).get<long>();
}

std::string get_string(const Json& c, const std::string& key) {
  if (!c.contains(key) || !c.at(key).is_string())
    raise(Errc::ConfigError, "missing string field: " + key);
  return c.at(key).get<std::string>();
}

u64 effective_seed(const Invocation& inv) {
  if (inv.seed_override) return *inv.seed_override;
  return get_u64(inv.config, "seed", 0);
}

QuarticCurve<Rational> quartic_from_config(const Json& c) {
  if (c.contains("quartic")) return parse_quartic(get_string(c, "quartic"));
  if (c.contains("curve") && c.contains("point")) {
    SplitCurve<Rational> curve = parse_curve(get_string(c, "curve"));
    CurvePoint<Rational> p0 = parse_point(get_string(c, "point"));
    return to_quartic(curve, p0);
  }
  raise(Errc::ConfigError, "need \"quartic\" or \"curve\" + \"point\"");
}

std::vector<LinearFormFp> forms_fp_from_json(const Json& j) {
  std::vector<LinearFormFp> out;
  if (!j.is_array()) raise(Errc::ConfigError, "forms must be an array");
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("a") || !e.contains("b"))
      raise(Errc::ConfigError, "each form needs fields a and b");
    out.push_back(LinearFormFp{e.at("a").get<u64>(), e.at("b").get<u64>()});
  }
  return out;
}

struct OutputSink {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) raise(Errc::ConfigError, "cannot open output path: " + path);
      os = &file;
    }
  }
};

Json run_header(const Invocation& inv, u64 seed, i64 wall_ms = -1) {
  Json h{{"command", inv.command},
         {"config", inv.config},
         {"version", kVersion},
         {"seed", seed}};
  if (wall_ms >= 0) h["wall_ms"] = wall_ms;
  return h;
}

// ---- subcommands ----

Json cmd_convert(const Json& c, u64) {
  check_fields(c, {"curve", "point", "map_points", "seed"});
  SplitCurve<Rational> curve = parse_curve(get_string(c, "curve"));
  CurvePoint<Rational> p0 = parse_point(get_string(c, "point"));
  QuarticCurve<Rational> q = to_quartic(curve, p0);
  Json cs = Json::array();
  for (const auto& ci : q.c) cs.push_back(rational_str(ci));
  Json payload{{"c", cs}};
  const auto& prov = *q.provenance;
  payload["x0"] = rational_str(prov.x0);
  payload["y0"] = rational_str(prov.y0);
  Json shifted = Json::array();
  for (const auto& e : prov.shifted_roots) shifted.push_back(rational_str(e));
  payload["shifted_roots"] = shifted;
  if (c.contains("map_points")) {
    Json mapped = Json::array();
    for (const auto& pj : c.at("map_points")) {
      if (is_quad_point_json(pj)) {
        // point with coordinates given as a + b sqrt(d) components
        CurvePoint<QuadExt> pt = quad_point_from_json(pj);
        QuarticCurve<QuadExt> ql = lift_quartic(q);
        QuarticPoint<QuadExt> qp = weierstrass_to_quartic_point(ql, pt);
        mapped.push_back(
            Json{{"u", quad_ext_json(qp.u)}, {"v", quad_ext_json(qp.v)}});
        continue;
      }
      CurvePoint<Rational> pt = point_from_json(pj);
      QuarticPoint<Rational> qp = weierstrass_to_quartic_point(q, pt);
      CurvePoint<Rational> back = quartic_to_weierstrass_point(q, qp);
      if (!(back == pt)) raise(Errc::InternalError, "round trip failed");
      mapped.push_back(Json{{"u", rational_str(qp.u)}, {"v", rational_str(qp.v)}});
    }
    payload["mapped"] = mapped;
  }
  return payload;
}

Json cmd_forge(const Json& c, u64 seed) {
  check_fields(c, {"curve", "point", "restarts", "n_max", "coeff_bound",
                   "line_cap", "seed"});
  SplitCurve<Rational> curve = parse_curve(get_string(c, "curve"));
  CurvePoint<Rational> p0 = parse_point(get_string(c, "point"));
  ForgeBudget budget;
  budget.restarts = get_u64(c, "restarts", budget.restarts);
  budget.n_max = static_cast<size_t>(get_u64(c, "n_max", budget.n_max));
  budget.coeff_bound = get_long(c, "coeff_bound", budget.coeff_bound);
  budget.line_cap = get_u64(c, "line_cap", budget.line_cap);
  ForgeOutcome outcome = forge(curve, p0, budget, seed);
  return forge_outcome_json(outcome);
}

Json cmd_scan(const Json& c, u64) {
  check_fields(c, {"quartic", "curve", "point", "p", "forms", "t_min", "t_max",
                   "designated_d", "seed"});
  if (!c.contains("forms")) raise(Errc::ConfigError, "scan needs forms");
  if (c.contains("p")) {
    u64 p = get_u64(c, "p", 0);
    FpField f(p);
    QuarticCurve<FpElement> q = reduce_quartic(quartic_from_config(c), f);
    std::vector<LinearFormFp> forms = forms_fp_from_json(c.at("forms"));
    u64 t_min = get_u64(c, "t_min", 0);
    u64 t_max = get_u64(c, "t_max", p - 1);
    Json rows = Json::array();
    for (const auto& row : scan_linear_family(q, forms, t_min, t_max))
      rows.push_back(fp_scan_row_json(row));
    return Json{{"rows", rows}};
  }
  QuarticCurve<Rational> q = quartic_from_config(c);
  std::vector<LinearFormQ> forms;
  for (const auto& e : c.at("forms")) {
    if (!e.is_object() || !e.contains("a") || !e.contains("b"))
      raise(Errc::ConfigError, "each form needs fields a and b");
    forms.push_back(
        LinearFormQ{rational_from_json(e.at("a")), rational_from_json(e.at("b"))});
  }
  long t_min = get_long(c, "t_min", 0);
  long t_max = get_long(c, "t_max", 0);
  Integer d = Integer(get_long(c, "designated_d", 1));
  Json rows = Json::array();
  for (const auto& row : scan_linear_family(q, forms, t_min, t_max, d))
    rows.push_back(scan_row_json(row));
  return Json{{"rows", rows}};
}

int cmd_density(const Invocation& inv, u64 seed) {
  const Json& c = inv.config;
  check_fields(c, {"quartic", "curve", "point", "prime_min", "prime_max", "n",
                   "k", "m", "budget", "seed"});
  QuarticCurve<Rational> q = quartic_from_config(c);
  SweepConfig cfg;
  cfg.prime_min = get_u64(c, "prime_min", cfg.prime_min);
  cfg.prime_max = get_u64(c, "prime_max", cfg.prime_max);
  cfg.n = static_cast<size_t>(get_u64(c, "n", cfg.n));
  cfg.k = static_cast<size_t>(get_u64(c, "k", cfg.k));
  cfg.m = get_u64(c, "m", cfg.m);
  cfg.budget = get_u64(c, "budget", cfg.budget);
  cfg.seed = seed;
  cfg.threads = inv.threads;
  auto t0 = std::chrono::steady_clock::now();
  SweepOutput out = prime_sweep(q, cfg);
  auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  OutputSink sink(inv.out_path);
  Json header = run_header(inv, seed, wall);
  header["type"] = "run_header";
  *sink.os << header.dump() << "\n";
  for (const auto& rec : out.records) *sink.os << prime_record_json(rec).dump() << "\n";
  *sink.os << sweep_aggregate_json(out.aggregate).dump() << "\n";
  return 0;
}

Json cmd_avoid(const Json& c, u64 seed) {
  check_fields(c, {"quartic", "curve", "point", "p", "k", "m", "n", "sigmas",
                   "budget", "seed"});
  u64 p = get_u64(c, "p", 0);
  if (p == 0) raise(Errc::ConfigError, "avoid needs a prime p");
  FpField f(p);
  QuarticCurve<FpElement> fbar = reduce_quartic(quartic_from_config(c), f);
  QuarticGroup group(fbar);
  u64 m = get_u64(c, "m", 2);
  u64 budget = get_u64(c, "budget", 2000);
  size_t k = static_cast<size_t>(get_u64(c, "k", 2));
  std::vector<std::vector<LinearFormFp>> sigmas;
  if (c.contains("sigmas")) {
    for (const auto& sj : c.at("sigmas")) sigmas.push_back(forms_fp_from_json(sj));
  } else {
    size_t n = static_cast<size_t>(get_u64(c, "n", 2));
    std::mt19937_64 rng(splitmix64(seed));
    for (size_t j = 0; j < k; ++j) {
      std::vector<LinearFormFp> s;
      for (size_t i = 0; i < n; ++i)
        s.push_back(LinearFormFp{1 + rng() % (p - 1), rng() % p});
      sigmas.push_back(std::move(s));
    }
  }
  AvoidanceStats stats;
  auto witness = avoidance_search(group, sigmas, m, budget, seed, &stats);
  Json payload{{"p", p},
               {"m", m},
               {"group_order", group.group_order()},
               {"tuples_tried", stats.tuples_tried},
               {"exhaustive", stats.exhaustive}};
  Json sj = Json::array();
  for (const auto& s : sigmas) {
    Json forms = Json::array();
    for (const auto& fm : s) forms.push_back(Json{{"a", fm.a}, {"b", fm.b}});
    sj.push_back(forms);
  }
  payload["sigmas"] = sj;
  payload["witness"] = witness ? witness_json(*witness) : Json(nullptr);
  return payload;
}

Json cmd_certify(const Json& c, u64) {
  check_fields(c, {"curve", "points", "B", "prime_count", "prime_budget",
                   "p_min", "shell_radius", "work_cap", "seed"});
  SplitCurve<Rational> curve = parse_curve(get_string(c, "curve"));
  if (!c.contains("points") || !c.at("points").is_array())
    raise(Errc::ConfigError, "certify needs a points array");
  std::vector<CurvePoint<Rational>> points;
  for (const auto& pj : c.at("points")) points.push_back(point_from_json(pj));
  CertifyOptions opt;
  opt.bound = Integer(get_long(c, "B", 10000));
  opt.prime_count = static_cast<size_t>(get_u64(c, "prime_count", opt.prime_count));
  opt.prime_budget = static_cast<size_t>(get_u64(c, "prime_budget", opt.prime_budget));
  opt.p_min = get_u64(c, "p_min", opt.p_min);
  opt.shell_radius = get_long(c, "shell_radius", opt.shell_radius);
  opt.work_cap = get_u64(c, "work_cap", opt.work_cap);
  return certificate_json(certify(curve, points, opt));
}

Json cmd_growth(const Json& c, u64 seed) {
  check_fields(c, {"curve", "point", "schedule", "B", "n_max", "coeff_bound",
                   "line_cap", "p_min", "seed"});
  SplitCurve<Rational> curve = parse_curve(get_string(c, "curve"));
  CurvePoint<Rational> p0 = parse_point(get_string(c, "point"));
  std::vector<u64> schedule;
  if (c.contains("schedule")) {
    for (const auto& s : c.at("schedule")) schedule.push_back(s.get<u64>());
  } else {
    schedule = {100, 1000, 10000};
  }
  ForgeBudget budget;
  budget.n_max = static_cast<size_t>(get_u64(c, "n_max", budget.n_max));
  budget.coeff_bound = get_long(c, "coeff_bound", budget.coeff_bound);
  budget.line_cap = get_u64(c, "line_cap", budget.line_cap);
  CertifyOptions opt;
  opt.bound = Integer(get_long(c, "B", 1000));
  opt.p_min = get_u64(c, "p_min", opt.p_min);
  return growth_report_json(
      rank_growth_report(curve, p0, schedule, budget, opt, seed));
}

}  // namespace

int run_command(const Invocation& inv) {
  u64 seed = 0;
  try {
    seed = effective_seed(inv);
    log(inv, 1, "command=" + inv.command + " seed=" + std::to_string(seed));
    if (inv.command == "density") return cmd_density(inv, seed);

    auto t0 = std::chrono::steady_clock::now();
    Json payload;
    if (inv.command == "convert")
      payload = cmd_convert(inv.config, seed);
    else if (inv.command == "forge")
      payload = cmd_forge(inv.config, seed);
    else if (inv.command == "scan")
      payload = cmd_scan(inv.config, seed);
    else if (inv.command == "avoid")
      payload = cmd_avoid(inv.config, seed);
    else if (inv.command == "certify")
      payload = cmd_certify(inv.config, seed);
    else if (inv.command == "growth")
      payload = cmd_growth(inv.config, seed);
    else
      raise(Errc::ConfigError, "unknown command: " + inv.command);

    auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    Json record = run_header(inv, seed, wall);
    record["payload"] = payload;
    OutputSink sink(inv.out_path);
    *sink.os << record.dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    Json err{{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
    OutputSink sink(inv.out_path);
    *sink.os << err.dump(2) << "\n";
    int code = e.code() == Errc::ConfigError ? 2 : 1;
    log(inv, 1, std::string("error: ") + e.what());
    return code;
  } catch (const Json::exception& e) {
    Json err{{"error", {{"code", "ConfigError"}, {"message", e.what()}}}};
    OutputSink sink(inv.out_path);
    *sink.os << err.dump(2) << "\n";
    return 2;
  }
}

}  // namespace qf::cli
