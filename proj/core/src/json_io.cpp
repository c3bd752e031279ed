#include "qforge/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qforge/factor.hpp"

namespace qf {

Rational parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) raise(Errc::ConfigError, "empty rational literal");
  size_t slash = s.find('/');
  auto check_int = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    size_t i = allow_sign && (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  try {
    if (slash == std::string::npos) {
      if (!check_int(s, true)) raise(Errc::ConfigError, "bad rational literal: " + text);
      return make_rational(Integer(s), Integer(1));
    }
    // the wire form keeps the sign on the numerator
    std::string n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!check_int(n, true) || !check_int(d, false))
      raise(Errc::ConfigError, "bad rational literal: " + text);
    Integer di(d);
    if (di == 0) raise(Errc::ConfigError, "zero denominator: " + text);
    return make_rational(Integer(n), di);
  } catch (const std::invalid_argument&) {
    raise(Errc::ConfigError, "bad rational literal: " + text);
  }
}

std::string rational_str(const Rational& r) {
  if (den(r) == 1) return num(r).get_str();
  return num(r).get_str() + "/" + den(r).get_str();
}

Json rational_json(const Rational& r) { return rational_str(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<i64>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  raise(Errc::ConfigError, "expected a rational (string or integer)");
}

Json point_json(const CurvePoint<Rational>& pt) {
  if (pt.inf) return "inf";
  return Json{{"x", rational_str(pt.x)}, {"y", rational_str(pt.y)}};
}

CurvePoint<Rational> point_from_json(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf") return CurvePoint<Rational>::infinity();
    return parse_point(s);
  }
  if (j.is_object() && j.contains("x") && j.contains("y"))
    return CurvePoint<Rational>::affine(rational_from_json(j.at("x")),
                                        rational_from_json(j.at("y")));
  raise(Errc::ConfigError, "expected a point (\"x,y\", \"inf\" or {x,y})");
}

Json quad_ext_json(const QuadExt& x) {
  return Json{{"a", rational_str(x.a)},
              {"b", rational_str(x.b)},
              {"d", x.d.get_str()}};
}

QuadExt quad_ext_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("d"))
    raise(Errc::ConfigError, "expected quad-ext components {a, b, d}");
  Rational a = rational_from_json(j.at("a"));
  Rational b = rational_from_json(j.at("b"));
  Integer d(j.at("d").is_string() ? Integer(j.at("d").get<std::string>())
                                  : Integer(j.at("d").get<long>()));
  if (b == 0) return QuadExt(a);
  if (d == 0 || d == 1 || squarefree_decompose(d).squarefree != d)
    raise(Errc::ConfigError, "quad-ext d must be squarefree and not 0 or 1");
  return QuadExt(a, b, d);
}

bool is_quad_point_json(const Json& j) {
  return j.is_object() && j.contains("x") && j.at("x").is_object() &&
         j.at("x").contains("d");
}

CurvePoint<QuadExt> quad_point_from_json(const Json& j) {
  if (!is_quad_point_json(j) || !j.contains("y"))
    raise(Errc::ConfigError, "expected {x: {a,b,d}, y: {a,b,d}}");
  return CurvePoint<QuadExt>::affine(quad_ext_from_json(j.at("x")),
                                     quad_ext_from_json(j.at("y")));
}

Json quad_point_json(const CurvePoint<QuadExt>& pt) {
  if (pt.inf) return "inf";
  return Json{{"x", quad_ext_json(pt.x)}, {"y", quad_ext_json(pt.y)}};
}

Json line_json(const CombinatorialLine& line) {
  return Json{{"v", line.v}, {"w", line.w}};
}

Json forge_result_json(const ForgeResult& r) {
  Json spec{{"l", rational_str(r.l)}, {"N", r.b.size()}};
  Json bs = Json::array();
  for (const auto& b : r.b) bs.push_back(rational_str(b));
  spec["b"] = bs;
  Json out{{"line", line_json(r.line)},
           {"u", rational_str(r.u)},
           {"d", r.d.get_str()},
           {"spec", spec}};
  out["traced"] = r.traced ? point_json(*r.traced) : Json(nullptr);
  return out;
}

Json forge_outcome_json(const ForgeOutcome& o) {
  Json results = Json::array();
  for (const auto& r : o.results) results.push_back(forge_result_json(r));
  return Json{{"results", results},
              {"stats",
               {{"restarts_used", o.stats.restarts_used},
                {"lines_scanned", o.stats.lines_scanned},
                {"monochromatic_hits", o.stats.monochromatic_hits},
                {"degenerate_skips", o.stats.degenerate_skips}}},
              {"empty_forge", o.empty()}};
}

Json scan_row_json(const ScanRow& row) {
  Json evals = Json::array();
  for (const auto& e : row.evals)
    evals.push_back(Json{{"form", e.form_index}, {"d", e.d.get_str()}});
  return Json{{"t0", rational_str(row.t0)}, {"evals", evals}, {"hits", row.hits}};
}

Json fp_scan_row_json(const FpScanRow& row) {
  return Json{{"t0", row.t0}, {"hits", row.hits}};
}

Json density_report_json(const DensityReport& rep) {
  return Json{{"p", rep.p},
              {"n", rep.n},
              {"count", rep.count},
              {"epsilon_bound", rational_str(rep.epsilon_bound)},
              {"heuristic", rational_str(rep.heuristic)},
              {"pass", rep.pass},
              {"weil_ok", rep.weil_ok}};
}

Json witness_json(const AvoidanceWitness& w) {
  return Json{{"p", w.p},
              {"m", w.m},
              {"u_tuple", w.u_tuple},
              {"checked_tuples", w.checked_tuples}};
}

Json prime_record_json(const PrimeRecord& rec) {
  Json out{{"type", "prime"}, {"p", rec.p}, {"skipped", rec.skipped}};
  if (rec.density) out["density"] = density_report_json(*rec.density);
  if (rec.witness_searched) {
    out["witness_searched"] = true;
    out["witness"] = rec.witness ? witness_json(*rec.witness) : Json(nullptr);
  }
  return out;
}

Json sweep_aggregate_json(const SweepAggregate& agg) {
  Json out{{"type", "aggregate"},
           {"primes_swept", agg.primes_swept},
           {"density_pass", agg.density_pass},
           {"weil_pass", agg.weil_pass},
           {"witness_attempts", agg.witness_attempts},
           {"witness_found", agg.witness_found}};
  if (agg.primes_swept > 0) {
    out["min_ratio"] = rational_str(agg.min_ratio);
    out["max_ratio"] = rational_str(agg.max_ratio);
    out["mean_ratio"] = rational_str(agg.mean_ratio);
    // exact mean is an unwieldy fraction; carry a readable companion
    out["mean_ratio_approx"] = agg.mean_ratio.get_d();
  }
  return out;
}

Json certificate_json(const IndependenceCertificate& cert) {
  Json points = Json::array();
  for (const auto& pt : cert.points) points.push_back(point_json(pt));
  Json indices = Json::array();
  for (const auto& idx : cert.per_prime_index) indices.push_back(idx.get_str());
  Json out{{"points", points},
           {"B", cert.b_requested.get_str()},
           {"B_certified", cert.b_certified.get_str()},
           {"verdict", verdict_name(cert.verdict)},
           {"primes", cert.primes},
           {"per_prime_indices", indices}};
  if (cert.verdict == Verdict::RelationFound) {
    Json rel = Json::array();
    for (const auto& a : cert.relation) rel.push_back(a.get_str());
    out["relation"] = rel;
  }
  return out;
}

Json growth_report_json(const GrowthReport& rep) {
  Json rows = Json::array();
  for (const auto& row : rep.rows)
    rows.push_back(Json{{"forged_total", row.forged_total},
                        {"independent_size", row.independent_size}});
  Json pts = Json::array();
  for (const auto& pt : rep.independent) pts.push_back(point_json(pt));
  return Json{{"schedule", rep.schedule},
              {"rows", rows},
              {"outcome", rep.outcome},
              {"independent", pts},
              {"forge_stats",
               {{"restarts_used", rep.forge_stats.restarts_used},
                {"lines_scanned", rep.forge_stats.lines_scanned},
                {"monochromatic_hits", rep.forge_stats.monochromatic_hits},
                {"degenerate_skips", rep.forge_stats.degenerate_skips}}}};
}

namespace {

std::vector<Rational> split_rationals(const std::string& text, size_t expect) {
  std::vector<Rational> out;
  std::string cur;
  std::stringstream ss(text);
  while (std::getline(ss, cur, ',')) out.push_back(parse_rational(cur));
  if (out.size() != expect)
    raise(Errc::ConfigError, "expected " + std::to_string(expect) +
                                 " comma-separated rationals in \"" + text + "\"");
  return out;
}

}  // namespace

SplitCurve<Rational> parse_curve(const std::string& text) {
  auto v = split_rationals(text, 3);
  try {
    return SplitCurve<Rational>(v[0], v[1], v[2]);
  } catch (const Error&) {
    raise(Errc::ConfigError, "curve roots must be distinct: " + text);
  }
}

QuarticCurve<Rational> parse_quartic(const std::string& text) {
  auto v = split_rationals(text, 4);
  try {
    return QuarticCurve<Rational>({v[0], v[1], v[2], v[3]});
  } catch (const Error&) {
    raise(Errc::ConfigError, "quartic constants must be distinct: " + text);
  }
}

CurvePoint<Rational> parse_point(const std::string& text) {
  auto v = split_rationals(text, 2);
  return CurvePoint<Rational>::affine(v[0], v[1]);
}

std::string curve_str(const SplitCurve<Rational>& c) {
  return rational_str(c.e1) + "," + rational_str(c.e2) + "," + rational_str(c.e3);
}

std::string point_str(const CurvePoint<Rational>& pt) {
  if (pt.inf) return "inf";
  return rational_str(pt.x) + "," + rational_str(pt.y);
}

}  // namespace qf
