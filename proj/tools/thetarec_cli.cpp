// Command-line front end: one subcommand per library surface, reproducible
// machine-readable output.  Exit codes: 0 success / all non-skipped checks
// pass, 1 audit failure, 2 precision exhaustion, 3 usage error.
#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "thetarec/audit.hpp"
#include "thetarec/certified_real.hpp"
#include "thetarec/cf.hpp"
#include "thetarec/model_map.hpp"
#include "thetarec/ostrowski.hpp"
#include "thetarec/quad.hpp"
#include "thetarec/renorm.hpp"
#include "thetarec/symbolic.hpp"

using json = nlohmann::json;
using namespace thetarec;

namespace {

// ---------------------------------------------------------------------------
// Shared run configuration and output plumbing.

struct Common {
  std::string angle;
  std::string format = "json";
  std::string output;        // empty = stdout
  bool no_timestamp = false;
};

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_out(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw std::invalid_argument("cannot open output file " + c.output);
  f << text;
}

void emit_json(const Common& c, const std::string& command,
               const json& config, const json& result) {
  json out;
  out["schema"] = "theta-recur/v1";
  out["command"] = command;
  out["config"] = config;
  if (!c.no_timestamp) out["timestamp"] = iso_now();
  out["result"] = result;
  write_out(c, out.dump(2) + "\n");
}

std::string csv_prolog(const Common& c, const std::string& command,
                       const json& config) {
  std::ostringstream os;
  os << "# schema=theta-recur/v1\n# command=" << command << "\n";
  for (const auto& [key, value] : config.items())
    os << "# " << key << "="
       << (value.is_string() ? value.get<std::string>() : value.dump())
       << "\n";
  if (!c.no_timestamp) os << "# timestamp=" << iso_now() << "\n";
  return os.str();
}

void emit_csv(const Common& c, const std::string& command, const json& config,
              const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  os << csv_prolog(c, command, config);
  for (std::size_t i = 0; i < header.size(); ++i)
    os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << row[i];
    os << "\n";
  }
  write_out(c, os.str());
}

void emit_text(const Common& c, const std::string& command,
               const json& config, const json& result) {
  std::ostringstream os;
  os << "command: " << command << "\n";
  for (const auto& [key, value] : config.items())
    os << "  " << key << " = "
       << (value.is_string() ? value.get<std::string>() : value.dump())
       << "\n";
  if (!c.no_timestamp) os << "timestamp: " << iso_now() << "\n";
  for (const auto& [key, value] : result.items())
    os << key << " = "
       << (value.is_string() ? value.get<std::string>() : value.dump())
       << "\n";
  write_out(c, os.str());
}

// Dispatches on the requested format; `csv` must be provided by the caller
// when the subcommand supports tabular output.
void emit(const Common& c, const std::string& command, const json& config,
          const json& result,
          const std::vector<std::string>* csv_header = nullptr,
          const std::vector<std::vector<std::string>>* csv_rows = nullptr) {
  if (c.format == "json") {
    emit_json(c, command, config, result);
  } else if (c.format == "text") {
    emit_text(c, command, config, result);
  } else if (c.format == "csv") {
    if (!csv_header)
      throw std::invalid_argument("csv output is not available for " +
                                  command);
    emit_csv(c, command, config, *csv_header, *csv_rows);
  } else {
    throw std::invalid_argument("unknown format " + c.format);
  }
}

// ---------------------------------------------------------------------------
// Flag parsing helpers.

// Accepts "a/b", integers, and decimal/scientific notation ("1e-30",
// "0.125", "-2.5e3").
mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (text.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(text, 10) != 0)
      throw std::invalid_argument("bad rational " + text);
    q.canonicalize();
    return q;
  }
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') neg = text[i++] == '-';
  std::string digits;
  long frac = 0;
  bool dot = false, any = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '.') {
      if (dot) throw std::invalid_argument("bad rational " + text);
      dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      any = true;
      if (dot) ++frac;
    } else {
      break;
    }
  }
  long exp10 = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    try {
      std::size_t used = 0;
      exp10 = std::stol(text.substr(i + 1), &used);
      if (used != text.size() - i - 1)
        throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in " + text);
    }
  } else if (i != text.size()) {
    throw std::invalid_argument("bad rational " + text);
  }
  if (!any) throw std::invalid_argument("bad rational " + text);
  mpq_class q(mpz_class(digits.empty() ? "0" : digits));
  const long e = exp10 - frac;
  mpz_class pow;
  mpz_ui_pow_ui(pow.get_mpz_t(), 10,
                static_cast<unsigned long>(e < 0 ? -e : e));
  if (e > 0)
    q *= pow;
  else if (e < 0)
    q /= pow;
  if (neg) q = -q;
  q.canonicalize();
  return q;
}

std::vector<mpq_class> parse_grid(const std::string& text) {
  std::vector<mpq_class> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) grid.push_back(parse_rational(item));
  return grid;
}

std::string q_str(const mpq_class& q) { return q.get_str(); }

ContinuedFraction parse_angle(const std::string& text) {
  try {
    return ContinuedFraction::parse(text);
  } catch (const std::logic_error& e) {
    throw std::invalid_argument("bad angle \"" + text + "\": " + e.what());
  }
}

std::string q_decimal(const mpq_class& q, int digits = 20) {
  return CertifiedReal::of_rational(q, 192).str(digits);
}

// "mid" and "radius" columns of an enclosure for CSV rows.
std::pair<std::string, std::string> split_enclosure(const CertifiedReal& x,
                                                    int digits = 20) {
  const std::string s = x.str(digits);
  const std::size_t at = s.find(" +/- ");
  return {s.substr(0, at), s.substr(at + 5)};
}

json times_json(const std::vector<mpz_class>& v) {
  json a = json::array();
  for (const mpz_class& z : v) a.push_back(z.get_str());
  return a;
}

// ---------------------------------------------------------------------------
// Subcommand runners.  Each returns the process exit code.

struct AngleOpts {
  std::size_t depth = 0;
  std::size_t nmax = 0;
  std::size_t length = 0;
  std::size_t count = 0;
  std::size_t steps = 0;
  long j = 0, k = 0;
  bool want_q0 = false;
  std::string width = "1e-30";
  std::string c_choice = "5";
  std::string which = "all";
  std::string eps;
  std::string value;
  std::string real;
  std::string sign = "+";
  std::string x1 = "-1/2", x2 = "1/4", x3 = "1/8";
  std::size_t q_count = 5;
  std::size_t recode = 0;
  long precision = 128;
  long start_precision = 128;
  long max_precision = 8192;
};

int run_convergents(const Common& c, const AngleOpts& o) {
  const ContinuedFraction cf = parse_angle(c.angle);
  const Convergents cv = convergents(cf, o.depth, o.want_q0);
  json config{{"angle", c.angle},
              {"depth", o.depth},
              {"q0", o.want_q0},
              {"format", c.format}};
  json result;
  result["p"] = times_json(cv.p);
  result["q"] = times_json(cv.q);
  result["listed_q"] = times_json(cv.listed_q());
  result["first_listed"] = cv.first_listed();

  std::vector<std::string> header{"n", "p", "q"};
  std::vector<std::vector<std::string>> rows;
  for (std::size_t n = 0; n < cv.q.size(); ++n)
    rows.push_back({std::to_string(n), cv.p[n].get_str(), cv.q[n].get_str()});
  emit(c, "convergents", config, result, &header, &rows);
  return 0;
}

int run_ostrowski(const Common& c, const AngleOpts& o) {
  const ContinuedFraction cf = parse_angle(c.angle);
  json config{{"angle", c.angle}, {"format", c.format}};
  json result;
  if (!o.value.empty() == !o.real.empty())
    throw std::invalid_argument(
        "ostrowski needs exactly one of --value and --real");
  const auto fill = [&result](const OstrowskiWord& w) {
    result["digits"] = w.digits;
    result["base"] = w.base;
    result["word"] = word_str(w);
    result["valid"] = valid_word(w);
  };
  if (!o.value.empty()) {
    config["value"] = o.value;
    const OstrowskiWord w = encode_int(mpz_class(o.value), cf);
    result["decoded"] = decode_int(w).get_str();
    fill(w);
  } else {
    config["real"] = o.real;
    config["depth"] = o.depth;
    config["precision"] = o.precision;
    const CertifiedReal x = CertifiedReal::of_rational(
        parse_rational(o.real), static_cast<mpfr_prec_t>(o.precision));
    const OstrowskiWord w = encode_real(x, cf, o.depth);
    result["decoded"] =
        decode_real(w, static_cast<mpfr_prec_t>(o.precision)).str();
    result["tail_bound"] =
        tail_bound(cf, w.top(), static_cast<mpfr_prec_t>(o.precision)).str();
    fill(w);
  }
  emit(c, "ostrowski", config, result);
  return 0;
}

int run_signs(const Common& c, const AngleOpts& o) {
  const ContinuedFraction cf = parse_angle(c.angle);
  json config{{"angle", c.angle}, {"count", o.count}, {"format", c.format}};
  std::string bits;
  bits.reserve(o.count);
  for (std::size_t k = 1; k <= o.count; ++k)
    bits.push_back(sign_of(mpz_class(static_cast<long>(k)), cf) > 0 ? '1'
                                                                    : '0');
  json result{{"signs", bits},
              {"negative_below", neg_count(mpz_class(static_cast<long>(
                                               o.count + 1)), cf)
                                     .get_str()}};
  emit(c, "signs", config, result);
  return 0;
}

int run_kneading(const Common& c, const AngleOpts& o) {
  const ContinuedFraction cf = parse_angle(c.angle);
  json config{{"angle", c.angle}, {"length", o.length}, {"format", c.format}};
  const SignSequence ks = kneading_sequence(cf, o.length);
  json result{{"kneading", ks.str()},
              {"eventually_periodic", has_periodic_tail(ks, 64)}};
  emit(c, "kneading", config, result);
  return 0;
}

int run_order(const Common& c, const AngleOpts& o) {
  const ContinuedFraction cf = parse_angle(c.angle);
  json config{{"angle", c.angle}, {"j", o.j}, {"k", o.k},
              {"format", c.format}};
  json result;
  result["order_abs"] = compare_abs(mpz_class(o.j), mpz_class(o.k), cf);
  result["sign_j"] = sign_of(mpz_class(o.j), cf);
  result["sign_k"] = sign_of(mpz_class(o.k), cf);
  emit(c, "order", config, result);
  return 0;
}

int run_model(const Common& c, const AngleOpts& o) {
  const ContinuedFraction cf = parse_angle(c.angle);
  json config{{"angle", c.angle}, {"depth", o.depth}, {"x1", o.x1},
              {"x2", o.x2},       {"x3", o.x3},       {"format", c.format}};
  ModelSeeds seeds;
  seeds.x1 = parse_rational(o.x1);
  seeds.x2 = parse_rational(o.x2);
  seeds.x3 = parse_rational(o.x3);
  const ModelMap m = construct_model(cf, o.depth, seeds);
  json result;
  result["depth"] = m.depth;
  result["orbit_points"] = m.orbit.size();
  result["breakpoints"] = m.breakpoints.size();
  result["monotone"] = monotone_on_breakpoints(m);
  json stages = json::array();
  for (const auto& [stage, len] : m.stage_max_length)
    stages.push_back(
        {{"stage", stage}, {"length", q_str(len)},
         {"decimal", q_decimal(len)}});
  result["stage_max_length"] = stages;

  std::vector<std::string> header{"x", "f_x"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& [x, fx] : m.breakpoints)
    rows.push_back({q_str(x), q_str(fx)});
  emit(c, "model", config, result, &header, &rows);
  return 0;
}

ParameterEnclosure solve_c(const Common& c, const AngleOpts& o,
                           std::size_t depth) {
  const ContinuedFraction cf = parse_angle(c.angle);
  return find_c(cf, depth, parse_rational(o.width),
                static_cast<mpfr_prec_t>(o.start_precision),
                static_cast<mpfr_prec_t>(o.max_precision));
}

std::size_t q_at(const ContinuedFraction& cf, std::size_t n) {
  const Convergents cv = convergents(cf, n);
  if (!cv.q[n].fits_ulong_p())
    throw std::invalid_argument("return time at depth " + std::to_string(n) +
                                " is too large for an orbit computation");
  return cv.q[n].get_ui();
}

json enclosure_json(const ParameterEnclosure& pe) {
  return json{{"lo", q_str(pe.lo)},
              {"hi", q_str(pe.hi)},
              {"c", CertifiedReal::of_rational_pair(pe.lo, pe.hi, 192).str()},
              {"width", q_decimal(pe.width(), 6)},
              {"depth", pe.depth},
              {"precision", pe.precision},
              {"probes", pe.probes}};
}

int run_find_c(const Common& c, const AngleOpts& o) {
  const ContinuedFraction cf = parse_angle(c.angle);
  json config{{"angle", c.angle},
              {"depth", o.depth},
              {"width", o.width},
              {"start_precision", o.start_precision},
              {"max_precision", o.max_precision},
              {"format", c.format}};
  const ParameterEnclosure pe = solve_c(c, o, o.depth);
  const std::size_t horizon = q_at(cf, o.depth);
  const auto orbit = iterate_orbit(
      CertifiedReal::of_rational_pair(pe.lo, pe.hi, pe.precision), horizon,
      pe.precision);
  const std::vector<std::size_t> returns = closest_returns(orbit, horizon);
  const std::vector<mpz_class> expect = convergents(cf, o.depth).listed_q();
  bool match = returns.size() == expect.size();
  for (std::size_t i = 0; match && i < returns.size(); ++i)
    match = expect[i] == static_cast<unsigned long>(returns[i]);

  json result;
  result["enclosure"] = enclosure_json(pe);
  result["return_times"] = returns;
  result["return_times_match"] = match;
  emit(c, "find-c", config, result);
  return 0;
}

int run_orbit(const Common& c, const AngleOpts& o) {
  json config{{"angle", c.angle},
              {"depth", o.depth},
              {"width", o.width},
              {"steps", o.steps},
              {"precision", o.precision},
              {"start_precision", o.start_precision},
              {"max_precision", o.max_precision},
              {"format", c.format}};
  const ParameterEnclosure pe = solve_c(c, o, o.depth);
  const mpfr_prec_t prec =
      std::max<mpfr_prec_t>(static_cast<mpfr_prec_t>(o.precision),
                            pe.precision);
  const auto orbit = iterate_orbit(
      CertifiedReal::of_rational_pair(pe.lo, pe.hi, prec), o.steps, prec);
  json result;
  result["enclosure"] = enclosure_json(pe);
  json values = json::array();
  for (const CertifiedReal& x : orbit) values.push_back(x.str());
  result["orbit"] = values;

  std::vector<std::string> header{"k", "value", "radius"};
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    const auto [mid, rad] = split_enclosure(orbit[k]);
    rows.push_back({std::to_string(k), mid, rad});
  }
  emit(c, "orbit", config, result, &header, &rows);
  return 0;
}

json scaling_json(const ScalingData& sd) {
  json result;
  result["n_max"] = sd.n_max;
  result["precision"] = sd.precision;
  result["d1"] = sd.d1.str();
  json levels = json::array();
  for (const ScalingLevel& lv : sd.levels) {
    json L{{"n", lv.n},
           {"a_next", lv.a_next},
           {"lambda", lv.lambda.str()},
           {"deriv", lv.deriv.str()}};
    json dd = json::array(), del = json::array();
    for (const CertifiedReal& x : lv.d) dd.push_back(x.str());
    for (const CertifiedReal& x : lv.delta) del.push_back(x.str());
    L["d"] = dd;
    L["delta"] = del;
    levels.push_back(L);
  }
  result["levels"] = levels;
  json alpha = json::array();
  for (const CertifiedReal& a : sd.alpha) alpha.push_back(a.str());
  result["alpha"] = alpha;
  return result;
}

ScalingData solve_scaling(const Common& c, const AngleOpts& o,
                          std::size_t depth) {
  const ContinuedFraction cf = parse_angle(c.angle);
  const ParameterEnclosure pe = solve_c(c, o, depth);
  return scaling_data(pe, cf, o.nmax,
                      static_cast<mpfr_prec_t>(o.start_precision),
                      static_cast<mpfr_prec_t>(o.max_precision));
}

int run_scaling(const Common& c, const AngleOpts& o) {
  const std::size_t depth = o.depth ? o.depth : o.nmax + 2;
  json config{{"angle", c.angle},
              {"nmax", o.nmax},
              {"depth", depth},
              {"width", o.width},
              {"start_precision", o.start_precision},
              {"max_precision", o.max_precision},
              {"format", c.format}};
  const ScalingData sd = solve_scaling(c, o, depth);

  std::vector<std::string> header{"n",     "a_next",       "i",
                                  "d",     "d_radius",     "delta",
                                  "delta_radius", "lambda", "lambda_radius",
                                  "deriv", "deriv_radius", "alpha",
                                  "alpha_radius"};
  std::vector<std::vector<std::string>> rows;
  for (const ScalingLevel& lv : sd.levels) {
    for (std::size_t i = 0; i < lv.d.size(); ++i) {
      const auto [dm, dr] = split_enclosure(lv.d[i]);
      const auto [gm, gr] = split_enclosure(lv.delta[i]);
      const auto [lm, lr] = split_enclosure(lv.lambda);
      const auto [vm, vr] = split_enclosure(lv.deriv);
      std::string am = "", ar = "";
      if (lv.n - 1 < sd.alpha.size()) {
        const auto [m, r] = split_enclosure(sd.alpha[lv.n - 1]);
        am = m;
        ar = r;
      }
      rows.push_back({std::to_string(lv.n), std::to_string(lv.a_next),
                      std::to_string(i + 1), dm, dr, gm, gr, lm, lr, vm, vr,
                      am, ar});
    }
  }
  emit(c, "scaling", config, scaling_json(sd), &header, &rows);
  return 0;
}

int run_audit(const Common& c, const AngleOpts& o) {
  const std::size_t depth = o.depth ? o.depth : o.nmax + 2;
  json config{{"angle", c.angle},
              {"nmax", o.nmax},
              {"depth", depth},
              {"width", o.width},
              {"c_choice", o.c_choice},
              {"which", o.which},
              {"start_precision", o.start_precision},
              {"max_precision", o.max_precision},
              {"format", c.format}};
  if (o.which != "all" && o.which != "apriori" && o.which != "asymptotics" &&
      o.which != "kbounds")
    throw std::invalid_argument("unknown audit selection " + o.which);
  const ScalingData sd = solve_scaling(c, o, depth);

  std::vector<AuditReport> reports;
  if (o.which == "all" || o.which == "apriori")
    reports.push_back(audit_apriori(sd));
  if (o.which == "all" || o.which == "asymptotics")
    reports.push_back(audit_asymptotics(sd));
  if (o.which == "all" || o.which == "kbounds")
    reports.push_back(audit_k_bounds(sd, parse_rational(o.c_choice)));

  bool passed = true;
  json rr = json::array();
  for (const AuditReport& rep : reports) {
    passed = passed && rep.passed();
    rr.push_back(json::parse(rep.json()));
  }
  json result{{"reports", rr}, {"passed", passed}};
  emit(c, "audit", config, result);
  return passed ? 0 : 1;
}

int run_hausdorff(const Common& c, const AngleOpts& o) {
  const std::size_t depth = o.depth ? o.depth : o.nmax + 2;
  json config{{"angle", c.angle},
              {"nmax", o.nmax},
              {"depth", depth},
              {"width", o.width},
              {"precision", o.precision},
              {"eps", o.eps},
              {"start_precision", o.start_precision},
              {"max_precision", o.max_precision},
              {"format", c.format}};
  const ContinuedFraction cf = parse_angle(c.angle);
  const ParameterEnclosure pe = solve_c(c, o, depth);
  const std::size_t steps = q_at(cf, o.nmax + 2) + 2;
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(o.precision);
  const auto orbit = iterate_orbit(
      CertifiedReal::of_rational_pair(pe.lo, pe.hi, prec), steps, prec);
  const MeasureTable t =
      o.eps.empty() ? hausdorff_measure(orbit, cf, o.nmax)
                    : hausdorff_measure(orbit, cf, o.nmax, parse_grid(o.eps));

  json result = json::parse(t.json());
  result["passed"] = t.passed();

  std::vector<std::string> header{"n", "decided"};
  for (const mpq_class& e : t.eps) header.push_back("S_" + e.get_str());
  std::vector<std::vector<std::string>> rows;
  for (const MeasureRow& r : t.rows) {
    std::vector<std::string> row{std::to_string(r.n),
                                 r.decided ? "1" : "0"};
    for (const CertifiedReal& s : r.S)
      row.push_back(split_enclosure(s).first);
    rows.push_back(row);
  }
  emit(c, "hausdorff", config, result, &header, &rows);
  return t.passed() ? 0 : 1;
}

int run_renorm(const Common& c, const AngleOpts& o) {
  json config{{"angle", c.angle},
              {"steps", o.steps},
              {"sign", o.sign},
              {"q_count", o.q_count},
              {"format", c.format}};
  if (o.sign != "+" && o.sign != "-")
    throw std::invalid_argument("sign must be + or -");
  RenormState st = make_state(parse_angle(c.angle),
                              o.sign == "+" ? 1 : -1);
  json traj = json::array();
  for (std::size_t k = 0; k <= o.steps; ++k) {
    traj.push_back(
        {{"theta", st.theta.str()},
         {"s", st.s > 0 ? "+" : "-"},
         {"j_side", st.j_side == Side::left ? "left" : "right"},
         {"b", st.b},
         {"q_prefix", times_json(return_times(st, o.q_count))}});
    if (k < o.steps) st = renorm_step(st);
  }
  emit(c, "renorm", config, json{{"trajectory", traj}});
  return 0;
}

int run_sturmian(const Common& c, const AngleOpts& o) {
  json config{{"angle", c.angle},
              {"length", o.length},
              {"precision", o.precision},
              {"recode", o.recode},
              {"format", c.format}};
  const ContinuedFraction cf = parse_angle(c.angle);
  BinaryWord w = sturmian_word(cf, o.length,
                               static_cast<mpfr_prec_t>(o.precision));
  json result{{"word", w.str()}, {"isolated_symbol", w.isolated_symbol()}};
  json recoded = json::array();
  for (std::size_t k = 0; k < o.recode; ++k) {
    w = recode_word(w);
    recoded.push_back(w.str());
  }
  if (o.recode) result["recoded"] = recoded;
  emit(c, "sturmian", config, result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "combinatorics of closest-return orbits: continued fractions, "
      "numeration, kneading data, model maps, certified quadratic scaling"};
  app.require_subcommand(1);

  Common common;
  AngleOpts o;

  auto add_common = [&](CLI::App* sub, bool needs_angle = true) {
    auto* opt = sub->add_option("--angle", common.angle,
                                "quotients, e.g. \"1,1,1,3,2,(1)*\"");
    if (needs_angle) opt->required();
    sub->add_option("--format", common.format, "json|csv|text");
    sub->add_option("--output", common.output, "write to file instead of stdout");
    sub->add_flag("--no-timestamp", common.no_timestamp,
                  "omit the timestamp field (byte-stable output)");
  };

  auto* c_conv = app.add_subcommand("convergents", "p_n/q_n tables");
  add_common(c_conv);
  c_conv->add_option("--depth", o.depth)->required();
  c_conv->add_flag("--q0", o.want_q0, "list q_0 = 1 when a_1 > 1");

  auto* c_ostr = app.add_subcommand("ostrowski", "numeration words");
  add_common(c_ostr);
  c_ostr->add_option("--value", o.value, "nonnegative integer to encode");
  c_ostr->add_option("--real", o.real, "rational point to encode");
  c_ostr->add_option("--depth", o.depth, "digit positions for --real");
  c_ostr->add_option("--precision", o.precision);

  auto* c_signs = app.add_subcommand("signs", "orbit signs by digit rule");
  add_common(c_signs);
  c_signs->add_option("--count", o.count)->required();

  auto* c_knead = app.add_subcommand("kneading", "kneading sequence");
  add_common(c_knead);
  c_knead->add_option("--length", o.length)->required();

  auto* c_order = app.add_subcommand("order", "|x_j| vs |x_k| comparison");
  add_common(c_order);
  c_order->add_option("--j", o.j)->required();
  c_order->add_option("--k", o.k)->required();

  auto* c_model = app.add_subcommand("model", "piecewise-linear model map");
  add_common(c_model);
  c_model->add_option("--depth", o.depth)->required();
  c_model->add_option("--x1", o.x1, "seed x_1 in (-1,0)");
  c_model->add_option("--x2", o.x2, "seed x_2 in (0,-x_1)");
  c_model->add_option("--x3", o.x3, "seed x_3 in (0,x_2)");

  auto* c_find = app.add_subcommand("find-c", "quadratic parameter search");
  add_common(c_find);
  c_find->add_option("--depth", o.depth)->required();
  c_find->add_option("--width", o.width, "bracket width target");
  c_find->add_option("--start-precision", o.start_precision);
  c_find->add_option("--max-precision", o.max_precision);

  auto* c_orbit = app.add_subcommand("orbit", "certified critical orbit");
  add_common(c_orbit);
  c_orbit->add_option("--depth", o.depth)->required();
  c_orbit->add_option("--steps", o.steps)->required();
  c_orbit->add_option("--width", o.width);
  c_orbit->add_option("--precision", o.precision);
  c_orbit->add_option("--start-precision", o.start_precision);
  c_orbit->add_option("--max-precision", o.max_precision);

  auto* c_scal = app.add_subcommand("scaling", "closest-return scaling data");
  add_common(c_scal);
  c_scal->add_option("--nmax", o.nmax)->required();
  c_scal->add_option("--depth", o.depth, "kneading depth (default nmax+2)");
  c_scal->add_option("--width", o.width);
  c_scal->add_option("--start-precision", o.start_precision);
  c_scal->add_option("--max-precision", o.max_precision);

  auto* c_audit = app.add_subcommand("audit", "certified inequality audits");
  add_common(c_audit);
  c_audit->add_option("--nmax", o.nmax)->required();
  c_audit->add_option("--depth", o.depth, "kneading depth (default nmax+2)");
  c_audit->add_option("--width", o.width);
  c_audit->add_option("--c-choice", o.c_choice, "constant C > 4");
  c_audit->add_option("--which", o.which,
                      "all|apriori|asymptotics|kbounds");
  c_audit->add_option("--start-precision", o.start_precision);
  c_audit->add_option("--max-precision", o.max_precision);

  auto* c_haus = app.add_subcommand("hausdorff", "epsilon-measure table");
  add_common(c_haus);
  c_haus->add_option("--nmax", o.nmax)->required();
  c_haus->add_option("--depth", o.depth, "kneading depth (default nmax+2)");
  c_haus->add_option("--width", o.width);
  c_haus->add_option("--precision", o.precision, "orbit precision");
  c_haus->add_option("--eps", o.eps, "comma-separated grid in (0,1]");
  c_haus->add_option("--start-precision", o.start_precision);
  c_haus->add_option("--max-precision", o.max_precision);

  auto* c_ren = app.add_subcommand("renorm", "symbolic renormalization");
  add_common(c_ren);
  c_ren->add_option("--steps", o.steps, "number of operator applications");
  c_ren->add_option("--sign", o.sign, "+ or -");
  c_ren->add_option("--q-count", o.q_count, "return times listed per state");

  auto* c_stur = app.add_subcommand("sturmian", "rotation sequence");
  add_common(c_stur);
  c_stur->add_option("--length", o.length)->required();
  c_stur->add_option("--precision", o.precision);
  c_stur->add_option("--recode", o.recode, "number of recodings to apply");

  o.width = "1e-30";
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 3;
  }

  try {
    if (c_conv->parsed()) return run_convergents(common, o);
    if (c_ostr->parsed()) return run_ostrowski(common, o);
    if (c_signs->parsed()) return run_signs(common, o);
    if (c_knead->parsed()) return run_kneading(common, o);
    if (c_order->parsed()) return run_order(common, o);
    if (c_model->parsed()) return run_model(common, o);
    if (c_find->parsed()) return run_find_c(common, o);
    if (c_orbit->parsed()) return run_orbit(common, o);
    if (c_scal->parsed()) return run_scaling(common, o);
    if (c_audit->parsed()) return run_audit(common, o);
    if (c_haus->parsed()) return run_hausdorff(common, o);
    if (c_ren->parsed()) return run_renorm(common, o);
    if (c_stur->parsed()) return run_sturmian(common, o);
    std::cerr << "error: usage: no subcommand\n";
    return 3;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "error: precision: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 3;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 3;
  } catch (const std::logic_error& e) {
    std::cerr << "error: precision: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: precision: " << e.what() << "\n";
    return 2;
  }
}
