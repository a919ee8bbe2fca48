#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "recmahler/functions.hpp"
#include "recmahler/identities.hpp"
#include "recmahler/probe.hpp"
#include "recmahler/report_json.hpp"
#include "recmahler/transform.hpp"

namespace recmahler::cli {

namespace {

using report::Json;

struct Globals {
  std::string place = "inf";
  long prec_bits = 256;
  long padic_digits = 64;
  std::string json_out;
  std::string format = "json";
  bool quiet = false;
  bool timing = false;
  unsigned jobs = 0;
};

struct AnalyzeArgs {
  std::string input;
  std::size_t K = 60;
};

struct EvalArgs {
  std::string function;
  std::string rec = R"({"c":[1,1],"init":[0,1]})";
  std::string a = "1/2", x = "0", y = "0", beta = "0", z;
  int dx = 0, dy = 0;
  long m = 0, d = 2, prec = 0;
};

struct VerifyArgs {
  std::string suite = "all";
  long tol = 0;
  std::string points_file;
};

struct ProbeArgs {
  std::string input;
  long degree = 0, digits = 0;
  std::string height;
};

std::string slurp(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// a JSON literal, "-" for stdin, or a path
Json load_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return report::parse(arg);
  if (arg == "-") return report::parse(slurp(std::cin));
  std::ifstream f(arg);
  if (!f) throw Error(ErrorCode::ParseError, "cannot read '" + arg + "'");
  return report::parse(slurp(f));
}

Place place_of(const Globals& g) {
  try {
    return Place::parse(g.place);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Precision precision_of(const Globals& g) {
  if (g.prec_bits < 16) throw Error(ErrorCode::InvalidArgument, "--prec-bits must be at least 16");
  if (g.padic_digits < 1) throw Error(ErrorCode::InvalidArgument, "--padic-digits must be positive");
  return Precision{static_cast<mpfr_prec_t>(g.prec_bits), g.padic_digits};
}

std::vector<Rat> rat_list(const std::string& csv) {
  std::vector<Rat> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
  return out;
}

Verdict worst(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
  return Verdict::Pass;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kOk;
    case Verdict::Fail: return kFail;
    case Verdict::Unknown: return kUnknown;
  }
  return kUnknown;
}

// ---------------------------------------------------------------- analyze

struct Produced {
  Json body;
  std::string text;
  int exit_code = kOk;
};

std::string clause_lines(const std::vector<Clause>& cs) {
  std::ostringstream out;
  for (const auto& c : cs)
    out << "  " << std::left << std::setw(28) << c.name << std::setw(8) << verdict_name(c.verdict) << c.evidence
        << "\n";
  return out.str();
}

Produced analyze(const Globals& g, const AnalyzeArgs& args, report::RunManifest& manifest) {
  const Json in = load_json_arg(args.input);
  const LinearRecurrence rec = report::recurrence_from_json(in);
  const Place place = place_of(g);
  manifest.parameters["recurrence"] = report::to_json(rec);
  manifest.parameters["place"] = place.to_string();
  manifest.parameters["K"] = args.K;

  Produced p;
  const ConditionReport cond = check_condition(rec, place);
  p.body["condition"] = report::to_json(cond);
  Verdict overall = cond.overall;
  std::ostringstream text;
  text << "condition at " << place.to_string() << ": " << verdict_name(cond.overall) << "\n"
       << clause_lines(cond.clauses);

  if (in.contains("point")) {
    if (!in["point"].is_array()) throw Error(ErrorCode::ParseError, "\"point\" must be an array");
    MPoint z{{}, place};
    for (const auto& c : in["point"]) z.coords.push_back(report::rat_from_json(c));
    Json pt = Json::array();
    for (const auto& c : z.coords) pt.push_back(to_string(c));
    manifest.parameters["point"] = pt;
    const OmegaConditionReport om = check_omega(OmegaTransform::companion(rec), z, args.K);
    p.body["omega"] = report::to_json(om);
    overall = worst(overall, om.overall);
    text << "omega at " << place.to_string() << ": " << verdict_name(om.overall) << "\n" << clause_lines(om.clauses);
  } else {
    p.body["omega"] = nullptr;
  }
  p.body["overall"] = verdict_name(overall);
  text << "overall: " << verdict_name(overall) << "\n";
  p.text = text.str();
  p.exit_code = exit_for(overall);
  return p;
}

// ------------------------------------------------------------------- eval

Produced eval(const Globals& g, const EvalArgs& args, report::RunManifest& manifest) {
  const Place place = place_of(g);
  Precision prec = precision_of(g);
  if (args.prec > 0) (place.is_infinite() ? prec.bits : prec.digits) = args.prec;
  const FunctionId id = parse_function_id(args.function);
  const LinearRecurrence rec = report::recurrence_from_json(load_json_arg(args.rec));
  const Rat a = parse_rat(args.a), x = parse_rat(args.x), y = parse_rat(args.y), beta = parse_rat(args.beta);

  Json& par = manifest.parameters;
  par["function"] = function_name(id);
  par["place"] = place.to_string();
  par["prec_bits"] = static_cast<long>(prec.bits);
  par["padic_digits"] = prec.digits;
  par["recurrence"] = report::to_json(rec);
  par["a"] = to_string(a);
  par["x"] = to_string(x);
  par["y"] = to_string(y);
  par["dx"] = args.dx;
  par["dy"] = args.dy;
  par["m"] = args.m;
  par["beta"] = to_string(beta);
  par["d"] = args.d;
  par["z"] = args.z;

  if (args.dx < 0 || args.dy < 0) throw Error(ErrorCode::InvalidArgument, "--dx and --dy must be nonnegative");
  EvalResult r;
  switch (id) {
    case FunctionId::GDary:
      r = eval_gdary(x, parse_rat(args.z.empty() ? "1/2" : args.z), args.d, place, prec);
      break;
    case FunctionId::FMulti:
    case FunctionId::GMulti:
    case FunctionId::HMulti: {
      if (args.z.empty()) throw Error(ErrorCode::InvalidArgument, "--z is required for several-variable functions");
      r = eval_multi(id, rec, x, MPoint{rat_list(args.z), place}, args.m, beta, args.dx, prec);
      break;
    }
    default: {
      FunctionInstance inst{rec, a, place, id, args.m, beta, args.d};
      r = jet_eval(inst, x, y, args.dx, args.dy, prec);
    }
  }
  Produced p;
  p.body["result"] = report::to_json(r, g.timing);
  std::ostringstream text;
  text << function_name(id) << " at " << place.to_string() << "\n";
  for (const auto& c : p.body["result"]["coefficients"]) {
    const Json& v = c["value"];
    text << "  [" << c["l"].get<int>() << "," << c["m"].get<int>() << "] ";
    if (place.is_infinite())
      text << v["re"].get<std::string>() << " + i*" << v["im"].get<std::string>() << " +/- "
           << v["rad"].get<std::string>() << "\n";
    else
      text << v["text"].get<std::string>() << "\n";
  }
  p.text = text.str();
  return p;
}

// ----------------------------------------------------------------- verify

void apply_overrides(IdentityParams& q, const Json& o) {
  if (o.contains("rec")) q.rec = report::recurrence_from_json(o["rec"]);
  auto rat = [&](const char* key, Rat& dst) {
    if (o.contains(key)) dst = report::rat_from_json(o[key]);
  };
  rat("a", q.a);
  rat("x", q.x);
  rat("y", q.y);
  rat("beta", q.beta);
  rat("dary_z", q.dary_z);
  if (o.contains("L")) q.L = o["L"].get<int>();
  if (o.contains("M")) q.M = o["M"].get<int>();
  if (o.contains("m")) q.m = o["m"].get<long>();
  if (o.contains("d")) q.d = o["d"].get<long>();
  if (o.contains("shifts")) q.shifts = o["shifts"].get<std::size_t>();
  if (o.contains("point")) {
    q.point.clear();
    for (const auto& c : o["point"]) q.point.push_back(report::rat_from_json(c));
  }
}

std::vector<SuiteCase> build_suite(const VerifyArgs& args, const Place& place, const Precision& prec,
                                   const Json& points) {
  std::vector<SuiteCase> base = default_suite(place, prec);
  std::vector<SuiteCase> cases;
  if (points.contains("cases")) {
    // explicit cases start from the suite defaults of their identity
    for (const auto& c : points["cases"]) {
      if (!c.contains("identity")) throw Error(ErrorCode::ParseError, "each case needs an \"identity\"");
      const IdentityId id = parse_identity_id(c["identity"].get<std::string>());
      auto it = std::find_if(base.begin(), base.end(), [&](const SuiteCase& s) { return s.id == id; });
      SuiteCase sc{id, it != base.end() ? it->params : IdentityParams{}};
      sc.params.place = place;
      sc.params.prec = prec;
      apply_overrides(sc.params, c);
      cases.push_back(std::move(sc));
    }
  } else {
    cases = std::move(base);
    for (auto& c : cases) apply_overrides(c.params, points);
  }
  if (args.suite != "all") {
    std::vector<IdentityId> wanted;
    std::stringstream ss(args.suite);
    std::string item;
    while (std::getline(ss, item, ',')) wanted.push_back(parse_identity_id(item));
    std::erase_if(cases, [&](const SuiteCase& c) {
      return std::find(wanted.begin(), wanted.end(), c.id) == wanted.end();
    });
    if (cases.empty()) throw Error(ErrorCode::InvalidArgument, "no case matches --suite " + args.suite);
  }
  for (auto& c : cases) c.params.tolerance_bits = args.tol;
  return cases;
}

std::vector<IdentityCase> run_cases(const std::vector<SuiteCase>& cases, unsigned jobs) {
  std::vector<IdentityCase> out(cases.size());
  std::vector<std::string> errors(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < cases.size();) {
      try {
        out[i] = verify(cases[i].id, cases[i].params);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(cases.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < cases.size(); ++i)
    if (!errors[i].empty()) throw Error(ErrorCode::InvalidArgument, std::string(identity_name(cases[i].id)) + ": " + errors[i]);
  return out;
}

std::string verify_table(const std::vector<IdentityCase>& rows) {
  std::vector<std::vector<std::string>> cells = {{"IDENTITY", "PLACE", "STATUS", "CHECKS", "RESIDUAL", "TOLERANCE"}};
  for (const auto& r : rows) {
    std::string res = "-", tol = "-";
    if (r.status != CaseStatus::Skipped) {
      if (r.place.is_infinite()) {
        res = r.residual_abs.to_decimal(3);
        tol = r.tolerance.to_decimal(3);
      } else {
        res = r.residual_valuation >= PAdic::kExactZero ? "v=exact" : "v=" + std::to_string(r.residual_valuation);
        tol = "v>=" + std::to_string(r.threshold);
      }
    }
    cells.push_back({identity_name(r.id), r.place.to_string(), case_status_name(r.status), std::to_string(r.checks),
                     res, tol});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t c = 0; c < cells[i].size(); ++c)
      out << std::left << std::setw(static_cast<int>(width[c] + 2)) << cells[i][c];
    out << (i == 0 ? std::string("PARAMS") : rows[i - 1].reason.empty() ? rows[i - 1].params : rows[i - 1].reason);
    out << "\n";
  }
  return out.str();
}

Produced verify_cmd(const Globals& g, const VerifyArgs& args, report::RunManifest& manifest) {
  const Place place = place_of(g);
  const Precision prec = precision_of(g);
  if (args.tol < 0) throw Error(ErrorCode::InvalidArgument, "--tol must be nonnegative");
  const Json points = args.points_file.empty() ? Json::object() : load_json_arg(args.points_file);
  if (!points.is_object()) throw Error(ErrorCode::ParseError, "points file must hold a JSON object");
  const auto cases = build_suite(args, place, prec, points);

  Json& par = manifest.parameters;
  par["suite"] = args.suite;
  par["place"] = place.to_string();
  par["prec_bits"] = static_cast<long>(prec.bits);
  par["padic_digits"] = prec.digits;
  par["tol_bits"] = args.tol;
  par["points"] = points;

  const auto rows = run_cases(cases, g.jobs);
  Produced p;
  Json list = Json::array();
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (const auto& r : rows) {
    list.push_back(report::to_json(r));
    (r.status == CaseStatus::Pass ? pass : r.status == CaseStatus::Fail ? fail : skipped)++;
  }
  p.body["cases"] = list;
  p.body["summary"] = {{"pass", pass}, {"fail", fail}, {"skipped", skipped}};
  p.text = verify_table(rows) + std::to_string(pass) + " pass, " + std::to_string(fail) + " fail, " +
           std::to_string(skipped) + " skipped\n";
  p.exit_code = fail > 0 ? kFail : kOk;
  return p;
}

// ------------------------------------------------------------------ probe

LabeledValue decimal_value(const std::string& label, const Json& v, long digits) {
  const mpfr_prec_t bits = bits_for_digits(digits);
  auto parse_part = [&](const Json& part) -> std::pair<BigFloat, bool> {
    const std::string s = part.is_string() ? part.get<std::string>() : part.dump();
    if (s.find('/') != std::string::npos) return {BigFloat(bits, parse_rat(s)), true};
    return {parse_bigfloat(s, bits), false};
  };
  std::pair<BigFloat, bool> re{BigFloat(bits), true}, im{BigFloat(bits), true};
  if (v.is_object()) {
    if (v.contains("re")) re = parse_part(v["re"]);
    if (v.contains("im")) im = parse_part(v["im"]);
  } else {
    re = parse_part(v);
  }
  // decimal input is taken as correct to the working precision
  Bound rad;
  for (const auto* part : {&re, &im})
    if (!part->second || !part->first.is_zero()) rad = rad + Bound::abs_of(part->first).mul_2exp(-bits);
  return {label, ComplexBall(re.first, im.first, rad), {}};
}

LabeledValue function_value(const Json& s, const Place& place, long digits) {
  const FunctionId id = parse_function_id(s.value("function", std::string("theta")));
  const LinearRecurrence rec =
      s.contains("rec") ? report::recurrence_from_json(s["rec"]) : LinearRecurrence::make({1, 1}, {1, 2});
  const Rat a = s.contains("a") ? report::rat_from_json(s["a"]) : Rat(1, 2);
  const Rat x = s.contains("x") ? report::rat_from_json(s["x"]) : Rat(0);
  const Rat y = s.contains("y") ? report::rat_from_json(s["y"]) : Rat(0);
  const int dx = s.value("dx", 0), dy = s.value("dy", 0);
  FunctionInstance inst{rec, a, place, id, s.value("m", 0L),
                        s.contains("beta") ? report::rat_from_json(s["beta"]) : Rat(0), s.value("d", 2L)};
  std::string label = s.value("label", std::string());
  if (label.empty()) {
    label = function_name(id);
    if (dx + dy > 0) label += "_" + std::to_string(dx) + std::to_string(dy);
    label += "(" + to_string(x) + "," + to_string(y) + ")";
  }
  auto at = [inst, x, y, dx, dy](mpfr_prec_t bits) {
    return jet_eval(inst, x, y, dx, dy, Precision{bits, 64}).complex().at(dx, dy);
  };
  return {label, at(bits_for_digits(digits)), at};
}

Produced probe_cmd(const Globals& g, const ProbeArgs& args, report::RunManifest& manifest) {
  const Place place = place_of(g);
  if (!place.is_infinite()) throw Error(ErrorCode::InvalidArgument, "the probe runs on complex values only");
  if (args.input.empty()) throw Error(ErrorCode::InvalidArgument, "--input is required");
  const Json in = load_json_arg(args.input);
  if (!in.is_object()) throw Error(ErrorCode::ParseError, "probe input must be a JSON object");
  const long degree = args.degree > 0 ? args.degree : in.value("degree", 1L);
  const long digits = args.digits > 0 ? args.digits : in.value("digits", 100L);
  const BigInt height = !args.height.empty() ? report::int_from_json(Json(args.height))
                        : in.contains("height")  ? report::int_from_json(in["height"])
                                                 : BigInt(1000);

  std::vector<LabeledValue> values;
  if (in.contains("functions"))
    for (const auto& s : in["functions"]) values.push_back(function_value(s, place, digits));
  if (in.contains("values"))
    for (const auto& v : in["values"]) {
      const bool wrapped = v.is_object() && v.contains("value");
      const std::string fallback = "v" + std::to_string(values.size());
      const std::string label = wrapped ? v.value("label", fallback) : fallback;
      values.push_back(decimal_value(label, wrapped ? v["value"] : v, digits));
    }
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "probe input needs \"functions\" or \"values\"");

  Json& par = manifest.parameters;
  par["input"] = in;
  par["degree"] = degree;
  par["height"] = to_string(height);
  par["digits"] = digits;

  const RelationCertificate cert =
      degree == 1 ? integer_relation(values, height, digits) : algebraic_probe(values, degree, height, digits);
  Produced p;
  p.body["certificate"] = report::to_json(cert);
  std::ostringstream text;
  text << probe_outcome_name(cert.outcome);
  if (cert.outcome == ProbeOutcome::Found) {
    text << " (";
    for (std::size_t i = 0; i < cert.relation.size(); ++i) text << (i ? ", " : "") << to_string(cert.relation[i]);
    text << ") residual " << cert.residual.to_decimal(3) << "\n";
    for (std::size_t i = 0; i < cert.relation.size(); ++i)
      if (cert.relation[i] != 0) text << "  " << to_string(cert.relation[i]) << " * " << cert.labels[i] << "\n";
  } else {
    text << ": no relation of height <= " << to_string(height) << " among " << cert.labels.size()
         << " terms (lattice floor 10^" << p.body["certificate"]["log10_lattice_floor"].get<std::string>()
         << ", relation norm 10^" << p.body["certificate"]["log10_relation_norm"].get<std::string>() << ")\n";
  }
  p.text = text.str();
  return p;
}

}  // namespace

Outcome run(const std::vector<std::string>& args) {
  CLI::App app{"Recurrence-generated Mahler functions: conditions, evaluation, identities, relation probe",
               "recmahler"};
  app.require_subcommand(1);
  Globals g;
  auto add_globals = [&](CLI::App* a) {
    a->add_option("--place", g.place, "inf or p:<prime>")->capture_default_str();
    a->add_option("--prec-bits", g.prec_bits, "working precision at infinity")->capture_default_str();
    a->add_option("--padic-digits", g.padic_digits, "p-adic digits at a prime")->capture_default_str();
    a->add_option("--json-out", g.json_out, "also write the report to PATH");
    a->add_option("--format", g.format, "stdout format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    a->add_flag("--quiet", g.quiet, "print nothing on stdout");
    a->add_flag("--timing", g.timing, "include wall time (breaks byte-identical reruns)");
    a->add_option("--jobs", g.jobs, "worker threads for verify, 0 = all cores");
  };
  add_globals(&app);

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "check the conditions on a recurrence (and Omega at a point)");
  analyze_cmd->add_option("input", an.input, "JSON text, a file, or - for stdin: {\"c\":[..],\"init\":[..],\"point\":[..]}")
      ->required();
  analyze_cmd->add_option("--K", an.K, "orbit length for the growth checks")->capture_default_str();

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "certified jet of one function at a point");
  eval_cmd->add_option("--function", ev.function, "F F_m G H Theta Xi g_dary f_m g_j h_jm")->required();
  eval_cmd->add_option("--rec", ev.rec, "recurrence JSON or file")->capture_default_str();
  eval_cmd->add_option("--a", ev.a)->capture_default_str();
  eval_cmd->add_option("--x", ev.x)->capture_default_str();
  eval_cmd->add_option("--y", ev.y)->capture_default_str();
  eval_cmd->add_option("--dx", ev.dx, "x-order of the jet")->capture_default_str();
  eval_cmd->add_option("--dy", ev.dy, "y-order of the jet")->capture_default_str();
  eval_cmd->add_option("--prec", ev.prec, "bits at infinity, digits at a prime (overrides the global)");
  eval_cmd->add_option("--m", ev.m)->capture_default_str();
  eval_cmd->add_option("--beta", ev.beta)->capture_default_str();
  eval_cmd->add_option("--d", ev.d)->capture_default_str();
  eval_cmd->add_option("--z", ev.z, "g_dary: z; several variables: comma-separated coordinates");

  VerifyArgs vf;
  auto* verify_cmd_app = app.add_subcommand("verify", "check the identity catalog numerically");
  verify_cmd_app->add_option("--suite", vf.suite, "all, or comma-separated identity names")->capture_default_str();
  verify_cmd_app->add_option("--tol", vf.tol, "tolerance in bits (p-adic: valuation)")->capture_default_str();
  verify_cmd_app->add_option("--points-file", vf.points_file, "JSON overrides or explicit cases");

  ProbeArgs pr;
  auto* probe_app = app.add_subcommand("probe", "integer or algebraic relation search");
  probe_app->add_option("--input", pr.input, "JSON text or file with functions/values")->required();
  probe_app->add_option("--degree", pr.degree, "overrides the input");
  probe_app->add_option("--height", pr.height, "overrides the input");
  probe_app->add_option("--digits", pr.digits, "overrides the input");

  for (auto* sub : {analyze_cmd, eval_cmd, verify_cmd_app, probe_app}) {
    add_globals(sub);
  }

  Outcome o;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    o.out = app.help();
    return o;
  } catch (const CLI::ParseError& e) {
    o.exit_code = kError;
    o.err = std::string(e.what()) + "\n";
    return o;
  }

  report::RunManifest manifest;
  manifest.output = g.json_out;
  Produced p;
  bool failed = false;
  try {
    if (*analyze_cmd) {
      manifest.subcommand = "analyze";
      p = analyze(g, an, manifest);
    } else if (*eval_cmd) {
      manifest.subcommand = "eval";
      p = eval(g, ev, manifest);
    } else if (*verify_cmd_app) {
      manifest.subcommand = "verify";
      p = verify_cmd(g, vf, manifest);
    } else {
      manifest.subcommand = "probe";
      p = probe_cmd(g, pr, manifest);
    }
  } catch (const Error& e) {
    failed = true;
    p.body = Json::object();
    p.body["error"] = report::to_json(e);
    p.text = std::string("error ") + code_name(e.code()) + ": " + e.what() + "\n";
    p.exit_code = kError;
    o.err = p.text;
  } catch (const std::exception& e) {
    failed = true;
    p.body = Json::object();
    p.body["error"] = {{"code", "InvalidArgument"}, {"message", e.what()}};
    p.text = std::string("error: ") + e.what() + "\n";
    p.exit_code = kError;
    o.err = p.text;
  }

  const std::string json = report::dump(report::envelope(manifest, p.body));
  if (!g.json_out.empty()) {
    std::ofstream f(g.json_out, std::ios::binary);
    if (!f) {
      o.err += "cannot write " + g.json_out + "\n";
      o.exit_code = kError;
      return o;
    }
    f << json;
  }
  if (!g.quiet) o.out = (g.format == "text" && !failed) ? p.text : (g.format == "text" ? "" : json);
  o.exit_code = p.exit_code;
  return o;
}

}  // namespace recmahler::cli
