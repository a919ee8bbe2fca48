#include "recmahler/report_json.hpp"

#include <cstdio>

namespace recmahler::report {

namespace {

std::string fixed3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

Json valuation_json(long v) { return v >= PAdic::kExactZero ? Json(nullptr) : Json(v); }

Json ints(const std::vector<BigInt>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json clauses(const std::vector<Clause>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(to_json(c));
  return out;
}

}  // namespace

Json to_json(const RunManifest& m) {
  Json j;
  j["subcommand"] = m.subcommand;
  j["parameters"] = m.parameters;
  j["version"] = kVersion;
  j["output"] = m.output.empty() ? Json(nullptr) : Json(m.output);
  return j;
}

Json to_json(const ComplexBall& z) {
  const std::size_t digits = decimal_digits_for(z.prec());
  Json j;
  j["re"] = z.re().to_decimal(digits);
  j["im"] = z.im().to_decimal(digits);
  j["rad"] = z.rad().to_decimal();
  j["bits"] = static_cast<long>(z.prec());
  return j;
}

Json to_json(const PAdic& x) {
  Json j;
  j["p"] = x.p();
  j["zero"] = x.zero();
  j["valuation"] = valuation_json(x.valuation());
  j["abs_prec"] = valuation_json(x.abs_prec());
  j["unit"] = x.zero() ? Json(nullptr) : Json(to_string(x.unit()));
  j["text"] = x.to_string();
  return j;
}

Json to_json(const PrecisionScalar& s) {
  return std::visit([](const auto& v) { return to_json(v); }, s);
}

Json to_json(const Clause& c) {
  Json j;
  j["name"] = c.name;
  j["verdict"] = verdict_name(c.verdict);
  j["evidence"] = c.evidence;
  return j;
}

Json to_json(const ConditionReport& r) {
  Json j;
  j["place"] = r.place.to_string();
  j["overall"] = verdict_name(r.overall);
  j["clauses"] = clauses(r.clauses);
  j["implied"] = clauses(r.implied);
  return j;
}

Json to_json(const OmegaConditionReport& r) {
  Json j;
  j["place"] = r.place.to_string();
  j["overall"] = verdict_name(r.overall);
  j["clauses"] = clauses(r.clauses);
  j["c_estimate"] = r.c_estimate;
  j["iv_method"] = r.iv_method;
  j["iv_witness"] = ints(r.iv_witness);
  return j;
}

Json to_json(const IdentityCase& c) {
  Json j;
  j["identity"] = identity_name(c.id);
  j["params"] = c.params;
  j["place"] = c.place.to_string();
  j["status"] = case_status_name(c.status);
  j["checks"] = c.checks;
  if (c.status != CaseStatus::Skipped) {
    if (c.place.is_infinite()) {
      j["residual_abs"] = c.residual_abs.to_decimal();
      j["tolerance"] = c.tolerance.to_decimal();
    } else {
      j["residual_valuation"] = valuation_json(c.residual_valuation);
      j["threshold"] = c.threshold;
    }
    j["worst_residual"] = to_json(c.residual);
  }
  j["reason"] = c.reason;
  return j;
}

Json to_json(const RelationCertificate& c) {
  Json j;
  j["outcome"] = probe_outcome_name(c.outcome);
  j["labels"] = c.labels;
  j["degree"] = c.degree;
  j["height"] = to_string(c.height);
  j["digits"] = c.digits;
  j["dimension"] = c.dimension;
  if (c.outcome == ProbeOutcome::Found) {
    j["relation"] = ints(c.relation);
    j["residual"] = c.residual.to_decimal();
    j["recheck_residual"] = c.recheck_residual ? Json(c.recheck_residual->to_decimal()) : Json(nullptr);
  } else {
    j["relation"] = nullptr;
  }
  j["log10_lattice_floor"] = fixed3(c.log10_lattice_floor);
  j["log10_relation_norm"] = fixed3(c.log10_relation_norm);
  j["height_excluded"] = c.height_excluded;
  return j;
}

Json to_json(const RankCheck& r) {
  Json j;
  j["mode"] = rank_mode_name(r.mode);
  Json betas = Json::array();
  for (const auto& b : r.betas) betas.push_back(to_string(b));
  j["betas"] = betas;
  j["M"] = r.M;
  j["rows"] = r.matrix.size();
  j["unknowns"] = r.unknowns();
  j["rank"] = r.rank;
  j["full_rank"] = r.full_rank();
  Json kernel = Json::array();
  for (const auto& v : r.kernel) kernel.push_back(ints(v));
  j["kernel"] = kernel;
  return j;
}

Json to_json(const LinearRecurrence& rec) {
  Json j;
  j["c"] = ints(rec.coeffs());
  j["init"] = ints(rec.init());
  return j;
}

Json to_json(const Error& e) {
  Json j;
  j["code"] = code_name(e.code());
  j["message"] = e.what();
  return j;
}

Json to_json(const EvalResult& r, bool with_timing) {
  Json j;
  j["place"] = r.place.to_string();
  j["backend"] = r.place.is_infinite() ? "complex" : "padic";
  Json coeffs = Json::array();
  std::visit(
      [&](const auto& jet) {
        j["L"] = jet.L();
        j["M"] = jet.M();
        for (int l = 0; l <= jet.L(); ++l)
          for (int m = 0; m <= jet.M(); ++m) {
            Json c;
            c["l"] = l;
            c["m"] = m;
            c["value"] = to_json(jet.at(l, m));
            coeffs.push_back(std::move(c));
          }
      },
      r.jet);
  j["coefficients"] = coeffs;
  j["terms_summed"] = r.K + 1;
  if (r.place.is_infinite())
    j["tail_bound"] = r.tail.to_decimal();
  else
    j["tail_valuation"] = valuation_json(r.tail_valuation);
  Json zeros = Json::array();
  for (auto k : r.zero_factors) zeros.push_back(k);
  j["zero_factors"] = zeros;
  if (with_timing) j["wall_seconds"] = fixed3(r.wall_seconds);
  return j;
}

Json envelope(const RunManifest& m, const Json& body) {
  Json j;
  j["schema"] = kSchema;
  j["manifest"] = to_json(m);
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

BigInt int_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    BigInt z;
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || z.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
      throw Error(ErrorCode::ParseError, "not an integer: '" + s + "'");
    return z;
  }
  throw Error(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer() || j.is_number_unsigned()) return Rat(int_from_json(j));
  throw Error(ErrorCode::ParseError, "expected a rational as \"p/q\" or an integer, got " + j.dump());
}

LinearRecurrence recurrence_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "recurrence must be a JSON object");
  for (const char* key : {"c", "init"})
    if (!j.contains(key) || !j[key].is_array())
      throw Error(ErrorCode::ParseError, std::string("recurrence needs an array \"") + key + "\"");
  std::vector<BigInt> c, init;
  for (const auto& x : j["c"]) c.push_back(int_from_json(x));
  for (const auto& x : j["init"]) init.push_back(int_from_json(x));
  return LinearRecurrence::make(std::move(c), std::move(init));
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace recmahler::report
