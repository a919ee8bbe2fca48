#include "recmahler/verdict.hpp"

namespace recmahler {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

Verdict combine(const std::vector<Clause>& clauses) {
  bool all_pass = true;
  for (const auto& c : clauses) {
    if (c.verdict == Verdict::Fail) return Verdict::Fail;
    if (c.verdict != Verdict::Pass) all_pass = false;
  }
  return all_pass ? Verdict::Pass : Verdict::Unknown;
}

}  // namespace recmahler
