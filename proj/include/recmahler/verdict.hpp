#pragma once

#include <string>
#include <vector>

namespace recmahler {

enum class Verdict { Pass, Fail, Unknown };

const char* verdict_name(Verdict v);

struct Clause {
  std::string name;
  Verdict verdict = Verdict::Unknown;
  std::string evidence;
};

/// PASS iff every clause passes, FAIL iff some clause fails.
Verdict combine(const std::vector<Clause>& clauses);

}  // namespace recmahler
