#include "recmahler/place.hpp"

#include "recmahler/error.hpp"

namespace recmahler {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Place Place::prime(long p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "place: " + std::to_string(p) + " is not prime");
  return Place(p);
}

Place Place::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return infinity();
  std::string digits = text;
  if (digits.rfind("p:", 0) == 0) digits = digits.substr(2);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorCode::ParseError, "place: expected 'inf' or 'p:<prime>', got '" + text + "'");
  return prime(std::stol(digits));
}

std::string Place::to_string() const {
  return is_infinite() ? std::string("inf") : "p:" + std::to_string(p_);
}

}  // namespace recmahler
