#pragma once

#include <string>

namespace recmahler {

/// A place of Q: the archimedean one or a prime p.
class Place {
 public:
  static Place infinity() { return Place(0); }
  static Place prime(long p);

  /// Accepts "inf", "p:<prime>" and a bare prime.
  static Place parse(const std::string& text);

  bool is_infinite() const { return p_ == 0; }
  long p() const { return p_; }
  std::string to_string() const;

  friend bool operator==(const Place&, const Place&) = default;

 private:
  explicit Place(long p) : p_(p) {}
  long p_;
};

bool is_prime(long n);

}  // namespace recmahler
