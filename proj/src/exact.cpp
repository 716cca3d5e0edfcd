#include "fanforge/exact.hpp"

#include <set>

#include "fanforge/errors.hpp"

namespace fanforge {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kNotInCantor: return "NotInCantor";
    case ErrorCode::kAtJumpLocation: return "AtJumpLocation";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kTruncationTooCoarse: return "TruncationTooCoarse";
    case ErrorCode::kStageOrderViolation: return "StageOrderViolation";
    case ErrorCode::kJumpHit: return "JumpHit";
    case ErrorCode::kNotSpanning: return "NotSpanning";
    case ErrorCode::kNotOrdered: return "NotOrdered";
    case ErrorCode::kDepthInsufficient: return "DepthInsufficient";
    case ErrorCode::kUnknownCopy: return "UnknownCopy";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

Rational parse_rational(std::string_view text) {
  auto valid_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s) {
      if (ch < '0' || ch > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                           : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+') {
    throw Error(ErrorCode::kInvalidArgument,
                "malformed rational '" + std::string(text) + "' (expected p/q)");
  }
  mpz_class p(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "zero denominator in '" + std::string(text) + "'");
  }
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpz_class pow3(int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 3, static_cast<unsigned long>(n));
  return r;
}

mpz_class pow2(int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return r;
}

Rational inv_pow3(int n) { return Rational(mpz_class(1), pow3(n)); }
Rational inv_pow2(int n) { return Rational(mpz_class(1), pow2(n)); }

mpz_class ceil(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Address Address::parse(std::string_view bits) {
  if (bits.size() > static_cast<size_t>(kMaxLength)) {
    throw Error(ErrorCode::kInvalidArgument, "address longer than supported");
  }
  Address a;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw Error(ErrorCode::kInvalidArgument,
                  "malformed address '" + std::string(bits) + "'");
    }
    a = a.child(ch - '0');
  }
  return a;
}

Address Address::from_bits(std::uint64_t bits, int length) {
  if (length < 0 || length > kMaxLength) {
    throw Error(ErrorCode::kInvalidArgument, "address length out of range");
  }
  Address a;
  a.length_ = length;
  a.bits_ = length == 0 ? 0 : bits & ((std::uint64_t{1} << length) - 1);
  return a;
}

std::vector<Address> Address::all_of_length(int n) {
  std::vector<Address> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    out.push_back(from_bits(b, n));
  }
  return out;
}

int Address::bit(int k) const {
  if (k < 0 || k >= length_) {
    throw Error(ErrorCode::kIndexOutOfRange, "address bit index out of range");
  }
  return static_cast<int>((bits_ >> (length_ - 1 - k)) & 1U);
}

Address Address::child(int bit) const {
  if (length_ >= kMaxLength) {
    throw Error(ErrorCode::kInvalidArgument, "address longer than supported");
  }
  Address a;
  a.length_ = length_ + 1;
  a.bits_ = (bits_ << 1) | static_cast<std::uint64_t>(bit & 1);
  return a;
}

Address Address::prefix(int length) const {
  if (length < 0 || length > length_) {
    throw Error(ErrorCode::kIndexOutOfRange, "prefix longer than address");
  }
  Address a;
  a.length_ = length;
  a.bits_ = length == 0 ? 0 : bits_ >> (length_ - length);
  return a;
}

bool Address::is_prefix_of(const Address& other) const noexcept {
  if (length_ > other.length_) return false;
  const std::uint64_t top = length_ == 0 ? 0 : other.bits_ >> (other.length_ - length_);
  return top == bits_;
}

std::string Address::to_string() const {
  std::string s(static_cast<size_t>(length_), '0');
  for (int k = 0; k < length_; ++k) {
    if ((bits_ >> (length_ - 1 - k)) & 1U) s[static_cast<size_t>(k)] = '1';
  }
  return s;
}

Rational endpoint_zero(const Address& sigma) {
  const int n = sigma.length();
  // Horner over ternary digits 2*sigma(k).
  mpz_class num = 0;
  for (int k = 0; k < n; ++k) {
    num = num * 3 + 2 * sigma.bit(k);
  }
  Rational r(num, pow3(n));
  r.canonicalize();
  return r;
}

Rational endpoint_one(const Address& sigma) {
  return endpoint_zero(sigma) + inv_pow3(sigma.length());
}

BasicInterval basic_interval(const Address& sigma) {
  Rational left = endpoint_zero(sigma);
  Rational right = left + inv_pow3(sigma.length());
  return BasicInterval{sigma, std::move(left), std::move(right)};
}

bool cantor_member(const Rational& q) {
  if (q < 0 || q > 1) {
    throw Error(ErrorCode::kOutOfRange, "cantor_member: " + to_string(q) + " outside [0,1]");
  }
  if (q == 1) return true;
  const mpz_class& den = q.get_den();
  mpz_class num = q.get_num();
  std::set<mpz_class> seen;
  while (true) {
    if (num == 0) return true;
    if (!seen.insert(num).second) return true;
    num *= 3;
    mpz_class digit;
    mpz_fdiv_qr(digit.get_mpz_t(), num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (digit == 1) {
      // 0.x1000... equals 0.x0222...; any other tail after a 1 is fatal.
      return num == 0;
    }
  }
}

Address locate(const Rational& q, int depth) {
  if (depth < 0) throw Error(ErrorCode::kInvalidArgument, "locate: negative depth");
  if (q < 0 || q > 1 || !cantor_member(q)) {
    throw Error(ErrorCode::kNotInCantor, "locate: " + to_string(q) + " is not in C");
  }
  Address a;
  Rational x = q;
  for (int k = 0; k < depth; ++k) {
    x *= 3;
    if (x >= 2) {
      a = a.child(1);
      x -= 2;
    } else {
      a = a.child(0);
    }
  }
  return a;
}

}  // namespace fanforge
