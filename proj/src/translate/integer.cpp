#include <boost/multiprecision/cpp_int.hpp>
#include <limits>

#include "ootp/translate.hpp"

namespace ootp {

using boost::multiprecision::cpp_int;

// Only values outside the int64 range are stored here.
struct Integer::Big {
  cpp_int v;
};

namespace {

cpp_int widen(std::int64_t v) { return cpp_int(v); }

}  // namespace

Integer Integer::from_big(const Big& b) {
  if (b.v >= std::numeric_limits<std::int64_t>::min() && b.v <= std::numeric_limits<std::int64_t>::max())
    return Integer(static_cast<std::int64_t>(b.v));
  return Integer(BigTag{}, std::make_shared<const Big>(b));
}

Integer Integer::parse(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (digits.empty()) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  for (char c : digits)
    if (c < '0' || c > '9') throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  return from_big(Big{cpp_int(std::string(text))});
}

std::string Integer::str() const { return big_ ? big_->v.str() : std::to_string(small_); }

Integer operator+(const Integer& a, const Integer& b) {
  std::int64_t r;
  if (a.is_small() && b.is_small() && !__builtin_add_overflow(a.small_, b.small_, &r)) return Integer(r);
  const cpp_int x = a.big_ ? a.big_->v : widen(a.small_);
  const cpp_int y = b.big_ ? b.big_->v : widen(b.small_);
  return Integer::from_big(Integer::Big{x + y});
}

Integer operator-(const Integer& a, const Integer& b) {
  std::int64_t r;
  if (a.is_small() && b.is_small() && !__builtin_sub_overflow(a.small_, b.small_, &r)) return Integer(r);
  const cpp_int x = a.big_ ? a.big_->v : widen(a.small_);
  const cpp_int y = b.big_ ? b.big_->v : widen(b.small_);
  return Integer::from_big(Integer::Big{x - y});
}

bool operator==(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) return a.small_ == b.small_;
  if (a.is_small() != b.is_small()) return false;
  return a.big_->v == b.big_->v;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) return a.small_ <=> b.small_;
  const cpp_int x = a.big_ ? a.big_->v : widen(a.small_);
  const cpp_int y = b.big_ ? b.big_->v : widen(b.small_);
  return x < y ? std::strong_ordering::less : (x == y ? std::strong_ordering::equal : std::strong_ordering::greater);
}

}  // namespace ootp
