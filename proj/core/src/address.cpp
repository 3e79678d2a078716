#include "lociso/address.hpp"

#include "lociso/error.hpp"

namespace lociso {

AddressSequence AddressSequence::periodic(std::vector<int> prefix, std::vector<int> period) {
  if (period.empty()) fail(Errc::BadAddressEntry, "periodic tail must be nonempty");
  AddressSequence a;
  a.prefix_ = std::move(prefix);
  a.tail_ = Tail::Periodic;
  a.period_ = std::move(period);
  return a;
}

AddressSequence AddressSequence::thue_morse(std::vector<int> prefix, int zero, int one) {
  AddressSequence a;
  a.prefix_ = std::move(prefix);
  a.tail_ = Tail::ThueMorse;
  a.tm_zero_ = zero;
  a.tm_one_ = one;
  return a;
}

AddressSequence AddressSequence::parse(std::string_view text, int tm_zero, int tm_one) {
  std::vector<int> prefix;
  std::size_t i = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') prefix.push_back(text[i++] - '0');
  std::string_view rest = text.substr(i);
  if (rest == "tm" || rest == "thue-morse") return thue_morse(std::move(prefix), tm_zero, tm_one);
  if (rest.size() >= 3 && rest.front() == '(' && rest.back() == ')') {
    std::vector<int> period;
    for (char c : rest.substr(1, rest.size() - 2)) {
      if (c < '0' || c > '9') fail(Errc::BadAddressEntry, "bad symbol in address '" + std::string(text) + "'");
      period.push_back(c - '0');
    }
    return periodic(std::move(prefix), std::move(period));
  }
  fail(Errc::BadAddressEntry, "address '" + std::string(text) + "' needs a tail: '(digits)' or 'tm'");
}

int AddressSequence::at(std::uint64_t n) const {
  if (n == 0) fail(Errc::InvalidArgument, "address indices start at 1");
  if (n <= prefix_.size()) return prefix_[n - 1];
  std::uint64_t k = n - prefix_.size() - 1;
  if (tail_ == Tail::Periodic) return period_[k % period_.size()];
  return thue_morse_bit(k) ? tm_one_ : tm_zero_;
}

void AddressSequence::require_alphabet(int lo, int hi) const {
  auto check = [&](int v) {
    if (v < lo || v > hi)
      fail(Errc::BadAddressEntry, "address entry " + std::to_string(v) + " outside " + std::to_string(lo) + ".." +
                                      std::to_string(hi));
  };
  for (int v : prefix_) check(v);
  if (tail_ == Tail::Periodic)
    for (int v : period_) check(v);
  else {
    check(tm_zero_);
    check(tm_one_);
  }
}

std::string AddressSequence::to_string() const {
  std::string s;
  for (int v : prefix_) s += std::to_string(v);
  if (tail_ == Tail::ThueMorse) return s + "tm";
  s += '(';
  for (int v : period_) s += std::to_string(v);
  return s + ')';
}

}  // namespace lociso
