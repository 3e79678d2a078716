#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lociso {

// Finite description of an infinite address sequence a_1, a_2, ...: an
// explicit prefix followed by a tail that is constant, periodic, or the
// Thue-Morse word t_0 t_1 t_2 ... written over two chosen symbols.
class AddressSequence {
 public:
  enum class Tail { Periodic, ThueMorse };

  static AddressSequence periodic(std::vector<int> prefix, std::vector<int> period);
  static AddressSequence constant(std::vector<int> prefix, int value) { return periodic(std::move(prefix), {value}); }
  static AddressSequence thue_morse(std::vector<int> prefix, int zero, int one);

  // Text form: digits for the prefix, then "(digits)" for a periodic tail or
  // "tm" for Thue-Morse, e.g. "0(011)", "(1)", "12tm". The Thue-Morse symbols
  // are supplied by the caller (0/1 for bit addresses, 1/2 for tree labels).
  static AddressSequence parse(std::string_view text, int tm_zero, int tm_one);

  // a_n for n >= 1.
  int at(std::uint64_t n) const;

  // Eventual period of the tail, 0 when aperiodic.
  std::size_t tail_period() const noexcept { return tail_ == Tail::Periodic ? period_.size() : 0; }
  std::size_t prefix_length() const noexcept { return prefix_.size(); }
  Tail tail() const noexcept { return tail_; }

  // Throws BadAddressEntry unless every symbol lies in [lo, hi].
  void require_alphabet(int lo, int hi) const;
  std::string to_string() const;

 private:
  std::vector<int> prefix_;
  Tail tail_ = Tail::Periodic;
  std::vector<int> period_;
  int tm_zero_ = 0;
  int tm_one_ = 1;
};

// Thue-Morse bit t_n (parity of the binary digit sum of n).
inline int thue_morse_bit(std::uint64_t n) { return __builtin_popcountll(n) & 1; }

}  // namespace lociso
