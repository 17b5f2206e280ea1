#pragma once

// Freely reduced words over a finite ranked basis x1..xn.
//
// A letter is stored as a signed integer: +i is the generator x<i>, -i its
// inverse X<i>. Every Word is freely reduced; there is no way to build an
// unreduced one through the public API.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fgaut/error.hpp"

namespace fgaut {

using letter_t = std::int32_t;

struct Letter {
  int index = 1;  // 1-based generator index
  int sign = 1;   // +1 or -1

  static Letter from_code(letter_t code) { return {std::abs(code), code > 0 ? 1 : -1}; }
  letter_t code() const { return sign > 0 ? index : -index; }
  Letter inverse() const { return {index, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

namespace detail {
inline std::atomic<std::size_t>& max_word_length_storage() {
  static std::atomic<std::size_t> limit{1'000'000};
  return limit;
}
}  // namespace detail

/// Upper bound on the length of any word the library will build.
inline std::size_t max_word_length() { return detail::max_word_length_storage().load(); }
inline void set_max_word_length(std::size_t n) { detail::max_word_length_storage().store(n); }

class Word {
 public:
  Word() : Word(1) {}
  explicit Word(int rank) : rank_(rank) {
    if (rank < 1) throw RankError("rank must be positive, got " + std::to_string(rank));
  }

  /// Reduces `letters` freely. Throws RankError for an index outside 1..rank.
  static Word from_letters(int rank, std::span<const letter_t> letters) {
    Word w(rank);
    w.letters_.reserve(letters.size());
    for (letter_t c : letters) {
      w.check_letter(c);
      w.push_reduced(c);
    }
    w.check_length();
    return w;
  }
  static Word from_letters(int rank, std::initializer_list<letter_t> letters) {
    return from_letters(rank, std::span<const letter_t>(letters.begin(), letters.size()));
  }

  static Word generator(int rank, int index, int sign = 1) {
    letter_t c = sign > 0 ? index : -index;
    return from_letters(rank, {c});
  }

  int rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool is_identity() const { return letters_.empty(); }
  std::span<const letter_t> letters() const { return letters_; }
  letter_t operator[](std::size_t i) const { return letters_[i]; }
  letter_t front() const { return letters_.front(); }
  letter_t back() const { return letters_.back(); }
  Letter letter(std::size_t i) const { return Letter::from_code(letters_[i]); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
    return a.letters_ <=> b.letters_;
  }

  // Appends a letter, cancelling against the current last letter.
  void push_reduced(letter_t c) {
    if (!letters_.empty() && letters_.back() == -c) {
      letters_.pop_back();
    } else {
      letters_.push_back(c);
    }
  }

  void check_length() const {
    if (letters_.size() > max_word_length()) {
      throw LengthError("word length " + std::to_string(letters_.size()) +
                        " exceeds limit " + std::to_string(max_word_length()));
    }
  }

 private:
  void check_letter(letter_t c) const {
    if (c == 0 || std::abs(c) > rank_) {
      throw RankError("letter index " + std::to_string(std::abs(c)) + " outside rank " +
                      std::to_string(rank_));
    }
  }

  int rank_;
  std::vector<letter_t> letters_;
};

inline void require_same_rank(int a, int b, const char* what) {
  if (a != b) {
    throw RankError(std::string(what) + ": rank mismatch " + std::to_string(a) + " vs " +
                    std::to_string(b));
  }
}

inline Word multiply(const Word& u, const Word& v) {
  require_same_rank(u.rank(), v.rank(), "multiply");
  auto a = u.letters();
  auto b = v.letters();
  std::size_t cancel = 0;
  while (cancel < a.size() && cancel < b.size() && a[a.size() - 1 - cancel] == -b[cancel]) {
    ++cancel;
  }
  std::vector<letter_t> out;
  out.reserve(a.size() + b.size() - 2 * cancel);
  out.insert(out.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(cancel), b.end());
  if (out.size() > max_word_length()) {
    throw LengthError("product length " + std::to_string(out.size()) + " exceeds limit");
  }
  return Word::from_letters(u.rank(), out);
}

inline Word operator*(const Word& u, const Word& v) { return multiply(u, v); }

inline Word invert_word(const Word& w) {
  std::vector<letter_t> out(w.letters().rbegin(), w.letters().rend());
  for (auto& c : out) c = -c;
  return Word::from_letters(w.rank(), out);
}

/// t * w * t^-1
inline Word conjugate(const Word& w, const Word& t) {
  require_same_rank(w.rank(), t.rank(), "conjugate");
  return t * w * invert_word(t);
}

inline Word power(const Word& w, long k) {
  Word base = k < 0 ? invert_word(w) : w;
  Word out(w.rank());
  for (long i = 0; i < std::labs(k); ++i) out = out * base;
  return out;
}

struct CyclicReduction {
  Word core;
  Word conjugator;
};

/// w = conjugator * core * conjugator^-1 with core cyclically reduced.
inline CyclicReduction cyclic_reduce(const Word& w) {
  auto s = w.letters();
  std::size_t i = 0;
  std::size_t j = s.size();
  while (j - i >= 2 && s[i] == -s[j - 1]) {
    ++i;
    --j;
  }
  return {Word::from_letters(w.rank(), s.subspan(i, j - i)),
          Word::from_letters(w.rank(), s.subspan(0, i))};
}

inline std::size_t cyclic_length(const Word& w) {
  auto s = w.letters();
  std::size_t i = 0;
  std::size_t j = s.size();
  while (j - i >= 2 && s[i] == -s[j - 1]) {
    ++i;
    --j;
  }
  return j - i;
}

inline std::string render(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back(' ');
    letter_t c = w[i];
    out.push_back(c > 0 ? 'x' : 'X');
    out += std::to_string(std::abs(c));
  }
  return out;
}

/// Parses the bit-exact word grammar: single-space separated `x<i>` / `X<i>`
/// tokens, or the lone token `1` for the identity.
inline Word parse_word(std::string_view text, int rank) {
  if (rank < 1) throw RankError("rank must be positive");
  if (text == "1") return Word(rank);
  if (text.empty()) throw SyntaxError("empty word text");
  std::vector<letter_t> letters;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find(' ', pos);
    std::string_view tok = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'X')) {
      throw SyntaxError("bad token '" + std::string(tok) + "'");
    }
    std::string_view digits = tok.substr(1);
    if (digits[0] == '0' || !std::all_of(digits.begin(), digits.end(), [](char ch) {
          return ch >= '0' && ch <= '9';
        })) {
      throw SyntaxError("bad generator index in '" + std::string(tok) + "'");
    }
    long index = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec != std::errc{} || index > 1'000'000'000L) {
      throw SyntaxError("generator index out of range in '" + std::string(tok) + "'");
    }
    if (index > rank) {
      throw RankError("generator x" + std::to_string(index) + " exceeds rank " + std::to_string(rank));
    }
    letters.push_back(tok[0] == 'x' ? static_cast<letter_t>(index) : -static_cast<letter_t>(index));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return Word::from_letters(rank, letters);
}

/// Shorthand used heavily in tests and constructions.
inline Word word(int rank, std::initializer_list<letter_t> letters) {
  return Word::from_letters(rank, letters);
}

}  // namespace fgaut
