#pragma once

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace hepta {

/// Greedy Fibonacci (Zeckendorf) word.
///
/// Digit position j (1-based, least significant first) weighs f_j with
/// f_1 = 1, f_2 = 2, f_{j+2} = f_{j+1} + f_j. A valid word never holds two
/// adjacent 1 digits and its top digit is 1; the empty word is zero.
class FibWord {
public:
    /// Capacity large enough for every 64-bit natural.
    static constexpr std::size_t kMaxDigits = 92;

    FibWord() = default;

    static FibWord encode(std::uint64_t n);

    /// Parses a digit string, most significant first. "0" and "" are zero.
    /// Throws std::invalid_argument on non-binary input or adjacent 1s.
    static FibWord parse(std::string_view digits);

    std::uint64_t decode() const;

    FibWord succ() const;
    /// Throws std::domain_error on zero.
    FibWord pred() const;

    /// Number of digits (0 for the zero word).
    std::size_t size() const { return length_; }
    bool is_zero() const { return length_ == 0; }

    /// Digit at 1-based position; positions beyond size() read as 0.
    int digit(std::size_t pos) const { return pos >= 1 && pos <= length_ ? bits_[pos - 1] : 0; }
    std::size_t lowest_set() const;

    /// Drops the k lowest digits.
    FibWord shifted_down(std::size_t k) const;
    /// Appends k zero digits below the current ones.
    FibWord shifted_up(std::size_t k) const;

    std::string to_string() const;

    friend bool operator==(const FibWord& a, const FibWord& b) {
        return a.length_ == b.length_ && a.bits_ == b.bits_;
    }

private:
    void set(std::size_t pos, bool v);
    void trim();
    void add_at(std::size_t pos);

    std::bitset<kMaxDigits> bits_{};
    std::size_t length_ = 0;
};

/// Fibonacci weight f_j with f_1 = 1, f_2 = 2. f_0 is taken as 1.
std::uint64_t fib(std::size_t j);

inline FibWord encode(std::uint64_t n) { return FibWord::encode(n); }
inline std::uint64_t decode(const FibWord& w) { return w.decode(); }
inline FibWord succ(const FibWord& w) { return w.succ(); }
inline FibWord pred(const FibWord& w) { return w.pred(); }

} // namespace hepta
