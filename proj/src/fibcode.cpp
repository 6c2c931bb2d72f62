#include "heptagrid/fibcode.hpp"

#include <array>
#include <stdexcept>

namespace hepta {

namespace {

constexpr std::array<std::uint64_t, FibWord::kMaxDigits + 1> make_fib_table() {
    std::array<std::uint64_t, FibWord::kMaxDigits + 1> t{};
    t[0] = 1;
    t[1] = 1;
    t[2] = 2;
    for (std::size_t j = 3; j < t.size(); ++j)
        t[j] = t[j - 1] + t[j - 2];
    return t;
}

constexpr auto kFib = make_fib_table();

} // namespace

std::uint64_t fib(std::size_t j) {
    if (j >= kFib.size())
        throw std::out_of_range("fib: index " + std::to_string(j) + " exceeds 64-bit range");
    return kFib[j];
}

void FibWord::set(std::size_t pos, bool v) {
    if (pos > kMaxDigits)
        throw std::overflow_error("FibWord: digit capacity exceeded");
    bits_[pos - 1] = v;
    if (v && pos > length_)
        length_ = pos;
}

void FibWord::trim() {
    while (length_ > 0 && !bits_[length_ - 1])
        --length_;
}

FibWord FibWord::encode(std::uint64_t n) {
    FibWord w;
    std::size_t j = kMaxDigits;
    while (n > 0) {
        while (kFib[j] > n)
            --j;
        w.set(j, true);
        n -= kFib[j];
        // the next weight below is skipped: f_{j-1} would leave a "11" pair
        if (j >= 2)
            --j;
    }
    return w;
}

FibWord FibWord::parse(std::string_view digits) {
    FibWord w;
    std::size_t start = 0;
    while (start < digits.size() && digits[start] == '0')
        ++start;
    const std::size_t n = digits.size() - start;
    if (n > kMaxDigits)
        throw std::invalid_argument("FibWord: too many digits");
    for (std::size_t i = 0; i < n; ++i) {
        const char c = digits[start + i];
        if (c != '0' && c != '1')
            throw std::invalid_argument("FibWord: non-binary digit in '" + std::string(digits) + "'");
        if (c == '1')
            w.set(n - i, true);
    }
    for (std::size_t p = 1; p < w.length_; ++p)
        if (w.bits_[p - 1] && w.bits_[p])
            throw std::invalid_argument("FibWord: adjacent 1 digits in '" + std::string(digits) + "'");
    return w;
}

std::uint64_t FibWord::decode() const {
    std::uint64_t sum = 0;
    for (std::size_t p = 1; p <= length_; ++p) {
        if (!bits_[p - 1])
            continue;
        if (p < length_ && bits_[p])
            throw std::invalid_argument("FibWord: adjacent 1 digits");
        if (__builtin_add_overflow(sum, kFib[p], &sum))
            throw std::overflow_error("FibWord: value exceeds 64 bits");
    }
    return sum;
}

std::size_t FibWord::lowest_set() const {
    for (std::size_t p = 1; p <= length_; ++p)
        if (bits_[p - 1])
            return p;
    return 0;
}

// Places a 1 at pos, where pos and pos-1 hold 0, then resolves the
// "011" -> "100" carries upwards.
void FibWord::add_at(std::size_t pos) {
    set(pos, true);
    while (digit(pos + 1) == 1) {
        bits_[pos - 1] = false;
        bits_[pos] = false;
        pos += 2;
        set(pos, true);
    }
}

FibWord FibWord::succ() const {
    FibWord w = *this;
    if (w.digit(1) == 1) {
        // f_1 + f_1 = f_2, and digit 2 is 0 because digit 1 is set
        w.bits_[0] = false;
        w.add_at(2);
    } else {
        w.add_at(1);
    }
    return w;
}

FibWord FibWord::pred() const {
    const std::size_t p = lowest_set();
    if (p == 0)
        throw std::domain_error("FibWord: predecessor of zero");
    // f_p - 1 = f_{p-1} + f_{p-3} + ...
    FibWord w = *this;
    w.bits_[p - 1] = false;
    for (std::size_t q = p - 1; q >= 1; q -= 2) {
        w.bits_[q - 1] = true;
        if (q < 3)
            break;
    }
    w.trim();
    return w;
}

FibWord FibWord::shifted_down(std::size_t k) const {
    FibWord w;
    if (k >= length_)
        return w;
    w.bits_ = bits_ >> k;
    w.length_ = length_ - k;
    return w;
}

FibWord FibWord::shifted_up(std::size_t k) const {
    if (is_zero())
        return *this;
    if (length_ + k > kMaxDigits)
        throw std::overflow_error("FibWord: digit capacity exceeded");
    FibWord w;
    w.bits_ = bits_ << k;
    w.length_ = length_ + k;
    return w;
}

std::string FibWord::to_string() const {
    if (length_ == 0)
        return "0";
    std::string s;
    s.reserve(length_);
    for (std::size_t p = length_; p >= 1; --p)
        s.push_back(bits_[p - 1] ? '1' : '0');
    return s;
}

} // namespace hepta
