// combinatorics.hpp
// Bit strings, the ordered input set with complement pairing, and parity
// vectors. Everything downstream (observables, bounds, oracles) indexes
// into these.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bellseq {

// A fixed-length string over {0,1}, most-significant bit first.
// Bit positions are 1-based: bit(1) is the leftmost bit.
class BitString {
public:
    BitString(int length, std::uint32_t value) : length_(length), value_(value) {
        if (length < 1 || length > 32)
            throw std::invalid_argument("BitString: length must be in [1, 32]");
        if (length < 32 && value >> length)
            throw std::invalid_argument("BitString: value has bits beyond length");
    }

    static BitString from_string(const std::string& s) {
        std::uint32_t v = 0;
        for (char c : s) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("BitString: expected only '0'/'1'");
            v = (v << 1) | static_cast<std::uint32_t>(c - '0');
        }
        return BitString(static_cast<int>(s.size()), v);
    }

    int length() const { return length_; }
    std::uint32_t value() const { return value_; }

    // 1-based, MSB first: bit(1) is the leftmost bit.
    int bit(int pos) const {
        if (pos < 1 || pos > length_)
            throw std::out_of_range("BitString::bit: position out of range");
        return static_cast<int>((value_ >> (length_ - pos)) & 1u);
    }

    int hamming_weight() const { return __builtin_popcount(value_); }

    BitString xor_with(const BitString& other) const {
        require_same_length(other);
        return BitString(length_, value_ ^ other.value_);
    }

    BitString complement() const {
        std::uint32_t mask = (length_ == 32) ? ~0u : ((1u << length_) - 1u);
        return BitString(length_, value_ ^ mask);
    }

    std::string to_string() const {
        std::string s(static_cast<std::size_t>(length_), '0');
        for (int p = 1; p <= length_; ++p)
            if (bit(p)) s[static_cast<std::size_t>(p - 1)] = '1';
        return s;
    }

    friend bool operator==(const BitString& a, const BitString& b) {
        return a.length_ == b.length_ && a.value_ == b.value_;
    }
    friend bool operator!=(const BitString& a, const BitString& b) { return !(a == b); }

    void require_same_length(const BitString& other) const {
        if (length_ != other.length_)
            throw std::invalid_argument("BitString: length mismatch");
    }

private:
    int length_;
    std::uint32_t value_;
};

// s.x = xor_r s_r x_r, in {0,1}.
inline int parity_bit(const BitString& s, const BitString& x) {
    s.require_same_length(x);
    return __builtin_popcount(s.value() & x.value()) & 1;
}

// All 2^n input strings in ascending binary order, indexed 1..2^n so that
// indices i and l with i + l = 2^n + 1 hold complementary strings.
class OrderedInputSet {
public:
    explicit OrderedInputSet(int n) : n_(n) {
        if (n < 1 || n > 20)
            throw std::invalid_argument("OrderedInputSet: n must be in [1, 20]");
        const std::uint32_t count = 1u << n;
        strings_.reserve(count);
        for (std::uint32_t v = 0; v < count; ++v)
            strings_.emplace_back(n, v);
    }

    int n() const { return n_; }
    std::size_t size() const { return strings_.size(); }

    // 1-based: at(1) = 00...0, at(2^n) = 11...1.
    const BitString& at(std::size_t delta) const {
        if (delta < 1 || delta > strings_.size())
            throw std::out_of_range("OrderedInputSet::at: index out of range");
        return strings_[delta - 1];
    }

    // Index of the complementary string: i + complement_index(i) = 2^n + 1.
    std::size_t complement_index(std::size_t delta) const {
        if (delta < 1 || delta > strings_.size())
            throw std::out_of_range("OrderedInputSet::complement_index: index out of range");
        return strings_.size() + 1 - delta;
    }

    const std::vector<BitString>& strings() const { return strings_; }

private:
    int n_;
    std::vector<BitString> strings_;
};

inline OrderedInputSet enumerate_inputs(int n) { return OrderedInputSet(n); }

// Strings of Hamming weight >= 2; cardinality 2^n - n - 1.
inline std::vector<BitString> parity_set(int n) {
    if (n < 2)
        throw std::invalid_argument("parity_set: n must be at least 2 (set is empty otherwise)");
    if (n > 20) throw std::invalid_argument("parity_set: n must be at most 20");
    std::vector<BitString> out;
    out.reserve((1u << n) - static_cast<std::uint32_t>(n) - 1u);
    for (std::uint32_t v = 0; v < (1u << n); ++v)
        if (__builtin_popcount(v) >= 2) out.emplace_back(n, v);
    return out;
}

// Odd-weight members of parity_set(n): the parities whose obliviousness is
// not automatic and constrains the observable construction. Cardinality
// 2^(n-1) - n.
inline std::vector<BitString> nontrivial_parities(int n) {
    std::vector<BitString> out;
    for (const BitString& s : parity_set(n))
        if (s.hamming_weight() % 2 == 1) out.push_back(s);
    return out;
}

}  // namespace bellseq
