#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace priverm {

// Fixed-length bit pattern packed into 64-bit words. Bit i lives in word i/64
// at position i%64; bits past size() are always zero.
class BitSet {
public:
    BitSet() = default;
    explicit BitSet(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    // Parses a '0'/'1' string with point 0 first.
    static BitSet from_string(std::string_view s);

    std::size_t size() const { return size_; }
    std::size_t word_count() const { return words_.size(); }
    const std::uint64_t* data() const { return words_.data(); }
    std::uint64_t word(std::size_t w) const { return words_[w]; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v = true)
    {
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= m;
        else
            words_[i >> 6] &= ~m;
    }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool any() const
    {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    BitSet& operator|=(const BitSet& o);
    BitSet& operator&=(const BitSet& o);
    // this &= ~o
    BitSet& subtract(const BitSet& o);
    BitSet operator~() const;

    friend BitSet operator|(BitSet a, const BitSet& b) { return a |= b; }
    friend BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }

    // |a & ~b| without materializing.
    static std::size_t count_andnot(const BitSet& a, const BitSet& b);
    static std::size_t count_and(const BitSet& a, const BitSet& b);

    friend bool operator==(const BitSet& a, const BitSet& b)
    {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    // Lexicographic order of the point-0-first string form: at the first
    // differing point, the pattern holding 0 sorts first. Shorter sorts first.
    friend bool operator<(const BitSet& a, const BitSet& b);

    std::string to_string() const;
    std::size_t hash() const;

private:
    void clear_tail();

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace priverm

template <>
struct std::hash<priverm::BitSet> {
    std::size_t operator()(const priverm::BitSet& b) const noexcept { return b.hash(); }
};
