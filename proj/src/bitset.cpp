#include "priverm/bitset.hpp"

#include <stdexcept>

namespace priverm {

BitSet BitSet::from_string(std::string_view s)
{
    BitSet b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            b.set(i);
        else if (s[i] != '0')
            throw std::invalid_argument("bit string may only contain '0' and '1': \"" + std::string(s) + "\"");
    }
    return b;
}

BitSet& BitSet::operator|=(const BitSet& o)
{
    if (o.size_ != size_) throw std::invalid_argument("BitSet size mismatch in |=");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
}

BitSet& BitSet::operator&=(const BitSet& o)
{
    if (o.size_ != size_) throw std::invalid_argument("BitSet size mismatch in &=");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
}

BitSet& BitSet::subtract(const BitSet& o)
{
    if (o.size_ != size_) throw std::invalid_argument("BitSet size mismatch in subtract");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    return *this;
}

BitSet BitSet::operator~() const
{
    BitSet r = *this;
    for (auto& w : r.words_) w = ~w;
    r.clear_tail();
    return r;
}

std::size_t BitSet::count_andnot(const BitSet& a, const BitSet& b)
{
    std::size_t c = 0;
    for (std::size_t w = 0; w < a.words_.size(); ++w)
        c += static_cast<std::size_t>(std::popcount(a.words_[w] & ~b.words_[w]));
    return c;
}

std::size_t BitSet::count_and(const BitSet& a, const BitSet& b)
{
    std::size_t c = 0;
    for (std::size_t w = 0; w < a.words_.size(); ++w)
        c += static_cast<std::size_t>(std::popcount(a.words_[w] & b.words_[w]));
    return c;
}

bool operator<(const BitSet& a, const BitSet& b)
{
    const std::size_t n = std::min(a.words_.size(), b.words_.size());
    for (std::size_t w = 0; w < n; ++w) {
        const std::uint64_t diff = a.words_[w] ^ b.words_[w];
        if (diff) {
            const std::uint64_t low = diff & (~diff + 1);
            return (a.words_[w] & low) == 0;
        }
    }
    return a.size_ < b.size_;
}

std::string BitSet::to_string() const
{
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
        if (test(i)) s[i] = '1';
    return s;
}

std::size_t BitSet::hash() const
{
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
    for (auto w : words_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

void BitSet::clear_tail()
{
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
}

}  // namespace priverm
