#include "memdp/env_set.hpp"
#include "memdp/error.hpp"

#include <bit>
#include <cassert>

namespace memdp {

namespace {
constexpr std::size_t kWordBits = 64;
std::size_t words_for(std::size_t universe) { return (universe + kWordBits - 1) / kWordBits; }
}  // namespace

EnvSet::EnvSet(std::size_t universe) : universe_(universe), words_(words_for(universe), 0) {}

EnvSet EnvSet::full(std::size_t universe) {
    EnvSet s(universe);
    for (EnvId e = 0; e < universe; ++e) s.insert(e);
    return s;
}

EnvSet EnvSet::of(std::size_t universe, std::initializer_list<EnvId> members) {
    EnvSet s(universe);
    for (EnvId e : members) s.insert(e);
    return s;
}

std::size_t EnvSet::size() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool EnvSet::empty() const noexcept {
    for (auto w : words_)
        if (w != 0) return false;
    return true;
}

bool EnvSet::contains(EnvId env) const noexcept {
    if (env >= universe_) return false;
    return (words_[env / kWordBits] >> (env % kWordBits)) & 1u;
}

void EnvSet::insert(EnvId env) {
    if (env >= universe_) throw Error(Errc::EmptyEnvSet, "environment index " + std::to_string(env) + " out of range");
    words_[env / kWordBits] |= std::uint64_t{1} << (env % kWordBits);
}

void EnvSet::erase(EnvId env) {
    if (env >= universe_) return;
    words_[env / kWordBits] &= ~(std::uint64_t{1} << (env % kWordBits));
}

bool EnvSet::is_subset_of(const EnvSet& other) const noexcept {
    assert(universe_ == other.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

bool EnvSet::is_proper_subset_of(const EnvSet& other) const noexcept {
    return is_subset_of(other) && !(*this == other);
}

EnvSet EnvSet::operator&(const EnvSet& other) const {
    assert(universe_ == other.universe_);
    EnvSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= other.words_[i];
    return r;
}

EnvSet EnvSet::operator|(const EnvSet& other) const {
    assert(universe_ == other.universe_);
    EnvSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= other.words_[i];
    return r;
}

std::vector<EnvId> EnvSet::members() const {
    std::vector<EnvId> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        auto w = words_[i];
        while (w) {
            auto bit = static_cast<std::size_t>(std::countr_zero(w));
            out.push_back(i * kWordBits + bit);
            w &= w - 1;
        }
    }
    return out;
}

EnvId EnvSet::front() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i]) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[i]));
    throw Error(Errc::EmptyEnvSet, "front() of empty environment set");
}

std::size_t EnvSet::hash() const noexcept {
    std::size_t h = universe_ * 0x9E3779B97F4A7C15ull;
    for (auto w : words_) h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return h;
}

bool EnvSet::operator==(const EnvSet& other) const noexcept {
    return universe_ == other.universe_ && words_ == other.words_;
}

std::strong_ordering EnvSet::operator<=>(const EnvSet& other) const noexcept {
    if (auto c = universe_ <=> other.universe_; c != 0) return c;
    for (std::size_t i = words_.size(); i-- > 0;) {
        if (auto c = words_[i] <=> other.words_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

}  // namespace memdp
