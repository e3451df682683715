#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace memdp {

using EnvId = std::size_t;

/// A subset of environment indices {0, ..., universe-1}.
///
/// Up to 64 environments fit in a single inline word; larger universes spill
/// to the heap transparently.
class EnvSet {
public:
    EnvSet() = default;
    explicit EnvSet(std::size_t universe);

    static EnvSet full(std::size_t universe);
    static EnvSet of(std::size_t universe, std::initializer_list<EnvId> members);

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept;
    bool empty() const noexcept;

    bool contains(EnvId env) const noexcept;
    void insert(EnvId env);
    void erase(EnvId env);

    bool is_subset_of(const EnvSet& other) const noexcept;
    bool is_proper_subset_of(const EnvSet& other) const noexcept;

    EnvSet operator&(const EnvSet& other) const;
    EnvSet operator|(const EnvSet& other) const;

    std::vector<EnvId> members() const;
    /// Lowest member; the set must be nonempty.
    EnvId front() const;

    std::size_t hash() const noexcept;

    bool operator==(const EnvSet& other) const noexcept;
    /// Orders as the binary numbers the sets encode (bitmask order).
    std::strong_ordering operator<=>(const EnvSet& other) const noexcept;

private:
    std::size_t universe_ = 0;
    boost::container::small_vector<std::uint64_t, 1> words_;
};

struct EnvSetHash {
    std::size_t operator()(const EnvSet& s) const noexcept { return s.hash(); }
};

}  // namespace memdp
