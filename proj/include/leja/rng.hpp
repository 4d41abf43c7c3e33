#pragma once

#include <cstdint>

namespace leja {

/// splitmix64 finalizer; bijective with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// What a substream is consumed for. Part of the stream key, so draws made
/// for different purposes at the same (step, draw) index never alias.
enum class Purpose : std::uint64_t {
    init = 0,
    candidate = 1,
    accept = 2,
    retry = 3,
};

/// Sequential generator over one fixed key (splitmix64).
/// Callers may pull as many values as they need; substreams with distinct
/// keys stay independent regardless of how much each one consumes.
class Substream {
public:
    explicit Substream(std::uint64_t state) noexcept : state_(state) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    /// Uniform double in [0, 1).
    double next_unit() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Counter-based splittable stream: substreams are keyed by
/// (root seed, step index, draw index, purpose) through a chain of
/// splitmix64 finalizers. Deriving a substream never mutates the root,
/// so candidate draws can be evaluated concurrently in any order and
/// still see identical values.
class SplitStream {
public:
    explicit SplitStream(std::uint64_t root_seed) noexcept : root_(root_seed) {}

    Substream at(std::uint64_t step, std::uint64_t draw, Purpose purpose) const noexcept {
        std::uint64_t h = mix64(root_ ^ 0x8f1bbcdcbfa53e0bull);
        h = mix64(h ^ (step * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull));
        h = mix64(h ^ (draw * 0xd1342543de82ef95ull + 0x5851f42d4c957f2dull));
        h = mix64(h ^ ((static_cast<std::uint64_t>(purpose) + 1) * 0xa0761d6478bd642full));
        return Substream(h);
    }

    std::uint64_t root() const noexcept { return root_; }

private:
    std::uint64_t root_;
};

}  // namespace leja
