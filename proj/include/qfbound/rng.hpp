#pragma once

#include <array>
#include <cstdint>

namespace qfb {

/// Philox4x32-10 counter-based block function (Salmon et al., SC'11).
/// Stateless: the same (counter, key) always maps to the same 128 output bits.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter counter, Key key) noexcept;
};

/// Deterministic stream of standard normals for one (seed, stream) pair.
///
/// Block i of stream s under seed k is Philox(counter = {i, s}, key = k); each
/// block yields two 52-bit uniforms in (0, 1), mapped to two normals by
/// Box-Muller (cos branch first). Streams with different ids never overlap.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t stream) noexcept;

    double next() noexcept;

private:
    std::array<std::uint64_t, 2> next_block() noexcept;

    Philox4x32::Key key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Maps the top 52 bits of `bits` to the open interval (0, 1); both ends are
/// exactly representable so neither endpoint is reachable.
inline double to_open_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

}  // namespace qfb
