#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace tscu {

/// Element of GF(2^w), stored as the coefficient bit vector of a polynomial
/// of degree < w.
struct FieldElem {
    std::uint64_t bits = 0;

    friend constexpr bool operator==(FieldElem, FieldElem) = default;
    constexpr bool is_zero() const { return bits == 0; }
};

namespace detail {

// Low coefficients (everything below x^w) of the lexicographically smallest
// irreducible polynomial of degree w over GF(2), indexed by w - 1.
inline constexpr std::array<std::uint64_t, 64> kModulusLow = {
    0x0,  0x3,  0x3,  0x3,  0x5,  0x3,  0x3,  0x1b, 0x3,  0x9,  0x5,  0x9,  0x1b,
    0x21, 0x3,  0x2b, 0x9,  0x9,  0x27, 0x9,  0x5,  0x3,  0x21, 0x1b, 0x9,  0x1b,
    0x27, 0x3,  0x5,  0x3,  0x9,  0x8d, 0x4b, 0x1b, 0x5,  0x35, 0x3f, 0x63, 0x11,
    0x39, 0x9,  0x27, 0x59, 0x21, 0x1b, 0x3,  0x21, 0x2d, 0x71, 0x1d, 0x4b, 0x9,
    0x47, 0x7d, 0x47, 0x95, 0x11, 0x63, 0x7b, 0x3,  0x27, 0x69, 0x3,  0x1b,
};

} // namespace detail

/// The field GF(2^w). Multiplication is shift-and-xor with reduction by a
/// fixed irreducible modulus, so results are bit-exact across builds.
class Field {
public:
    /// Builds GF(2^w) for 1 <= w <= 64.
    static constexpr Field of_width(unsigned width) {
        if (width < 1 || width > 64) throw std::invalid_argument("field width must be in [1, 64]");
        return Field(width);
    }

    /// Field of order q = 2^(ceil(log2 n) + 1), which is at least 2n.
    static constexpr Field for_size(std::uint64_t n) {
        if (n < 1) throw std::invalid_argument("field_for_size needs n >= 1");
        unsigned ceil_log = n == 1 ? 0u : static_cast<unsigned>(std::bit_width(n - 1));
        return of_width(ceil_log + 1);
    }

    constexpr unsigned width() const { return width_; }
    /// Low coefficients of the modulus; the x^w term is implicit.
    constexpr std::uint64_t modulus_low() const { return detail::kModulusLow[width_ - 1]; }
    /// 2^w, saturated at 2^64 - 1 for w = 64.
    constexpr std::uint64_t order() const { return width_ == 64 ? ~0ull : (1ull << width_); }
    constexpr std::uint64_t element_mask() const { return width_ == 64 ? ~0ull : (1ull << width_) - 1; }

    constexpr FieldElem zero() const { return {0}; }
    constexpr FieldElem one() const { return {1}; }
    constexpr FieldElem from_bits(std::uint64_t bits) const { return {bits & element_mask()}; }

    static constexpr FieldElem add(FieldElem a, FieldElem b) { return {a.bits ^ b.bits}; }

    constexpr FieldElem mul(FieldElem a, FieldElem b) const {
        const std::uint64_t top = 1ull << (width_ - 1);
        const std::uint64_t mask = element_mask();
        const std::uint64_t low = modulus_low();
        std::uint64_t x = a.bits;
        std::uint64_t y = b.bits;
        std::uint64_t acc = 0;
        while (y != 0) {
            if (y & 1) acc ^= x;
            y >>= 1;
            // x <- x * X mod modulus
            const bool carry = (x & top) != 0;
            x = (x << 1) & mask;
            if (carry) x ^= low;
        }
        return {acc};
    }

    friend constexpr bool operator==(const Field&, const Field&) = default;

private:
    constexpr explicit Field(unsigned width) : width_(width) {}
    unsigned width_;
};

} // namespace tscu
