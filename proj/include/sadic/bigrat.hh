/* bigrat.hh -- small arbitrary-precision signed integers
 *
 * Just enough for exact continued-fraction work: add, sub, mul, division
 * with remainder, comparisons, decimal printing. Little-endian 32-bit limbs.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sadic {

class BigInt {
  public:
    BigInt() = default;
    BigInt(std::int64_t v);

    static BigInt from_string(const std::string& s);

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;

    /// Quotient truncated toward zero, remainder with the dividend's sign.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    /// Floor division (toward minus infinity); b must be positive.
    static BigInt floordiv(const BigInt& a, const BigInt& b);

    int compare(const BigInt& o) const;
    bool operator==(const BigInt& o) const { return compare(o) == 0; }
    bool operator!=(const BigInt& o) const { return compare(o) != 0; }
    bool operator<(const BigInt& o) const { return compare(o) < 0; }
    bool operator<=(const BigInt& o) const { return compare(o) <= 0; }
    bool operator>(const BigInt& o) const { return compare(o) > 0; }
    bool operator>=(const BigInt& o) const { return compare(o) >= 0; }

    std::string to_string() const;
    /// Exact value when it fits in 64 bits; throws otherwise.
    std::int64_t to_i64() const;

  private:
    int sign_ = 0;
    std::vector<std::uint32_t> mag_; // little-endian, no leading zeros

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    void trim();
};

} // namespace sadic
