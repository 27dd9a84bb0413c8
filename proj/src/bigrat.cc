#include "sadic/bigrat.hh"

#include <algorithm>
#include <stdexcept>

#include "sadic/error.hh"

namespace sadic {

BigInt::BigInt(std::int64_t v) {
    if (v == 0)
        return;
    sign_ = v < 0 ? -1 : 1;
    std::uint64_t m = v < 0 ? (~static_cast<std::uint64_t>(v) + 1) : static_cast<std::uint64_t>(v);
    while (m) {
        mag_.push_back(static_cast<std::uint32_t>(m & 0xffffffffu));
        m >>= 32;
    }
}

BigInt BigInt::from_string(const std::string& s) {
    BigInt out;
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size())
        throw ParseError("BigInt: empty numeral");
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw ParseError("BigInt: bad digit in numeral");
        out = out * BigInt(10) + BigInt(s[i] - '0');
    }
    if (neg)
        out = -out;
    return out;
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0)
        mag_.pop_back();
    if (mag_.empty())
        sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i])
            return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(std::max(a.size(), b.size()) + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        std::uint64_t s = carry;
        if (i < a.size())
            s += a[i];
        if (i < b.size())
            s += b[i];
        out.push_back(static_cast<std::uint32_t>(s & 0xffffffffu));
        carry = s >> 32;
    }
    if (carry)
        out.push_back(static_cast<std::uint32_t>(carry));
    return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    // requires a >= b
    std::vector<std::uint32_t> out;
    out.reserve(a.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        borrow = 0;
        if (s < 0) {
            s += (std::int64_t{1} << 32);
            borrow = 1;
        }
        out.push_back(static_cast<std::uint32_t>(s));
    }
    while (!out.empty() && out.back() == 0)
        out.pop_back();
    return out;
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    out.sign_ = -out.sign_;
    return out;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (sign_ == 0)
        return o;
    if (o.sign_ == 0)
        return *this;
    BigInt out;
    if (sign_ == o.sign_) {
        out.sign_ = sign_;
        out.mag_ = add_mag(mag_, o.mag_);
        return out;
    }
    int c = cmp_mag(mag_, o.mag_);
    if (c == 0)
        return BigInt();
    if (c > 0) {
        out.sign_ = sign_;
        out.mag_ = sub_mag(mag_, o.mag_);
    } else {
        out.sign_ = o.sign_;
        out.mag_ = sub_mag(o.mag_, mag_);
    }
    return out;
}

BigInt BigInt::operator-(const BigInt& o) const {
    return *this + (-o);
}

BigInt BigInt::operator*(const BigInt& o) const {
    if (sign_ == 0 || o.sign_ == 0)
        return BigInt();
    BigInt out;
    out.sign_ = sign_ * o.sign_;
    out.mag_.assign(mag_.size() + o.mag_.size(), 0);
    for (std::size_t i = 0; i < mag_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < o.mag_.size(); ++j) {
            std::uint64_t cur = out.mag_[i + j] +
                                static_cast<std::uint64_t>(mag_[i]) * o.mag_[j] + carry;
            out.mag_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        std::size_t k = i + o.mag_.size();
        while (carry) {
            std::uint64_t cur = out.mag_[k] + carry;
            out.mag_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    out.trim();
    return out;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0)
        throw DomainError("BigInt: division by zero");
    if (cmp_mag(a.mag_, b.mag_) < 0) {
        q = BigInt();
        r = a;
        return;
    }
    // binary long division on magnitudes
    std::size_t bits = a.mag_.size() * 32;
    std::vector<std::uint32_t> quo(a.mag_.size(), 0), rem;
    for (std::size_t i = bits; i-- > 0;) {
        // rem = rem * 2 + bit_i(a)
        std::uint32_t carry = (a.mag_[i / 32] >> (i % 32)) & 1u;
        for (std::size_t j = 0; j < rem.size(); ++j) {
            std::uint32_t nxt = rem[j] >> 31;
            rem[j] = (rem[j] << 1) | carry;
            carry = nxt;
        }
        if (carry)
            rem.push_back(carry);
        while (!rem.empty() && rem.back() == 0)
            rem.pop_back();
        if (cmp_mag(rem, b.mag_) >= 0) {
            rem = sub_mag(rem, b.mag_);
            quo[i / 32] |= (1u << (i % 32));
        }
    }
    q = BigInt();
    q.mag_ = std::move(quo);
    q.sign_ = 1;
    q.trim();
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r = BigInt();
    r.mag_ = std::move(rem);
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt BigInt::floordiv(const BigInt& a, const BigInt& b) {
    if (b.sign_ <= 0)
        throw DomainError("BigInt: floordiv needs a positive divisor");
    BigInt q, r;
    divmod(a, b, q, r);
    if (r.sign_ < 0)
        q = q - BigInt(1);
    return q;
}

int BigInt::compare(const BigInt& o) const {
    if (sign_ != o.sign_)
        return sign_ < o.sign_ ? -1 : 1;
    int c = cmp_mag(mag_, o.mag_);
    return sign_ >= 0 ? c : -c;
}

std::string BigInt::to_string() const {
    if (sign_ == 0)
        return "0";
    BigInt cur = *this;
    cur.sign_ = 1;
    std::string digits;
    BigInt ten(10), q, r;
    while (!cur.is_zero()) {
        divmod(cur, ten, q, r);
        digits += static_cast<char>('0' + (r.is_zero() ? 0 : r.mag_[0]));
        cur = q;
    }
    if (sign_ < 0)
        digits += '-';
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::int64_t BigInt::to_i64() const {
    if (mag_.size() > 2)
        throw DomainError("BigInt: value does not fit in 64 bits");
    std::uint64_t m = 0;
    for (std::size_t i = mag_.size(); i-- > 0;)
        m = (m << 32) | mag_[i];
    if (sign_ >= 0) {
        if (m > static_cast<std::uint64_t>(INT64_MAX))
            throw DomainError("BigInt: value does not fit in 64 bits");
        return static_cast<std::int64_t>(m);
    }
    if (m > static_cast<std::uint64_t>(INT64_MAX) + 1)
        throw DomainError("BigInt: value does not fit in 64 bits");
    return -static_cast<std::int64_t>(m - 1) - 1;
}

} // namespace sadic
