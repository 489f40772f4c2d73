#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace twzec {

struct FieldError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// GF(q) in a polynomial basis: element e encodes sum c_i x^i with e = sum c_i p^i.
/// Supported orders: 2,3,4,5,7,8,9,11,13,16,25,27.
class GaloisField {
public:
    explicit GaloisField(int q);

    int order() const { return q_; }
    int characteristic() const { return p_; }
    int degree() const { return r_; }
    const std::vector<int>& modulus() const { return modulus_; }  // low to high, monic, length r+1

    int add(int a, int b) const { return add_[idx(a, b)]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[idx(a, b)]; }
    int inv(int a) const;
    int div(int a, int b) const { return mul(a, inv(b)); }
    int pow(int a, long long e) const;

    /// Multiplicative order of a nonzero element.
    int element_order(int a) const;
    int primitive_element() const;

    /// Elements of the subfield of order s (requires q = s^d).
    std::vector<int> subfield(int s) const;
    /// Relative trace to the subfield of order s: x + x^s + ... + x^(s^(d-1)).
    int trace(int x, int s) const;

    static bool supported(int q);

private:
    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * q_ + b; }
    int q_, p_, r_;
    std::vector<int> modulus_;
    std::vector<int> add_, mul_, neg_, inv_;
};

/// True when q = s^d for some d >= 1.
bool is_power_of(int q, int s);

}  // namespace twzec
