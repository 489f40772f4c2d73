#include "twzec/gf.hpp"

#include <algorithm>
#include <string>

namespace twzec {

namespace {

constexpr int kSupported[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27};

using Poly = std::vector<int>;  // coefficients low to high

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a modulo monic b over F_p
Poly poly_mod(Poly a, const Poly& b, int p) {
    trim(a);
    const int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db) {
        const int shift = static_cast<int>(a.size()) - 1 - db;
        const int c = a.back();
        for (int i = 0; i <= db; ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

Poly from_index(int e, int p, int len) {
    Poly out(len, 0);
    for (int i = 0; i < len; ++i, e /= p) out[i] = e % p;
    return out;
}

bool irreducible(const Poly& f, int p) {
    const int r = static_cast<int>(f.size()) - 1;
    for (int d = 1; d <= r / 2; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int e = 0; e < count; ++e) {
            Poly g = from_index(e, p, d);
            g.push_back(1);
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace

bool GaloisField::supported(int q) {
    return std::find(std::begin(kSupported), std::end(kSupported), q) != std::end(kSupported);
}

bool is_power_of(int q, int s) {
    if (s < 2 || q < s) return false;
    long long v = s;
    while (v < q) v *= s;
    return v == q;
}

GaloisField::GaloisField(int q) : q_(q) {
    if (!supported(q)) throw FieldError("unsupported field order " + std::to_string(q));
    p_ = 2;
    while (q % p_ != 0) ++p_;
    r_ = 0;
    for (int v = q; v > 1; v /= p_) ++r_;
    // first monic irreducible of degree r in index order
    int count = 1;
    for (int i = 0; i < r_; ++i) count *= p_;
    for (int e = 0; e < count; ++e) {
        Poly f = from_index(e, p_, r_);
        f.push_back(1);
        if (r_ == 1 || irreducible(f, p_)) {
            modulus_ = f;
            break;
        }
    }
    add_.resize(static_cast<std::size_t>(q) * q);
    mul_.resize(static_cast<std::size_t>(q) * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    auto to_index = [&](const Poly& a) {
        int e = 0;
        for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) e = e * p_ + a[i];
        return e;
    };
    for (int a = 0; a < q; ++a) {
        Poly pa = from_index(a, p_, r_);
        Poly na(r_);
        for (int i = 0; i < r_; ++i) na[i] = (p_ - pa[i]) % p_;
        neg_[a] = to_index(na);
        for (int b = 0; b < q; ++b) {
            Poly pb = from_index(b, p_, r_);
            Poly s(r_);
            for (int i = 0; i < r_; ++i) s[i] = (pa[i] + pb[i]) % p_;
            add_[idx(a, b)] = to_index(s);
            Poly prod(2 * r_, 0);
            for (int i = 0; i < r_; ++i)
                for (int j = 0; j < r_; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
            mul_[idx(a, b)] = to_index(poly_mod(prod, modulus_, p_));
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul(a, b) == 1) inv_[a] = b;
}

int GaloisField::inv(int a) const {
    if (a == 0) throw FieldError("zero has no inverse");
    return inv_[a];
}

int GaloisField::pow(int a, long long e) const {
    int out = 1;
    for (; e > 0; e >>= 1) {
        if (e & 1) out = mul(out, a);
        a = mul(a, a);
    }
    return out;
}

int GaloisField::element_order(int a) const {
    if (a == 0) throw FieldError("zero has no multiplicative order");
    int k = 1;
    for (int x = a; x != 1; x = mul(x, a)) ++k;
    return k;
}

int GaloisField::primitive_element() const {
    for (int a = 1; a < q_; ++a)
        if (element_order(a) == q_ - 1) return a;
    throw FieldError("no primitive element");  // unreachable for a field
}

std::vector<int> GaloisField::subfield(int s) const {
    if (!is_power_of(q_, s)) throw FieldError("GF(" + std::to_string(s) + ") is not a subfield of GF(" +
                                              std::to_string(q_) + ")");
    std::vector<int> out;
    for (int a = 0; a < q_; ++a)
        if (pow(a, s) == a) out.push_back(a);
    return out;
}

int GaloisField::trace(int x, int s) const {
    if (!is_power_of(q_, s)) throw FieldError("trace needs q to be a power of s");
    int t = 0, y = x;
    for (long long v = s; v <= q_; v *= s) {
        t = add(t, y);
        y = pow(y, s);
    }
    return t;
}

}  // namespace twzec
