#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "fqt/errors.hpp"

namespace fqt {

using Residue = std::uint32_t;

/// Power-basis coordinates of one field element; inline storage for small k.
using CoeffVec = boost::container::small_vector<Residue, 4>;

/// Parameters of F_{p^k}: characteristic, extension degree, and the defining
/// modulus (monic irreducible of degree k over F_p, constant term first).
/// The modulus is the lexicographically least monic irreducible for (p, k),
/// comparing coefficients from the constant term upward, so any two fields
/// with equal (p, k) are identical.
struct FieldData {
    std::uint32_t p;
    std::uint32_t k;
    std::uint64_t q;                 // p^k
    std::vector<Residue> modulus;    // length k+1, modulus[k] == 1
};

/// Handle to an interned FieldData. Fields are process-lifetime cached keyed
/// by (p, k), so handles are trivially copyable and never dangle.
class Field {
  public:
    Field() = default;

    /// Builds (or returns the cached) F_{p^k}. q = p^k is capped at 2^20.
    static Field create(std::uint32_t p, std::uint32_t k);

    static constexpr std::uint64_t kSizeCap = std::uint64_t{1} << 20;

    std::uint32_t p() const { return d_->p; }
    std::uint32_t k() const { return d_->k; }
    std::uint64_t q() const { return d_->q; }
    const std::vector<Residue>& modulus() const { return d_->modulus; }

    /// "p^k" descriptor, e.g. "2^2" for F_4 (plain "p" when k = 1).
    std::string descriptor() const;

    bool valid() const { return d_ != nullptr; }
    const FieldData* data() const { return d_; }

    friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }
    friend bool operator!=(const Field& a, const Field& b) { return a.d_ != b.d_; }

  private:
    explicit Field(const FieldData* d) : d_(d) {}
    const FieldData* d_ = nullptr;
};

bool is_prime_u64(std::uint64_t n);

/// Element of F_{p^k}, stored as k residues mod p in the power basis of the
/// field modulus (constant coordinate first). Immutable value type.
class FieldElem {
  public:
    FieldElem() = default;
    FieldElem(Field field, CoeffVec coeffs);

    static FieldElem zero(Field field);
    static FieldElem one(Field field);

    /// Decodes an integer in [0, q) as base-p digits, least significant digit
    /// giving the constant coordinate. Inverse of to_int().
    static FieldElem from_int(Field field, std::uint64_t value);
    std::uint64_t to_int() const;

    Field field() const { return field_; }
    const CoeffVec& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem inverse() const;
    FieldElem pow(std::uint64_t e) const;

    friend bool operator==(const FieldElem& a, const FieldElem& b);
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    std::string to_string() const { return std::to_string(to_int()); }

  private:
    void check_same_field(const FieldElem& o) const;

    Field field_;
    CoeffVec c_;
};

/// The unique p-th root of a (the Frobenius x -> x^p is bijective on F_q).
FieldElem pth_root(const FieldElem& a);

/// Whether a is a square in F_q. Always true in characteristic 2.
bool is_square(const FieldElem& a);

/// A square root of a if one exists.
std::optional<FieldElem> sqrt_of(const FieldElem& a);

/// Absolute trace Tr_{F_q/F_p}(a) = a + a^p + ... + a^{p^{k-1}}, as a residue
/// mod p.
Residue trace_to_prime(const FieldElem& a);

/// All q elements in canonical order (increasing integer encoding).
std::vector<FieldElem> all_elements(Field field);

}  // namespace fqt
