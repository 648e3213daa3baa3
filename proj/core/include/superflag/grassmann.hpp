#pragma once

#include "superflag/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace superflag {

enum class Parity : int { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) % 2);
}

/// Element of the exterior algebra on `generators()` anticommuting generators
/// over the rationals. Terms are kept canonical: strictly increasing index
/// sets encoded as bitmasks, no zero coefficients, sorted by mask. Equality is
/// therefore plain term-list comparison.
class GrassmannElement {
 public:
  struct Term {
    std::uint64_t mask;  // bit i set <=> generator i+1 present
    Rational coeff;
  };

  explicit GrassmannElement(int generators = 0);
  static GrassmannElement constant(int generators, const Rational& c);
  /// The generator ξ_index, 1-based.
  static GrassmannElement generator(int generators, int index);
  static GrassmannElement monomial(int generators, std::uint64_t mask,
                                   const Rational& c);

  int generators() const { return generators_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of the empty monomial (the grade-0 part as a scalar).
  Rational body() const;

  /// All stored terms have |mask| ≡ p (mod 2); true for 0.
  bool has_pure_parity(Parity p) const;

  GrassmannElement operator+(const GrassmannElement& other) const;
  GrassmannElement operator-(const GrassmannElement& other) const;
  GrassmannElement operator-() const;
  /// Wedge product; repeated generators vanish, the shuffle sign applies.
  GrassmannElement operator*(const GrassmannElement& other) const;
  GrassmannElement operator*(const Rational& c) const;
  GrassmannElement& operator+=(const GrassmannElement& other);

  bool operator==(const GrassmannElement& other) const;
  bool operator!=(const GrassmannElement& other) const { return !(*this == other); }

  /// Left derivative with respect to ξ_index (1-based): kills terms without
  /// the generator, removes it with the sign of moving it to the front.
  GrassmannElement odd_derivative(int index) const;

  /// Sum of terms of exterior degree exactly p; p = 0 is the reduction.
  GrassmannElement grade_project(int p) const;

  /// Human form, e.g. "3/2 + 2*g1^g3".
  std::string to_string() const;

  /// Machine form: ';'-joined "i1,i2:num/den" triples ("" indices for the
  /// constant term), "0" for zero. Round-trips through parse_grassmann.
  std::string to_record() const;

  /// Appends the raw term products of a*b to acc (callers normalize once via
  /// from_terms; this keeps long dot products allocation-light).
  static void accumulate_product(std::vector<Term>& acc, const GrassmannElement& a,
                                 const GrassmannElement& b);
  static GrassmannElement from_terms(int generators, std::vector<Term> terms);

 private:
  int generators_;
  std::vector<Term> terms_;  // sorted by mask, no zero coefficients

  void normalize();
  friend GrassmannElement parse_grassmann(int generators, const std::string&);
};

GrassmannElement parse_grassmann(int generators, const std::string& record);

/// Sign of ξ_A · ξ_B as +1/-1 (masks disjoint); counts transpositions.
int shuffle_sign(std::uint64_t a, std::uint64_t b);

}  // namespace superflag
