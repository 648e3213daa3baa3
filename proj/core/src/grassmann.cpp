#include "superflag/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace superflag {

namespace {
constexpr int kMaxGenerators = 63;
}

GrassmannElement::GrassmannElement(int generators) : generators_(generators) {
  if (generators < 0 || generators > kMaxGenerators)
    throw std::invalid_argument("GrassmannElement: generator count out of range");
}

GrassmannElement GrassmannElement::constant(int generators, const Rational& c) {
  GrassmannElement e(generators);
  if (!superflag::is_zero(c)) e.terms_.push_back({0, c});
  return e;
}

GrassmannElement GrassmannElement::generator(int generators, int index) {
  if (index < 1 || index > generators)
    throw std::invalid_argument("GrassmannElement::generator: index out of range");
  GrassmannElement e(generators);
  e.terms_.push_back({std::uint64_t{1} << (index - 1), Rational(1)});
  return e;
}

GrassmannElement GrassmannElement::monomial(int generators, std::uint64_t mask,
                                            const Rational& c) {
  if (generators < 64 && (mask >> generators) != 0)
    throw std::invalid_argument("GrassmannElement::monomial: mask out of range");
  GrassmannElement e(generators);
  if (!superflag::is_zero(c)) e.terms_.push_back({mask, c});
  return e;
}

Rational GrassmannElement::body() const {
  if (!terms_.empty() && terms_.front().mask == 0) return terms_.front().coeff;
  return Rational(0);
}

bool GrassmannElement::has_pure_parity(Parity p) const {
  for (const Term& t : terms_)
    if ((std::popcount(t.mask) % 2) != static_cast<int>(p)) return false;
  return true;
}

void GrassmannElement::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.mask < b.mask; });
  size_t kept = 0;
  for (size_t i = 0; i < terms_.size();) {
    std::uint64_t mask = terms_[i].mask;
    Rational sum = std::move(terms_[i].coeff);
    for (++i; i < terms_.size() && terms_[i].mask == mask; ++i)
      sum += terms_[i].coeff;
    if (!superflag::is_zero(sum)) {
      terms_[kept].mask = mask;
      terms_[kept].coeff = std::move(sum);
      ++kept;
    }
  }
  terms_.resize(kept);
}

GrassmannElement GrassmannElement::operator+(const GrassmannElement& other) const {
  if (generators_ != other.generators_)
    throw std::invalid_argument("Grassmann add: mismatched generator counts");
  GrassmannElement r(generators_);
  // Merge of two sorted term lists.
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    if (j == other.terms_.size() ||
        (i < terms_.size() && terms_[i].mask < other.terms_[j].mask)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || other.terms_[j].mask < terms_[i].mask) {
      r.terms_.push_back(other.terms_[j++]);
    } else {
      Rational c = terms_[i].coeff + other.terms_[j].coeff;
      if (!superflag::is_zero(c)) r.terms_.push_back({terms_[i].mask, std::move(c)});
      ++i, ++j;
    }
  }
  return r;
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& other) {
  *this = *this + other;
  return *this;
}

GrassmannElement GrassmannElement::operator-() const {
  GrassmannElement r(generators_);
  r.terms_.reserve(terms_.size());
  for (const Term& t : terms_) r.terms_.push_back({t.mask, -t.coeff});
  return r;
}

GrassmannElement GrassmannElement::operator-(const GrassmannElement& other) const {
  return *this + (-other);
}

int shuffle_sign(std::uint64_t a, std::uint64_t b) {
  // Transpositions needed to interleave sorted B into sorted A from the right:
  // for each b-bit, the a-bits above it.
  int inv = 0;
  std::uint64_t bb = b;
  while (bb) {
    int bit = std::countr_zero(bb);
    bb &= bb - 1;
    std::uint64_t above = (bit == 63) ? 0 : (a >> (bit + 1));
    inv += std::popcount(above);
  }
  return (inv % 2 == 0) ? 1 : -1;
}

GrassmannElement GrassmannElement::operator*(const GrassmannElement& other) const {
  if (generators_ != other.generators_)
    throw std::invalid_argument("Grassmann mul: mismatched generator counts");
  GrassmannElement r(generators_);
  if (terms_.empty() || other.terms_.empty()) return r;
  std::vector<Term> acc;
  acc.reserve(terms_.size() * other.terms_.size());
  for (const Term& ta : terms_)
    for (const Term& tb : other.terms_) {
      if (ta.mask & tb.mask) continue;  // nilpotence
      Rational c = ta.coeff * tb.coeff;
      if (shuffle_sign(ta.mask, tb.mask) < 0) c = -c;
      acc.push_back({ta.mask | tb.mask, std::move(c)});
    }
  r.terms_ = std::move(acc);
  r.normalize();
  return r;
}

void GrassmannElement::accumulate_product(std::vector<Term>& acc,
                                          const GrassmannElement& a,
                                          const GrassmannElement& b) {
  if (a.generators_ != b.generators_)
    throw std::invalid_argument("Grassmann mul: mismatched generator counts");
  for (const Term& ta : a.terms_)
    for (const Term& tb : b.terms_) {
      if (ta.mask & tb.mask) continue;
      acc.push_back({ta.mask | tb.mask, Rational()});
      Rational& dst = acc.back().coeff;
      mpq_mul(dst.get_mpq_t(), ta.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
      if (shuffle_sign(ta.mask, tb.mask) < 0)
        mpq_neg(dst.get_mpq_t(), dst.get_mpq_t());
    }
}

GrassmannElement GrassmannElement::from_terms(int generators,
                                              std::vector<Term> terms) {
  GrassmannElement e(generators);
  e.terms_ = std::move(terms);
  e.normalize();
  return e;
}

GrassmannElement GrassmannElement::operator*(const Rational& c) const {
  GrassmannElement r(generators_);
  if (superflag::is_zero(c)) return r;
  r.terms_.reserve(terms_.size());
  for (const Term& t : terms_) r.terms_.push_back({t.mask, t.coeff * c});
  return r;
}

bool GrassmannElement::operator==(const GrassmannElement& other) const {
  if (generators_ != other.generators_ || terms_.size() != other.terms_.size())
    return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mask != other.terms_[i].mask || terms_[i].coeff != other.terms_[i].coeff)
      return false;
  return true;
}

GrassmannElement GrassmannElement::odd_derivative(int index) const {
  if (index < 1 || index > generators_)
    throw std::invalid_argument("odd_derivative: index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (index - 1);
  GrassmannElement r(generators_);
  for (const Term& t : terms_) {
    if (!(t.mask & bit)) continue;
    // Sign of moving ξ_index to the front: one transposition per smaller index.
    int below = std::popcount(t.mask & (bit - 1));
    Rational c = (below % 2 == 0) ? t.coeff : -t.coeff;
    r.terms_.push_back({t.mask & ~bit, std::move(c)});
  }
  r.normalize();
  return r;
}

GrassmannElement GrassmannElement::grade_project(int p) const {
  if (p < 0) throw std::invalid_argument("grade_project: negative degree");
  GrassmannElement r(generators_);
  for (const Term& t : terms_)
    if (std::popcount(t.mask) == p) r.terms_.push_back(t);
  return r;
}

namespace {
std::string mask_indices(std::uint64_t mask, const char* sep) {
  std::string s;
  bool first = true;
  while (mask) {
    int bit = std::countr_zero(mask);
    mask &= mask - 1;
    if (!first) s += sep;
    s += std::to_string(bit + 1);
    first = false;
  }
  return s;
}
}  // namespace

std::string GrassmannElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (i) s += " + ";
    const Term& t = terms_[i];
    if (t.mask == 0) {
      s += t.coeff.get_str();
    } else {
      if (t.coeff != 1) s += t.coeff.get_str() + "*";
      std::uint64_t m = t.mask;
      bool first = true;
      while (m) {
        int bit = std::countr_zero(m);
        m &= m - 1;
        if (!first) s += "^";
        s += "g" + std::to_string(bit + 1);
        first = false;
      }
    }
  }
  return s;
}

std::string GrassmannElement::to_record() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (i) s += ";";
    const Term& t = terms_[i];
    s += mask_indices(t.mask, ",");
    s += ":";
    s += t.coeff.get_num().get_str() + "/" + t.coeff.get_den().get_str();
  }
  return s;
}

GrassmannElement parse_grassmann(int generators, const std::string& record) {
  GrassmannElement e(generators);
  if (record == "0") return e;
  std::stringstream ss(record);
  std::string part;
  while (std::getline(ss, part, ';')) {
    auto colon = part.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("parse_grassmann: missing coefficient in '" + part + "'");
    std::uint64_t mask = 0;
    std::string idx = part.substr(0, colon);
    if (!idx.empty()) {
      std::stringstream is(idx);
      std::string tok;
      while (std::getline(is, tok, ',')) {
        int i = std::stoi(tok);
        if (i < 1 || i > generators)
          throw std::invalid_argument("parse_grassmann: index out of range");
        mask |= std::uint64_t{1} << (i - 1);
      }
    }
    e.terms_.push_back({mask, parse_rational(part.substr(colon + 1))});
  }
  e.normalize();
  return e;
}

}  // namespace superflag
