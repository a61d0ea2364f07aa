#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace crsa {

/// Three-valued answer for semi-decidable questions. `No` is only ever
/// produced together with a completeness certificate (an exhaustive,
/// budget-unexhausted search); `Unknown` is the honest fallback.
enum class TriBool { Yes, No, Unknown };

inline TriBool tri_and(TriBool a, TriBool b) {
  if (a == TriBool::No || b == TriBool::No)
    return TriBool::No;
  if (a == TriBool::Unknown || b == TriBool::Unknown)
    return TriBool::Unknown;
  return TriBool::Yes;
}

inline const char *to_string(TriBool v) {
  switch (v) {
  case TriBool::Yes:
    return "yes";
  case TriBool::No:
    return "no";
  default:
    return "unknown";
  }
}

/// Reduction depth index: a finite stage, the finite-closure limit, a
/// stage beyond it, or the final limit. OmegaPlus(0) is identified with
/// Omega at construction so each index has one representation.
class DepthIndex {
public:
  enum class Kind { Fin, Omega, OmegaPlus, OmegaOmega };

  static DepthIndex fin(unsigned n) { return DepthIndex(Kind::Fin, n); }
  static DepthIndex omega() { return DepthIndex(Kind::Omega, 0); }
  static DepthIndex omega_plus(unsigned n) {
    return n == 0 ? omega() : DepthIndex(Kind::OmegaPlus, n);
  }
  static DepthIndex omega_omega() { return DepthIndex(Kind::OmegaOmega, 0); }

  Kind kind() const { return kind_; }
  unsigned offset() const { return n_; }

  bool operator==(const DepthIndex &o) const {
    return kind_ == o.kind_ && n_ == o.n_;
  }
  bool operator!=(const DepthIndex &o) const { return !(*this == o); }
  bool operator<(const DepthIndex &o) const {
    if (kind_ != o.kind_)
      return rank() < o.rank();
    return n_ < o.n_;
  }
  bool operator<=(const DepthIndex &o) const { return *this < o || *this == o; }

  /// Add a natural number on the right: finite indices shift, the limits
  /// absorb into their offset family (Omega + n = OmegaPlus(n)).
  DepthIndex plus(unsigned n) const {
    switch (kind_) {
    case Kind::Fin:
      return fin(n_ + n);
    case Kind::Omega:
      return omega_plus(n);
    case Kind::OmegaPlus:
      return omega_plus(n_ + n);
    default:
      return omega_omega();
    }
  }

  /// Truncated subtraction of a natural number: finite parts shrink and
  /// floor out (at 0 resp. at the Omega base); limits are unaffected.
  DepthIndex monus(unsigned n) const {
    switch (kind_) {
    case Kind::Fin:
      return fin(n_ > n ? n_ - n : 0);
    case Kind::OmegaPlus:
      return omega_plus(n_ > n ? n_ - n : 0);
    default:
      return *this;
    }
  }

  /// Shift a natural number past the first limit: n under omega is ω+n.
  static DepthIndex omega_shifted(unsigned n) { return omega_plus(n); }

  std::string str() const {
    switch (kind_) {
    case Kind::Fin:
      return std::to_string(n_);
    case Kind::Omega:
      return "w";
    case Kind::OmegaPlus:
      return "w+" + std::to_string(n_);
    default:
      return "w+w";
    }
  }

  /// Parses the surface forms `0..n`, `w`, `w+n`, `w+w`.
  static DepthIndex parse(const std::string &s);

private:
  DepthIndex(Kind k, unsigned n) : kind_(k), n_(n) {}
  int rank() const {
    switch (kind_) {
    case Kind::Fin:
      return 0;
    case Kind::Omega:
      return 1;
    case Kind::OmegaPlus:
      return 2;
    default:
      return 3;
    }
  }

  Kind kind_;
  unsigned n_;
};

inline DepthIndex DepthIndex::parse(const std::string &s) {
  if (s == "w")
    return omega();
  if (s == "w+w")
    return omega_omega();
  auto digits = [](const std::string &d) {
    if (d.empty())
      throw std::invalid_argument("empty depth");
    for (char c : d)
      if (c < '0' || c > '9')
        throw std::invalid_argument("bad depth: " + d);
    return static_cast<unsigned>(std::stoul(d));
  };
  if (s.rfind("w+", 0) == 0)
    return omega_plus(digits(s.substr(2)));
  return fin(digits(s));
}

/// Resource bounds for engine queries. `max_steps` counts admissions to a
/// reachability frontier (the origin is free); `max_term_size` prunes
/// oversized reducts; `max_strata` caps each closure phase's layer count;
/// `max_depth` caps how many expansion generations away from the seed
/// terms the explored universe may grow.
struct Budget {
  std::size_t max_steps = 1000;
  std::size_t max_term_size = 64;
  std::size_t max_strata = 8;
  std::size_t max_depth = 32;
};

} // namespace crsa
