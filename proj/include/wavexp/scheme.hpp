#pragma once

#include <stdexcept>
#include <vector>

namespace wavexp {

/// Index of a random expansion coefficient: Scaling(k) for xi_{0k},
/// Detail(j, k) for eta_{jk}.
struct CoefficientIndex {
  enum class Kind { Scaling, Detail };
  Kind kind = Kind::Scaling;
  int j = 0;  // detail level, >= 0; 0 for scaling
  int k = 0;  // shift, sign unrestricted

  static CoefficientIndex scaling(int k) {
    return {Kind::Scaling, 0, k};
  }
  static CoefficientIndex detail(int j, int k) {
    if (j < 0) throw std::invalid_argument("detail level must be >= 0");
    return {Kind::Detail, j, k};
  }
  bool operator==(const CoefficientIndex&) const = default;
};

/// Truncation selecting which basis functions enter the finite expansion:
/// scaling shifts |k| <= k0 and detail shifts |k| <= kj[j] for levels j < n.
struct TruncationScheme {
  int n = 0;                // number of detail levels
  int k0 = 0;               // scaling shift bound
  std::vector<int> kj;      // per-level detail shift bounds, size n

  /// Uniform scheme: all detail bounds equal to k.
  static TruncationScheme uniform(int n, int k0, int k) {
    TruncationScheme s;
    s.n = n;
    s.k0 = k0;
    s.kj.assign(static_cast<size_t>(n), k);
    return s;
  }

  void validate() const {
    if (n < 0 || k0 < 0) throw std::invalid_argument("scheme bounds must be >= 0");
    if (static_cast<int>(kj.size()) != n)
      throw std::invalid_argument("scheme kj list length must equal n");
    for (int k : kj)
      if (k < 0) throw std::invalid_argument("scheme bounds must be >= 0");
  }

  int coefficient_count() const {
    int total = 2 * k0 + 1;
    for (int k : kj) total += 2 * k + 1;
    return total;
  }

  /// Coefficient order used everywhere: scaling shifts first, then detail
  /// levels in increasing j, shifts -kj..kj within each block.
  std::vector<CoefficientIndex> indices() const {
    validate();
    std::vector<CoefficientIndex> out;
    out.reserve(static_cast<size_t>(coefficient_count()));
    for (int k = -k0; k <= k0; ++k) out.push_back(CoefficientIndex::scaling(k));
    for (int j = 0; j < n; ++j)
      for (int k = -kj[static_cast<size_t>(j)]; k <= kj[static_cast<size_t>(j)]; ++k)
        out.push_back(CoefficientIndex::detail(j, k));
    return out;
  }
};

}  // namespace wavexp
