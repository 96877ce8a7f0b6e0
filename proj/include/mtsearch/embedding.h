#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mtsearch {

using BasisIndex = std::uint64_t;

// Largest catalog accepted: 4^30 items, so the enlarged database (4^31 basis
// states) still fits in a 64-bit index.
inline constexpr int kMaxCatalogExponent = 30;

// Largest basis dimension for anything that touches every basis index
// (dense state vectors, brute-force counts).
inline constexpr std::uint64_t kMaxDenseDimension = std::uint64_t{1} << 22;

// The user's database: catalog size and the 1-based indices of the targets.
struct ProblemSpec {
  std::uint64_t catalog_size = 0;
  std::vector<std::uint64_t> targets;

  std::uint64_t num_targets() const { return targets.size(); }
};

// Targets 1 ... count.
ProblemSpec first_targets(std::uint64_t catalog_size, std::uint64_t count);
// `count` distinct targets drawn uniformly from [1, catalog_size] with a
// seeded mt19937_64, returned ascending.
ProblemSpec random_targets(std::uint64_t catalog_size, std::uint64_t count, std::uint64_t seed);

// Throws SpecError unless 1 <= |targets| <= catalog_size, every target lies in
// [1, catalog_size] and no target repeats.
void validate(const ProblemSpec& spec);

// Exact non-negative fraction. Used for the filling fraction nu0 / nu.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  // Sign of (num/den - a/b), computed without rounding.
  int compare(std::uint64_t a, std::uint64_t b) const;
  bool operator==(const Rational& other) const;
};

// Derived sizes of the two nested enlargements of the catalog.
//
// The catalog of `catalog_size` items is padded to N = 4^n items (the smallest
// power of four >= catalog_size) and then to N_tilde = 4N = 4^n_tilde basis
// states. The target count nu0 is likewise enclosed by nu = 4^p_tilde.
struct Embedding {
  std::uint64_t catalog_size = 0;
  std::uint64_t num_targets = 0;  // nu0
  int n = 0;
  std::uint64_t N = 1;
  int n_tilde = 1;
  std::uint64_t N_tilde = 4;
  int p_tilde = 0;
  std::uint64_t nu = 1;
  Rational rho;
  bool power_of_four = true;

  // Number of symbol bits, 2 * n_tilde.
  int symbol_bits() const { return 2 * n_tilde; }
  // Iterations that take the uniform state onto the {F = 1} set of size nu.
  int main_phase_length() const { return n_tilde - p_tilde; }
};

// Smallest k with 4^k >= value. value must be >= 1.
int ceil_log4(std::uint64_t value);

Embedding build_embedding(std::uint64_t catalog_size, std::uint64_t num_targets);
Embedding build_embedding(const ProblemSpec& spec);

enum class ItemKind {
  kCatalog,    // one of the user's items
  kDFiller,    // non-target filler that pads the catalog up to N
  kExtension,  // one of the 3N items added by the fourfold enlargement
};

// Bijection between items w_1 ... w_{N_tilde} of the enlarged database and
// basis indices 0 ... N_tilde - 1. The symbol of an item is the 2*n_tilde-bit
// binary expansion of its basis index, most significant bit first.
//
// Items of D (catalog plus D-fillers, w_1 ... w_N) occupy [N, 2N), so their
// leading two symbol bits are never 00. Extension items w_{N+1} ... w_{2N}
// fill [0, N) and w_{2N+1} ... w_{4N} fill [2N, 4N). The ground-state set is
// {0, ..., nu0 - 1}.
class SymbolMap {
 public:
  explicit SymbolMap(const Embedding& embedding);

  // 1-based item of D-tilde to basis index.
  BasisIndex basis_index(std::uint64_t item) const;
  // Inverse of basis_index.
  std::uint64_t item_at(BasisIndex index) const;
  // 1-based catalog item at index, or nullopt for filler/extension indices.
  std::optional<std::uint64_t> catalog_item_at(BasisIndex index) const;
  ItemKind kind(std::uint64_t item) const;

  bool is_ground(BasisIndex index) const { return index < ground_size_; }
  std::uint64_t ground_size() const { return ground_size_; }
  BasisIndex catalog_offset() const { return offset_; }

  // Full symbol S(w) as a string of '0'/'1'.
  std::string symbol(BasisIndex index) const;
  // Leading 2j bits S_{2j}; requires 1 <= j <= n_tilde and index < N_tilde.
  std::string prefix(BasisIndex index, int j) const;
  // Numeric value of the leading 2j bits.
  std::uint64_t prefix_value(BasisIndex index, int j) const;

  std::uint64_t dimension() const { return dimension_; }

 private:
  void check_index(BasisIndex index) const;

  int n_tilde_;
  std::uint64_t dimension_;
  std::uint64_t offset_;
  std::uint64_t catalog_size_;
  std::uint64_t ground_size_;
};

// Evaluators for the oracle f, the auxiliary functions f_j and the auxiliary
// oracles F_j = f OR f_j, over basis indices.
//
// All evaluators are pure. The call counter records quantum oracle queries:
// it is advanced by record_query(), which the phase-oracle operator calls once
// per application. f_j never touches it.
class OracleSet {
 public:
  OracleSet(const Embedding& embedding, const ProblemSpec& spec);

  OracleSet(const OracleSet&) = delete;
  OracleSet& operator=(const OracleSet&) = delete;

  const Embedding& embedding() const { return embedding_; }
  const SymbolMap& symbols() const { return symbols_; }
  // Basis indices of the targets, ascending.
  const std::vector<BasisIndex>& target_indices() const { return target_indices_; }

  bool f(BasisIndex index) const;
  // f_j: leading 2j bits all zero and index outside the ground set. Defined
  // for every j >= 1; for j >= n_tilde only index 0 has an all-zero prefix,
  // and it is a ground item, so f_j vanishes there.
  bool f_aux(BasisIndex index, int j) const;
  bool F(BasisIndex index, int j) const { return f(index) || f_aux(index, j); }

  // Brute-force |{index : F_j(index) = 1}|. The three brute-force counts throw
  // SizeGateError above kMaxDenseDimension.
  std::uint64_t count_marked(int j) const;
  // Brute-force sum over all indices of (-1)^{F_1}.
  std::int64_t sign_sum_first() const;
  // Brute-force sum over {F_j = 1} of (-1)^{F_{j+1}}.
  std::int64_t sign_sum_marked(int j) const;

  void record_query() const { calls_.fetch_add(1, std::memory_order_relaxed); }
  std::uint64_t call_count() const { return calls_.load(std::memory_order_relaxed); }
  void reset_call_count() const { calls_.store(0, std::memory_order_relaxed); }

 private:
  void check_j(int j) const;

  Embedding embedding_;
  SymbolMap symbols_;
  std::vector<BasisIndex> target_indices_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

}  // namespace mtsearch
