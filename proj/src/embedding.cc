#include "mtsearch/embedding.h"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <random>
#include <unordered_set>

#include "mtsearch/errors.h"

namespace mtsearch {

ProblemSpec first_targets(std::uint64_t catalog_size, std::uint64_t count) {
  if (count > catalog_size) throw SpecError("more targets than catalog items");
  ProblemSpec spec{catalog_size, std::vector<std::uint64_t>(count)};
  std::iota(spec.targets.begin(), spec.targets.end(), std::uint64_t{1});
  return spec;
}

ProblemSpec random_targets(std::uint64_t catalog_size, std::uint64_t count, std::uint64_t seed) {
  if (count > catalog_size) throw SpecError("more targets than catalog items");
  if (catalog_size > kMaxDenseDimension) {
    throw SizeGateError("random placement limited to catalogs of at most " +
                        std::to_string(kMaxDenseDimension) + " items");
  }
  std::vector<std::uint64_t> items(catalog_size);
  std::iota(items.begin(), items.end(), std::uint64_t{1});
  ProblemSpec spec{catalog_size, {}};
  spec.targets.reserve(count);
  std::mt19937_64 rng(seed);
  std::sample(items.begin(), items.end(), std::back_inserter(spec.targets), count, rng);
  std::sort(spec.targets.begin(), spec.targets.end());
  return spec;
}

void validate(const ProblemSpec& spec) {
  if (spec.catalog_size == 0) {
    throw SpecError("catalog_size must be at least 1");
  }
  if (spec.targets.empty()) {
    throw SpecError("at least one target is required");
  }
  if (spec.targets.size() > spec.catalog_size) {
    throw SpecError("more targets than catalog items");
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(spec.targets.size());
  for (std::uint64_t t : spec.targets) {
    if (t < 1 || t > spec.catalog_size) {
      throw SpecError("target index " + std::to_string(t) + " outside [1, " +
                      std::to_string(spec.catalog_size) + "]");
    }
    if (!seen.insert(t).second) {
      throw SpecError("duplicate target index " + std::to_string(t));
    }
  }
}

__extension__ typedef unsigned __int128 uint128;

int Rational::compare(std::uint64_t a, std::uint64_t b) const {
  // num/den vs a/b  <=>  num*b vs a*den, in 128 bits.
  const uint128 lhs = static_cast<uint128>(num) * b;
  const uint128 rhs = static_cast<uint128>(a) * den;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

bool Rational::operator==(const Rational& other) const {
  return compare(other.num, other.den) == 0;
}

int ceil_log4(std::uint64_t value) {
  int k = 0;
  std::uint64_t power = 1;
  while (power < value) {
    power *= 4;
    ++k;
  }
  return k;
}

Embedding build_embedding(std::uint64_t catalog_size, std::uint64_t num_targets) {
  if (catalog_size == 0) {
    throw SpecError("catalog_size must be at least 1");
  }
  if (num_targets == 0 || num_targets > catalog_size) {
    throw SpecError("number of targets must lie in [1, catalog_size]");
  }
  if (catalog_size > (std::uint64_t{1} << (2 * kMaxCatalogExponent))) {
    throw SpecError("catalog_size exceeds 4^" + std::to_string(kMaxCatalogExponent));
  }

  Embedding e;
  e.catalog_size = catalog_size;
  e.num_targets = num_targets;
  e.n = ceil_log4(catalog_size);
  e.N = std::uint64_t{1} << (2 * e.n);
  e.n_tilde = e.n + 1;
  e.N_tilde = 4 * e.N;
  e.p_tilde = ceil_log4(num_targets);
  e.nu = std::uint64_t{1} << (2 * e.p_tilde);
  e.rho = Rational{num_targets, e.nu};
  e.power_of_four = (num_targets == e.nu);
  return e;
}

Embedding build_embedding(const ProblemSpec& spec) {
  validate(spec);
  return build_embedding(spec.catalog_size, spec.num_targets());
}

SymbolMap::SymbolMap(const Embedding& embedding)
    : n_tilde_(embedding.n_tilde),
      dimension_(embedding.N_tilde),
      offset_(embedding.N),
      catalog_size_(embedding.catalog_size),
      ground_size_(embedding.num_targets) {}

void SymbolMap::check_index(BasisIndex index) const {
  if (index >= dimension_) {
    throw DomainError("basis index " + std::to_string(index) + " outside [0, " +
                      std::to_string(dimension_) + ")");
  }
}

BasisIndex SymbolMap::basis_index(std::uint64_t item) const {
  if (item < 1 || item > dimension_) {
    throw DomainError("item " + std::to_string(item) + " outside [1, " +
                      std::to_string(dimension_) + "]");
  }
  const std::uint64_t N = offset_;
  if (item <= N) return N + (item - 1);
  if (item <= 2 * N) return item - N - 1;
  return item - 1;
}

std::uint64_t SymbolMap::item_at(BasisIndex index) const {
  check_index(index);
  const std::uint64_t N = offset_;
  if (index < N) return index + N + 1;
  if (index < 2 * N) return index - N + 1;
  return index + 1;
}

std::optional<std::uint64_t> SymbolMap::catalog_item_at(BasisIndex index) const {
  check_index(index);
  if (index >= offset_ && index - offset_ < catalog_size_) {
    return index - offset_ + 1;
  }
  return std::nullopt;
}

ItemKind SymbolMap::kind(std::uint64_t item) const {
  if (item < 1 || item > dimension_) {
    throw DomainError("item " + std::to_string(item) + " outside [1, " +
                      std::to_string(dimension_) + "]");
  }
  if (item <= catalog_size_) return ItemKind::kCatalog;
  if (item <= offset_) return ItemKind::kDFiller;
  return ItemKind::kExtension;
}

std::string SymbolMap::symbol(BasisIndex index) const {
  check_index(index);
  const int bits = 2 * n_tilde_;
  std::string out(static_cast<std::size_t>(bits), '0');
  for (int b = 0; b < bits; ++b) {
    if ((index >> (bits - 1 - b)) & 1U) out[static_cast<std::size_t>(b)] = '1';
  }
  return out;
}

std::uint64_t SymbolMap::prefix_value(BasisIndex index, int j) const {
  check_index(index);
  if (j < 1 || j > n_tilde_) {
    throw DomainError("prefix length j=" + std::to_string(j) + " outside [1, " +
                      std::to_string(n_tilde_) + "]");
  }
  return index >> (2 * (n_tilde_ - j));
}

std::string SymbolMap::prefix(BasisIndex index, int j) const {
  const std::uint64_t value = prefix_value(index, j);
  std::string out(static_cast<std::size_t>(2 * j), '0');
  for (int b = 0; b < 2 * j; ++b) {
    if ((value >> (2 * j - 1 - b)) & 1U) out[static_cast<std::size_t>(b)] = '1';
  }
  return out;
}

OracleSet::OracleSet(const Embedding& embedding, const ProblemSpec& spec)
    : embedding_(embedding), symbols_(embedding) {
  validate(spec);
  if (spec.catalog_size != embedding.catalog_size ||
      spec.num_targets() != embedding.num_targets) {
    throw SpecError("embedding was not built from this problem spec");
  }
  target_indices_.reserve(spec.targets.size());
  for (std::uint64_t t : spec.targets) {
    target_indices_.push_back(symbols_.basis_index(t));
  }
  std::sort(target_indices_.begin(), target_indices_.end());
}

void OracleSet::check_j(int j) const {
  if (j < 1) {
    throw DomainError("auxiliary function index j=" + std::to_string(j) + " must be >= 1");
  }
}

bool OracleSet::f(BasisIndex index) const {
  return std::binary_search(target_indices_.begin(), target_indices_.end(), index);
}

bool OracleSet::f_aux(BasisIndex index, int j) const {
  check_j(j);
  if (symbols_.is_ground(index)) return false;
  if (j >= embedding_.n_tilde) return false;  // only index 0 has an all-zero symbol
  return (index >> (2 * (embedding_.n_tilde - j))) == 0;
}

namespace {

void require_dense(const Embedding& e) {
  if (e.N_tilde > kMaxDenseDimension) {
    throw SizeGateError("dimension " + std::to_string(e.N_tilde) +
                        " exceeds dense limit " + std::to_string(kMaxDenseDimension));
  }
}

}  // namespace

std::uint64_t OracleSet::count_marked(int j) const {
  check_j(j);
  require_dense(embedding_);
  std::uint64_t count = 0;
  for (BasisIndex i = 0; i < embedding_.N_tilde; ++i) {
    if (F(i, j)) ++count;
  }
  return count;
}

std::int64_t OracleSet::sign_sum_first() const {
  require_dense(embedding_);
  std::int64_t sum = 0;
  for (BasisIndex i = 0; i < embedding_.N_tilde; ++i) {
    sum += F(i, 1) ? -1 : 1;
  }
  return sum;
}

std::int64_t OracleSet::sign_sum_marked(int j) const {
  check_j(j);
  require_dense(embedding_);
  std::int64_t sum = 0;
  for (BasisIndex i = 0; i < embedding_.N_tilde; ++i) {
    if (F(i, j)) sum += F(i, j + 1) ? -1 : 1;
  }
  return sum;
}

}  // namespace mtsearch
