#pragma once

// Sieved tables of the Liouville and Moebius functions, prime lists, and the
// binary cache format used to persist tables between runs.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace l1lab {

enum class CoefficientKind : std::uint16_t { Liouville = 1, Moebius = 2 };

std::string_view to_string(CoefficientKind kind);
CoefficientKind parse_coefficient_kind(std::string_view name);

struct SieveOptions {
  std::uint64_t memory_budget = std::uint64_t{2} << 30;  // bytes
  std::uint64_t segment_size = std::uint64_t{1} << 20;
};

/// Values a(1..N) of lambda or mu. Immutable once built.
class CoefficientTable {
 public:
  CoefficientTable(CoefficientKind kind, std::vector<std::int8_t> values);

  CoefficientKind kind() const noexcept { return kind_; }
  std::int64_t limit() const noexcept { return static_cast<std::int64_t>(values_.size()) - 1; }

  /// a(n) for 1 <= n <= limit(); a(0) is stored as 0.
  std::int8_t operator[](std::int64_t n) const noexcept { return values_[static_cast<std::size_t>(n)]; }
  double operator()(std::int64_t n) const noexcept { return values_[static_cast<std::size_t>(n)]; }

  /// Raw storage indexed 0..N with slot 0 unused.
  std::span<const std::int8_t> raw() const noexcept { return values_; }

 private:
  CoefficientKind kind_;
  std::vector<std::int8_t> values_;
};

/// Dense real coefficients a(0..N), for sequences that are not sieved
/// (indicators, test sequences).
class CoefficientVector {
 public:
  explicit CoefficientVector(std::vector<double> values) : values_(std::move(values)) {}

  std::int64_t limit() const noexcept { return static_cast<std::int64_t>(values_.size()) - 1; }
  double operator()(std::int64_t n) const noexcept { return values_[static_cast<std::size_t>(n)]; }

 private:
  std::vector<double> values_;
};

struct PrimeList {
  std::int64_t limit = 0;
  std::vector<std::int64_t> primes;
};

CoefficientTable sieve(CoefficientKind kind, std::int64_t limit, const SieveOptions& options = {});

PrimeList primes_up_to(std::int64_t limit, const SieveOptions& options = {});

bool is_prime(std::int64_t n);

/// Sum of a(n) over 1 <= n <= x.
std::int64_t partial_sum(const CoefficientTable& table, std::int64_t x);

// Cache file: 16-byte little-endian header {magic "L1CT", u16 version,
// u16 kind, u64 N} followed by N int8 values a(1..N).
inline constexpr std::uint16_t kCacheVersion = 1;

void save_table(const CoefficientTable& table, const std::filesystem::path& path);
CoefficientTable load_table(const std::filesystem::path& path);

/// Path of the cache entry for (kind, N) inside cache_dir.
std::filesystem::path cache_path(const std::filesystem::path& cache_dir, CoefficientKind kind,
                                 std::int64_t limit);

/// Loads the table from cache_dir if present, otherwise sieves and stores it.
/// An empty cache_dir disables caching.
CoefficientTable cached_sieve(CoefficientKind kind, std::int64_t limit,
                              const std::filesystem::path& cache_dir,
                              const SieveOptions& options = {});

}  // namespace l1lab
