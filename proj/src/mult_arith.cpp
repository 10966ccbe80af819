#include "l1lab/mult_arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <system_error>

#include "l1lab/errors.hpp"

namespace l1lab {

namespace {

constexpr std::array<char, 4> kMagic = {'L', '1', 'C', 'T'};

void check_budget(std::uint64_t bytes, const SieveOptions& options) {
  if (bytes > options.memory_budget) {
    throw ResourceError("sieve needs " + std::to_string(bytes) +
                        " bytes, exceeding the memory budget of " +
                        std::to_string(options.memory_budget) + " bytes");
  }
}

std::vector<std::int64_t> small_primes(std::int64_t limit) {
  std::vector<std::int64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

template <class T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(const char* bytes) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    value |= static_cast<T>(static_cast<unsigned char>(bytes[i])) << (8 * i);
  return value;
}

}  // namespace

std::string_view to_string(CoefficientKind kind) {
  return kind == CoefficientKind::Liouville ? "liouville" : "moebius";
}

CoefficientKind parse_coefficient_kind(std::string_view name) {
  if (name == "liouville" || name == "lambda") return CoefficientKind::Liouville;
  if (name == "moebius" || name == "mobius" || name == "mu") return CoefficientKind::Moebius;
  throw ValidationError("unknown coefficient kind '" + std::string(name) + "'");
}

CoefficientTable::CoefficientTable(CoefficientKind kind, std::vector<std::int8_t> values)
    : kind_(kind), values_(std::move(values)) {
  if (values_.empty()) values_.push_back(0);
  values_[0] = 0;
}

CoefficientTable sieve(CoefficientKind kind, std::int64_t limit, const SieveOptions& options) {
  if (limit < 1) throw DomainError("sieve limit must be at least 1");
  check_budget(static_cast<std::uint64_t>(limit) + 1, options);

  std::vector<std::int8_t> values(static_cast<std::size_t>(limit) + 1, 0);
  const auto primes = small_primes(isqrt(limit));
  const auto segment = static_cast<std::int64_t>(std::max<std::uint64_t>(options.segment_size, 1));

  std::vector<std::int64_t> rest(static_cast<std::size_t>(segment));
  for (std::int64_t lo = 1; lo <= limit; lo += segment) {
    const std::int64_t hi = std::min(limit + 1, lo + segment);
    const auto len = static_cast<std::size_t>(hi - lo);
    for (std::size_t i = 0; i < len; ++i) {
      rest[i] = lo + static_cast<std::int64_t>(i);
      values[static_cast<std::size_t>(lo) + i] = 1;
    }
    for (const std::int64_t p : primes) {
      if (p * p >= hi) break;
      for (std::int64_t m = ((lo + p - 1) / p) * p; m < hi; m += p) {
        const auto i = static_cast<std::size_t>(m - lo);
        int multiplicity = 0;
        do {
          rest[i] /= p;
          ++multiplicity;
        } while (rest[i] % p == 0);
        auto& v = values[static_cast<std::size_t>(m)];
        if (multiplicity & 1) v = static_cast<std::int8_t>(-v);
        if (kind == CoefficientKind::Moebius && multiplicity > 1) v = 0;
      }
    }
    // Whatever is left is a single prime above sqrt(hi).
    for (std::size_t i = 0; i < len; ++i) {
      if (rest[i] > 1) {
        auto& v = values[static_cast<std::size_t>(lo) + i];
        v = static_cast<std::int8_t>(-v);
      }
    }
  }
  return CoefficientTable(kind, std::move(values));
}

PrimeList primes_up_to(std::int64_t limit, const SieveOptions& options) {
  if (limit < 0) throw DomainError("prime limit must be non-negative");
  check_budget(static_cast<std::uint64_t>(limit) / 8 + 1, options);
  return PrimeList{limit, small_primes(limit)};
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t partial_sum(const CoefficientTable& table, std::int64_t x) {
  if (x > table.limit()) {
    throw RangeError("partial sum up to " + std::to_string(x) + " exceeds table limit " +
                     std::to_string(table.limit()));
  }
  std::int64_t sum = 0;
  for (std::int64_t n = 1; n <= x; ++n) sum += table[n];
  return sum;
}

void save_table(const CoefficientTable& table, const std::filesystem::path& path) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint16_t>(out, kCacheVersion);
    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(table.kind()));
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(table.limit()));
    const auto raw = table.raw().subspan(1);
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

CoefficientTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open cache file '" + path.string() + "'");
  std::array<char, 16> header{};
  in.read(header.data(), header.size());
  if (in.gcount() != 16 || !std::equal(kMagic.begin(), kMagic.end(), header.begin()))
    throw Error("'" + path.string() + "' is not a coefficient cache file");
  const auto version = get_le<std::uint16_t>(header.data() + 4);
  if (version != kCacheVersion)
    throw Error("cache file version " + std::to_string(version) + " is not supported");
  const auto kind_raw = get_le<std::uint16_t>(header.data() + 6);
  if (kind_raw != 1 && kind_raw != 2) throw Error("cache file has unknown kind " + std::to_string(kind_raw));
  const auto n = get_le<std::uint64_t>(header.data() + 8);

  std::vector<std::int8_t> values(static_cast<std::size_t>(n) + 1, 0);
  in.read(reinterpret_cast<char*>(values.data() + 1), static_cast<std::streamsize>(n));
  if (static_cast<std::uint64_t>(in.gcount()) != n) throw Error("cache file '" + path.string() + "' is truncated");
  return CoefficientTable(static_cast<CoefficientKind>(kind_raw), std::move(values));
}

std::filesystem::path cache_path(const std::filesystem::path& cache_dir, CoefficientKind kind,
                                 std::int64_t limit) {
  return cache_dir / (std::string(to_string(kind)) + "_" + std::to_string(limit) + ".l1ct");
}

CoefficientTable cached_sieve(CoefficientKind kind, std::int64_t limit,
                              const std::filesystem::path& cache_dir, const SieveOptions& options) {
  if (cache_dir.empty()) return sieve(kind, limit, options);
  const auto path = cache_path(cache_dir, kind, limit);
  if (std::filesystem::exists(path)) {
    try {
      auto table = load_table(path);
      if (table.kind() == kind && table.limit() == limit) return table;
    } catch (const Error&) {
      // unreadable entry: rebuild below
    }
  }
  auto table = sieve(kind, limit, options);
  std::error_code ec;
  std::filesystem::create_directories(cache_dir, ec);
  save_table(table, path);
  return table;
}

}  // namespace l1lab
