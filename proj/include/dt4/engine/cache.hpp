#ifndef DT4_ENGINE_CACHE_HPP
#define DT4_ENGINE_CACHE_HPP

#include <gmpxx.h>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>

#include "json.hpp"

#include "dt4/algebra/factored_rational.hpp"
#include "dt4/errors.hpp"
#include "dt4/partitions/solid_partition.hpp"

namespace dt4 {

/// Bumped whenever vertex, sign or weight conventions change; part of every cache key.
inline constexpr const char* kConventionVersion = "dt4-conventions-v1";

inline std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

/// Hash of a chart or orbifold description together with the convention tag.
inline std::string geometry_hash(const std::string& description) {
  return fnv1a_hex(std::string(kConventionVersion) + "|" + description);
}

namespace detail {

inline nlohmann::json rational_to_json(const FactoredRational& x, int sign) {
  nlohmann::json num = nlohmann::json::array();
  for (const auto& t : x.numerator().terms()) {
    auto e = Poly::unpack(t.key);
    num.push_back({std::vector<unsigned>(e.begin(), e.end()), t.coeff.get_str()});
  }
  nlohmann::json den = nlohmann::json::array();
  for (const auto& [f, k] : x.denominator()) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : f.coefficients()) coeffs.push_back(c.get_str());
    den.push_back({coeffs, k});
  }
  return {{"numerator", num}, {"denominator", den}, {"sign", sign}};
}

inline FactoredRational rational_from_json(const nlohmann::json& j) {
  std::vector<Poly::Term> terms;
  for (const auto& t : j.at("numerator")) {
    auto e = t.at(0).get<std::array<unsigned, 4>>();
    mpq_class c(t.at(1).get<std::string>());
    c.canonicalize();
    terms.push_back({Poly::pack(e), c});
  }
  FormMultiset den;
  for (const auto& d : j.at("denominator")) {
    std::array<mpq_class, 4> c;
    for (int i = 0; i < 4; ++i) {
      c[i] = mpq_class(d.at(0).at(i).get<std::string>());
      c[i].canonicalize();
    }
    den[LinearForm(c[0], c[1], c[2], c[3])] += d.at(1).get<int>();
  }
  FactoredRational x(Poly::from_terms(std::move(terms)), den);
  return j.at("sign").get<int>() < 0 ? -x : x;
}

}  // namespace detail

/// Signed per-partition contributions keyed by (geometry hash, partition).
///
/// Always memoizes in memory; with a directory it also loads and appends
/// `contributions.jsonl` there. Appends are idempotent: a key is written once.
class ContributionCache {
 public:
  ContributionCache() = default;
  explicit ContributionCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (dir_.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create cache directory " + dir_.string() + ": " + ec.message());
    load();
  }

  ContributionCache(const ContributionCache&) = delete;
  ContributionCache& operator=(const ContributionCache&) = delete;

  std::filesystem::path file() const { return dir_.empty() ? dir_ : dir_ / "contributions.jsonl"; }

  /// Returns the cached value or computes, stores and returns it.
  /// `compute` yields the unsigned Euler class and the sign separately.
  FactoredRational get_or_compute(const std::string& geometry_description, const SolidPartition& p,
                                  const std::function<std::pair<FactoredRational, int>()>& compute) {
    const std::string geom = geometry_hash(geometry_description);
    const std::string key = geom + "|" + p.to_string();
    {
      std::shared_lock lock(mutex_);
      auto it = entries_.find(key);
      if (it != entries_.end()) {
        ++hits_;
        return it->second;
      }
    }
    ++misses_;
    auto [value, sign] = compute();
    FactoredRational signed_value = sign < 0 ? -value : value;
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.emplace(key, signed_value);
    if (inserted && !dir_.empty()) {
      nlohmann::json rec = detail::rational_to_json(value, sign);
      rec["geometry"] = geom;
      rec["boxes"] = p.to_string();
      std::ofstream out(file(), std::ios::app);
      out << rec.dump() << '\n';
    }
    return it->second;
  }

  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }
  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }

 private:
  std::filesystem::path dir_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, FactoredRational> entries_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};

  void load() {
    std::ifstream in(file());
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        auto j = nlohmann::json::parse(line);
        std::string key = j.at("geometry").get<std::string>() + "|" + j.at("boxes").get<std::string>();
        entries_.emplace(key, detail::rational_from_json(j));
      } catch (const std::exception&) {
        // A torn trailing line from an interrupted run is skipped; it is recomputed on demand.
      }
    }
  }
};

}  // namespace dt4

#endif  // DT4_ENGINE_CACHE_HPP
