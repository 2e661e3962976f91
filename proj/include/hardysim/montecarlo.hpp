// Copyright 2026 The hardysim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file montecarlo.hpp
 * @brief Seeded detection-event sampling and chi-square goodness of fit.
 *
 * Random numbers come from xoshiro256** (Blackman & Vigna) whose state is
 * filled from the 64-bit seed by SplitMix64. Uniform doubles use the top 53
 * bits: (x >> 11) * 2^-53. Stream k of a seed is the base generator advanced
 * by k calls to the standard xoshiro256 jump (2^128 steps each), so streams
 * never overlap. sample() always uses stream 0. Any implementation that
 * follows these three rules reproduces the same counts.
 */

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hardysim/engine.hpp"
#include "json.hpp"

namespace hardysim {

inline constexpr std::uint64_t kDefaultSeed = 0x4841524459ULL;

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256StarStar(std::uint64_t seed, std::uint64_t stream = 0) {
    SplitMix64 init(seed);
    for (auto& word : s_) word = init.next();
    for (std::uint64_t k = 0; k < stream; ++k) jump();
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  void jump() {
    static constexpr std::array<std::uint64_t, 4> kJump = {
        0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL, 0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
    std::array<std::uint64_t, 4> acc{};
    for (const std::uint64_t word : kJump) {
      for (int b = 0; b < 64; ++b) {
        if (word & (std::uint64_t{1} << b)) {
          for (std::size_t k = 0; k < 4; ++k) acc[k] ^= s_[k];
        }
        (*this)();
      }
    }
    s_ = acc;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> s_{};
};

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 0;
  bool pass_95 = true;
  bool pass_99 = true;
};

/// 95% and 99% upper critical values of the chi-square distribution, df 1..8.
inline constexpr std::array<double, 8> kChiSquare95 = {3.841, 5.991, 7.815, 9.488,
                                                      11.070, 12.592, 14.067, 15.507};
inline constexpr std::array<double, 8> kChiSquare99 = {6.635, 9.210, 11.345, 13.277,
                                                      15.086, 16.812, 18.475, 20.090};

using Counts = std::map<ModePair, std::uint64_t>;

/// Pearson statistic of `counts` against the table's rows (normalized by the
/// table total). Every row must have positive probability.
inline ChiSquareResult chi_square_test(const Counts& counts, const OutcomeTable& t) {
  if (t.rows.empty()) throw InvalidTable("chi-square test needs a nonempty table");
  const int df = static_cast<int>(t.rows.size()) - 1;
  if (df > static_cast<int>(kChiSquare95.size())) {
    throw DegreesOfFreedomOutOfRange("df = " + std::to_string(df) + " exceeds 8");
  }
  std::uint64_t n = 0;
  for (const auto& [key, c] : counts) {
    if (t.rows.count(key) == 0 && c > 0) {
      throw InvalidTable("count recorded for outcome " + key.to_string() + " outside the table");
    }
    n += c;
  }
  const double total = rational_to_double(t.total());
  ChiSquareResult out;
  out.df = df;
  for (const auto& [key, p] : t.rows) {
    if (p <= 0) throw InvalidTable("row " + key.to_string() + " has zero expected count");
    const double expected = static_cast<double>(n) * rational_to_double(p) / total;
    auto it = counts.find(key);
    const double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    out.statistic += (observed - expected) * (observed - expected) / expected;
  }
  if (df > 0) {
    out.pass_95 = out.statistic <= kChiSquare95[df - 1];
    out.pass_99 = out.statistic <= kChiSquare99[df - 1];
  }
  return out;
}

struct RunRecord {
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  Counts counts;
  std::map<ModePair, double> expected;
  double chi_square = 0.0;
  int df = 0;
  bool pass_95 = true;
  bool pass_99 = true;

  nlohmann::json to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [key, c] : counts) {
      rows.push_back({{"plus", key.plus}, {"minus", key.minus}, {"count", c},
                      {"expected", expected.at(key)}});
    }
    nlohmann::json out;
    out["seed"] = seed;
    out["n"] = n;
    out["counts"] = rows;
    out["chi_square"] = chi_square;
    out["df"] = df;
    out["pass_95"] = pass_95;
    out["pass_99"] = pass_99;
    return out;
  }

  std::string to_csv() const {
    std::ostringstream out;
    out << "outcome_plus,outcome_minus,count,expected\n";
    for (const auto& [key, c] : counts) {
      out << key.plus << "+," << key.minus << "-," << c << "," << expected.at(key) << "\n";
    }
    out << "# n=" << n << ",seed=" << seed << ",chi_square=" << chi_square << ",df=" << df
        << ",pass_95=" << (pass_95 ? "true" : "false") << ",pass_99=" << (pass_99 ? "true" : "false")
        << "\n";
    return out.str();
  }

  std::string to_table() const {
    std::ostringstream out;
    out << "seed " << seed << "\nn " << n << "\nplus\tminus\tcount\texpected\n";
    for (const auto& [key, c] : counts) {
      out << key.plus << "+\t" << key.minus << "-\t" << c << "\t" << expected.at(key) << "\n";
    }
    out << "chi_square " << chi_square << " df " << df << " pass_95 " << (pass_95 ? "yes" : "no")
        << " pass_99 " << (pass_99 ? "yes" : "no") << "\n";
    return out.str();
  }
};

/// n independent draws by inverse CDF over the table's sorted row order.
inline RunRecord sample(const OutcomeTable& t, std::uint64_t n, std::uint64_t seed = kDefaultSeed) {
  if (n == 0) throw InvalidTable("sample size must be positive");
  if (t.rows.empty()) throw InvalidTable("cannot sample from an empty table");
  const Rational total = t.total();
  std::vector<ModePair> keys;
  std::vector<double> cdf;
  Rational running = 0;
  for (const auto& [key, p] : t.rows) {
    running += p;
    keys.push_back(key);
    cdf.push_back(rational_to_double(running / total));
  }
  cdf.back() = 1.0;

  RunRecord out;
  out.seed = seed;
  out.n = n;
  for (const auto& key : keys) out.counts[key] = 0;
  Xoshiro256StarStar rng(seed);
  for (std::uint64_t k = 0; k < n; ++k) {
    const double u = rng.uniform();
    std::size_t idx = 0;
    while (idx + 1 < cdf.size() && u >= cdf[idx]) ++idx;
    ++out.counts[keys[idx]];
  }
  for (const auto& [key, p] : t.rows) {
    out.expected[key] = static_cast<double>(n) * rational_to_double(p / total);
  }
  const ChiSquareResult chi = chi_square_test(out.counts, t);
  out.chi_square = chi.statistic;
  out.df = chi.df;
  out.pass_95 = chi.pass_95;
  out.pass_99 = chi.pass_99;
  return out;
}

}  // namespace hardysim
