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

#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hardysim/amplitude.hpp"
#include "json.hpp"

namespace hardysim {

enum class Arm { plus, minus };

inline char arm_suffix(Arm arm) { return arm == Arm::plus ? '+' : '-'; }
inline Arm opposite(Arm arm) { return arm == Arm::plus ? Arm::minus : Arm::plus; }
inline std::string_view arm_name(Arm arm) { return arm == Arm::plus ? "plus" : "minus"; }

inline bool is_valid_mode_name(std::string_view name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  for (const char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

/// A spatial path of one photon: a name plus the arm ('+' or '-') it lives on.
struct ModeLabel {
  std::string name;
  Arm arm = Arm::plus;

  ModeLabel() = default;
  ModeLabel(std::string n, Arm a) : name(std::move(n)), arm(a) {
    if (!is_valid_mode_name(name)) throw InvalidLabel("invalid mode name '" + name + "'");
  }

  /// Reads `v+` / `c-`.
  static ModeLabel parse(std::string_view text) {
    if (text.size() < 2 || (text.back() != '+' && text.back() != '-')) {
      throw InvalidLabel("mode label '" + std::string(text) + "' needs a '+' or '-' suffix");
    }
    return ModeLabel(std::string(text.substr(0, text.size() - 1)),
                     text.back() == '+' ? Arm::plus : Arm::minus);
  }

  std::string to_string() const { return name + arm_suffix(arm); }

  auto operator<=>(const ModeLabel&) const = default;
  bool operator==(const ModeLabel&) const = default;
};

/// Term key: one mode name per photon. Ordered by (plus, minus).
struct ModePair {
  std::string plus;
  std::string minus;

  auto operator<=>(const ModePair&) const = default;
  bool operator==(const ModePair&) const = default;

  const std::string& on(Arm arm) const { return arm == Arm::plus ? plus : minus; }
  std::string& on(Arm arm) { return arm == Arm::plus ? plus : minus; }
  std::string to_string() const { return "(" + plus + "+," + minus + "-)"; }
};

/// Sparse two-photon path state. Zero amplitudes are never stored.
class TwoPhotonState {
 public:
  using Terms = std::map<ModePair, RadicalComplex>;
  using Entry = std::pair<std::pair<ModeLabel, ModeLabel>, RadicalComplex>;

  TwoPhotonState() = default;

  /// Builds a state from (plus label, minus label) keys. Duplicate keys are
  /// summed; either key order is accepted as long as the arms differ.
  static TwoPhotonState make(const std::vector<Entry>& entries) {
    TwoPhotonState out;
    for (const auto& [key, amp] : entries) {
      const auto& [first, second] = key;
      if (first.arm == second.arm) {
        throw ArmMismatch("key (" + first.to_string() + "," + second.to_string() +
                          ") pairs two labels on the same arm");
      }
      const ModeLabel& p = first.arm == Arm::plus ? first : second;
      const ModeLabel& m = first.arm == Arm::plus ? second : first;
      out.add(ModePair{p.name, m.name}, amp);
    }
    return out;
  }

  /// Accumulates `amp` onto `key`, dropping the term if it cancels.
  void add(const ModePair& key, const RadicalComplex& amp) {
    if (amp.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, amp);
    if (!inserted) {
      it->second += amp;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  RadicalComplex amplitude(const ModePair& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? RadicalComplex() : it->second;
  }

  RadicalComplex norm_sq() const {
    RadicalComplex total;
    for (const auto& [key, amp] : terms_) total += amp.norm_sq();
    return total;
  }

  TwoPhotonState scaled(const RadicalComplex& k) const {
    TwoPhotonState out;
    if (k.is_zero()) return out;
    for (const auto& [key, amp] : terms_) out.add(key, amp * k);
    return out;
  }

  friend TwoPhotonState operator+(const TwoPhotonState& a, const TwoPhotonState& b) {
    TwoPhotonState out = a;
    for (const auto& [key, amp] : b.terms_) out.add(key, amp);
    return out;
  }

  bool operator==(const TwoPhotonState& o) const { return terms_ == o.terms_; }

  /// Mode names carrying a nonzero amplitude on one arm, sorted.
  std::vector<std::string> support(Arm arm) const {
    std::vector<std::string> out;
    for (const auto& [key, amp] : terms_) out.push_back(key.on(arm));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [key, amp] : terms_) {
      terms.push_back({{"plus", key.plus}, {"minus", key.minus}, {"amp", amp.to_string()}});
    }
    return {{"terms", terms}};
  }

  /// One `(p+,m-) amplitude` per line.
  std::string to_string() const {
    std::string out;
    for (const auto& [key, amp] : terms_) out += key.to_string() + " " + amp.to_string() + "\n";
    return out;
  }

 private:
  Terms terms_;
};

}  // namespace hardysim
