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

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hardysim/amplitude.hpp"
#include "hardysim/state.hpp"

namespace hardysim {

/// Exact linear map on the modes of one arm. Each input mode (column) maps
/// to a superposition of output modes; modes that are not inputs pass
/// through unchanged when the transform is applied.
class ModeTransform {
 public:
  using Column = std::vector<std::pair<std::string, RadicalComplex>>;
  using Columns = std::map<std::string, Column>;

  /// Input and output names must be disjoint, or identical as sets (an
  /// in-place element such as a phase plate).
  ModeTransform(Arm arm, Columns columns) : arm_(arm), columns_(std::move(columns)) {
    std::set<std::string> inputs, outputs;
    for (const auto& [in, column] : columns_) {
      inputs.insert(in);
      for (const auto& [out, amp] : column) outputs.insert(out);
    }
    in_place_ = inputs == outputs;
    if (!in_place_) {
      for (const auto& out : outputs) {
        if (inputs.count(out) != 0) {
          throw InvalidElement("mode " + out + arm_suffix(arm_) +
                               " is both consumed and produced by a non in-place element");
        }
      }
    }
  }

  Arm arm() const { return arm_; }
  const Columns& columns() const { return columns_; }
  bool in_place() const { return in_place_; }

  std::vector<std::string> inputs() const {
    std::vector<std::string> out;
    for (const auto& [in, column] : columns_) out.push_back(in);
    return out;
  }

  /// Output names in first-appearance order over the sorted columns.
  std::vector<std::string> outputs() const {
    std::vector<std::string> out;
    for (const auto& [in, column] : columns_) {
      for (const auto& [name, amp] : column) {
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
      }
    }
    return out;
  }

  /// Column image of `input` as a dense map over output names.
  std::map<std::string, RadicalComplex> image(const std::string& input) const {
    std::map<std::string, RadicalComplex> out;
    auto it = columns_.find(input);
    if (it == columns_.end()) {
      out[input] = RadicalComplex(1);
      return out;
    }
    for (const auto& [name, amp] : it->second) out[name] += amp;
    return out;
  }

  /// Exact check: unit columns, pairwise orthogonal.
  bool is_isometry() const {
    std::vector<std::map<std::string, RadicalComplex>> images;
    for (const auto& [in, column] : columns_) images.push_back(image(in));
    for (std::size_t a = 0; a < images.size(); ++a) {
      for (std::size_t b = a; b < images.size(); ++b) {
        RadicalComplex inner;
        for (const auto& [name, amp] : images[a]) {
          auto it = images[b].find(name);
          if (it != images[b].end()) inner += amp.conj() * it->second;
        }
        if (inner != (a == b ? RadicalComplex(1) : RadicalComplex())) return false;
      }
    }
    return true;
  }

  bool operator==(const ModeTransform& o) const {
    if (arm_ != o.arm_ || columns_.size() != o.columns_.size()) return false;
    for (const auto& [in, column] : columns_) {
      if (o.columns_.count(in) == 0 || image(in) != o.image(in)) return false;
    }
    return true;
  }

 private:
  Arm arm_;
  Columns columns_;
  bool in_place_ = false;
};

/// Lossless beam splitter with transmitted intensity fraction `t`:
///   in1 -> sqrt(t) out1 + i sqrt(1-t) out2
///   in2 -> sqrt(t) out2 + i sqrt(1-t) out1
/// Output labels equal to the input labels give an in-place element.
inline ModeTransform beamsplitter(const Rational& t, const ModeLabel& in1, const ModeLabel& in2,
                                  const ModeLabel& out1, const ModeLabel& out2) {
  const Arm arm = in1.arm;
  for (const ModeLabel* label : {&in2, &out1, &out2}) {
    if (label->arm != arm) {
      throw ArmMismatch("beam splitter mixes arms: " + in1.to_string() + " and " +
                        label->to_string());
    }
  }
  if (t <= 0 || t >= 1) {
    throw InvalidElement("transmissivity " + format_rational(t) + " is outside (0, 1)");
  }
  if (in1 == in2 || out1 == out2) throw InvalidElement("beam splitter ports must be distinct");
  const RadicalComplex transmit = sqrt_rational(t);
  const RadicalComplex reflect = RadicalComplex::i() * sqrt_rational(1 - t);
  return ModeTransform(arm, {
      {in1.name, {{out1.name, transmit}, {out2.name, reflect}}},
      {in2.name, {{out2.name, transmit}, {out1.name, reflect}}},
  });
}

/// In-place phase plate: mode -> i^quarter_turns * mode.
inline ModeTransform phase_shift(long long quarter_turns, const ModeLabel& mode) {
  return ModeTransform(mode.arm, {{mode.name, {{mode.name, RadicalComplex::i_pow(quarter_turns)}}}});
}

/// Composite first stage of the two-photon Hardy interferometer (unequal
/// splitters, mirrors, fair splitter):
///   a -> 3^{-1/2} (v + i u - g),   b -> 3^{-1/2} (f - u + i g)
inline ModeTransform preset_eq2(Arm arm) {
  const RadicalComplex s = sqrt_rational(Rational(1, 3));
  const RadicalComplex i = RadicalComplex::i();
  return ModeTransform(arm, {
      {"a", {{"v", s}, {"u", i * s}, {"g", -s}}},
      {"b", {{"f", s}, {"u", -s}, {"g", i * s}}},
  });
}

/// Fair output splitter: u -> 2^{-1/2} (c + i d),  v -> 2^{-1/2} (d + i c)
inline ModeTransform preset_eq5(Arm arm) {
  const RadicalComplex s = sqrt_rational(Rational(1, 2));
  const RadicalComplex i = RadicalComplex::i();
  return ModeTransform(arm, {
      {"u", {{"c", s}, {"d", i * s}}},
      {"v", {{"d", s}, {"c", i * s}}},
  });
}

/// Linear substitution of `x`'s columns on its arm.
inline TwoPhotonState apply_transform(const TwoPhotonState& s, const ModeTransform& x) {
  TwoPhotonState out;
  const Arm arm = x.arm();
  for (const auto& [key, amp] : s.terms()) {
    auto it = x.columns().find(key.on(arm));
    if (it == x.columns().end()) {
      out.add(key, amp);
      continue;
    }
    for (const auto& [name, coeff] : it->second) {
      ModePair next = key;
      next.on(arm) = name;
      out.add(next, amp * coeff);
    }
  }
  return out;
}

}  // namespace hardysim
