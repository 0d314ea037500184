// Copyright 2026 The sps-norm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "spsnorm/errors.hpp"
#include "spsnorm/models.hpp"

namespace spsnorm {
namespace {

TEST(Presets, EveryNameBuildsWithItsChannels) {
  for (const auto& name : preset_names()) {
    const EmitterPreset p = make_preset(name, {});
    const auto channels = preset_channels(name);
    ASSERT_FALSE(channels.empty()) << name;
    EXPECT_EQ(p.default_emission(), channels.front()) << name;
    for (const auto& c : channels) EXPECT_NO_THROW((void)p.emission(c)) << name << " " << c;
  }
}

TEST(Presets, UnknownNamesAndKeysAreRejected) {
  EXPECT_THROW(make_preset("laser", {}), ValidationError);
  EXPECT_THROW(make_preset("incoherent-2ls", {{"gama", 1.0}}), ValidationError);
  EXPECT_THROW((void)make_preset("coherent-2ls", {}).emission("H"), ValidationError);
  EXPECT_THROW(make_preset("coherent-2ls", {{"gamma", 0.0}}), ValidationError);
  EXPECT_THROW(make_preset("incoherent-2ls", {{"P", -1.0}}), ValidationError);
}

TEST(Presets, WeakDrivesByDefault) {
  EXPECT_DOUBLE_EQ(preset_defaults("coherent-2ls").at("Omega"), 0.01);
  EXPECT_DOUBLE_EQ(preset_defaults("cascade-2ls").at("Omega"), 0.01);
  EXPECT_DOUBLE_EQ(preset_defaults("blockade-unconventional").at("omega"), 0.275);
  EXPECT_DOUBLE_EQ(preset_defaults("blockade-unconventional").at("g"), 3.0);
  EXPECT_DOUBLE_EQ(preset_defaults("blockade-conventional").at("g"), 0.0);
}

TEST(Presets, ConventionalBlockadeIsSingleMode) {
  const EmitterPreset conv = make_preset("blockade-conventional", {});
  const EmitterPreset unconv = make_preset("blockade-unconventional", {});
  EXPECT_EQ(conv.model.space().subsystem_count(), 1);
  EXPECT_EQ(unconv.model.space().subsystem_count(), 2);
}

TEST(Presets, TruncationEscalatesForStrongDrive) {
  TruncationOptions t;
  t.target_order = 3;
  const EmitterPreset weak = make_preset("blockade-conventional", {}, t);
  const EmitterPreset strong = make_preset("blockade-conventional", {{"Omega_a", 1.0}}, t);
  EXPECT_GT(strong.model.space().dimension(), weak.model.space().dimension());
}

TEST(Presets, TruncationFailsWhenEscalationIsDisabled) {
  TruncationOptions t;
  t.target_order = 3;
  t.auto_escalate = false;
  EXPECT_THROW(make_preset("blockade-conventional", {{"Omega_a", 1.0}, {"n_max", 4.0}}, t),
               TruncationError);
}

}  // namespace
}  // namespace spsnorm
