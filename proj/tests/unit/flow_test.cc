// Copyright 2026 The distips Authors
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

#include <cmath>
#include <numeric>
#include <sstream>

#include "distips/common/error.h"
#include "distips/common/random.h"
#include "distips/flow/features.h"
#include "distips/flow/flow_state.h"
#include "distips/flow/packet.h"
#include "distips/flow/trace.h"
#include "oracles.h"

namespace distips {
namespace {

PacketRecord Pkt(double ts, uint32_t size, uint16_t sport = 1234) {
  PacketRecord p;
  p.timestamp = ts;
  p.src_ip = ParseIpv4("10.0.0.1");
  p.dst_ip = ParseIpv4("10.0.0.2");
  p.src_port = sport;
  p.dst_port = 80;
  p.size = size;
  return p;
}

std::vector<PacketRecord> RandomFlow(Rng& rng, size_t n) {
  std::vector<PacketRecord> out;
  double t = rng.Uniform01();
  for (size_t i = 0; i < n; ++i) {
    t += rng.Exponential(rng.Uniform01() < 0.5 ? 10.0 : 1000.0);
    out.push_back(Pkt(t, static_cast<uint32_t>(rng.UniformInt(68, 15000))));
  }
  return out;
}

void ExpectClose(const std::vector<double>& got, const std::vector<double>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (size_t i = 0; i < got.size(); ++i) {
    EXPECT_NEAR(got[i], want[i], 1e-9 * std::max(1.0, std::abs(want[i]))) << "feature " << i;
  }
}

TEST(FlowKey, FiveTupleIsDirectional) {
  const PacketRecord a = Pkt(0, 100);
  PacketRecord b = a;
  std::swap(b.src_ip, b.dst_ip);
  std::swap(b.src_port, b.dst_port);
  const FlowKey k = FlowKeyOf(a);
  EXPECT_EQ(k.src_ip, ParseIpv4("10.0.0.1"));
  EXPECT_EQ(k.src_port, 1234);
  EXPECT_EQ(k.dst_port, 80);
  EXPECT_EQ(k.protocol, kProtoTcp);
  EXPECT_NE(FlowKeyOf(b), k);
  EXPECT_EQ(FlowKeyOf(Pkt(5, 900)), k);
}

TEST(FlowState, TriggersOnExactlyTheHundredthPacket) {
  const FeatureRegistry reg;
  FlowState s(FlowKeyOf(Pkt(0, 100)), reg);
  for (int i = 0; i < 99; ++i) {
    EXPECT_EQ(s.Observe(Pkt(i * 0.01, 100)).kind, TriggerKind::kNotYet) << i;
  }
  const TriggerSignal sig = s.Observe(Pkt(0.99, 100));
  EXPECT_EQ(sig.kind, TriggerKind::kTriggered);
  EXPECT_EQ(sig.features.size(), 72u);
  EXPECT_EQ(s.verdict(), FlowVerdict::kPending);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(s.Observe(Pkt(1 + i, 100)).kind, TriggerKind::kAlreadyTriggered);
  }
  EXPECT_EQ(s.packets().size(), 100u);
}

TEST(FlowState, TriggerCountOneFiresOnFirstPacket) {
  const FeatureRegistry reg({1});
  FlowState s(FlowKeyOf(Pkt(0, 100)), reg);
  const TriggerSignal sig = s.Observe(Pkt(0, 100));
  EXPECT_EQ(sig.kind, TriggerKind::kTriggered);
  EXPECT_EQ(sig.features.size(), 12u);
}

TEST(FlowState, RejectsForeignPacket) {
  const FeatureRegistry reg;
  FlowState s(FlowKeyOf(Pkt(0, 100)), reg);
  EXPECT_THROW(s.Observe(Pkt(0, 100, 999)), InputError);
}

TEST(FlowTable, EvictsIdleFlows) {
  const FeatureRegistry reg({2});
  FlowTable t(reg, 60.0);
  t.Observe(Pkt(0, 100, 1), 0.0);
  t.Observe(Pkt(30, 100, 2), 30.0);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.EvictIdle(61.0), 1u);
  EXPECT_EQ(t.Find(FlowKeyOf(Pkt(0, 100, 1))), nullptr);
  ASSERT_NE(t.Find(FlowKeyOf(Pkt(0, 100, 2))), nullptr);
}

TEST(Features, ThreePacketWindowHandChecked) {
  const FeatureRegistry reg({3});
  const std::vector<PacketRecord> p = {Pkt(0.0, 100), Pkt(0.01, 200), Pkt(0.02, 300)};
  const std::vector<double> f = ExtractFeatures(p, reg);
  auto at = [&](FlowStat s) { return f[static_cast<size_t>(s)]; };
  EXPECT_EQ(at(FlowStat::kPacketCount), 3);
  EXPECT_EQ(at(FlowStat::kByteSum), 600);
  EXPECT_EQ(at(FlowStat::kSizeMean), 200);
  EXPECT_EQ(at(FlowStat::kSizeMin), 100);
  EXPECT_EQ(at(FlowStat::kSizeMax), 300);
  EXPECT_NEAR(at(FlowStat::kSizeStd), std::sqrt(20000.0 / 3.0), 1e-9);
  EXPECT_NEAR(at(FlowStat::kIatStd), 0.0, 1e-12);
  EXPECT_NEAR(at(FlowStat::kDuration), 0.02, 1e-12);
  EXPECT_NEAR(at(FlowStat::kPacketsPerSec), 150, 1e-6);
  EXPECT_NEAR(at(FlowStat::kSmallPacketFraction), 1.0 / 3.0, 1e-12);
}

TEST(Features, SinglePacketWindowHasZeroRates) {
  const FeatureRegistry reg({1});
  const std::vector<PacketRecord> p = {Pkt(4.0, 500)};
  const std::vector<double> f = ExtractFeatures(p, reg);
  EXPECT_EQ(f[static_cast<size_t>(FlowStat::kDuration)], 0);
  EXPECT_EQ(f[static_cast<size_t>(FlowStat::kPacketsPerSec)], 0);
  EXPECT_EQ(f[static_cast<size_t>(FlowStat::kBytesPerSec)], 0);
  EXPECT_EQ(f[static_cast<size_t>(FlowStat::kIatMean)], 0);
  for (double v : f) EXPECT_TRUE(std::isfinite(v));
}

TEST(Features, MatchIndependentComputation) {
  Rng rng(99);
  const FeatureRegistry reg;
  for (int trial = 0; trial < 50; ++trial) {
    const auto flow = RandomFlow(rng, 100);
    ExpectClose(ExtractFeatures(flow, reg), oracle::NaiveFeatures(flow, reg.windows()));
  }
  const FeatureRegistry odd({3, 7, 50});
  const auto flow = RandomFlow(rng, 50);
  ExpectClose(ExtractFeatures(flow, odd), oracle::NaiveFeatures(flow, odd.windows()));
  EXPECT_EQ(ExtractFeatures(flow, odd).size(), 36u);
}

TEST(Features, WindowDependsOnlyOnItsPrefix) {
  Rng rng(3);
  const FeatureRegistry small({10, 20});
  const FeatureRegistry big({10, 20, 100});
  for (int trial = 0; trial < 20; ++trial) {
    auto flow = RandomFlow(rng, 100);
    const auto prefix = ExtractFeatures(std::span(flow).first(20), small);
    // Replace the tail with unrelated noise.
    auto noise = RandomFlow(rng, 80);
    for (size_t i = 0; i < 80; ++i) {
      noise[i].timestamp += flow[19].timestamp;
      flow[20 + i] = noise[i];
    }
    const auto full = ExtractFeatures(flow, big);
    ExpectClose(std::vector<double>(full.begin(), full.begin() + 24), prefix);
  }
}

TEST(Features, ShortBufferAndBadRegistryAreErrors) {
  const FeatureRegistry reg;
  std::vector<PacketRecord> p(99, Pkt(0, 100));
  EXPECT_THROW(ExtractFeatures(p, reg), InputError);
  EXPECT_THROW(FeatureRegistry({10, 10}), InputError);
  EXPECT_THROW(FeatureRegistry({0}), InputError);
  EXPECT_THROW(FeatureRegistry(std::vector<int>{}), InputError);
  EXPECT_EQ(reg.FeatureName(13), "w20_byte_sum");
}

TEST(Projection, Examples) {
  const std::vector<double> v = {5, 6, 7};
  EXPECT_EQ(ProjectFeatures(v, std::vector<int>{2, 0}), (std::vector<double>{7, 5}));
  EXPECT_EQ(ProjectFeatures(v, std::vector<int>{0, 1, 2}), v);
  EXPECT_TRUE(ProjectFeatures(v, std::vector<int>{}).empty());
  EXPECT_THROW(ProjectFeatures(v, std::vector<int>{3}), InputError);
}

TEST(Projection, Composes) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(72);
    for (double& x : v) x = rng.Normal();
    std::vector<int> a(24), b(10);
    for (int& i : a) i = static_cast<int>(rng.Index(72));
    for (int& i : b) i = static_cast<int>(rng.Index(24));
    std::vector<int> ab;
    for (int i : b) ab.push_back(a[static_cast<size_t>(i)]);
    EXPECT_EQ(ProjectFeatures(ProjectFeatures(v, a), b), ProjectFeatures(v, ab));
  }
}

TEST(Trace, RoundTripsExactly) {
  Rng rng(12);
  auto flow = RandomFlow(rng, 40);
  flow[3].label_hint = 1;
  std::stringstream s;
  WriteTrace(s, flow);
  EXPECT_EQ(s.str().substr(0, s.str().find('\n')), "ts,src_ip,dst_ip,src_port,dst_port,proto,size,label");
  const auto back = ReadTrace(s);
  ASSERT_EQ(back.size(), flow.size());
  for (size_t i = 0; i < flow.size(); ++i) {
    EXPECT_EQ(back[i].timestamp, flow[i].timestamp);
    EXPECT_EQ(FlowKeyOf(back[i]), FlowKeyOf(flow[i]));
    EXPECT_EQ(back[i].size, flow[i].size);
    EXPECT_EQ(back[i].label_hint, flow[i].label_hint);
  }
}

TEST(Trace, RejectsMalformedInput) {
  std::stringstream bad_header("a,b,c\n");
  EXPECT_THROW(ReadTrace(bad_header), InputError);
  std::stringstream small("ts,src_ip,dst_ip,src_port,dst_port,proto,size,label\n0,10.0.0.1,10.0.0.2,1,2,6,40,0\n");
  EXPECT_THROW(ReadTrace(small), InputError);
  std::stringstream cols("ts,src_ip,dst_ip,src_port,dst_port,proto,size,label\n0,10.0.0.1,10.0.0.2,1,2,6\n");
  EXPECT_THROW(ReadTrace(cols), InputError);
  EXPECT_THROW(ParseIpv4("10.0.0.300"), InputError);
}

}  // namespace
}  // namespace distips
