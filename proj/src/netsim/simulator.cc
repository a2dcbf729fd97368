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

#include "distips/netsim/simulator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "distips/chain/chain_header.h"
#include "distips/common/error.h"
#include "distips/flow/flow_state.h"

namespace distips {

EventLog::EventLog(std::ostream& out) : out_(&out) {
  *out_ << "time_us,event,switch,flow,packet,cycles\n";
}

void EventLog::Write(int64_t time_us, const char* event, int switch_index,
                     int flow, int64_t packet, double cycles) {
  *out_ << time_us << ',' << event << ',' << switch_index << ',' << flow << ','
        << packet << ',' << static_cast<int64_t>(cycles) << '\n';
}

namespace {

constexpr int64_t kNever = std::numeric_limits<int64_t>::max();

enum class EventKind : uint8_t { kInject, kArrive, kJobDone, kDeliver, kBlockNotify };

struct Event {
  int64_t time;
  uint64_t seq;
  EventKind kind;
  int hop;
  int64_t item;  // packet index; flow index for kBlockNotify
  int job;

  bool operator>(const Event& o) const {
    return time != o.time ? time > o.time : seq > o.seq;
  }
};

// Learners a switch runs for flows on one route.
struct Duty {
  int hop;
  std::vector<int> wl_ids;
  size_t feature_count;  // features extracted per buffered packet
};

struct Route {
  std::vector<int> walk;
  std::vector<Duty> duties;
  std::vector<int> duty_at_hop;  // -1 where the hop runs nothing
};

struct DutyState {
  std::optional<FlowState> state;
  int64_t last_seen_us = 0;
  std::optional<ChainHeader> header;
  bool fired = false;
};

struct FlowInfo {
  FlowKey key;
  int label = kBenign;
  int route = -1;
  std::vector<DutyState> duties;
  int64_t first_trigger_us = -1;
  bool finalized = false;
  int64_t block_ingress_us = kNever;
  std::vector<double> first_features;
  bool features_consistent = true;
};

struct Job {
  int flow;
  int duty;
  std::vector<std::pair<int, int>> votes;  // (wl_id, label)
  double cycles;
};

struct SwitchState {
  int64_t busy_until = 0;
  std::unordered_set<int> blocked;
  std::vector<int64_t> busy_bins;  // microseconds busy per simulated second
  SwitchMetrics metrics;
};

class Simulation {
 public:
  Simulation(const NetworkGraph& graph, const DeploymentPlan& plan,
             const StrongLearner& model, const std::vector<PacketRecord>& packets,
             const CostModel& cost, const ScenarioOptions& options)
      : graph_(graph),
        plan_(plan),
        model_(model),
        packets_(packets),
        cost_(cost),
        options_(options),
        mode_(plan.placement.mode),
        duration_us_(static_cast<int64_t>(std::llround(options.duration_s * 1e6))),
        queue_bound_us_(static_cast<int64_t>(std::llround(cost.queue_bound_s * 1e6))),
        idle_timeout_us_(static_cast<int64_t>(std::llround(cost.idle_timeout_s * 1e6))) {}

  MetricsReport Run() {
    Setup();
    if (first_packet_ < last_packet_) PushInject(first_packet_);
    while (!queue_.empty()) {
      const Event e = queue_.top();
      queue_.pop();
      switch (e.kind) {
        case EventKind::kInject:
          if (e.item + 1 < last_packet_) PushInject(e.item + 1);
          OnArrive(e);
          break;
        case EventKind::kArrive: OnArrive(e); break;
        case EventKind::kJobDone: OnJobDone(e); break;
        case EventKind::kDeliver: OnDeliver(e); break;
        case EventKind::kBlockNotify: OnBlockNotify(e); break;
      }
    }
    return Collect();
  }

 private:
  void Setup() {
    cost_.Validate();
    if (!(options_.duration_s > 0)) throw InputError("duration must be positive");
    if (options_.registry.feature_count() != model_.feature_count) {
      throw InputError("model expects " + std::to_string(model_.feature_count) +
                       " features but the registry produces " +
                       std::to_string(options_.registry.feature_count()));
    }
    if (mode_ == PlacementMode::kWeakLearners &&
        plan_.placement.n_colors != model_.size()) {
      throw InputError("plan places " + std::to_string(plan_.placement.n_colors) +
                       " colors for a model of " + std::to_string(model_.size()) +
                       " weak learners");
    }
    BuildRoutes();

    const size_t n_bins = static_cast<size_t>(std::ceil(options_.duration_s));
    switches_.resize(static_cast<size_t>(graph_.switch_count()));
    for (int s = 0; s < graph_.switch_count(); ++s) {
      SwitchState& sw = switches_[static_cast<size_t>(s)];
      sw.busy_bins.assign(n_bins, 0);
      sw.metrics.name = graph_.switch_name(s);
      sw.metrics.hosts_vnf = plan_.placement.colors[static_cast<size_t>(s)] != 0;
    }

    std::map<FlowKey, int> flow_index;
    std::unordered_map<uint32_t, std::string> host_of_ip;
    for (const Host& h : graph_.hosts()) host_of_ip[h.ip] = h.name;
    flow_of_.resize(packets_.size());
    ingress_time_.assign(packets_.size(), 0);
    for (size_t i = 0; i < packets_.size(); ++i) {
      const PacketRecord& p = packets_[i];
      if (i > 0 && p.timestamp < packets_[i - 1].timestamp) {
        throw InputError("packets must be sorted by timestamp");
      }
      if (p.timestamp >= options_.duration_s) break;
      last_packet_ = static_cast<int64_t>(i) + 1;
      const FlowKey key = FlowKeyOf(p);
      auto [it, inserted] = flow_index.emplace(key, static_cast<int>(flows_.size()));
      if (inserted) {
        auto src = host_of_ip.find(p.src_ip);
        auto dst = host_of_ip.find(p.dst_ip);
        if (src == host_of_ip.end() || dst == host_of_ip.end()) {
          throw InputError("flow " + key.ToString() + " has an endpoint outside the topology");
        }
        auto route = route_of_pair_.find({src->second, dst->second});
        if (route == route_of_pair_.end()) {
          throw InfeasibleError("plan has no feasible route for " + src->second +
                                "->" + dst->second);
        }
        FlowInfo info;
        info.key = key;
        info.label = p.label_hint;
        info.route = route->second;
        info.duties.resize(routes_[static_cast<size_t>(route->second)].duties.size());
        flows_.push_back(std::move(info));
      }
      flow_of_[i] = it->second;
    }
  }

  void BuildRoutes() {
    const uint32_t full = plan_.placement.full_mask();
    for (const CommodityRoute& cr : plan_.routes) {
      if (!cr.path.feasible) continue;
      Route route;
      route.walk = cr.path.walk;
      route.duty_at_hop.assign(route.walk.size(), -1);
      uint32_t assigned = 0;
      for (size_t hop = 0; hop < route.walk.size() && assigned != full; ++hop) {
        const uint32_t fresh =
            plan_.placement.colors[static_cast<size_t>(route.walk[hop])] & full & ~assigned;
        if (fresh == 0) continue;
        assigned |= fresh;
        Duty duty{static_cast<int>(hop), {}, 0};
        if (mode_ == PlacementMode::kStrongLearner) {
          for (int wl = 0; wl < model_.size(); ++wl) duty.wl_ids.push_back(wl);
          duty.feature_count = static_cast<size_t>(model_.feature_count);
        } else {
          // Co-located learners are separate functions; each extracts its
          // own subset even where subsets overlap.
          for (int c = 0; c < plan_.placement.n_colors; ++c) {
            if (!((fresh >> c) & 1)) continue;
            duty.wl_ids.push_back(c);
            duty.feature_count += model_.learners[static_cast<size_t>(c)].feature_subset.size();
          }
        }
        route.duty_at_hop[hop] = static_cast<int>(route.duties.size());
        route.duties.push_back(std::move(duty));
      }
      if (assigned != full) {
        throw InfeasibleError("route " + cr.commodity.src_host + "->" +
                              cr.commodity.dst_host + " does not cover every learner");
      }
      route_of_pair_[{cr.commodity.src_host, cr.commodity.dst_host}] =
          static_cast<int>(routes_.size());
      routes_.push_back(std::move(route));
    }
  }

  void Push(int64_t time, EventKind kind, int hop, int64_t item, int job = -1) {
    queue_.push(Event{time, seq_++, kind, hop, item, job});
  }

  void PushInject(int64_t packet) {
    const int64_t t = std::llround(packets_[static_cast<size_t>(packet)].timestamp * 1e6) +
                      cost_.link_latency_us;
    Push(t, EventKind::kInject, 0, packet);
  }

  void Log(int64_t t, const char* what, int s, int flow, int64_t packet, double cycles = 0) {
    if (options_.log) options_.log->Write(t, what, s, flow, packet, cycles);
  }

  void AddBusy(SwitchState& sw, int64_t start, int64_t finish) {
    const int64_t lo = std::max<int64_t>(start, 0);
    const int64_t hi = std::min(finish, duration_us_);
    for (int64_t t = lo; t < hi;) {
      const int64_t bin = t / 1'000'000;
      const int64_t bin_end = std::min(hi, (bin + 1) * 1'000'000);
      sw.busy_bins[static_cast<size_t>(bin)] += bin_end - t;
      t = bin_end;
    }
  }

  void Forward(int64_t packet, int hop, int64_t t) {
    const Route& route = routes_[static_cast<size_t>(flows_[static_cast<size_t>(flow_of_[static_cast<size_t>(packet)])].route)];
    if (static_cast<size_t>(hop) + 1 < route.walk.size()) {
      Push(t + cost_.link_latency_us, EventKind::kArrive, hop + 1, packet);
    } else {
      Push(t + cost_.link_latency_us, EventKind::kDeliver, hop, packet);
    }
  }

  int StartJob(int flow_id, int duty_index, int64_t now) {
    FlowInfo& flow = flows_[static_cast<size_t>(flow_id)];
    DutyState& ds = flow.duties[static_cast<size_t>(duty_index)];
    const Duty& duty = routes_[static_cast<size_t>(flow.route)].duties[static_cast<size_t>(duty_index)];
    ds.fired = true;
    std::vector<double> features = ExtractFeatures(ds.state->packets(), options_.registry);
    ds.state.reset();
    if (duty_index == 0) {
      flow.first_trigger_us = now;
      flow.first_features = features;
    } else if (features != flow.first_features) {
      flow.features_consistent = false;
    }
    Job job{flow_id, duty_index, {}, 0.0};
    int nodes = 0;
    for (int wl : duty.wl_ids) {
      const TreePrediction pred = model_.learners[static_cast<size_t>(wl)].PredictFull(features);
      job.votes.emplace_back(wl, pred.label);
      nodes += pred.nodes_visited;
    }
    job.cycles = cost_.c_feat * static_cast<double>(duty.feature_count) *
                     options_.registry.trigger_count() +
                 cost_.c_node * nodes;
    if (mode_ == PlacementMode::kWeakLearners) {
      // Parse unless first, one append per learner, then encode or finalize.
      const size_t ops = (duty_index > 0 ? 1 : 0) + duty.wl_ids.size() + 1;
      job.cycles += cost_.c_hdr * static_cast<double>(ops);
    }
    jobs_.push_back(std::move(job));
    return static_cast<int>(jobs_.size()) - 1;
  }

  void OnArrive(const Event& e) {
    const int64_t p = e.item;
    const int fid = flow_of_[static_cast<size_t>(p)];
    FlowInfo& flow = flows_[static_cast<size_t>(fid)];
    const Route& route = routes_[static_cast<size_t>(flow.route)];
    const int s = route.walk[static_cast<size_t>(e.hop)];
    SwitchState& sw = switches_[static_cast<size_t>(s)];
    if (e.hop == 0) ingress_time_[static_cast<size_t>(p)] = e.time;
    Log(e.time, "arrive", s, fid, p);

    if (sw.blocked.count(fid)) {
      ++sw.metrics.suppressed;
      ++suppressed_;
      carried_.erase(p);
      Log(e.time, "suppress", s, fid, p);
      return;
    }

    bool carries = carried_.count(p) > 0;
    int job = -1;
    const int d = route.duty_at_hop[static_cast<size_t>(e.hop)];
    if (d >= 0 && !flow.finalized) {
      DutyState& ds = flow.duties[static_cast<size_t>(d)];
      if (!ds.fired) {
        if (ds.state && e.time - ds.last_seen_us > idle_timeout_us_) ds.state.reset();
        if (!ds.state) ds.state.emplace(flow.key, options_.registry);
        ds.last_seen_us = e.time;
        ds.state->Observe(packets_[static_cast<size_t>(p)]);
        if (carries) {
          ds.header = carried_.at(p);
          carried_.erase(p);
          carries = false;
        }
        const bool chain_ready =
            mode_ == PlacementMode::kStrongLearner || d == 0 || ds.header.has_value();
        if (ds.state->triggered() && chain_ready) job = StartJob(fid, d, e.time);
      }
    }

    // Inference work and chain-carrying packets are never shed.
    if (job < 0 && !carries && sw.busy_until - e.time > queue_bound_us_) {
      ++sw.metrics.dropped;
      ++dropped_;
      Log(e.time, "drop", s, fid, p);
      return;
    }

    const double infer = job >= 0 ? jobs_[static_cast<size_t>(job)].cycles : 0.0;
    const double cycles = cost_.c_fwd + infer;
    const int64_t start = std::max(e.time, sw.busy_until);
    const int64_t finish = start + cost_.ServiceMicros(cycles);
    sw.busy_until = finish;
    AddBusy(sw, start, finish);
    sw.metrics.charged_cycles += cycles;
    sw.metrics.inference_cycles += infer;
    ++sw.metrics.forwarded;
    Log(e.time, "fwd", s, fid, p, cost_.c_fwd);
    if (job >= 0) {
      Log(e.time, "infer", s, fid, p, infer);
      Push(finish, EventKind::kJobDone, e.hop, p, job);
    } else {
      Forward(p, e.hop, finish);
    }
  }

  void OnJobDone(const Event& e) {
    const int64_t p = e.item;
    Job& job = jobs_[static_cast<size_t>(e.job)];
    FlowInfo& flow = flows_[static_cast<size_t>(job.flow)];
    const Route& route = routes_[static_cast<size_t>(flow.route)];
    const int s = route.walk[static_cast<size_t>(e.hop)];
    const bool last = job.duty + 1 == static_cast<int>(route.duties.size());

    bool malicious = false;
    if (mode_ == PlacementMode::kWeakLearners) {
      DutyState& ds = flow.duties[static_cast<size_t>(job.duty)];
      ChainHeader header = ds.header ? *ds.header : ChainHeader::Empty(model_.size());
      for (auto [wl, vote] : job.votes) {
        header = AppendResult(header, static_cast<uint32_t>(wl), vote == kMalicious);
      }
      ds.header.reset();
      if (!last) {
        carried_.insert_or_assign(p, std::move(header));
        job.votes.clear();
        Forward(p, e.hop, e.time);
        return;
      }
      malicious = Finalize(header).malicious;
    } else {
      int votes = 0;
      for (auto [wl, vote] : job.votes) votes += vote;
      malicious = MajorityVote(votes, model_.size());
    }
    job.votes.clear();
    FinalizeFlow(job.flow, malicious, e.time, e.hop, s);
    if (malicious) {
      ++switches_[static_cast<size_t>(s)].metrics.suppressed;
      ++suppressed_;
      Log(e.time, "suppress", s, job.flow, p);
    } else {
      Forward(p, e.hop, e.time);
    }
  }

  void FinalizeFlow(int fid, bool malicious, int64_t now, int hop, int s) {
    FlowInfo& flow = flows_[static_cast<size_t>(fid)];
    flow.finalized = true;
    tti_us_.push_back(now - flow.first_trigger_us);
    const int verdict = malicious ? kMalicious : kBenign;
    confusion_.Add(verdict, flow.label);
    if (flow.features_consistent) {
      ++fidelity_checked_;
      if (PredictMajority(model_, flow.first_features) != verdict) ++fidelity_mismatches_;
    }
    flow.first_features.clear();
    flow.first_features.shrink_to_fit();
    Log(now, "verdict", s, fid, -1, verdict);
    if (!malicious) return;
    ++blocked_flows_;
    switches_[static_cast<size_t>(s)].blocked.insert(fid);
    Log(now, "block", s, fid, -1);
    if (hop > 0) {
      Push(now + cost_.link_latency_us, EventKind::kBlockNotify, hop - 1, fid);
    } else {
      flow.block_ingress_us = now;
    }
  }

  void OnBlockNotify(const Event& e) {
    const int fid = static_cast<int>(e.item);
    FlowInfo& flow = flows_[static_cast<size_t>(fid)];
    const int s = routes_[static_cast<size_t>(flow.route)].walk[static_cast<size_t>(e.hop)];
    switches_[static_cast<size_t>(s)].blocked.insert(fid);
    Log(e.time, "block", s, fid, -1);
    if (e.hop > 0) {
      Push(e.time + cost_.link_latency_us, EventKind::kBlockNotify, e.hop - 1, fid);
    } else {
      flow.block_ingress_us = e.time;
    }
  }

  void OnDeliver(const Event& e) {
    const int64_t p = e.item;
    const int fid = flow_of_[static_cast<size_t>(p)];
    const PacketRecord& pkt = packets_[static_cast<size_t>(p)];
    ++delivered_;
    delivered_bytes_ += pkt.size;
    if (pkt.label_hint == kBenign) benign_bytes_ += pkt.size;
    carried_.erase(p);
    if (ingress_time_[static_cast<size_t>(p)] > flows_[static_cast<size_t>(fid)].block_ingress_us) {
      ++soundness_violations_;
    }
    Log(e.time, "deliver", -1, fid, p);
  }

  MetricsReport Collect() {
    MetricsReport r;
    r.mode = mode_;
    r.duration_s = options_.duration_s;
    r.seed = options_.seed;
    r.injected = last_packet_ - first_packet_;
    r.delivered = delivered_;
    r.dropped = dropped_;
    r.suppressed = suppressed_;
    r.delivered_bytes = delivered_bytes_;
    r.benign_delivered_bytes = benign_bytes_;
    r.avg_throughput_bps = static_cast<double>(delivered_bytes_) * 8.0 / options_.duration_s;
    r.benign_throughput_bps = static_cast<double>(benign_bytes_) * 8.0 / options_.duration_s;

    double hosted_sum = 0;
    int hosted = 0;
    double all_sum = 0;
    for (SwitchState& sw : switches_) {
      int64_t busy = 0;
      int64_t peak = 0;
      for (int64_t b : sw.busy_bins) {
        busy += b;
        peak = std::max(peak, b);
      }
      sw.metrics.utilization = static_cast<double>(busy) / static_cast<double>(duration_us_);
      sw.metrics.peak_utilization = static_cast<double>(peak) / 1e6;
      all_sum += sw.metrics.utilization;
      if (sw.metrics.hosts_vnf) {
        hosted_sum += sw.metrics.utilization;
        ++hosted;
      }
      r.peak_utilization = std::max(r.peak_utilization, sw.metrics.peak_utilization);
      r.switches.push_back(sw.metrics);
    }
    r.mean_utilization = hosted > 0 ? hosted_sum / hosted : 0.0;
    r.mean_utilization_all = switches_.empty() ? 0.0 : all_sum / static_cast<double>(switches_.size());

    for (int64_t t : tti_us_) {
      const double ms = static_cast<double>(t) / 1000.0;
      r.tti_ms.push_back(ms);
      r.tti_mean_ms += ms;
      r.tti_max_ms = std::max(r.tti_max_ms, ms);
    }
    if (!r.tti_ms.empty()) r.tti_mean_ms /= static_cast<double>(r.tti_ms.size());

    r.flows = static_cast<int64_t>(flows_.size());
    r.finalized_flows = static_cast<int64_t>(tti_us_.size());
    r.blocked_flows = blocked_flows_;
    r.uninferred_flows = r.flows - r.finalized_flows;
    r.confusion = confusion_;
    const ClassifierReport cr = ReportFromCounts(confusion_);
    r.fpr = cr.fpr;
    r.fnr = cr.fnr;
    r.fidelity_checked = fidelity_checked_;
    r.fidelity_mismatches = fidelity_mismatches_;
    r.soundness_violations = soundness_violations_;
    r.stretch_pct = plan_.stretch_pct;
    return r;
  }

  const NetworkGraph& graph_;
  const DeploymentPlan& plan_;
  const StrongLearner& model_;
  const std::vector<PacketRecord>& packets_;
  const CostModel& cost_;
  const ScenarioOptions& options_;
  const PlacementMode mode_;
  const int64_t duration_us_;
  const int64_t queue_bound_us_;
  const int64_t idle_timeout_us_;

  std::vector<Route> routes_;
  std::map<std::pair<std::string, std::string>, int> route_of_pair_;
  std::vector<FlowInfo> flows_;
  std::vector<int> flow_of_;
  std::vector<int64_t> ingress_time_;
  std::vector<SwitchState> switches_;
  std::vector<Job> jobs_;
  std::unordered_map<int64_t, ChainHeader> carried_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  uint64_t seq_ = 0;
  int64_t first_packet_ = 0;
  int64_t last_packet_ = 0;

  int64_t delivered_ = 0;
  int64_t dropped_ = 0;
  int64_t suppressed_ = 0;
  int64_t delivered_bytes_ = 0;
  int64_t benign_bytes_ = 0;
  int64_t blocked_flows_ = 0;
  int64_t fidelity_checked_ = 0;
  int64_t fidelity_mismatches_ = 0;
  int64_t soundness_violations_ = 0;
  std::vector<int64_t> tti_us_;
  ConfusionCounts confusion_;
};

}  // namespace

MetricsReport RunScenario(const NetworkGraph& graph, const DeploymentPlan& plan,
                          const StrongLearner& model,
                          const std::vector<PacketRecord>& packets,
                          const CostModel& cost, const ScenarioOptions& options) {
  return Simulation(graph, plan, model, packets, cost, options).Run();
}

}  // namespace distips
