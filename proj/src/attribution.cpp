#include "blehri/attribution.hpp"

#include <algorithm>
#include <map>

namespace blehri {

std::optional<int> attribute_frame(const EventTrace& trace, Millis t_ms, Millis window_ms,
                                   std::span<const int> persons) {
  if (persons.empty()) throw std::invalid_argument("attribute_frame needs at least one person");
  std::optional<int> best_person;
  int best_rss = 0;
  for (int p : persons) {
    std::optional<int> signal;
    for (auto b : trace.beacons()) {
      if (b.person_id() != p) continue;
      if (auto v = windowed_max_rss(trace, t_ms, window_ms, b); v && (!signal || *v > *signal)) {
        signal = v;
      }
    }
    if (!signal) continue;
    if (!best_person || *signal > best_rss || (*signal == best_rss && p < *best_person)) {
      best_person = p;
      best_rss = *signal;
    }
  }
  return best_person;
}

int attribute_sequence(std::span<const std::optional<int>> attributions) {
  std::map<int, std::size_t> votes;
  std::optional<int> first;
  for (const auto& a : attributions) {
    if (!a) continue;
    if (!first) first = a;
    ++votes[*a];
  }
  if (!first) throw EmptySequence("touch sequence has no attributed frame");
  for (auto [person, count] : votes) {
    if (2 * count > attributions.size()) return person;
  }
  return *first;
}

namespace {

struct ScoredFrame {
  std::size_t frame;
  std::size_t sequence;  // index into truths
};

std::vector<ScoredFrame> frames_in_truths(const EventTrace& trace, std::span<const Millis> windows) {
  for (Millis w : windows) {
    if (w < 0) throw std::invalid_argument("attribution window must be >= 0");
  }
  if (trace.truths().empty()) throw NoGroundTruth("trace has no ground-truth touch intervals");
  std::vector<ScoredFrame> out;
  const auto frames = trace.frames();
  const auto truths = trace.truths();
  std::size_t g = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Millis t = frames[i].t_ms;
    while (g < truths.size() && truths[g].end_ms <= t) ++g;
    if (g < truths.size() && truths[g].contains(t)) out.push_back({i, g});
  }
  return out;
}

AttributionRow score(const EventTrace& trace, Millis window, std::span<const ScoredFrame> scored,
                     std::span<const std::optional<int>> attributed) {
  const auto truths = trace.truths();
  AttributionRow row;
  row.window_ms = window;
  std::size_t begin = 0;
  while (begin < scored.size()) {
    std::size_t end = begin;
    while (end < scored.size() && scored[end].sequence == scored[begin].sequence) ++end;
    const int truth_person = truths[scored[begin].sequence].person_id;
    for (std::size_t i = begin; i < end; ++i) {
      ++row.frames_total;
      if (attributed[i] == truth_person) ++row.frames_correct;
    }
    ++row.sequences_total;
    const auto seq = attributed.subspan(begin, end - begin);
    const bool any = std::any_of(seq.begin(), seq.end(), [](const auto& a) { return a.has_value(); });
    if (any && attribute_sequence(seq) == truth_person) ++row.sequences_correct;
    begin = end;
  }
  row.frames_false = row.frames_total - row.frames_correct;
  row.sequences_false = row.sequences_total - row.sequences_correct;
  return row;
}

}  // namespace

AttributionReport evaluate_attribution(const EventTrace& trace, std::span<const Millis> windows) {
  const std::vector<ScoredFrame> scored = frames_in_truths(trace, windows);
  const std::vector<int> persons = trace.persons();
  const auto frames = trace.frames();
  const long n = static_cast<long>(scored.size());
  const long nw = static_cast<long>(windows.size());

  // attributed[w * n + i]
  std::vector<std::optional<int>> attributed(static_cast<std::size_t>(n * nw));
#pragma omp parallel for collapse(2) schedule(static)
  for (long w = 0; w < nw; ++w) {
    for (long i = 0; i < n; ++i) {
      attributed[w * n + i] = attribute_frame(trace, frames[scored[i].frame].t_ms, windows[w], persons);
    }
  }

  AttributionReport report(windows.size());
  for (long w = 0; w < nw; ++w) {
    report[w] = score(trace, windows[w], scored,
                      std::span<const std::optional<int>>(attributed).subspan(w * n, n));
  }
  return report;
}

AttributionReport evaluate_attribution_serial(const EventTrace& trace,
                                              std::span<const Millis> windows) {
  const std::vector<ScoredFrame> scored = frames_in_truths(trace, windows);
  const std::vector<int> persons = trace.persons();
  const auto frames = trace.frames();
  AttributionReport report;
  for (Millis w : windows) {
    std::vector<std::optional<int>> attributed;
    attributed.reserve(scored.size());
    for (const auto& s : scored) {
      attributed.push_back(attribute_frame(trace, frames[s.frame].t_ms, w, persons));
    }
    report.push_back(score(trace, w, scored, attributed));
  }
  return report;
}

}  // namespace blehri
