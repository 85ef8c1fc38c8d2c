#include "poncelet/chain.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace poncelet {

std::string to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Closed:
      return "closed";
    case OutcomeKind::NoTangent:
      return "no-tangent";
    case OutcomeKind::Degenerate:
      return "degenerate";
    case OutcomeKind::Open:
      return "open";
  }
  return "?";
}

std::vector<PLine> tangents_from(const PPoint& p, const Conic& b) {
  if (!b.nonsingular()) throw std::invalid_argument("tangents_from: conic is singular");
  const PLine polar = polar_line(p, b);
  if (on_conic(p, b)) return {polar};
  std::vector<PLine> out;
  for (const PPoint& r : line_conic_intersect(polar, b)) out.push_back(line_through(p, r));
  std::sort(out.begin(), out.end());
  return out;
}

StepResult chain_step(const ChainState& state, const Conic& a, const Conic& b) {
  StepResult res;
  const PPoint next = second_intersection(state.vertex, state.edge, a);
  res.state.vertex = next;
  res.state.step_index = state.step_index + 1;
  if (next == state.vertex) {
    res.status = StepResult::Status::Degenerate;
    return res;
  }
  const auto tangents = tangents_from(next, b);
  if (tangents.empty()) {
    res.status = StepResult::Status::NoTangent;
    return res;
  }
  for (const PLine& t : tangents) {
    if (t != state.edge) {
      res.state.edge = t;
      return res;
    }
  }
  res.status = StepResult::Status::Degenerate;
  return res;
}

ChainOutcome trace_chain(const PPoint& p1, Branch branch, const Conic& a, const Conic& b,
                         size_t max_steps) {
  if (!a.nonsingular() || !b.nonsingular())
    throw std::invalid_argument("trace_chain: conics must be nonsingular");
  if (!on_conic(p1, a)) throw std::invalid_argument("trace_chain: start point not on A");
  ChainOutcome out;
  out.vertices.push_back(p1);
  const auto starts = tangents_from(p1, b);
  if (starts.empty()) {
    out.kind = OutcomeKind::NoTangent;
    return out;
  }
  const PLine e1 = starts[branch == Branch::Second && starts.size() > 1 ? 1 : 0];
  out.edges.push_back(e1);
  ChainState state{p1, e1, 0};
  for (size_t step = 0; step < max_steps; ++step) {
    const StepResult res = chain_step(state, a, b);
    if (res.status != StepResult::Status::Ok) {
      out.vertices.push_back(res.state.vertex);
      out.kind = res.status == StepResult::Status::Degenerate ? OutcomeKind::Degenerate
                                                              : OutcomeKind::NoTangent;
      return out;
    }
    state = res.state;
    if (state.vertex == p1 && state.edge == e1) {
      out.kind = OutcomeKind::Closed;
      out.n = static_cast<int>(state.step_index);
      return out;
    }
    out.vertices.push_back(state.vertex);
    out.edges.push_back(state.edge);
  }
  out.kind = OutcomeKind::Open;
  return out;
}

std::optional<std::vector<PPoint>> find_nondegenerate_ngon(const Conic& a, const Conic& b, int n) {
  if (n < 3) throw std::invalid_argument("find_nondegenerate_ngon: n must be >= 3");
  for (const PPoint& p : conic_points(a)) {
    const size_t branches = tangents_from(p, b).size();
    for (size_t k = 0; k < branches; ++k) {
      const auto res = trace_chain(p, k == 0 ? Branch::First : Branch::Second, a, b, 3 * n);
      if (res.kind != OutcomeKind::Closed || res.n != n) continue;
      const std::set<PPoint> distinct(res.vertices.begin(), res.vertices.end());
      if (distinct.size() != static_cast<size_t>(n)) continue;
      const bool common_tangent = std::any_of(res.edges.begin(), res.edges.end(), [&](const PLine& e) {
        return line_conic_intersect(e, a).size() < 2;
      });
      if (!common_tangent) return res.vertices;
    }
  }
  return std::nullopt;
}

std::string format_trace(const ChainOutcome& outcome) {
  std::string s;
  for (size_t i = 0; i < outcome.vertices.size(); ++i) {
    s += std::to_string(i + 1) + ": " + outcome.vertices[i].str();
    if (i < outcome.edges.size()) s += " edge " + outcome.edges[i].str();
    s += "\n";
  }
  s += "outcome: " + to_string(outcome.kind);
  if (outcome.kind == OutcomeKind::Closed) s += " " + std::to_string(outcome.n);
  return s + "\n";
}

}  // namespace poncelet
