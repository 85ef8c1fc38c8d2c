#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poncelet/geom.hpp"

namespace poncelet {

/// Which of the (at most two) starting tangents, in canonical line order.
enum class Branch { First = 1, Second = 2 };

struct ChainState {
  PPoint vertex;  // on A
  PLine edge;     // through vertex, tangent to B
  size_t step_index = 0;
};

enum class OutcomeKind { Closed, NoTangent, Degenerate, Open };
std::string to_string(OutcomeKind kind);

struct ChainOutcome {
  OutcomeKind kind = OutcomeKind::Open;
  int n = 0;  // polygon size when Closed
  std::vector<PPoint> vertices;
  std::vector<PLine> edges;  // edges[i] leaves vertices[i]
};

/// Lines through P tangent to B, sorted. Exactly the tangent at P when P is on B.
std::vector<PLine> tangents_from(const PPoint& p, const Conic& b);

struct StepResult {
  enum class Status { Ok, NoTangent, Degenerate };
  Status status = Status::Ok;
  /// On Ok the next state; on Degenerate the vertex field holds the coincident vertex.
  ChainState state;
};

/// One step of the construction: along the edge to the second point of A,
/// then out along the other tangent to B.
StepResult chain_step(const ChainState& state, const Conic& a, const Conic& b);

constexpr size_t kDefaultMaxSteps = 27;

/// Requires P1 on A and A, B nonsingular; throws std::invalid_argument otherwise.
/// With a single starting tangent both branches use it.
ChainOutcome trace_chain(const PPoint& p1, Branch branch, const Conic& a, const Conic& b,
                         size_t max_steps = kDefaultMaxSteps);

/// First closed n-gon in scan order (points of A sorted, then branch) with n
/// distinct vertices and no side tangent to A.
std::optional<std::vector<PPoint>> find_nondegenerate_ngon(const Conic& a, const Conic& b, int n);

/// "i: [x,y,z] edge [u,v,w]" per step, then "outcome: ..." .
std::string format_trace(const ChainOutcome& outcome);

}  // namespace poncelet
