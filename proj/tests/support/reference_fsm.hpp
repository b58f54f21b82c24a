#pragma once

#include <set>
#include <utility>

#include "pegtwin/simulator.hpp"

namespace pegtwin::testing {

namespace fsm_ref {
using S = AvatarState;

// The transition table written out edge by edge, independent of fsm_step.
inline S reference_transition(S state, double speed, bool throwing, int dance, bool pending) {
  switch (state) {
    case S::kIdle:
      if (throwing) return S::kMiningLoop;
      if (dance == 1) return S::kDance;
      if (speed > 0.4) return S::kRunForward;
      return S::kIdle;
    case S::kRunForward:
      if (throwing) return S::kMiningLoop;
      if (speed < 0.2) return S::kIdle;
      return S::kRunForward;
    case S::kMiningLoop:
      if (throwing) return S::kMiningLoop;
      return pending ? S::kRunForward : S::kIdle;
    case S::kDance:
      return S::kDance;
  }
  return state;
}

inline bool is_table_edge(S from, S to) {
  static const std::set<std::pair<S, S>> edges = {
      {S::kIdle, S::kRunForward},       {S::kIdle, S::kMiningLoop},
      {S::kIdle, S::kDance},            {S::kRunForward, S::kIdle},
      {S::kRunForward, S::kMiningLoop}, {S::kMiningLoop, S::kRunForward},
      {S::kMiningLoop, S::kIdle}};
  return edges.count({from, to}) > 0;
}
}  // namespace fsm_ref

using fsm_ref::is_table_edge;
using fsm_ref::reference_transition;

}  // namespace pegtwin::testing
