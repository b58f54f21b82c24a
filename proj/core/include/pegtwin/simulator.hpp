#pragma once

// Headless fixed-timestep replay of a move file by an avatar built from four
// motion primitives (Idle, RunForward, MiningLoop, Dance).
//
// Each row is a multi-frame episode: run to the pick-up hole and grab the peg
// once within the proximity radius, run to the release hole, raise Throw and
// release the peg while the MiningLoop clip plays, then destroy the jumped
// peg when the clip completes. After the last row the score is shown and the
// avatar dances for the Dance clip duration.

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pegtwin/board.hpp"
#include "pegtwin/movefile.hpp"

namespace pegtwin {

class FrameCollector;

enum class AvatarState { kIdle, kRunForward, kMiningLoop, kDance };

const char* to_string(AvatarState state);

struct AnimParams {
  double speed = 0.0;  // board units per second
  bool throwing = false;
  int dance = 0;
};

// Transition table:
//   Idle       -> MiningLoop  throw
//   Idle       -> Dance       dance == 1
//   Idle       -> RunForward  speed > 0.4
//   RunForward -> MiningLoop  throw
//   RunForward -> Idle        speed < 0.2
//   MiningLoop -> RunForward  !throw and a target is pending
//   MiningLoop -> Idle        !throw and nothing pending
// Conditions are tried in the order throw, dance, speed; Dance is terminal.
AvatarState fsm_step(AvatarState state, const AnimParams& params, bool target_pending);

// a + t * (b - a) with t clamped to [0, 1].
double interpolate(double a, double b, double t);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double distance(Vec2 a, Vec2 b);
Vec2 hole_position(int hole, double cell_pitch);
// Moves at most `max_step` along the straight line to `target`.
Vec2 advance_toward(Vec2 position, Vec2 target, double max_step);

struct SimConfig {
  double dt = 1.0 / 60.0;
  double run_speed = 2.0;
  double proximity_radius = 0.5;
  double cell_pitch = 1.0;
  double mining_duration = 1.0;
  double dance_duration = 3.0;
  // Emit a position sample every N frames; 0 disables.
  int position_sample_every = 6;
  // Emit the board as text every N frames; 0 disables.
  int ascii_every = 0;

  double target_fps() const { return 1.0 / dt; }
  double budget_ms() const { return 1000.0 * dt; }
  // Throws std::invalid_argument.
  void validate() const;
};

namespace trace {
struct StateChange {
  AvatarState from;
  AvatarState to;
};
struct Grab {
  int hole;
};
struct Release {
  int hole;
};
struct Destroy {
  int hole;
};
// A non-target peg came within reach; heading changes only.
struct Rotate {
  int hole;
};
struct ScoreShown {
  int score;
};
struct PositionSample {
  double x;
  double y;
};
struct BoardRow {
  int row;
  std::string cells;
};
}  // namespace trace

using TracePayload = std::variant<trace::StateChange, trace::Grab, trace::Release,
                                  trace::Destroy, trace::Rotate, trace::ScoreShown,
                                  trace::PositionSample, trace::BoardRow>;

struct TraceEvent {
  std::uint64_t frame = 0;
  TracePayload payload;
};

// "frame=<n> event=<kind> key=value ..."
std::string format_event(const TraceEvent& event);
std::string format_trace(std::span<const TraceEvent> events);

enum class Phase { kToPick, kToPlace, kPlacing, kFinishing, kDancing, kDone };

enum class PegStatus { kOnBoard, kHeld, kDestroyed };

struct SceneState {
  static constexpr int kNoPeg = -1;

  Vec2 position;
  AvatarState state = AvatarState::kIdle;
  AnimParams params;
  std::optional<int> held_peg;
  std::array<int, kCellCount> peg_at{};  // peg id per hole or kNoPeg
  std::vector<PegStatus> pegs;           // indexed by peg id
  std::deque<MoveRow> pending;           // front() is the current row
  Phase phase = Phase::kFinishing;
  int clip_frames_left = 0;
  std::uint64_t near_pegs = 0;  // holes of non-target pegs within reach
  std::uint64_t frame = 0;

  Board board() const;
  int on_board_count() const;
  int held_count() const { return held_peg ? 1 : 0; }
  int destroyed_count() const;
  bool target_pending() const { return phase == Phase::kToPick || phase == Phase::kToPlace; }
};

// Initial scene: 32 pegs, avatar idle at the centre hole.
SceneState make_scene(std::span<const MoveRow> rows, const SimConfig& config);

// Advances one frame and returns its events in emission order.
std::vector<TraceEvent> process_frame(SceneState& scene, const SimConfig& config);

struct ReplayResult {
  std::vector<TraceEvent> trace;
  int final_score = 0;
  AvatarState final_state = AvatarState::kIdle;
  std::uint64_t frames = 0;
};

// Validates the rows, then steps until the dance completes. When a collector
// is given each frame's wall time is recorded in it.
ReplayResult run_replay(std::span<const MoveRow> rows, const SimConfig& config,
                        FrameCollector* collector = nullptr);

}  // namespace pegtwin
