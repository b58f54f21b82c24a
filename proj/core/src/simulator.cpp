#include "pegtwin/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "pegtwin/error.hpp"
#include "pegtwin/metrics.hpp"

namespace pegtwin {
namespace {

constexpr double kRunThreshold = 0.4;
constexpr double kIdleThreshold = 0.2;
constexpr std::uint64_t kFrameLimit = 50'000'000;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int frames_for(double duration, double dt) {
  return std::max(1, static_cast<int>(std::ceil(duration / dt - 1e-9)));
}

}  // namespace

const char* to_string(AvatarState state) {
  switch (state) {
    case AvatarState::kIdle: return "Idle";
    case AvatarState::kRunForward: return "RunForward";
    case AvatarState::kMiningLoop: return "MiningLoop";
    case AvatarState::kDance: return "Dance";
  }
  return "Unknown";
}

AvatarState fsm_step(AvatarState state, const AnimParams& p, bool target_pending) {
  switch (state) {
    case AvatarState::kIdle:
      if (p.throwing) return AvatarState::kMiningLoop;
      if (p.dance == 1) return AvatarState::kDance;
      if (p.speed > kRunThreshold) return AvatarState::kRunForward;
      return state;
    case AvatarState::kRunForward:
      if (p.throwing) return AvatarState::kMiningLoop;
      if (p.speed < kIdleThreshold) return AvatarState::kIdle;
      return state;
    case AvatarState::kMiningLoop:
      if (!p.throwing) return target_pending ? AvatarState::kRunForward : AvatarState::kIdle;
      return state;
    case AvatarState::kDance:
      return state;
  }
  return state;
}

double interpolate(double a, double b, double t) {
  t = std::clamp(t, 0.0, 1.0);
  return a + t * (b - a);
}

double distance(Vec2 a, Vec2 b) { return std::hypot(b.x - a.x, b.y - a.y); }

Vec2 hole_position(int hole, double cell_pitch) {
  return {col_of(hole) * cell_pitch, row_of(hole) * cell_pitch};
}

Vec2 advance_toward(Vec2 position, Vec2 target, double max_step) {
  const double d = distance(position, target);
  if (d <= max_step || d == 0.0) return target;
  const double t = max_step / d;
  return {interpolate(position.x, target.x, t), interpolate(position.y, target.y, t)};
}

void SimConfig::validate() const {
  if (!(dt > 0) || !(run_speed > 0) || !(proximity_radius > 0) || !(cell_pitch > 0) ||
      !(mining_duration > 0) || !(dance_duration > 0))
    throw std::invalid_argument("simulation parameters must be positive");
  if (position_sample_every < 0 || ascii_every < 0)
    throw std::invalid_argument("sampling intervals must be >= 0");
}

std::string format_event(const TraceEvent& event) {
  const std::string prefix = fmt::format("frame={} event=", event.frame);
  return prefix +
         std::visit(
             Overloaded{
                 [](const trace::StateChange& e) {
                   return fmt::format("state_change from={} to={}", to_string(e.from),
                                      to_string(e.to));
                 },
                 [](const trace::Grab& e) { return fmt::format("grab hole={}", e.hole); },
                 [](const trace::Release& e) { return fmt::format("release hole={}", e.hole); },
                 [](const trace::Destroy& e) { return fmt::format("destroy hole={}", e.hole); },
                 [](const trace::Rotate& e) { return fmt::format("rotate hole={}", e.hole); },
                 [](const trace::ScoreShown& e) {
                   return fmt::format("score_shown score={}", e.score);
                 },
                 [](const trace::PositionSample& e) {
                   return fmt::format("position x={:.6f} y={:.6f}", e.x, e.y);
                 },
                 [](const trace::BoardRow& e) {
                   return fmt::format("board row={} cells={}", e.row, e.cells);
                 },
             },
             event.payload);
}

std::string format_trace(std::span<const TraceEvent> events) {
  std::string out;
  for (const TraceEvent& e : events) {
    out += format_event(e);
    out += '\n';
  }
  return out;
}

Board SceneState::board() const {
  std::uint64_t bits = 0;
  for (int hole = 0; hole < kCellCount; ++hole)
    if (peg_at[hole] != kNoPeg) bits |= std::uint64_t{1} << hole;
  return Board(bits);
}

int SceneState::on_board_count() const {
  return static_cast<int>(std::count(pegs.begin(), pegs.end(), PegStatus::kOnBoard));
}

int SceneState::destroyed_count() const {
  return static_cast<int>(std::count(pegs.begin(), pegs.end(), PegStatus::kDestroyed));
}

SceneState make_scene(std::span<const MoveRow> rows, const SimConfig& config) {
  SceneState scene;
  scene.peg_at.fill(SceneState::kNoPeg);
  const Board start = initial_board();
  for (int hole = 0; hole < kCellCount; ++hole) {
    if (!start.has_peg(hole)) continue;
    scene.peg_at[hole] = static_cast<int>(scene.pegs.size());
    scene.pegs.push_back(PegStatus::kOnBoard);
  }
  scene.position = hole_position(kCenterHole, config.cell_pitch);
  scene.pending.assign(rows.begin(), rows.end());
  scene.phase = scene.pending.empty() ? Phase::kFinishing : Phase::kToPick;
  return scene;
}

std::vector<TraceEvent> process_frame(SceneState& scene, const SimConfig& config) {
  std::vector<TraceEvent> events;
  if (scene.phase == Phase::kDone) return events;
  const std::uint64_t frame = ++scene.frame;
  auto emit = [&](TracePayload payload) { events.push_back({frame, std::move(payload)}); };
  auto transition = [&] {
    const AvatarState next = fsm_step(scene.state, scene.params, scene.target_pending());
    if (next != scene.state) emit(trace::StateChange{scene.state, next});
    scene.state = next;
  };

  switch (scene.phase) {
    case Phase::kToPick:
    case Phase::kToPlace: {
      const MoveRow& row = scene.pending.front();
      const bool picking = scene.phase == Phase::kToPick;
      const int target = picking ? row.from : row.to;
      const Vec2 target_pos = hole_position(target, config.cell_pitch);

      const Vec2 before = scene.position;
      scene.position = advance_toward(before, target_pos, config.run_speed * config.dt);
      scene.params.speed = distance(before, scene.position) / config.dt;

      const bool arrived = distance(scene.position, target_pos) <= config.proximity_radius;
      const bool grab = arrived && picking && !scene.held_peg;
      const bool release = arrived && !picking && scene.held_peg.has_value();

      std::uint64_t near = 0;
      for (int hole = 0; hole < kCellCount; ++hole) {
        if (hole == target || scene.peg_at[hole] == SceneState::kNoPeg) continue;
        if (distance(scene.position, hole_position(hole, config.cell_pitch)) <=
            config.proximity_radius)
          near |= std::uint64_t{1} << hole;
      }
      const std::uint64_t entering = near & ~scene.near_pegs;
      scene.near_pegs = near;

      if (release) scene.params.throwing = true;
      transition();

      if (grab) {
        const int id = scene.peg_at[row.from];
        scene.peg_at[row.from] = SceneState::kNoPeg;
        scene.pegs[id] = PegStatus::kHeld;
        scene.held_peg = id;
        scene.phase = Phase::kToPlace;
        emit(trace::Grab{row.from});
      } else if (release) {
        const int id = *scene.held_peg;
        scene.peg_at[row.to] = id;
        scene.pegs[id] = PegStatus::kOnBoard;
        scene.held_peg.reset();
        scene.phase = Phase::kPlacing;
        scene.clip_frames_left = frames_for(config.mining_duration, config.dt);
        scene.near_pegs = 0;
        emit(trace::Release{row.to});
      }
      for (std::uint64_t bits = entering; bits; bits &= bits - 1)
        emit(trace::Rotate{std::countr_zero(bits)});
      break;
    }
    case Phase::kPlacing: {
      scene.params.speed = 0.0;
      if (--scene.clip_frames_left <= 0) {
        const int over = scene.pending.front().over;
        const int id = scene.peg_at[over];
        scene.peg_at[over] = SceneState::kNoPeg;
        scene.pegs[id] = PegStatus::kDestroyed;
        scene.params.throwing = false;
        scene.pending.pop_front();
        scene.phase = scene.pending.empty() ? Phase::kFinishing : Phase::kToPick;
        emit(trace::Destroy{over});
      }
      transition();
      break;
    }
    case Phase::kFinishing: {
      scene.params.speed = 0.0;
      if (scene.state == AvatarState::kIdle) {
        emit(trace::ScoreShown{scene.board().peg_count()});
        scene.params.dance = 1;
        scene.phase = Phase::kDancing;
        scene.clip_frames_left = frames_for(config.dance_duration, config.dt);
      }
      transition();
      break;
    }
    case Phase::kDancing: {
      scene.params.speed = 0.0;
      transition();
      if (--scene.clip_frames_left <= 0) scene.phase = Phase::kDone;
      break;
    }
    case Phase::kDone:
      break;
  }

  if (config.position_sample_every > 0 &&
      frame % static_cast<std::uint64_t>(config.position_sample_every) == 0)
    emit(trace::PositionSample{scene.position.x, scene.position.y});
  if (config.ascii_every > 0 && frame % static_cast<std::uint64_t>(config.ascii_every) == 0) {
    const std::string text = render(scene.board());
    std::size_t start = 0;
    for (int r = 0; r < kGridSize; ++r) {
      const std::size_t end = text.find('\n', start);
      emit(trace::BoardRow{r, text.substr(start, end - start)});
      start = end + 1;
    }
  }
  return events;
}

ReplayResult run_replay(std::span<const MoveRow> rows, const SimConfig& config,
                        FrameCollector* collector) {
  config.validate();
  validate_sequence(rows);

  SceneState scene = make_scene(rows, config);
  ReplayResult result;
  while (scene.phase != Phase::kDone) {
    if (scene.frame >= kFrameLimit) throw Error("replay exceeded the frame limit");
    std::vector<TraceEvent> events;
    if (collector) {
      const Stopwatch step;
      events = process_frame(scene, config);
      collector->record(step.elapsed_ms());
    } else {
      events = process_frame(scene, config);
    }
    result.trace.insert(result.trace.end(), std::make_move_iterator(events.begin()),
                        std::make_move_iterator(events.end()));
  }
  result.final_score = scene.board().peg_count();
  result.final_state = scene.state;
  result.frames = scene.frame;
  return result;
}

}  // namespace pegtwin
