#include "scenarios.hpp"

#include <numbers>

#include "stlf/errors.hpp"

namespace stlf::envs::detail {

namespace {

void push(TraceBuilder& out, std::size_t index, const Vec3& v) { out.push(index, std::span<const double>(v)); }

void push(TraceBuilder& out, std::size_t index, double x) { out.push(index, std::span<const double>(&x, 1)); }

void set_action(std::span<double> u, const Vec3& a) {
  for (std::size_t i = 0; i < 3; ++i) u[i] = a[i];
}

// ---------------------------------------------------------------------------
// PR: reach a point. The arm starts on the line from home to the target,
// 0.28 m short of it.
class PointReaching final : public Scenario {
 public:
  void reset(const InputVector& in, Plant& ee) override {
    target_ = {in[0], in[1], in[2]};
    const Vec3 d = target_ - kHome;
    const double dist = norm(d);
    ee.p = target_ - d * (kStartOffset / dist);
    ee.v = {};
  }

  void control(const Plant& ee, const StepInfo& info, std::span<double> u) override {
    set_action(u, track(target_, ee, info.gains));
  }

  void advance(Plant& ee, std::span<const double>, const StepInfo&) override { ee.floor(0.0); }

  void emit(const Plant& ee, TraceBuilder& out) const override {
    push(out, 0, ee.p);
    push(out, 1, target_);
  }

 private:
  static constexpr double kStartOffset = 0.28;
  Vec3 target_{};
};

// ---------------------------------------------------------------------------
// CS: pick a cube from a fixed spot and stack it on a base cube at the goal.
// The target point is the release point slightly above the stacked pose.
class CubeStacking final : public Scenario {
 public:
  void reset(const InputVector& in, Plant& ee) override {
    goal_ = {in[0], in[1], kBaseTop + kHalf + kReleaseGap};
    cube_ = kCubeStart;
    attached_ = false;
    phase_ = 0;
    ee.p = kHome;
    ee.v = {};
  }

  void control(const Plant& ee, const StepInfo& info, std::span<double> u) override {
    const Vec3 wp = waypoint(ee, info);
    set_action(u, track(wp, ee, info.gains));
  }

  void advance(Plant& ee, std::span<const double>, const StepInfo&) override {
    ee.floor(0.0);
    if (attached_) cube_ = ee.p;
  }

  void emit(const Plant&, TraceBuilder& out) const override {
    push(out, 0, cube_);
    push(out, 1, goal_);
  }

 private:
  Vec3 waypoint(const Plant& ee, const StepInfo& info) {
    const Vec3 lift_pick = {kCubeStart[0], kCubeStart[1], kCarryHeight};
    const Vec3 above_goal = {goal_[0], goal_[1], kCarryHeight};
    switch (phase_) {
      case 0: {
        const Vec3 wp = kCubeStart + Vec3{0.0, 0.0, kApproach};
        if (norm(ee.p - wp) < kViaTol) ++phase_;
        return wp;
      }
      case 1:
        if (info.grasp_enabled && norm(ee.p - cube_) < info.params->grasp_distance) {
          attached_ = true;
          ++phase_;
        }
        return cube_;
      case 2:
        if (norm(ee.p - lift_pick) < kViaTol) ++phase_;
        return lift_pick;
      case 3:
        if (norm(ee.p - above_goal) < kViaTol) ++phase_;
        return above_goal;
      case 4:
        if (norm(ee.p - goal_) < kPlaceTol) {
          release();
          ++phase_;
        }
        return goal_;
      default:
        return above_goal;
    }
  }

  void release() {
    attached_ = false;
    const bool on_base = std::abs(cube_[0] - goal_[0]) < kHalf && std::abs(cube_[1] - goal_[1]) < kHalf;
    cube_[2] = on_base ? kBaseTop + kHalf : kHalf;
  }

  static constexpr double kHalf = 0.025;
  static constexpr double kBaseTop = 0.05;
  static constexpr double kReleaseGap = 0.005;  // the cube is let go just above its resting height
  static constexpr Vec3 kCubeStart = {0.45, -0.3, 0.025};
  static constexpr double kApproach = 0.12;
  static constexpr double kCarryHeight = 0.2;
  static constexpr double kViaTol = 0.03;
  static constexpr double kPlaceTol = 0.01;

  Vec3 goal_{}, cube_{};
  bool attached_ = false;
  int phase_ = 0;
};

// ---------------------------------------------------------------------------
// PH: insert a held peg into a hole with a narrow channel.
class PegInHole final : public Scenario {
 public:
  void reset(const InputVector& in, Plant& ee) override {
    hole_ = {in[0], in[1], 0.0};
    phase_ = 0;
    ee.p = kHome;
    ee.v = {};
  }

  void control(const Plant& ee, const StepInfo& info, std::span<double> u) override {
    const Vec3 above = hole_ + Vec3{0.0, 0.0, kApproach};
    if (phase_ == 0 && norm(ee.p - above) < kAlignTol) phase_ = 1;
    const Vec3 wp = phase_ == 0 ? above : hole_ + Vec3{0.0, 0.0, -kDepth};
    set_action(u, track(wp, ee, info.gains));
  }

  void advance(Plant& ee, std::span<const double>, const StepInfo&) override {
    const Vec3 off = ee.p - hole_;
    const double radial = norm_xy(off);
    if (ee.p[2] < 0.0) {
      if (inside_ || radial < kClearance) {
        // In the channel: walls hold the peg on the axis, bottom stops it.
        inside_ = true;
        if (radial > kClearance) {
          const double s = kClearance / radial;
          ee.p[0] = hole_[0] + off[0] * s;
          ee.p[1] = hole_[1] + off[1] * s;
          ee.v[0] = 0.0;
          ee.v[1] = 0.0;
        }
        ee.floor(-kDepth);
      } else {
        ee.floor(0.0);
      }
    } else {
      inside_ = false;
    }
  }

  void emit(const Plant& ee, TraceBuilder& out) const override {
    push(out, 0, ee.p);
    push(out, 1, hole_);
  }

 private:
  static constexpr double kApproach = 0.08;
  static constexpr double kAlignTol = 0.01;
  static constexpr double kClearance = 0.01;
  static constexpr double kDepth = 0.06;

  Vec3 hole_{};
  int phase_ = 0;
  bool inside_ = false;
};

// ---------------------------------------------------------------------------
// BB: keep a rolling ball on a tilting tray. Extra actions: tray tilt about
// the two horizontal axes, normalized by the tilt limit.
class BallBalancing final : public Scenario {
 public:
  std::size_t extra_actions() const override { return 2; }

  void reset(const InputVector& in, Plant& ee) override {
    ee.p = kTrayHold;
    ee.v = {};
    rel_ = {in[0] - kTrayHold[0], in[1] - kTrayHold[1]};
    rel_v_ = kInitialRoll;
    tilt_ = {0.0, 0.0};
    on_tray_ = true;
    ball_ = ball_on_tray(ee);
    ball_v_ = {};
  }

  void control(const Plant& ee, const StepInfo& info, std::span<double> u) override {
    set_action(u, track(kTrayHold, ee, info.gains));
    const double w = info.params->balance_omega;
    for (std::size_t i = 0; i < 2; ++i) {
      const double cmd = (info.flip * w * w * rel_[i] + 2.0 * w * rel_v_[i]) / kRollGain;
      u[3 + i] = cmd / kTiltMax;
    }
  }

  void advance(Plant& ee, std::span<const double> u, const StepInfo& info) override {
    ee.floor(0.0);
    const double dt = info.dt;
    if (on_tray_) {
      for (std::size_t i = 0; i < 2; ++i) {
        tilt_[i] += (kTiltMax * u[3 + i] - tilt_[i]) * dt / kTiltTau;
        const double acc = -kRollGain * tilt_[i] - ee.a[i];
        rel_v_[i] += acc * dt;
        rel_[i] += rel_v_[i] * dt;
      }
      ball_ = ball_on_tray(ee);
      if (std::hypot(rel_[0], rel_[1]) > kTrayRadius) {
        on_tray_ = false;
        ball_v_ = {rel_v_[0] + ee.v[0], rel_v_[1] + ee.v[1], ee.v[2]};
      }
      return;
    }
    ball_v_[2] -= kGravity * dt;
    ball_ = ball_ + ball_v_ * dt;
    if (ball_[2] < kBallRadius) {
      ball_[2] = kBallRadius;
      ball_v_[2] = 0.0;
    }
  }

  void emit(const Plant& ee, TraceBuilder& out) const override {
    push(out, 0, ball_);
    push(out, 1, ee.p);
  }

 private:
  Vec3 ball_on_tray(const Plant& ee) const { return ee.p + Vec3{rel_[0], rel_[1], kBallRadius}; }

  static constexpr Vec3 kTrayHold = {0.35, 0.0, 0.3};
  static constexpr std::array<double, 2> kInitialRoll = {0.25, 0.15};
  static constexpr double kRollGain = 5.0 / 7.0 * kGravity;  // solid sphere rolling on an incline
  static constexpr double kTiltMax = 0.3;
  static constexpr double kTiltTau = 0.05;
  static constexpr double kTrayRadius = 0.3;
  static constexpr double kBallRadius = 0.02;

  std::array<double, 2> rel_{}, rel_v_{}, tilt_{};
  bool on_tray_ = true;
  Vec3 ball_{}, ball_v_{};
};

// ---------------------------------------------------------------------------
// BC: intercept a thrown ball at a fixed plane and hold it.
class BallCatching final : public Scenario {
 public:
  void reset(const InputVector& in, Plant& ee) override {
    ball_ = {in[0], in[1], kLaunchHeight};
    ball_v_ = kLaunchVelocity;
    const double t = (in[0] - kInterceptX) / -kLaunchVelocity[0];
    intercept_ = ball_ + kLaunchVelocity * t + Vec3{0.0, 0.0, -0.5 * kGravity * t * t};
    caught_ = false;
    ee.p = kHome;
    ee.v = {};
  }

  void control(const Plant& ee, const StepInfo& info, std::span<double> u) override {
    set_action(u, track(intercept_, ee, info.gains));
  }

  void advance(Plant& ee, std::span<const double>, const StepInfo& info) override {
    ee.floor(0.0);
    if (caught_) {
      ball_ = ee.p;
      return;
    }
    const double dt = info.dt;
    ball_v_[2] -= kGravity * dt;
    ball_ = ball_ + ball_v_ * dt;
    if (ball_[2] <= kBallRadius) {
      ball_[2] = kBallRadius;
      ball_v_[2] = 0.0;
      const double speed = norm_xy(ball_v_);
      if (speed > 0.0) {
        const double s = std::max(0.0, speed - kFloorFriction * dt) / speed;
        ball_v_[0] *= s;
        ball_v_[1] *= s;
      }
    }
    if (info.grasp_enabled && norm(ball_ - ee.p) < info.params->grasp_distance) {
      caught_ = true;
      ball_ = ee.p;
    }
  }

  void emit(const Plant& ee, TraceBuilder& out) const override {
    push(out, 0, ball_);
    push(out, 1, ee.p);
  }

 private:
  static constexpr double kLaunchHeight = 0.6;
  static constexpr Vec3 kLaunchVelocity = {-1.6, 0.0, 1.6};
  static constexpr double kInterceptX = 0.40;
  static constexpr double kBallRadius = 0.03;
  static constexpr double kFloorFriction = 2.0;  // m/s^2

  Vec3 ball_{}, ball_v_{}, intercept_{};
  bool caught_ = false;
};

// ---------------------------------------------------------------------------
// BP: push a ball along the floor into a hole.
class BallPushing final : public Scenario {
 public:
  void reset(const InputVector& in, Plant& ee) override {
    ball_ = {in[0], in[1], kBallRadius};
    ball_v_ = {};
    captured_ = false;
    phase_ = 0;
    const Vec3 d = kHole - ball_;
    dir_ = {d[0] / norm_xy(d), d[1] / norm_xy(d), 0.0};
    ee.p = kHome;
    ee.v = {};
  }

  void control(const Plant& ee, const StepInfo& info, std::span<double> u) override {
    Gains g = info.gains;
    Vec3 wp{};
    const Vec3 behind = ball_ - dir_ * kStandoff;
    switch (phase_) {
      case 0:
        wp = behind + Vec3{0.0, 0.0, kHover};
        if (norm(ee.p - wp) < 0.02) ++phase_;
        break;
      case 1:
        wp = behind;
        if (norm(ee.p - wp) < 0.01) ++phase_;
        break;
      case 2:
        wp = {kHole[0], kHole[1], kBallRadius};
        g.v_max = std::min(g.v_max, kPushSpeed);
        if (captured_ || norm_xy(ball_ - kHole) < kStopDistance) {
          ++phase_;
          retreat_ = ee.p + Vec3{0.0, 0.0, 0.15};
        }
        break;
      default:
        wp = retreat_;
        break;
    }
    set_action(u, track(wp, ee, g));
  }

  void advance(Plant& ee, std::span<const double>, const StepInfo& info) override {
    ee.floor(0.0);
    if (captured_) return;
    const double dt = info.dt;
    // Rolling with friction.
    const double speed = norm_xy(ball_v_);
    if (speed > 0.0) {
      const double s = std::max(0.0, speed - kRollFriction * dt) / speed;
      ball_v_[0] *= s;
      ball_v_[1] *= s;
    }
    ball_[0] += ball_v_[0] * dt;
    ball_[1] += ball_v_[1] * dt;
    // Kinematic contact with the tool sphere.
    const Vec3 off = ball_ - ee.p;
    const double horiz = norm_xy(off);
    if (std::abs(off[2]) < kContact && horiz < kContact) {
      const Vec3 n = horiz > 1e-9 ? Vec3{off[0] / horiz, off[1] / horiz, 0.0} : dir_;
      ball_[0] = ee.p[0] + n[0] * kContact;
      ball_[1] = ee.p[1] + n[1] * kContact;
      const double push_speed = ee.v[0] * n[0] + ee.v[1] * n[1];
      const double along = ball_v_[0] * n[0] + ball_v_[1] * n[1];
      if (push_speed > along) {
        ball_v_[0] += (push_speed - along) * n[0];
        ball_v_[1] += (push_speed - along) * n[1];
      }
    }
    for (std::size_t i = 0; i < 2; ++i) {
      if (ball_[i] < kWorkspaceLo[i] || ball_[i] > kWorkspaceHi[i]) {
        ball_[i] = std::clamp(ball_[i], kWorkspaceLo[i], kWorkspaceHi[i]);
        ball_v_[i] = -0.5 * ball_v_[i];
      }
    }
    if (norm_xy(ball_ - kHole) < kCaptureRadius) {
      captured_ = true;
      ball_ = kHole + Vec3{0.0, 0.0, -kBallRadius};
      ball_v_ = {};
    }
  }

  void emit(const Plant&, TraceBuilder& out) const override {
    push(out, 0, ball_);
    push(out, 1, kHole);
  }

 private:
  static constexpr Vec3 kHole = {1.0, 0.0, 0.0};
  static constexpr double kBallRadius = 0.03;
  static constexpr double kToolRadius = 0.01;
  static constexpr double kContact = kBallRadius + kToolRadius;
  static constexpr double kStandoff = 0.06;
  static constexpr double kHover = 0.07;
  static constexpr double kPushSpeed = 0.5;
  static constexpr double kStopDistance = 0.1;
  static constexpr double kRollFriction = 0.3;  // m/s^2
  static constexpr double kCaptureRadius = 0.02;

  Vec3 ball_{}, ball_v_{}, dir_{}, retreat_{};
  bool captured_ = false;
  int phase_ = 0;
};

// ---------------------------------------------------------------------------
// DO: grasp a door handle and pull it open about a vertical hinge.
class DoorOpening final : public Scenario {
 public:
  void reset(const InputVector& in, Plant& ee) override {
    hinge_ = {in[0], in[1] - 0.2, kHandleHeight};
    yaw_ = 0.0;
    grasped_ = false;
    ee.p = kHome;
    ee.v = {};
  }

  void control(const Plant& ee, const StepInfo& info, std::span<double> u) override {
    if (!grasped_ && info.grasp_enabled && norm(ee.p - handle(yaw_)) < info.params->grasp_distance) grasped_ = true;
    const Vec3 wp = grasped_ ? handle(std::min(yaw_ + kLead, kOpenYaw)) : handle(yaw_);
    set_action(u, track(wp, ee, info.gains));
  }

  void advance(Plant& ee, std::span<const double>, const StepInfo& info) override {
    ee.floor(0.0);
    if (!grasped_) return;
    const Vec3 r = ee.p - hinge_;
    const double ee_yaw = (std::atan2(r[1], r[0]) - kRestAngle) * 180.0 / std::numbers::pi;
    yaw_ += (ee_yaw - yaw_) * info.dt / kYawTau;
    yaw_ = std::clamp(yaw_, 0.0, 90.0);
  }

  void emit(const Plant&, TraceBuilder& out) const override { push(out, 0, yaw_); }

 private:
  Vec3 handle(double yaw_deg) const {
    const double a = kRestAngle + yaw_deg * std::numbers::pi / 180.0;
    return hinge_ + Vec3{kArm * std::cos(a), kArm * std::sin(a), 0.0};
  }

  static constexpr double kHandleHeight = 0.4;
  static constexpr double kHandleDx = -0.05;  // handle offset from the hinge at yaw 0
  static constexpr double kHandleDy = 0.35;
  static inline const double kArm = std::hypot(kHandleDx, kHandleDy);
  static inline const double kRestAngle = std::atan2(kHandleDy, kHandleDx);
  static constexpr double kLead = 15.0;     // degrees ahead of the current yaw
  static constexpr double kOpenYaw = 50.0;  // degrees
  static constexpr double kYawTau = 0.1;

  Vec3 hinge_{};
  double yaw_ = 0.0;
  bool grasped_ = false;
};

// ---------------------------------------------------------------------------
// CP: carry a cloth from the floor onto a table.
class ClothPlacing final : public Scenario {
 public:
  void reset(const InputVector& in, Plant& ee) override {
    table_ = {in[0], in[1], kTableTop};
    cloth_ = kClothStart;
    attached_ = false;
    phase_ = 0;
    ee.p = kHome;
    ee.v = {};
  }

  void control(const Plant& ee, const StepInfo& info, std::span<double> u) override {
    const Vec3 lift = {kClothStart[0], kClothStart[1], kCarryHeight};
    const Vec3 above_table = {table_[0], table_[1], kCarryHeight};
    const Vec3 drop = {table_[0], table_[1], kTableTop + kDropHeight};
    Vec3 wp{};
    switch (phase_) {
      case 0:
        wp = kClothStart + Vec3{0.0, 0.0, kApproach};
        if (norm(ee.p - wp) < kViaTol) ++phase_;
        break;
      case 1:
        wp = cloth_;
        if (info.grasp_enabled && norm(ee.p - cloth_) < info.params->grasp_distance) {
          attached_ = true;
          ++phase_;
        }
        break;
      case 2:
        wp = lift;
        if (norm(ee.p - wp) < kViaTol) ++phase_;
        break;
      case 3:
        wp = above_table;
        if (norm(ee.p - wp) < kViaTol) ++phase_;
        break;
      case 4:
        wp = drop;
        if (norm(ee.p - wp) < kPlaceTol) {
          release();
          ++phase_;
        }
        break;
      default:
        wp = above_table;
        break;
    }
    set_action(u, track(wp, ee, info.gains));
  }

  void advance(Plant& ee, std::span<const double>, const StepInfo&) override {
    ee.floor(0.0);
    if (attached_) cloth_ = ee.p;
  }

  void emit(const Plant&, TraceBuilder& out) const override {
    push(out, 0, cloth_);
    push(out, 1, table_);
    push(out, 2, Vec3{0.0, 0.0, 0.0});
  }

 private:
  void release() {
    attached_ = false;
    const bool on_table =
        std::abs(cloth_[0] - table_[0]) <= kTableHalf && std::abs(cloth_[1] - table_[1]) <= kTableHalf;
    cloth_[2] = on_table ? kTableTop : 0.0;
  }

  static constexpr Vec3 kClothStart = {0.15, -0.5, 0.0};
  static constexpr double kTableTop = 0.1;
  static constexpr double kTableHalf = 0.15;
  static constexpr double kApproach = 0.15;
  static constexpr double kCarryHeight = 0.3;
  static constexpr double kDropHeight = 0.02;
  static constexpr double kViaTol = 0.03;
  static constexpr double kPlaceTol = 0.01;

  Vec3 table_{}, cloth_{};
  bool attached_ = false;
  int phase_ = 0;
};

}  // namespace

std::unique_ptr<Scenario> make_scenario(TaskId id) {
  switch (id) {
    case TaskId::PR: return std::make_unique<PointReaching>();
    case TaskId::CS: return std::make_unique<CubeStacking>();
    case TaskId::PH: return std::make_unique<PegInHole>();
    case TaskId::BB: return std::make_unique<BallBalancing>();
    case TaskId::BC: return std::make_unique<BallCatching>();
    case TaskId::BP: return std::make_unique<BallPushing>();
    case TaskId::DO: return std::make_unique<DoorOpening>();
    case TaskId::CP: return std::make_unique<ClothPlacing>();
  }
  throw ArgumentError("unknown task");
}

}  // namespace stlf::envs::detail
