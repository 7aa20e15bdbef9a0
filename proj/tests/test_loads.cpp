#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "pcfilm/loads.hpp"

using namespace pcfilm;

namespace {

constexpr double kPi = std::numbers::pi;

struct Field {
  FilmMesh mesh;
  std::vector<double> p;
  std::vector<double> h;
};

template <class F>
Field make_field(std::size_t nt, std::size_t ny, double length, F&& pressure, double clearance = 6e-6) {
  Field f{FilmMesh(nt, ny, length, 1e-2), {}, {}};
  f.p.resize(f.mesh.size());
  f.h.assign(f.mesh.size(), clearance);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nt; ++i) f.p[f.mesh.index(i, j)] = pressure(f.mesh.theta(i), f.mesh.y(j));
  return f;
}

}  // namespace

TEST(Loads, CosinePressureHasClosedForm) {
  const double p0 = 2e6;
  const double r = 1e-2;
  const double l = 0.035;
  const Field f = make_field(64, 21, l, [&](double th, double) { return p0 * std::cos(th); });
  const WrenchBreakdown w = oil_wrench(f.mesh, f.p, f.h, 0.0, 0.03);
  // corner averaging turns cos(theta) into cos(theta_mid) cos(dtheta / 2)
  const double c = std::cos(0.5 * f.mesh.dtheta());
  EXPECT_NEAR(w.pressure.force[0], -c * p0 * kPi * r * l, 1e-9 * p0 * r * l);
  EXPECT_NEAR(w.pressure.force[1], 0.0, 1e-9 * p0 * r * l);
  EXPECT_NEAR(w.pressure.moment[1], -c * p0 * kPi * r * l * l / 2.0, 1e-9 * p0 * r * l * l);
  EXPECT_NEAR(w.pressure.moment[0], 0.0, 1e-9 * p0 * r * l * l);
  const GeneralForce g = general_oil_force(w.pressure, l);
  EXPECT_NEAR(g.f[2], -c * p0 * kPi * r * l / 2.0, 1e-9 * p0 * r * l);
  EXPECT_NEAR(g.f[0], -c * p0 * kPi * r * l / 2.0, 1e-9 * p0 * r * l);
}

TEST(Loads, CouetteShear) {
  const double mu = 0.03;
  const double u = 0.6;
  const double c = 6e-6;
  const Field f = make_field(40, 11, 0.03, [](double, double) { return 1e6; }, c);
  const WrenchBreakdown w = oil_wrench(f.mesh, f.p, f.h, u, mu);
  const double area = 2 * kPi * 1e-2 * 0.03;
  EXPECT_NEAR(w.shear.circumferential, mu * u / c * area, 1e-12 * mu * u / c * area);
  EXPECT_NEAR(w.shear.force[0], 0.0, 1e-9 * mu * u / c * area);
  EXPECT_NEAR(w.shear.force[2], 0.0, 1e-9);
  EXPECT_NEAR(w.pressure.force[0], 0.0, 1e-9 * 1e6 * area);
}

TEST(Loads, PressurePartIsLinear) {
  std::mt19937_64 rng(71);
  const Field f = make_field(30, 17, 0.03, [](double th, double y) { return 1e6 * (1.0 + std::sin(3 * th)) * y; });
  Field g = f;
  for (double& v : g.p) v *= 2.0;
  const WrenchBreakdown a = oil_wrench(f.mesh, f.p, f.h, 0.5, 0.03);
  const WrenchBreakdown b = oil_wrench(g.mesh, g.p, g.h, 0.5, 0.03);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(b.pressure.force[k], 2.0 * a.pressure.force[k]);
    EXPECT_EQ(b.pressure.moment[k], 2.0 * a.pressure.moment[k]);
  }
}

TEST(Loads, QuadratureConvergesAtSecondOrder) {
  const double l = 0.035;
  auto pressure = [&](double th, double y) { return 1e6 * (1.0 + 0.3 * std::cos(th) + 0.2 * std::sin(th)) * std::exp(y / l); };
  std::vector<WrenchBreakdown> w;
  for (std::size_t cells : {10u, 20u, 40u, 80u}) {
    const Field f = make_field(48, cells + 1, l, pressure);
    w.push_back(oil_wrench(f.mesh, f.p, f.h, 0.0, 0.03));
  }
  auto check = [&](auto get) {
    for (std::size_t k = 0; k + 2 < w.size(); ++k) {
      const double d1 = get(w[k]) - get(w[k + 1]);
      const double d2 = get(w[k + 1]) - get(w[k + 2]);
      const double ratio = d1 / d2;
      EXPECT_GE(ratio, 3.5);
      EXPECT_LE(ratio, 4.5);
    }
  };
  check([](const WrenchBreakdown& b) { return b.pressure.force[0]; });
  check([](const WrenchBreakdown& b) { return b.pressure.force[1]; });
  check([](const WrenchBreakdown& b) { return b.pressure.moment[1]; });
}

TEST(Loads, AxisymmetricPressureHasNoLateralForce) {
  const Field f = make_field(50, 30, 0.03, [](double, double y) { return 1e7 * (1.0 - y / 0.03) + 0.5e6; });
  const WrenchBreakdown w = oil_wrench(f.mesh, f.p, f.h, 0.6, 0.03);
  const double scale = 1e7 * kPi * 1e-4;
  const WrenchPart t = w.total();
  EXPECT_LE(std::abs(t.force[0]), 1e-10 * scale);
  EXPECT_LE(std::abs(t.force[1]), 1e-10 * scale);
  EXPECT_LE(std::abs(t.moment[0]), 1e-10 * scale * 0.03);
  EXPECT_LE(std::abs(t.moment[1]), 1e-10 * scale * 0.03);
  EXPECT_GT(std::abs(t.force[2]), 0.0);
}

TEST(Loads, CavitationFloorClampsNegativePressure) {
  const Field f = make_field(40, 11, 0.03, [](double th, double) { return 1e6 * std::cos(th); });
  OilWrenchOptions o;
  o.cavitation_floor = true;
  const WrenchBreakdown a = oil_wrench(f.mesh, f.p, f.h, 0.0, 0.03);
  const WrenchBreakdown b = oil_wrench(f.mesh, f.p, f.h, 0.0, 0.03, o);
  EXPECT_LT(a.pressure.force[0], 0.0);
  EXPECT_LT(b.pressure.force[0], 0.0);
  EXPECT_GT(b.pressure.force[0], a.pressure.force[0]);
}

TEST(Loads, GeneralForceRoundTrip) {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int trial = 0; trial < 20; ++trial) {
    WrenchPart w;
    w.force = {u(rng), u(rng), u(rng)};
    w.moment = {u(rng), u(rng), u(rng)};
    const GeneralForce g = general_oil_force(w, 0.04);
    const Vec4 back = lateral_wrench(g, 0.04);
    EXPECT_NEAR(back[0], w.force[0], 1e-12);
    EXPECT_NEAR(back[1], w.force[1], 1e-12);
    EXPECT_NEAR(back[2], w.moment[0], 1e-12);
    EXPECT_NEAR(back[3], w.moment[1], 1e-12);
  }
}

TEST(Loads, ExternalAndInertialLoads) {
  PumpConfig pump;
  const double p = 10e6;
  EXPECT_NEAR(piston_thrust(pump, p), p * kPi * 1e-4, 1e-9);
  const GeneralForce e0 = external_force(pump, 0.0, p);
  const double mag = p * kPi * 1e-4 * std::tan(pump.swashplate_angle);
  EXPECT_EQ(e0.kind, ForceKind::External);
  EXPECT_NEAR(e0.f[2], -mag, 1e-9 * mag);
  EXPECT_NEAR(e0.f[3], 0.0, 1e-9 * mag);
  EXPECT_EQ(e0.f[0], 0.0);
  const GeneralForce eq = external_force(pump, 0.25 * pump.period(), p);
  EXPECT_NEAR(eq.f[3], mag, 1e-9 * mag);
  EXPECT_NEAR(eq.norm(), mag, 1e-9 * mag);

  const GeneralForce in = inertial_force(pump, 0.1);
  const double a = pump.angular_speed() * pump.angular_speed() * pump.pitch_radius;
  const Vec4 lat = lateral_wrench(in, 0.04);
  EXPECT_NEAR(lat[0], (pump.piston_mass + pump.slipper_mass) * a, 1e-12);
  EXPECT_EQ(lat[1], 0.0);
  const GeneralForce sum = e0 + in;
  for (int k = 0; k < 4; ++k) EXPECT_EQ(sum.f[k], e0.f[k] + in.f[k]);
  EXPECT_EQ(sum.kind, ForceKind::Total);
}

TEST(Loads, SizeMismatchThrows) {
  const FilmMesh mesh(10, 8, 0.03, 1e-2);
  std::vector<double> p(mesh.size(), 0.0);
  std::vector<double> h(3, 1e-6);
  EXPECT_THROW(oil_wrench(mesh, p, h, 0.0, 0.03), Error);
}
