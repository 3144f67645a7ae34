# coding: utf-8

# # Stopping-time thresholds and the staged controller
#
# The warning fires when the time to collision drops below the time a driver
# needs to react and brake; the three braking stages fire when it drops below
# the time the car itself needs to stop at each stage's deceleration.

# In[1]:

from aebbench.controller import AebState, ControllerParams, step, thresholds
from aebbench.tracking import MioReport

p = ControllerParams()
print(f"reaction {p.tau_react} s, driver {p.a_driver} m/s^2, "
      f"stages {p.a_pb1} / {p.a_pb2} / {p.a_fb} m/s^2")

print(" v (km/h)   FCW     PB1     PB2     FB")
for kmh in (10, 20, 30, 50, 70, 90, 130):
    th = thresholds(kmh / 3.6, p)
    print(f"{kmh:8d} {th.t_fcw:7.3f} {th.t_pb1:7.3f} {th.t_pb2:7.3f} {th.t_fb:7.3f}")


# Feed the controller a target we close on at a constant 10 m/s while the
# ego holds 50 km/h, so TTC falls linearly. The stage steps up each time TTC
# crosses the next threshold.

# In[2]:

v_ego = 50 / 3.6
state = AebState.DEFAULT
prev = None
for k in range(60):
    distance = 60.0 - 1.0 * k
    out = step(state, MioReport(1, distance, -10.0), v_ego, p)
    if out.state != prev:
        print(f"distance {distance:5.1f} m  ttc {out.ttc:5.2f} s  -> {out.state.label:7s} "
              f"decel {out.commanded_deceleration} m/s^2")
    state = prev = out.state


# Warnings clear with a margin: FCW holds until TTC climbs above 1.2 times
# the FCW threshold. A braking stage is released only once the gap opens
# faster than 0.5 m/s, so the brakes are not cut while the stop is still in
# progress. Stopping the car, or losing the target, resets to Default.

# In[3]:

th = thresholds(v_ego, p)
for ttc in (th.t_fcw * 1.1, th.t_fcw * 1.3):
    out = step(AebState.FCW, MioReport(1, 10.0 * ttc, -10.0), v_ego, p)
    print(f"FCW at ttc {ttc:5.2f} s -> {out.state.label}")
for rel_v in (-2.0, 0.2, 1.0):
    out = step(AebState.PB1, MioReport(1, 30.0, rel_v), v_ego, p)
    print(f"PB1, relative speed {rel_v:+.1f} m/s -> {out.state.label}")
out = step(AebState.FB, MioReport(1, 2.0, -1.0), 0.0, p)
print(f"FB with the ego stopped -> {out.state.label}")
