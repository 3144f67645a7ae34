"""Static SVG time-series charts for a run, written directly as text.

Five charts per run: TTC against the four stopping-time thresholds, AEB
state, ego velocity, ego acceleration and headway to the MIO lane target.
"""

import math
from xml.sax.saxutils import escape

from .controller import AebState

PLOT_SUFFIXES = ("ttc", "aeb_state", "velocity", "acceleration", "headway")

WIDTH, HEIGHT = 720, 360
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 150, 40, 50
COLORS = ("#1f77b4", "#d62728", "#ff7f0e", "#2ca02c", "#9467bd")


def _nice_ticks(lo, hi, n=5):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.floor(lo / step) * step
    ticks = []
    v = start
    while v <= hi + 1e-9 * step:
        ticks.append(round(v, 10))
        v += step
    return ticks


def _fmt(v):
    return f"{v:.2f}".rstrip("0").rstrip(".") if v != 0 else "0"


def svg_chart(title, t, series, ylabel, ylim=None, step=False, ytick_labels=None):
    """Render one chart.

    ``series`` is a list of (label, values). Non-finite values, and values
    outside ``ylim`` when one is given, break the line rather than being
    drawn. ``ytick_labels`` maps tick values to text for categorical axes.
    """
    finite = [v for _, ys in series for v in ys if math.isfinite(v)]
    if ylim is None:
        lo, hi = (min(finite), max(finite)) if finite else (0.0, 1.0)
        if hi - lo < 1e-9:
            lo, hi = lo - 1.0, hi + 1.0
        pad = 0.05 * (hi - lo)
        lo, hi = lo - pad, hi + pad
    else:
        lo, hi = ylim
    t0, t1 = (t[0], t[-1]) if len(t) > 1 else (0.0, 1.0)
    if t1 <= t0:
        t1 = t0 + 1.0
    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def px(x):
        return MARGIN_L + (x - t0) / (t1 - t0) * pw

    def py(y):
        return MARGIN_T + (hi - y) / (hi - lo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15">{escape(title)}</text>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" '
        f'stroke="black"/>',
    ]
    yticks = sorted(ytick_labels) if ytick_labels else _nice_ticks(lo, hi)
    for v in yticks:
        if not lo - 1e-9 <= v <= hi + 1e-9:
            continue
        y = py(v)
        label = ytick_labels[v] if ytick_labels else _fmt(v)
        out.append(f'<line x1="{MARGIN_L}" y1="{y:.2f}" x2="{MARGIN_L + pw}" y2="{y:.2f}" '
                   f'stroke="#dddddd"/>')
        out.append(f'<text x="{MARGIN_L - 6}" y="{y + 4:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{escape(label)}</text>')
    for v in _nice_ticks(t0, t1):
        if not t0 - 1e-9 <= v <= t1 + 1e-9:
            continue
        x = px(v)
        out.append(f'<text x="{x:.2f}" y="{MARGIN_T + ph + 16}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11">{_fmt(v)}</text>')
    out.append(f'<text x="{MARGIN_L + pw / 2:.1f}" y="{HEIGHT - 10}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="12">time (s)</text>')
    out.append(f'<text x="16" y="{MARGIN_T + ph / 2:.1f}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="12" '
               f'transform="rotate(-90 16 {MARGIN_T + ph / 2:.1f})">{escape(ylabel)}</text>')

    for k, (label, ys) in enumerate(series):
        color = COLORS[k % len(COLORS)]
        for seg in _segments(t, ys, lo, hi, step):
            pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in seg)
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.6" '
                       f'points="{pts}"/>')
        ly = MARGIN_T + 14 + 18 * k
        lx = MARGIN_L + pw + 12
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 20}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 26}" y="{ly}" font-family="sans-serif" '
                   f'font-size="11">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _segments(t, ys, lo, hi, step):
    segs, cur = [], []
    for x, y in zip(t, ys):
        if not math.isfinite(y) or y < lo - 1e-9 or y > hi + 1e-9:
            if cur:
                segs.append(cur)
            cur = []
            continue
        if step and cur:
            cur.append((x, cur[-1][1]))
        cur.append((x, y))
    if cur:
        segs.append(cur)
    return [s if len(s) > 1 else s * 2 for s in segs]


def emit_plots(r, path_prefix):
    """Write the five charts; returns the file paths in plot order."""
    log = r.log
    t = [row.t for row in log]
    name = f"{r.scenario} (seed {r.seed}{'' if r.aeb_enabled else ', AEB off'})"
    th_max = max((row.t_fcw for row in log), default=1.0)
    charts = {
        "ttc": svg_chart(
            f"TTC vs. stopping time - {name}", t,
            [("TTC", [row.ttc for row in log]),
             ("FCW", [row.t_fcw for row in log]),
             ("PB1", [row.t_pb1 for row in log]),
             ("PB2", [row.t_pb2 for row in log]),
             ("FB", [row.t_fb for row in log])],
            "TTC / threshold (s)", ylim=(0.0, 2.0 * th_max)),
        "aeb_state": svg_chart(
            f"AEB state - {name}", t,
            [("state", [float(AebState.from_label(row.aeb_state)) for row in log]),
             ("FCW active", [float(row.fcw_active) for row in log])],
            "state", ylim=(-0.2, 4.2), step=True,
            ytick_labels={float(s): s.label for s in AebState}),
        "velocity": svg_chart(f"Ego velocity - {name}", t,
                              [("ego speed", [row.ego_speed for row in log])], "speed (m/s)"),
        "acceleration": svg_chart(f"Ego acceleration - {name}", t,
                                  [("ego accel", [row.ego_accel for row in log])],
                                  "acceleration (m/s^2)", step=True),
        "headway": svg_chart(f"Headway to MIO - {name}", t,
                             [("headway", [row.headway for row in log])], "headway (m)"),
    }
    paths = []
    for suffix in PLOT_SUFFIXES:
        path = f"{path_prefix}_{suffix}.svg"
        with open(path, "w") as fh:
            fh.write(charts[suffix])
        paths.append(path)
    return paths
