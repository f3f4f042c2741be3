"""SVG figures for the command-line reports.

Figures are 800x500 user units: the canvas is sized in points at 72 dpi so the
SVG viewBox comes out as "0 0 800 500".
"""

import numpy as np
from matplotlib import rc_context
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

WIDTH, HEIGHT, DPI = 800, 500, 72
STYLES = {"mv": dict(color="tab:blue", ls="-"), "cay": dict(color="tab:red", ls="--")}


def _figure():
    fig = Figure(figsize=(WIDTH / DPI, HEIGHT / DPI), dpi=DPI)
    FigureCanvasSVG(fig)
    return fig


def save_svg(fig, path):
    # fixed hash salt and no date so repeated runs write identical files
    with rc_context({"svg.hashsalt": "suslov"}):
        fig.savefig(path, format="svg", metadata={"Date": None})


def trajectory_figure(trajectories, reference=None, title=""):
    """M1 and M2 against t for each run, with E_c and rho insets.

    ``trajectories`` maps a label to a Trajectory; ``reference`` is an optional
    (t, M) pair drawn in grey.
    """
    fig = _figure()
    ax = fig.add_axes([0.08, 0.11, 0.56, 0.80])
    if reference is not None:
        t, M = reference
        ax.plot(t, M[:, 0], color="0.6", lw=3, alpha=0.6, label="reference M1, M2")
        ax.plot(t, M[:, 1], color="0.6", lw=3, alpha=0.6)
    for name, traj in trajectories.items():
        st = STYLES.get(traj.scheme, {})
        t = traj.column("t")
        ax.plot(t, traj.column("M1"), label=f"{name} M1", **st)
        ax.plot(t, traj.column("M2"), label=f"{name} M2", lw=1, **{**st, "ls": ":"})
        if traj.failure is not None and len(t):
            ax.axvline(t[-1], color=st.get("color", "k"), lw=0.8, alpha=0.5)
    ax.set_xlabel("t")
    ax.set_ylabel("momentum")
    ax.set_title(title)
    ax.legend(fontsize=8, loc="best")
    for slot, (col, label) in enumerate((("Ec", "E_c"), ("rho", "rho"))):
        ins = fig.add_axes([0.74, 0.57 - 0.46 * slot, 0.23, 0.34])
        for name, traj in trajectories.items():
            ins.plot(traj.column("t"), traj.column(col), lw=1, **STYLES.get(traj.scheme, {}))
        ins.set_title(label, fontsize=9)
        ins.tick_params(labelsize=7)
        ins.ticklabel_format(axis="y", useOffset=False, style="sci", scilimits=(-3, 3))
    return fig


def order_figure(reports):
    """Log-log one-step error against eps with a slope-3 guide."""
    fig = _figure()
    ax = fig.add_axes([0.1, 0.12, 0.85, 0.78])
    for name, rep in reports.items():
        e = np.array(rep.eps_grid)
        ax.loglog(e, rep.one_step_errors, marker="o", label=f"{name} (slope {rep.fitted_slope:.3f})",
                  **STYLES.get(name, {}))
    e = np.array(next(iter(reports.values())).eps_grid)
    err = np.array(next(iter(reports.values())).one_step_errors)
    ax.loglog(e, err[-1] * (e / e[-1]) ** 3, color="0.5", lw=0.8, label="eps^3")
    ax.set_xlabel("eps")
    ax.set_ylabel("one-step error")
    ax.legend()
    return fig


def wp_figure(tables):
    """Terminal global error against wall time (work-precision)."""
    fig = _figure()
    ax = fig.add_axes([0.1, 0.12, 0.85, 0.78])
    for name, rows in tables.items():
        ok = [r for r in rows if r.failure is None and r.global_err > 0]
        if ok:
            ax.loglog([r.wall_ns * 1e-9 for r in ok], [r.global_err for r in ok], marker="o",
                      label=name, **STYLES.get(name, {}))
    ax.set_xlabel("wall time [s]")
    ax.set_ylabel("terminal global error")
    ax.legend()
    return fig


def invariant_figure(trajectories):
    """Relative drift of each scheme's invariant over a run."""
    fig = _figure()
    ax = fig.add_axes([0.1, 0.12, 0.85, 0.78])
    for name, traj in trajectories.items():
        col = traj.column("scheme_invariant")
        drift = np.abs(col - col[0]) / abs(col[0])
        ax.semilogy(traj.column("t"), np.maximum(drift, 1e-17), label=name, **STYLES.get(traj.scheme, {}))
    ax.set_xlabel("t")
    ax.set_ylabel("relative invariant drift")
    ax.legend()
    return fig


__all__ = ["trajectory_figure", "order_figure", "wp_figure", "invariant_figure", "save_svg"]
