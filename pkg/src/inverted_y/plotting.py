"""Figure rendering for exported spectra (matplotlib, non-interactive)."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

RC = {
    "font.size": 10,
    "axes.labelsize": 11,
    "axes.linewidth": 0.8,
    "lines.linewidth": 1.4,
    "xtick.direction": "in",
    "ytick.direction": "in",
    "xtick.top": True,
    "ytick.right": True,
    "legend.frameon": False,
    "svg.hashsalt": "inverted-y",
}

# keep vector output byte-stable between runs
_METADATA = {".svg": {"Date": None}, ".pdf": {"CreationDate": None, "ModDate": None},
             ".png": {}, ".eps": {"CreationDate": None}}


def plot_spectra(curves, path, gamma_mhz=6.0, title=None):
    """Write one figure with every (label, Spectrum) pair in ``curves``.

    The lower axis is in units of gamma2; the upper axis repeats it in MHz
    using ``gamma_mhz``.
    """
    path = Path(path)
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(4.5, 3.2))
        for i, (label, spec) in enumerate(curves):
            ax.plot(spec.deltas, spec.values, label=label, linestyle="-" if i == 0 else "--")
        channel = curves[0][1].channel.value
        sub = "k" if channel == "S2" else "q"
        ax.set_xlabel(rf"$\delta_{sub}/\gamma$")
        ax.set_ylabel(rf"$S_{channel[1]}$ $(1/\gamma)$")
        ax.set_xlim(curves[0][1].grid.delta_min, curves[0][1].grid.delta_max)
        ax.set_ylim(bottom=0)
        top = ax.secondary_xaxis("top", functions=(lambda x: x * gamma_mhz, lambda x: x / gamma_mhz))
        top.set_xlabel(rf"$\delta_{sub}$ (MHz, $\gamma$ = {gamma_mhz:g} MHz)")
        if len(curves) > 1:
            ax.legend()
        if title:
            ax.set_title(title, fontsize=10)
        fig.tight_layout()
        fig.savefig(path, metadata=_METADATA.get(path.suffix.lower()))
        plt.close(fig)
    return path
