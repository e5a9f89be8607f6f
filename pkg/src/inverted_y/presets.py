"""Parameter sets of the published figures, in scenario-file form.

Amplitudes and Rabi frequencies use the same (magnitude, phase in degrees)
convention as scenario files, so presets go through the exact same parser.
"""
from __future__ import annotations

from dataclasses import dataclass, field

SQRT_HALF = 0.5 ** 0.5


@dataclass(frozen=True)
class Preset:
    name: str
    figure: str
    summary: str
    data: dict = field(repr=False)


def _preset(name, figure, summary, omegas, initial, gamma3=1.0, **extra):
    o12, o24, o23 = omegas
    data = {
        "drive": {"omega12": o12, "omega24": o24, "omega23": o23,
                  "delta1": 0.0, "delta2": 0.0, "delta3": 0.0},
        "decay": {"gamma2": 1.0, "gamma3": gamma3},
        "initial": initial,
    }
    data.update(extra)
    return Preset(name, figure, summary, data)


_A1 = {"a1": 1.0}

_ALL = [
    _preset("fig2a", "Fig. 2(a)", "Ω₁₂=Ω₂₄=Ω₂₃=0.5γ, a₂(0)=1", (0.5, 0.5, 0.5), {"a2": 1.0}),
    _preset("fig2b", "Fig. 2(b)", "Ω₁₂=Ω₂₄=Ω₂₃=0.5γ, a₃(0)=1", (0.5, 0.5, 0.5), {"a3": 1.0}),
    _preset("fig2c", "Fig. 2(c)", "Ω₁₂=Ω₂₄=Ω₂₃=0.5γ, a₂(0)=√0.8, a₃(0)=√0.2", (0.5, 0.5, 0.5),
            {"a2": 0.8 ** 0.5, "a3": 0.2 ** 0.5}),
    _preset("fig2d", "Fig. 2(d)", "Ω₁₂=Ω₂₄=Ω₂₃=0.5γ, a₁(0)=−a₄(0)=√0.5 (dark state)", (0.5, 0.5, 0.5),
            {"a1": SQRT_HALF, "a4": [SQRT_HALF, 180.0]}),
    _preset("fig3a", "Fig. 3(a)", "Ω₁₂=0.5γ, Ω₂₄=Ω₂₃=0.50γ, a₁(0)=1", (0.5, 0.5, 0.5), _A1),
    _preset("fig3b", "Fig. 3(b)", "Ω₁₂=0.5γ, Ω₂₄=Ω₂₃=1.0γ, a₁(0)=1", (0.5, 1.0, 1.0), _A1),
    _preset("fig3c", "Fig. 3(c)", "Ω₁₂=0.5γ, Ω₂₄=2.0γ, Ω₂₃=1.0γ, a₁(0)=1", (0.5, 2.0, 1.0), _A1),
    _preset("fig3d", "Fig. 3(d)", "Ω₁₂=0.5γ, Ω₂₄=2.0γ, Ω₂₃=2.0γ, a₁(0)=1", (0.5, 2.0, 2.0), _A1),
    _preset("fig3e", "Fig. 3(e)", "Ω₁₂=0.5γ, Ω₂₄=2.0γ, Ω₂₃=4.0γ, a₁(0)=1", (0.5, 2.0, 4.0), _A1),
    _preset("fig3f", "Fig. 3(f)", "Ω₁₂=0.5γ, Ω₂₄=3.0γ, Ω₂₃=4.0γ, a₁(0)=1", (0.5, 3.0, 4.0), _A1),
    _preset("fig4", "Fig. 4 (solid)", "Ω₁₂=0.5γ, Ω₂₃=4.0γ, Ω₂₄=3.0γ, γ₃=γ, a₁(0)=1", (0.5, 3.0, 4.0), _A1),
    _preset("fig4-lambda", "Fig. 4 (dashed)", "Λ scheme: Ω₁₂=0.5γ, Ω₂₄=3.0γ, Ω₂₃=0, a₁(0)=1",
            (0.5, 3.0, 0.0), _A1),
    _preset("fig5a", "Fig. 5(a)", "γ₃=0.5γ, Ω₁₂=0.5γ, Ω₂₄=2.0γ, Ω₂₃=4.0γ, a₁(0)=1", (0.5, 2.0, 4.0), _A1,
            gamma3=0.5),
    _preset("fig5b", "Fig. 5(b) (solid)", "γ₃=0.1γ, Ω₁₂=0.5γ, Ω₂₄=2.0γ, Ω₂₃=4.0γ, a₁(0)=1",
            (0.5, 2.0, 4.0), _A1, gamma3=0.1),
    _preset("fig5b-gamma3-zero", "Fig. 5(b) (dashed)", "γ₃=0, Ω₁₂=0.5γ, Ω₂₄=2.0γ, Ω₂₃=4.0γ, a₁(0)=1",
            (0.5, 2.0, 4.0), _A1, gamma3=0.0),
    _preset("natural", "none", "all Ω=0, a₂(0)=1 (bare natural line)", (0.0, 0.0, 0.0), {"a2": 1.0}),
]

PRESETS = {p.name: p for p in _ALL}

# presets reproducing published panels, in figure order
FIGURE_PRESETS = [p.name for p in _ALL if p.figure != "none"]


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}") from None


def preset_table():
    """Plain-text table of preset name, parameters and source figure."""
    rows = [("name", "parameters", "source")]
    rows += [(p.name, p.summary, p.figure) for p in _ALL]
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    lines = [f"{a:<{w0}}  {b:<{w1}}  {c}" for a, b, c in rows]
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines)
