"""Named parameter sets for the six reference surfaces."""
from dataclasses import dataclass
from typing import Union

from .branched import BranchParams
from .geometry import FootballParams


@dataclass(frozen=True)
class Preset:
    identifier: str
    params: Union[FootballParams, BranchParams]

    def describe(self) -> str:
        p = self.params
        if isinstance(p, FootballParams):
            return f"{self.identifier}  football alpha={p.alpha:g} B={p.B:g} lambda={p.lam}"
        return f"{self.identifier}  branched alpha={p.alpha} b={p.b:g}"


PRESETS = {
    p.identifier: p
    for p in (
        Preset("ex5_1", FootballParams(0.5, 1)),
        Preset("ex5_2", FootballParams(0.5, 2)),
        Preset("ex5_3", FootballParams(0.5, 4)),
        Preset("ex5_4", FootballParams(0.25, 8)),
        Preset("ex5_5", FootballParams(0.125, 16)),
        Preset("ex5_6", BranchParams(2, 1.0)),
    )
}


def get_preset(identifier: str) -> Preset:
    try:
        return PRESETS[identifier]
    except KeyError:
        raise KeyError(f"unknown preset {identifier!r}; choose from {', '.join(PRESETS)}") from None
