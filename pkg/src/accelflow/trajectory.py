"""Time-stamped trajectories shared by the discrete methods and the ODE flows."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np


@dataclass
class Trajectory:
    """Sampled path: strictly increasing times, one point per time, f-values.

    ``channels`` holds named optional scalar series (energy, restart flags,
    per-step errors); ``states`` keeps the full integrator state when the
    trajectory comes from a flow.
    """

    times: np.ndarray            # (m,)
    points: np.ndarray           # (m, dim)
    f_values: np.ndarray         # (m,)
    channels: dict = field(default_factory=dict)
    states: Optional[np.ndarray] = None   # (m, state_dim)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))
        self.f_values = np.asarray(self.f_values, dtype=float)
        m = self.times.size
        if self.points.shape[0] != m or self.f_values.size != m:
            raise ValueError("times, points and f_values must have equal length")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        for name, series in self.channels.items():
            if np.asarray(series).shape[0] != m:
                raise ValueError(f"channel {name!r} length does not match times")
        if self.states is not None and self.states.shape[0] != m:
            raise ValueError("states length does not match times")

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.times.size
