"""Elliptical billiard trajectories recorded in (arclength, angle) phase space."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import cached_property

import numpy as np
from scipy.integrate import quad

from ..model import Dataset

ORIGIN_STEP = 1e-9      # advance before intersecting, drops the root at the origin
TANGENT_TOL = 1e-9      # |cos| between heading and normal below this is a grazing ray
RESEED_STEP = 0.001     # degrees added to a grazing seed
QUAD_EPSREL = 1e-13


@dataclass(frozen=True)
class BilliardConfig:
    a_values: tuple[float, ...] = (1.0, 1.1, 1.2)
    b: float = 1.0
    trajectories_per_cluster: int = 20
    reflections: int = 50
    seed_step: float = 3.0          # degrees
    base_position: float = 10.0     # boundary parameter of the first seed, degrees
    base_heading: float = 145.0     # direction of the first seed, degrees

    def __post_init__(self):
        object.__setattr__(self, "a_values", tuple(float(a) for a in self.a_values))
        if not self.a_values or any(a <= 0 for a in self.a_values) or self.b <= 0:
            raise ValueError("ellipse semi-axes must be positive")
        if self.reflections < 1 or self.trajectories_per_cluster < 1:
            raise ValueError("need at least one trajectory and one reflection")
        if self.seed_step <= 0:
            raise ValueError("seed_step must be positive")


class Ellipse:
    """x^2/a^2 + y^2/b^2 = 1 with arclength measured CCW from (a, 0)."""

    def __init__(self, a: float, b: float):
        self.a = float(a)
        self.b = float(b)

    def point(self, t: float) -> np.ndarray:
        return np.array([self.a * math.cos(t), self.b * math.sin(t)])

    def parameter(self, p) -> float:
        return math.atan2(p[1] / self.b, p[0] / self.a) % (2 * math.pi)

    def residual(self, p) -> float:
        return abs((p[0] / self.a) ** 2 + (p[1] / self.b) ** 2 - 1.0)

    def normal(self, p) -> np.ndarray:
        n = np.array([p[0] / self.a ** 2, p[1] / self.b ** 2])
        return n / np.linalg.norm(n)

    def tangent(self, p) -> np.ndarray:
        n = self.normal(p)
        return np.array([-n[1], n[0]])

    def _speed(self, t: float) -> float:
        return math.hypot(self.a * math.sin(t), self.b * math.cos(t))

    def arclength(self, t: float) -> float:
        if t == 0.0:
            return 0.0
        return quad(self._speed, 0.0, t, epsabs=0.0, epsrel=QUAD_EPSREL, limit=200)[0]

    @cached_property
    def perimeter(self) -> float:
        return self.arclength(2 * math.pi)

    def normalized_arclength(self, p) -> float:
        s = self.arclength(self.parameter(p)) / self.perimeter
        return 0.0 if s >= 1.0 else s

    def next_hit(self, p: np.ndarray, u: np.ndarray) -> np.ndarray:
        q = p + ORIGIN_STEP * u
        qs = np.array([q[0] / self.a, q[1] / self.b])
        us = np.array([u[0] / self.a, u[1] / self.b])
        aa = us @ us
        bb = qs @ us
        cc = qs @ qs - 1.0
        root = math.sqrt(max(bb * bb - aa * cc, 0.0))
        t = (-bb + root) / aa if bb <= 0 else -cc / (bb + root)
        hit = q + t * u
        hs = np.array([hit[0] / self.a, hit[1] / self.b])
        return hit / np.linalg.norm(hs)


def reflect(u: np.ndarray, n: np.ndarray) -> np.ndarray:
    r = u - 2.0 * (u @ n) * n
    return r / np.linalg.norm(r)


@dataclass
class Bounce:
    point: np.ndarray
    incoming: np.ndarray
    outgoing: np.ndarray
    arclength: float      # normalized, in [0, 1)
    angle: float          # outgoing direction vs CCW tangent, in (0, pi)


@dataclass
class Trajectory:
    a: float
    b: float
    position_deg: float
    heading_deg: float
    bounces: list = field(default_factory=list)

    def phase_vector(self) -> tuple[float, ...]:
        out = []
        for bn in self.bounces:
            out.extend((bn.arclength, bn.angle))
        return tuple(out)


def simulate_trajectory(a: float, b: float, position_deg: float, heading_deg: float,
                        reflections: int) -> Trajectory:
    table = Ellipse(a, b)
    p = table.point(math.radians(position_deg))
    h = math.radians(heading_deg)
    u = np.array([math.cos(h), math.sin(h)])
    if abs(u @ table.normal(p)) < TANGENT_TOL:
        raise GrazingSeed(position_deg, heading_deg)
    if u @ table.normal(p) > 0:
        raise ValueError(f"heading {heading_deg} deg at position {position_deg} deg leaves the table")
    traj = Trajectory(a, b, position_deg, heading_deg)
    for _ in range(reflections):
        hit = table.next_hit(p, u)
        out = reflect(u, table.normal(hit))
        tang = table.tangent(hit)
        alpha = math.acos(max(-1.0, min(1.0, float(out @ tang))))
        traj.bounces.append(Bounce(hit, u, out, table.normalized_arclength(hit), alpha))
        p, u = hit, out
    return traj


class GrazingSeed(Exception):
    def __init__(self, position_deg, heading_deg):
        super().__init__(f"grazing seed at position {position_deg} deg, heading {heading_deg} deg")


@dataclass
class BilliardRun:
    dataset: Dataset
    trajectories: list
    adjustments: list     # {"cluster", "trajectory", "heading_deg"} for re-seeded rays
    config: BilliardConfig

    def metadata(self) -> dict:
        return {"config": asdict(self.config), "adjustments": list(self.adjustments)}


def simulate_billiard(cfg: BilliardConfig = BilliardConfig()) -> BilliardRun:
    rows, labels, trajs, adjustments = [], [], [], []
    for c, a in enumerate(cfg.a_values):
        for i in range(cfg.trajectories_per_cluster):
            pos = cfg.base_position + i * cfg.seed_step
            head = cfg.base_heading + i * cfg.seed_step
            while True:
                try:
                    traj = simulate_trajectory(a, cfg.b, pos, head, cfg.reflections)
                    break
                except GrazingSeed:
                    head += RESEED_STEP
                    adjustments.append({"cluster": c, "trajectory": i, "heading_deg": head})
            trajs.append(traj)
            rows.append(traj.phase_vector())
            labels.append(str(c))
    names = []
    for r in range(cfg.reflections):
        names += [f"s{r}", f"alpha{r}"]
    return BilliardRun(Dataset(tuple(rows), tuple(labels), tuple(names)), trajs, adjustments, cfg)


def gen_billiard(cfg: BilliardConfig = BilliardConfig()) -> Dataset:
    return simulate_billiard(cfg).dataset
