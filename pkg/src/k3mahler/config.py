"""Run configuration: defaults, ``key=value`` config files, flag overrides."""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace


@dataclass(frozen=True)
class RunConfig:
    cutoff: int = 1000          # shell cutoff for all Eisenstein-Kronecker sums
    grid: int = 512             # Jensen outer grid per variable, Q_{-3}
    p0_grid: int = 256
    p0_samples: int = 1_000_000
    qorder: int = 256
    tol: float = 1e-10          # Epstein / L-series target tolerance
    seed: int = 20100101
    threads: int = 1

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("threads")        # scheduling only; never affects results
        return d


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _convert(key: str, raw: str):
    t = _TYPES[key]
    if t in ("int", int):
        return int(float(raw)) if "e" in raw.lower() else int(raw)
    return float(raw)


def load_config(path: str | None, base: RunConfig | None = None) -> RunConfig:
    cfg = base or RunConfig()
    if not path:
        return cfg
    updates = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, val = (x.strip() for x in line.split("=", 1))
            if key not in _TYPES:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            updates[key] = _convert(key, val)
    return replace(cfg, **updates)


def with_overrides(cfg: RunConfig, **kw) -> RunConfig:
    return replace(cfg, **{k: v for k, v in kw.items() if v is not None})
