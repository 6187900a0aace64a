"""Run configuration: tolerances, solver limits, explorer budgets."""

import json
import os
from dataclasses import dataclass, replace, fields


@dataclass(frozen=True)
class RunConfig:
    eps_res: float = 1e-10        # converged iff max equation defect <= this
    eps_flat: float = 1e-9        # |Im z| band classified as flat
    eps_deg: float = 1e-9         # distance to {0, 1, infinity} = degenerate
    max_iter: int = 50
    retries: int = 10
    perturbation: float = 0.1
    rng_seed: int = 7             # fixed: identical inputs, identical outputs
    depth: int = 4                # explorer defaults
    max_nodes: int = 10000
    verbose: bool = False

    def validated(self):
        if min(self.eps_res, self.eps_flat, self.eps_deg) <= 0:
            raise ValueError("tolerances must be positive")
        if min(self.max_iter, self.retries + 1, self.depth + 1,
               self.max_nodes) < 1:
            raise ValueError("budgets must be at least 1")
        return self

    def with_overrides(self, **kw):
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw).validated()


DEFAULT_CONFIG = RunConfig()

ENV_VAR = "FLIPGRAPH_CONFIG"


def load_config(path=None):
    """Defaults, overlaid with the JSON file named by ``path`` or the
    FLIPGRAPH_CONFIG environment variable when set."""
    path = path or os.environ.get(ENV_VAR)
    if not path:
        return DEFAULT_CONFIG
    with open(path) as fh:
        data = json.load(fh)
    names = {f.name for f in fields(RunConfig)}
    unknown = set(data) - names
    if unknown:
        raise ValueError("unknown config keys: %s" % ", ".join(sorted(unknown)))
    return DEFAULT_CONFIG.with_overrides(**data)
