from dataclasses import dataclass, field

import numpy as np


@dataclass
class SpectrumResult:
    """Gridded response values plus the parameters that produced them."""
    omegas: np.ndarray
    values: np.ndarray
    k_parallels: np.ndarray = None
    units: str = "nm^2"
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.omegas = np.asarray(self.omegas, dtype=float)
        self.values = np.asarray(self.values)
        if self.k_parallels is not None:
            self.k_parallels = np.atleast_1d(np.asarray(self.k_parallels, dtype=float))
            expected = (len(self.k_parallels), len(self.omegas))
        else:
            expected = (len(self.omegas),)
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape} does not match grid {expected}")
