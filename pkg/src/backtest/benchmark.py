import logging
import sys
import time
from typing import Dict, List, Sequence

import pandas as pd
from tqdm import tqdm

from src.cli.pipeline import solve_instance
from src.utils.config import BENCH_REPETITIONS, DEFAULT_COORD_MAX
from src.utils.errors import InstanceError
from src.utils.generators import generate

# Setup logging
logger = logging.getLogger(__name__)

COLUMNS = ["type", "n", "median_seconds", "growth", "cover", "independent", "bound", "depth", "base_calls"]


class Benchmark:
    """
    Times the solve pipeline over seeded instances. Contract checking is off
    so the numbers reflect the algorithm alone.
    """
    def __init__(self, kind: str, sizes: Sequence[int], seeds: Sequence[int],
                 repetitions: int = BENCH_REPETITIONS, coord_max: int = DEFAULT_COORD_MAX):
        if repetitions < 1:
            raise InstanceError(f"repetitions must be >= 1, got {repetitions}")
        self.kind = kind
        self.sizes = list(sizes)
        self.seeds = list(seeds)
        self.repetitions = repetitions
        self.coord_max = coord_max
        self.runs: List[Dict] = []

    def run_one(self, n: int, seed: int) -> Dict:
        instance = generate(self.kind, n, seed, self.coord_max)
        timings = []
        outcome = None
        for _ in range(self.repetitions):
            start = time.perf_counter()
            outcome = solve_instance(instance, check_contracts=False)
            timings.append(time.perf_counter() - start)
        cert = outcome.certificate
        return {
            "n": n,
            "seed": seed,
            "seconds": float(pd.Series(timings).median()),
            "cover": len(cert.cover),
            "independent": len(cert.independent),
            "bound": cert.bound,
            "depth": cert.stats.get("depth", 0),
            "base_calls": cert.stats.get("base_calls", 0),
        }

    def run(self) -> pd.DataFrame:
        """One row per size: medians over seeds, plus the time ratio to the previous size."""
        jobs = [(n, seed) for n in self.sizes for seed in self.seeds]
        self.runs = [self.run_one(n, seed) for n, seed in tqdm(jobs, desc=f"bench {self.kind}", file=sys.stderr)]
        if not self.runs:
            return pd.DataFrame(columns=COLUMNS)

        runs = pd.DataFrame(self.runs)
        table = runs.groupby("n", sort=False).agg(
            median_seconds=("seconds", "median"),
            cover=("cover", "median"),
            independent=("independent", "median"),
            bound=("bound", "median"),
            depth=("depth", "max"),
            base_calls=("base_calls", "median"),
        ).reset_index()
        table["growth"] = table["median_seconds"] / table["median_seconds"].shift(1)
        table.insert(0, "type", self.kind)
        for _, row in table.iterrows():
            logger.info("n=%d median=%.4fs growth=%s", row["n"], row["median_seconds"], row["growth"])
        return table[COLUMNS]
