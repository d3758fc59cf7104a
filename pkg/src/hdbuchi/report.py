"""Timing measurements for the HD check and their rendering to an image file."""

from dataclasses import dataclass
import time

from .analysis import clear_caches, is_hd_buchi
from .oracles import GenSpec, gen


@dataclass(frozen=True)
class TimingRow:
    n: int
    transitions: int
    seconds: float

    @property
    def work(self):
        # the Joker game is solved in O(|Q|^4 |Delta|) for fixed alphabet
        return self.n**4 * self.transitions


def complexity_smoke(sizes=(4, 8, 16), seeds=3, alphabet_size=2, density=0.3, base_seed=0):
    """Median wall-clock time of ``is_hd_buchi`` on universal_sd instances per size."""
    rows = []
    for n in sizes:
        samples = []
        for s in range(seeds):
            A, _ = gen(GenSpec("universal_sd", n, alphabet_size, density=density, seed=base_seed + 1000 * n + s))
            clear_caches()
            start = time.perf_counter()
            is_hd_buchi(A)
            samples.append((time.perf_counter() - start, len(A.transitions)))
        samples.sort()
        secs, trans = samples[len(samples) // 2]
        rows.append(TimingRow(n, trans, secs))
    return rows


def growth_summary(rows, slack=4.0, blowup=64.0):
    """Fit ``t = c * n^4 * |Delta|`` on the smallest size and compare.

    Returns a dict with the constant, per-size ratios to the fitted bound,
    per-doubling time ratios, and the two verdicts.
    """
    c = rows[0].seconds / rows[0].work
    bound_ratio = [r.seconds / (c * r.work) for r in rows]
    steps = [b.seconds / a.seconds for a, b in zip(rows, rows[1:])]
    return {
        "constant": c,
        "bound_ratio": bound_ratio,
        "doubling_ratio": steps,
        "within_slack": all(x <= slack for x in bound_ratio),
        "polynomial": all(x <= blowup for x in steps),
    }


def plot_timings(rows, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    summary = growth_summary(rows)
    ns = [r.n for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.loglog(ns, [r.seconds for r in rows], "o-", label="measured")
    ax.loglog(ns, [summary["constant"] * r.work for r in rows], "--", label=r"fit $c\,n^4|\Delta|$")
    ax.set_xlabel("states n")
    ax.set_ylabel("seconds")
    ax.set_xticks(ns, [str(n) for n in ns])
    ax.legend()
    ax.set_title("HD check on universal automata")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
