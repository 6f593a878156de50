"""Print average gate fidelity vs depolarizing rate for CCX and QA-KS."""

import argparse

from qaksim.experiments import VARIANTS, fidelity_sweep_experiment
from qaksim.noise import default_p_grid, find_sample


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-states", type=int, default=20)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    grid = default_p_grid()
    samples = fidelity_sweep_experiment(args.n_states, args.seed, grid)
    print(f"{'p':>10}" + "".join(f"{v:>12}" for v in VARIANTS))
    for p in grid:
        row = "".join(f"{find_sample(samples, v, p).mean_fidelity:>12.6f}" for v in VARIANTS)
        print(f"{p:>10.3g}{row}")


if __name__ == "__main__":
    main()
