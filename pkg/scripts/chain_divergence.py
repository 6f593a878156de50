"""Compare the two-site CCX chain against its QA-KS(pi) substitute."""

import argparse
import math

from qaksim.experiments import HIGHLIGHT_INPUTS, chain_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-states", type=int, default=20)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    rep = chain_experiment(math.pi, None, args.n_states, args.seed)
    print(f"max |U_ccx - U_qaks|  = {rep.max_abs_diff:.6f}")
    print(f"Frobenius difference = {rep.frobenius_diff:.6f}")
    for label in HIGHLIGHT_INPUTS:
        print(f"  F(|{label}>) = {rep.per_input_fidelity[label]:.6f}")
    n_bad = sum(f < 1e-12 for f in rep.per_input_fidelity.values())
    print(f"orthogonal outputs on {n_bad} of {len(rep.per_input_fidelity)} basis inputs")


if __name__ == "__main__":
    main()
