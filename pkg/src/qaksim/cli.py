"""Command-line entry point: ``qaksim <subcommand> [flags]``.

Exit status is 0 on success, 1 when a hard invariant (unitarity, trace
preservation) fails and 2 on usage errors.  Cross-check mismatches are
reported but do not change the exit status.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import asdict, is_dataclass
from pathlib import Path

import numpy as np

from . import experiments as ex
from .circuit import resource_count, unitary_of
from .noise import NoiseModel, samples_to_csv, run_noisy
from .qaks import build_qaks, dynamic_kickback, kickback_amplitude, truth_table
from .report import crosscheck
from .tensor import basis_label, check_density_matrix, density, haar_random_state, unitarity_deviation

SUBCOMMANDS = {
    "matrix": "print the 8x8 unitary at --phi to 17 significant digits",
    "verify": "unitarity, fixed points and chain norms; exit 1 on a broken invariant",
    "truth-table": "classify the output of every basis input",
    "kickback": "q0-flip weight on |001> over a 33-point phi grid",
    "sweep": "average gate fidelity vs depolarizing rate",
    "chain": "two-site chain: unitary differences and per-input fidelities",
    "propagate": "Pauli injection on the target and its spread to the controls",
    "adder": "two-bit ripple-carry adder fidelity curves",
    "resources": "T-count, layers and qubit count per variant",
    "crosscheck": "compare computed quantities against the published values",
    "all": "run everything and write the result tree",
}
UNITARITY_TOL = 1e-12
KICKBACK_POINTS = 33

_PHI_RE = re.compile(r"^\s*(-?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


class InvariantError(RuntimeError):
    pass


def parse_phi(text: str) -> float:
    """Radians as a decimal, or ``pi``, ``pi/2``, ``3pi/4``, ``-pi`` ..."""
    m = _PHI_RE.match(text.lower())
    if m:
        coef, denom = m.groups()
        k = {"": 1.0, "-": -1.0}.get(coef)
        k = float(coef) if k is None else k
        return k * math.pi / (float(denom) if denom else 1.0)
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse phi {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError("phi must be finite")
    return value


def parse_p_grid(text: str) -> list[float]:
    """``min:max:N{log|lin}``, e.g. ``1e-4:1e-1:10log``."""
    try:
        lo, hi, spec = text.split(":")
        m = re.fullmatch(r"(\d+)(log|lin)?", spec.strip())
        count, kind = int(m.group(1)), m.group(2) or "log"
        lo, hi = float(lo), float(hi)
    except (ValueError, AttributeError):
        raise argparse.ArgumentTypeError(f"bad p-grid {text!r}; expected min:max:Nlog") from None
    if count < 1 or not (0 <= lo <= 1 and 0 <= hi <= 1):
        raise argparse.ArgumentTypeError("p-grid needs count >= 1 and rates in [0, 1]")
    if kind == "log":
        if lo <= 0:
            raise argparse.ArgumentTypeError("log grid needs min > 0")
        return [float(p) for p in np.logspace(math.log10(lo), math.log10(hi), count)]
    return [float(p) for p in np.linspace(lo, hi, count)]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--phi", type=parse_phi, default=math.pi, help="gate parameter (radians, or pi, pi/2)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--n-states", type=int, default=20)
    common.add_argument("--p-grid", type=parse_p_grid, default=None, help="min:max:Nlog (default 1e-4:1e-1:10log)")
    common.add_argument("--out", type=Path, default=None, help="output directory")
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--variant", type=parse_phi, default=None,
                        help="resources: phi of the QA-KS variant (ccx counted alongside)")

    parser = argparse.ArgumentParser(prog="qaksim", description="QA-KS(phi) gate simulator and cross-check")
    sub = parser.add_subparsers(dest="command", metavar="subcommand")
    sub.required = True
    for name, text in SUBCOMMANDS.items():
        sub.add_parser(name, parents=[common], help=text, description=text)
    return parser


# -- renderers -----------------------------------------------------------------


def _c17(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def render_matrix(phi: float) -> str:
    u = build_qaks(phi).unitary
    labels = [basis_label(i, 3) for i in range(8)]
    lines = [f"# U(phi={phi:.17g}), big-endian basis |q0 q1 q2>, row-major",
             "row\\col," + ",".join(f"|{lab}>" for lab in labels)]
    for i, lab in enumerate(labels):
        lines.append(f"<{lab}|," + ",".join(_c17(u[i, j]) for j in range(8)))
    return "\n".join(lines) + "\n"


def verify_data(phi: float) -> dict:
    (g1, g2) = ex.CHAIN_WIRES
    chain_q = unitary_of(ex.qaks_circuit(phi, g1, 5) + ex.qaks_circuit(phi, g2, 5))
    chain_c = unitary_of(ex.chain_circuit("ccx"))
    return {
        "phi": phi,
        "qaks_unitarity_deviation": unitarity_deviation(build_qaks(phi).unitary),
        "qaks_chain_unitarity_deviation": unitarity_deviation(chain_q),
        "ccx_chain_unitarity_deviation": unitarity_deviation(chain_c),
        "tolerance": UNITARITY_TOL,
    }


def check_hard_invariants(phi: float, seed: int):
    """Raise InvariantError if unitarity or trace preservation fails."""
    v = verify_data(phi)
    for key, dev in v.items():
        if key.endswith("deviation") and dev >= UNITARITY_TOL:
            raise InvariantError(f"{key} = {dev:.3g} exceeds {UNITARITY_TOL:g}")
    rng = np.random.default_rng(seed)
    psi = haar_random_state(6, rng)
    try:
        check_density_matrix(run_noisy(ex.adder_circuit("qaks_pi"), density(psi), NoiseModel(0.1)))
    except ValueError as exc:
        raise InvariantError(f"noisy evolution is not CPTP: {exc}") from None


def render_truth_table(phi: float, fmt: str) -> str:
    rows = truth_table(phi)
    if fmt == "json":
        data = [
            {"input": r.basis_input, "kind": r.kind.value, "components": r.component_count, "output": r.describe()}
            for r in rows
        ]
        return _dumps({"phi": phi, "rows": data})
    lines = [f"# truth table, phi={phi:.17g}", "q0 q1 q2 | kind                   | n | output"]
    for r in rows:
        q = " ".join(r.basis_input)
        lines.append(f"{q:<8} | {r.kind.value:<22} | {r.component_count} | {r.describe()}")
    return "\n".join(lines) + "\n"


def render_kickback() -> str:
    lines = [f"# phi grid: {KICKBACK_POINTS} points over [0, 2pi]", "phi,kickback_amplitude,dynamic_weight"]
    for phi in np.linspace(0, 2 * math.pi, KICKBACK_POINTS):
        phi = float(phi)
        lines.append(f"{phi:.17g},{kickback_amplitude(phi):.17g},{dynamic_kickback(phi):.17g}")
    return "\n".join(lines) + "\n"


def resources_data(variant_phi: float | None) -> dict:
    out = {}
    circuits = [("ccx", ex.ccx_circuit())]
    phis = [variant_phi] if variant_phi is not None else [math.pi, math.pi / 2]
    circuits += [(f"qaks(phi={phi:.17g})", ex.qaks_circuit(phi)) for phi in phis]
    for label, c in circuits:
        r = resource_count(c)
        out[label] = {
            "t_count": r.t_count,
            "macro_layers": r.macro_layers,
            "primitive_gate_count": r.primitive_gate_count,
            "qubit_count": r.qubit_count,
        }
    return out


def render_resources(data: dict, fmt: str) -> str:
    if fmt == "json":
        return _dumps(data)
    lines = ["circuit                        t_count  macro_layers  primitive_gates  qubits"]
    for label, r in data.items():
        lines.append(f"{label:<30} {r['t_count']:>7}  {r['macro_layers']:>12}  "
                     f"{r['primitive_gate_count']:>15}  {r['qubit_count']:>6}")
    return "\n".join(lines) + "\n"


def propagation_csv(report: ex.PropagationReport, gate: str | None = None) -> str:
    lines = ["gate,input,pauli,weight_q0,weight_q1"]
    for r in report.rows:
        if gate is None or r.gate_label == gate:
            lines.append(f"{r.gate_label},{r.input_label},{r.pauli},{r.weight_q0:.10g},{r.weight_q1:.10g}")
    return "\n".join(lines) + "\n"


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if is_dataclass(o):
        return asdict(o)
    raise TypeError(f"not serializable: {type(o)}")


# -- command dispatch ------------------------------------------------------------


class _Sink:
    """Writes named files under ``out`` or concatenates to stdout."""

    def __init__(self, out: Path | None):
        self.out = out
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)

    def emit(self, name: str, text: str):
        if self.out is None:
            sys.stdout.write(text)
        else:
            (self.out / name).write_text(text)


def _run(args, sink: _Sink):
    cmd, phi = args.command, args.phi
    fmt = args.format

    if cmd == "matrix":
        if fmt == "json":
            u = build_qaks(phi).unitary
            sink.emit("matrix.json", _dumps({"phi": phi, "re": u.real.tolist(), "im": u.imag.tolist()}))
        else:
            sink.emit("matrix.txt", render_matrix(phi))
    elif cmd == "verify":
        data = verify_data(phi)
        if fmt == "json":
            sink.emit("verify.json", _dumps(data))
        else:
            sink.emit("verify.txt", "".join(f"{k}: {v:.17g}\n" for k, v in data.items()))
        check_hard_invariants(phi, args.seed)
    elif cmd == "truth-table":
        sink.emit(f"truth_table.{'json' if fmt == 'json' else 'txt'}", render_truth_table(phi, fmt or "text"))
    elif cmd == "kickback":
        sink.emit("kickback.csv", render_kickback())
    elif cmd == "sweep":
        samples = ex.fidelity_sweep_experiment(args.n_states, args.seed, args.p_grid)
        _emit_samples(sink, "sweep", samples, args.seed, fmt)
    elif cmd == "chain":
        rep = ex.chain_experiment(phi, args.p_grid, args.n_states, args.seed)
        if fmt == "csv":
            _emit_samples(sink, "chain", rep.noisy_chain_fidelities, args.seed, "csv")
        else:
            sink.emit("chain.json", _dumps(rep.to_json()))
    elif cmd == "propagate":
        rep = ex.error_propagation()
        if fmt == "json":
            sink.emit("propagate.json", _dumps(rep.to_json()))
        elif sink.out is None:
            sink.emit("propagate.csv", propagation_csv(rep))
        else:
            for v in ex.VARIANTS:
                sink.emit(f"propagate_{v}.csv", propagation_csv(rep, v))
    elif cmd == "adder":
        rep = ex.adder_benchmark(args.p_grid, args.n_states, args.seed)
        if fmt == "json":
            sink.emit("adder.json", _dumps(rep.to_json()))
        else:
            samples = [s for curve in rep.curves.values() for s in curve]
            _emit_samples(sink, "adder", samples, args.seed, "csv")
    elif cmd == "resources":
        sink.emit(f"resources.{'json' if fmt == 'json' else 'txt'}",
                  render_resources(resources_data(args.variant), fmt or "text"))
    elif cmd == "crosscheck":
        rep = crosscheck(args.n_states, args.seed)
        if fmt == "json":
            sink.emit("crosscheck.json", _dumps(rep.to_json()))
        else:
            sink.emit("crosscheck.txt", rep.to_text())
    elif cmd == "all":
        run_all(args, sink)


def _emit_samples(sink: _Sink, experiment: str, samples, seed: int, fmt: str | None):
    if fmt == "json":
        sink.emit(f"{experiment}.json", _dumps({"seed": seed, "samples": samples}))
        return
    if sink.out is None:
        sink.emit(f"{experiment}.csv", samples_to_csv(samples, seed))
        return
    labels = list(dict.fromkeys(s.circuit_label for s in samples))
    for label in labels:
        variant = label.removeprefix(f"{experiment}_")
        sub = [s for s in samples if s.circuit_label == label]
        sink.emit(f"{experiment}_{variant}.csv", samples_to_csv(sub, seed))


def run_all(args, sink: _Sink):
    if sink.out is None:
        sink = _Sink(Path("results"))
    check_hard_invariants(args.phi, args.seed)
    sink.emit("matrix.txt", render_matrix(args.phi))
    sink.emit("verify.json", _dumps(verify_data(args.phi)))
    sink.emit("truth_table.txt", render_truth_table(args.phi, "text"))
    sink.emit("truth_table.json", render_truth_table(args.phi, "json"))
    sink.emit("kickback.csv", render_kickback())
    sink.emit("resources.json", render_resources(resources_data(None), "json"))

    sweep = ex.fidelity_sweep_experiment(args.n_states, args.seed, args.p_grid)
    _emit_samples(sink, "sweep", sweep, args.seed, "csv")
    chain = ex.chain_experiment(args.phi, args.p_grid, args.n_states, args.seed)
    sink.emit("chain.json", _dumps(chain.to_json()))
    _emit_samples(sink, "chain", chain.noisy_chain_fidelities, args.seed, "csv")
    prop = ex.error_propagation()
    sink.emit("propagate.json", _dumps(prop.to_json()))
    for v in ex.VARIANTS:
        sink.emit(f"propagate_{v}.csv", propagation_csv(prop, v))
    adder = ex.adder_benchmark(args.p_grid, args.n_states, args.seed)
    sink.emit("adder.json", _dumps(adder.to_json()))
    _emit_samples(sink, "adder", [s for c in adder.curves.values() for s in c], args.seed, "csv")

    if args.p_grid is None and args.phi == math.pi:
        rep = crosscheck(args.n_states, args.seed, sweep, chain, prop, adder)
    else:
        rep = crosscheck(args.n_states, args.seed)
    sink.emit("crosscheck.json", _dumps(rep.to_json()))
    sink.emit("crosscheck.txt", rep.to_text())


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.n_states < 1:
        parser.print_usage(sys.stderr)
        print("qaksim: error: --n-states must be >= 1", file=sys.stderr)
        return 2
    try:
        _run(args, _Sink(args.out))
    except InvariantError as exc:
        print(f"qaksim: invariant failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
