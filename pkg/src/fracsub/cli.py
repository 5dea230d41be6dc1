"""Command-line front end.

Each subcommand loads JSON inputs, runs one library operation, writes a
machine-readable report to stdout and a one-line human summary to
stderr.  Reports are byte-stable: same inputs and parameters give the
same bytes, with input files identified by content hash.

Exit codes: 0 success; 1 failed verdict (certify says not-modular,
stability unsatisfied, selftest failure) or an internal cross-check
disagreement; 2 malformed input; 3 unmet mathematical precondition.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .bitsets import elements
from .errors import (
    ConsistencyError,
    FracsubError,
    PreconditionError,
    ValidationError,
)
from .families import WeightedFamily, find_fractional_partition
from .fixtures import modular_mixed_signs, modular_singletons, zero_gap_nonmonotone
from .gaps import (
    certify_modular_partial,
    duality_residual,
    equality_conditions_covering,
    gap_report,
    gap_upper,
    shearer_check,
    stability_check,
)
from .gauss import det_equality_check, preset_family
from .info import (
    dual_total_correlation,
    family_mutual_information,
    mmi_max_over_partitions,
    shared_information,
    total_correlation,
)
from .jsonio import (
    canonical_dumps,
    dump_family,
    load_distribution,
    load_family,
    load_family_document,
    load_matroid,
    load_partial,
    load_pd_matrix,
    load_pd_matrix_csv,
    load_setfn,
)
from .matroid import rank_equality_check
from .rationals import parse_rational
from .setfn import (
    is_modular,
    is_nondecreasing,
    is_prefix_nondecreasing,
    is_submodular,
)

_EXIT_VERDICT = 1
_EXIT_VALIDATION = 2
_EXIT_PRECONDITION = 3


class _Inputs:
    """Tracks loaded files and their content hashes for the report."""

    def __init__(self) -> None:
        self.digests: dict[str, dict[str, str]] = {}

    def read(self, path: str, role: str) -> bytes:
        try:
            with open(path, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise ValidationError(f"{role}: cannot read {path}: {exc.strerror}")
        self.digests[role] = {
            "path": path,
            "sha256": hashlib.sha256(raw).hexdigest(),
        }
        return raw

    def read_json(self, path: str, role: str):
        raw = self.read(path, role)
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{role}: {path} is not valid JSON: {exc}")


def _resolve_tol(args) -> float | None:
    tol = getattr(args, "tol", None)
    if tol is not None:
        return tol
    env = os.environ.get("FRACSUB_TOL")
    if env is None:
        return None
    try:
        return float(env)
    except ValueError:
        raise ValidationError(f"FRACSUB_TOL is not a number: {env!r}") from None


def _parse_epsilon(text: str):
    # "p/q" and bare integers stay exact; anything else is binary64
    if "/" in text or text.strip().lstrip("+-").isdigit():
        return parse_rational(text)
    try:
        return float(text)
    except ValueError:
        raise ValidationError(f"bad epsilon {text!r}") from None


def _witness_json(w):
    if w is None:
        return None
    if isinstance(w, int):
        return list(elements(w))
    return [list(elements(m)) for m in w]


def _classification_json(cls) -> dict:
    return {
        "flavor": cls.flavor,
        "coverage": list(cls.coverage),
        "over_covered": list(cls.over_covered),
        "under_covered": list(cls.under_covered),
    }


def _equality_json(rep) -> dict:
    return {
        "branch": rep.branch,
        "gap": rep.gap,
        "equality": rep.equality,
        "modular": {
            "ok": rep.modular.ok,
            "witness": _witness_json(rep.modular.witness),
        },
        "special_elements": list(rep.special_elements),
        "zero_on_special": rep.zero_on_special,
        "condition_holds": rep.condition_holds,
    }


def cmd_gaps(args, inputs: _Inputs):
    f = load_setfn(inputs.read_json(args.setfn, "setfn"))
    wf = load_family(inputs.read_json(args.family, "family"))
    tol = _resolve_tol(args)
    rep = gap_report(f, wf, tol)
    try:
        residual = duality_residual(f, wf)
    except PreconditionError:
        residual = None
    result = {
        "gap_upper": rep.gap_upper,
        "gap_lower": rep.gap_lower,
        "weight_total": rep.weight_total,
        "classification": _classification_json(rep.classification),
        "bounds_hold": list(rep.bounds_hold),
        "notes": list(rep.notes),
        "duality_residual": residual,
    }
    human = (
        f"{rep.classification.flavor}: gap_upper={rep.gap_upper} "
        f"gap_lower={rep.gap_lower} bounds_hold={rep.bounds_hold}"
    )
    return result, {"tol": tol}, human, 0


def cmd_certify(args, inputs: _Inputs):
    partial = load_partial(inputs.read_json(args.partial, "partial"))
    wf = load_family(inputs.read_json(args.family, "family"))
    tol = _resolve_tol(args)
    cert = certify_modular_partial(
        partial, wf, assume_submodular=not args.no_assume_submodular, tol=tol
    )
    result = {
        "verdict": cert.verdict,
        "checked_sum": cert.checked_sum,
        "target": cert.target,
        "assumed_submodular": cert.assumed_submodular,
        "missing": [list(elements(m)) for m in cert.missing],
        "note": cert.note,
    }
    human = f"verdict: {cert.verdict}"
    if cert.verdict == "modular":
        human += f" (weighted sum {cert.checked_sum} matches the total exactly)"
        code = 0
    elif cert.verdict == "not-modular":
        human += f" (weighted sum {cert.checked_sum} != {cert.target})"
        code = _EXIT_VERDICT
    else:
        human += f" ({cert.note})" if cert.note else ""
        code = _EXIT_VALIDATION
    params = {"tol": tol, "assume_submodular": cert.assumed_submodular}
    return result, params, human, code


def cmd_stability(args, inputs: _Inputs):
    f = load_setfn(inputs.read_json(args.setfn, "setfn"))
    wf = load_family(inputs.read_json(args.family, "family"))
    tol = _resolve_tol(args)
    epsilon = _parse_epsilon(args.epsilon)
    rep = stability_check(f, wf, epsilon, tol)
    result = {
        "sigma": rep.sigma,
        "epsilon": rep.epsilon,
        "bound": rep.bound,
        "defects": list(rep.defects),
        "satisfied": rep.satisfied,
        "gap_upper": rep.gap_upper,
        "gap_lower": rep.gap_lower,
        "epsilon_covers_gap": rep.epsilon_covers_gap,
    }
    human = (
        f"defects {'within' if rep.satisfied else 'EXCEED'} "
        f"epsilon/sigma = {rep.bound} (sigma={rep.sigma})"
    )
    if not rep.epsilon_covers_gap:
        human += "; note: epsilon is below both gaps, so the premise is unmet"
    params = {"tol": tol, "epsilon": rep.epsilon}
    return result, params, human, 0 if rep.satisfied else _EXIT_VERDICT


def cmd_equality(args, inputs: _Inputs):
    f = load_setfn(inputs.read_json(args.setfn, "setfn"))
    wf = load_family(inputs.read_json(args.family, "family"))
    tol = _resolve_tol(args)
    rep = equality_conditions_covering(f, wf, tol)
    human = (
        f"{rep.branch}: gap={rep.gap} equality={rep.equality} "
        f"modular={rep.modular.ok} zero_on_special={rep.zero_on_special}"
    )
    return _equality_json(rep), {"tol": tol}, human, 0


def cmd_shearer(args, inputs: _Inputs):
    f = load_setfn(inputs.read_json(args.setfn, "setfn"))
    doc = load_family_document(inputs.read_json(args.sets, "sets"))
    if isinstance(doc, WeightedFamily):
        raise ValidationError(
            "sets: omit weights; the multiplicity rule assigns them"
        )
    tol = _resolve_tol(args)
    rep = shearer_check(f, doc.masks, tol)
    result = {
        "k": rep.k,
        "member_sum": rep.member_sum,
        "scaled_total": rep.scaled_total,
        "equality": rep.equality,
        "condition_holds": rep.condition_holds,
        "over_elements": list(rep.over_elements),
        "detail": _equality_json(rep.detail),
    }
    human = (
        f"k={rep.k}: member sum {rep.member_sum} vs k*f(full) "
        f"{rep.scaled_total}; equality={rep.equality}"
    )
    return result, {"tol": tol}, human, 0


def cmd_mmi(args, inputs: _Inputs):
    dist = load_distribution(inputs.read_json(args.dist, "distribution"))
    tol = _resolve_tol(args)
    flags = [
        name
        for name in ("tc", "dtc", "si", "max")
        if getattr(args, name if name != "max" else "max_partitions")
    ]
    if args.family is not None and flags:
        raise ValidationError("give either a family file or one mode flag, not both")
    if args.family is None and len(flags) != 1:
        raise ValidationError(
            "choose a mode: a family file or exactly one of --tc --dtc --si --max"
        )
    if args.family is not None:
        wf = load_family(inputs.read_json(args.family, "family"))
        res = family_mutual_information(dist, wf)
        result = {
            "mode": "family",
            "value": res.value,
            "joint_entropy": res.joint_entropy,
            "components": [
                {"set": list(elements(m)), "weight": w, "entropy": h}
                for m, w, h in res.components
            ],
        }
        human = f"family MI = {res.value} bits"
    elif flags[0] == "tc":
        value = total_correlation(dist)
        result = {"mode": "tc", "value": value}
        human = f"total correlation = {value} bits"
    elif flags[0] == "dtc":
        value = dual_total_correlation(dist)
        result = {"mode": "dtc", "value": value}
        human = f"dual total correlation = {value} bits"
    elif flags[0] == "si":
        res = shared_information(dist, tol)
        result = {
            "mode": "si",
            "value": res.value,
            "conditional_value": res.conditional_value,
            "dual_side_value": res.dual_side_value,
            "argmax": dump_family(res.argmax),
        }
        human = f"shared information = {res.value} bits"
    else:
        res = mmi_max_over_partitions(dist, tol)
        result = {
            "mode": "max",
            "value": res.value,
            "total_correlation": res.total_correlation,
            "argmax": dump_family(res.argmax),
        }
        human = f"max MI over fractional partitions = {res.value} bits"
    return result, {"tol": tol, "mode": result["mode"]}, human, 0


def cmd_matroid(args, inputs: _Inputs):
    m = load_matroid(inputs.read_json(args.matroid, "matroid"))
    wf = load_family(inputs.read_json(args.family, "family"))
    rep = rank_equality_check(m, wf)
    result = {
        "weighted_rank_sum": rep.weighted_rank_sum,
        "total_rank": rep.total_rank,
        "equality": rep.equality,
        "loop_elements": list(rep.loop_elements),
        "free_outside_loops": rep.free_outside_loops,
    }
    human = (
        f"weighted rank sum {rep.weighted_rank_sum} vs rank {rep.total_rank}: "
        f"{'equal' if rep.equality else 'strict'}; "
        f"free outside loops: {rep.free_outside_loops}"
    )
    return result, {}, human, 0


def _parse_preset(text: str, n: int) -> WeightedFamily:
    name, _, arg = text.partition(":")
    if name == "hadamard":
        if arg:
            raise ValidationError("hadamard takes no argument")
        return preset_family("hadamard", n)
    if name == "szasz":
        k = None
        if arg:
            try:
                k = int(arg)
            except ValueError:
                raise ValidationError(f"szasz wants an integer k, got {arg!r}") from None
        return preset_family("szasz", n, k=k)
    if name == "fischer":
        block = None
        if arg:
            try:
                block = tuple(int(x) for x in arg.split(","))
            except ValueError:
                raise ValidationError(
                    f"fischer wants comma-separated elements, got {arg!r}"
                ) from None
        return preset_family("fischer", n, block=block)
    raise ValidationError(
        f"unknown preset {name!r}; expected hadamard, szasz or fischer"
    )


def cmd_detineq(args, inputs: _Inputs):
    if args.matrix.endswith(".csv"):
        text = inputs.read(args.matrix, "matrix").decode("utf-8", errors="replace")
        K = load_pd_matrix_csv(text)
    else:
        K = load_pd_matrix(inputs.read_json(args.matrix, "matrix"))
    if (args.family is None) == (args.preset is None):
        raise ValidationError("give either a family file or --preset, not both")
    if args.family is not None:
        wf = load_family(inputs.read_json(args.family, "family"))
    else:
        wf = _parse_preset(args.preset, K.n)
    tol = _resolve_tol(args)
    rep = det_equality_check(K, wf, tol)
    result = {
        "log_lhs": rep.log_lhs,
        "log_rhs": rep.log_rhs,
        "log_gap": rep.log_gap,
        "equality": rep.equality,
        "merge_groups": [list(g) for g in rep.merge_groups],
        "offdiag_max": rep.offdiag_max,
        "diagonal_ok": rep.diagonal_ok,
        "tol": rep.tol,
        "tol_prime": rep.tol_prime,
    }
    human = (
        f"log-det gap {rep.log_gap:.6g} (lhs {rep.log_lhs:.6g} vs rhs "
        f"{rep.log_rhs:.6g}): {'equality' if rep.equality else 'strict'}; "
        f"block-diagonal: {rep.diagonal_ok}"
    )
    params = {"tol": rep.tol, "preset": args.preset}
    return result, params, human, 0


def cmd_normalize(args, inputs: _Inputs):
    wf = load_family(inputs.read_json(args.family, "family"))
    norm, merge_map = wf.normalize()
    result = {
        "family": dump_family(norm),
        "merge_map": {str(k): v for k, v in sorted(merge_map.items())},
    }
    human = (
        f"normalized to {len(norm.members)} members on [1:{norm.n}]"
        + ("" if norm.n == wf.n else f" (merged from [1:{wf.n}])")
    )
    return result, {}, human, 0


def cmd_find_partition(args, inputs: _Inputs):
    doc = load_family_document(inputs.read_json(args.sets, "sets"))
    if isinstance(doc, WeightedFamily):
        raise ValidationError("sets: omit weights; they are what is being sought")
    found = find_fractional_partition(doc.masks, doc.n)
    result = {
        "found": found is not None,
        "family": None if found is None else dump_family(found),
    }
    human = (
        "no fractional partition supported on these sets"
        if found is None
        else f"fractional partition with {len(found.members)} members"
    )
    return result, {}, human, 0


def cmd_selftest(args, inputs: _Inputs):
    checks: list[dict] = []

    def add(name: str, ok: bool, detail: str = "") -> None:
        checks.append({"name": name, "ok": bool(ok), "detail": detail})

    b1 = modular_singletons()
    cert = certify_modular_partial(b1.partial, b1.family)
    add(
        "singletons: certified modular from 5 values",
        cert.verdict == "modular" and cert.checked_sum == Fraction(98),
        f"verdict={cert.verdict} checked_sum={cert.checked_sum}",
    )
    add(
        "singletons: completion has zero upper gap",
        gap_upper(b1.table, b1.family) == 0,
    )
    add("singletons: completion is modular", bool(is_modular(b1.table)))

    b2 = modular_mixed_signs()
    add(
        "mixed-signs: family is a fractional partition",
        b2.family.classify().flavor == "partition",
    )
    cert2 = certify_modular_partial(b2.partial, b2.family)
    add(
        "mixed-signs: certified modular, weighted sum 18/5",
        cert2.verdict == "modular" and cert2.checked_sum == Fraction(18, 5),
        f"verdict={cert2.verdict} checked_sum={cert2.checked_sum}",
    )
    add(
        "mixed-signs: completion has zero upper gap",
        gap_upper(b2.table, b2.family) == 0,
    )

    b3 = zero_gap_nonmonotone()
    add("nonmonotone: submodular", bool(is_submodular(b3.table)))
    add("nonmonotone: prefix-nondecreasing", is_prefix_nondecreasing(b3.table))
    add("nonmonotone: not non-decreasing", not is_nondecreasing(b3.table))
    add("nonmonotone: not modular", not is_modular(b3.table))
    add(
        "nonmonotone: zero covering gap anyway",
        gap_upper(b3.table, b3.family) == 0,
    )
    try:
        equality_conditions_covering(b3.table, b3.family)
        add("nonmonotone: covering equality test refuses", False, "no refusal")
    except PreconditionError as exc:
        add("nonmonotone: covering equality test refuses", True, str(exc))

    all_ok = all(c["ok"] for c in checks)
    result = {"checks": checks, "all_ok": all_ok}
    failed = [c["name"] for c in checks if not c["ok"]]
    human = (
        f"selftest: {len(checks)} checks, all passed"
        if all_ok
        else f"selftest: FAILED: {', '.join(failed)}"
    )
    return result, {}, human, 0 if all_ok else _EXIT_VERDICT


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracsub",
        description=(
            "Weighted-cover gap analysis for submodular set functions: "
            "gaps, modularity certificates, stability bounds, equality "
            "conditions, information measures, matroid ranks and "
            "determinant inequalities."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_tol(p):
        p.add_argument(
            "--tol",
            type=float,
            default=None,
            help="float comparison tolerance (default 2**-30; ignored for "
            "exact-rational instances; FRACSUB_TOL also accepted)",
        )
        return p

    p = with_tol(sub.add_parser("gaps", help="upper/lower gaps of f against a family"))
    p.add_argument("setfn")
    p.add_argument("family")
    p.set_defaults(func=cmd_gaps)

    p = with_tol(
        sub.add_parser(
            "certify", help="decide modularity from member values plus the total"
        )
    )
    p.add_argument("partial")
    p.add_argument("family")
    p.add_argument(
        "--no-assume-submodular",
        action="store_true",
        help="record that submodularity of the underlying f is NOT asserted",
    )
    p.set_defaults(func=cmd_certify)

    p = with_tol(
        sub.add_parser("stability", help="per-element defect bound epsilon/sigma")
    )
    p.add_argument("setfn")
    p.add_argument("family")
    p.add_argument("--epsilon", required=True, help='gap budget, "p/q" or float')
    p.set_defaults(func=cmd_stability)

    p = with_tol(
        sub.add_parser(
            "equality",
            help="covering/packing equality vs modular-plus-special-zeros",
        )
    )
    p.add_argument("setfn")
    p.add_argument("family")
    p.set_defaults(func=cmd_equality)

    p = with_tol(
        sub.add_parser(
            "shearer", help="integer covering equality at weights 1/k"
        )
    )
    p.add_argument("setfn")
    p.add_argument("sets", help="family JSON without weights")
    p.set_defaults(func=cmd_shearer)

    p = with_tol(
        sub.add_parser("mmi", help="information measures of a joint pmf")
    )
    p.add_argument("dist")
    p.add_argument("family", nargs="?", default=None)
    p.add_argument("--tc", action="store_true", help="total correlation")
    p.add_argument("--dtc", action="store_true", help="dual total correlation")
    p.add_argument("--si", action="store_true", help="shared information")
    p.add_argument(
        "--max",
        dest="max_partitions",
        action="store_true",
        help="maximize family MI over fractional partitions",
    )
    p.set_defaults(func=cmd_mmi)

    p = sub.add_parser("matroid", help="weighted rank sum vs rank of the ground set")
    p.add_argument("matroid")
    p.add_argument("family")
    p.set_defaults(func=cmd_matroid)

    p = with_tol(
        sub.add_parser("detineq", help="weighted determinant equality test")
    )
    p.add_argument("matrix", help="PD matrix as JSON, or CSV with a .csv suffix")
    p.add_argument("family", nargs="?", default=None)
    p.add_argument(
        "--preset",
        default=None,
        help="hadamard | szasz[:k] | fischer[:i,j,...] instead of a family file",
    )
    p.set_defaults(func=cmd_detineq)

    p = sub.add_parser("normalize", help="drop zeros, rescale out the full set, merge")
    p.add_argument("family")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser(
        "find-partition", help="find fractional-partition weights for given sets"
    )
    p.add_argument("sets")
    p.set_defaults(func=cmd_find_partition)

    p = sub.add_parser("selftest", help="run the built-in worked instances")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    inputs = _Inputs()
    try:
        result, params, human, code = args.func(args, inputs)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_VALIDATION
    except PreconditionError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        if exc.note:
            print(f"note: {exc.note}", file=sys.stderr)
        return _EXIT_PRECONDITION
    except ConsistencyError as exc:
        print(f"internal disagreement: {exc}", file=sys.stderr)
        return _EXIT_VERDICT
    except FracsubError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_VALIDATION
    report = {
        "command": args.command,
        "version": __version__,
        "inputs": inputs.digests,
        "parameters": params,
        "result": result,
    }
    sys.stdout.write(canonical_dumps(report))
    print(human, file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
