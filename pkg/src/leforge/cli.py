"""Batch front end: ``leforge run <job.json>``.

A job is one JSON document::

    {
      "name": "umbrella-family",
      "ring": ["t", "x", "y"],
      "object": {"kind": "map", "source_vars": ["t", "u"], "components": ["t", "u^2-t", "u*(u^2-t)"]},
      "coords": ["t", "x", "y"],
      "tasks": ["verify-milnor", "verify-main"],
      "options": {"seed": 0, "t0": ["1/4", "1/9"]}
    }

``coords`` may also be the string ``"generic"``.  Bundled jobs are addressed
as ``catalog:<name>``.

The seed comes from ``--seed``, else the job's ``options.seed``, else the
``LEFORGE_SEED`` environment variable, else 0.

Exit codes: 0 all passed, 1 a verification failed, 2 precondition violated,
3 parse or format error, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import __version__, config, deform
from .errors import LeforgeError, ParseError, PreconditionError
from .groebner import local_colength_details
from .lecycles import CoordTuple, ipa_check, is_ipa_tuple, jacobian_ideal, le_numbers, verify_slice_formula
from .paramhyp import Branch, Parameterization, Unfolding, image_equation, ndot_multiplicities, unfolding_shape
from .polyalg import Poly, VarRing, as_rational
from .report import Verdict, jsonable

TASKS = (
    "milnor", "le-numbers", "ipa-check", "ndot", "verify-milnor", "verify-eq2", "verify-slice",
    "verify-ipa2", "verify-main", "surface-invariants", "verify-surface", "verify-corollary",
)
FAMILY_TASKS = {
    "verify-milnor", "verify-eq2", "verify-ipa2", "verify-main", "surface-invariants", "verify-surface",
    "verify-corollary",
}


@dataclass
class JobSpec:
    name: str
    ring: VarRing
    kind: str
    f: Poly | None
    pi: Parameterization | None
    coords: CoordTuple
    tasks: list
    options: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)

    @property
    def hypersurface(self) -> Poly:
        if self.f is None:
            self.f = image_equation(self.pi)
        return self.f


# ---------------------------------------------------------------------------
# loading


def catalog_names() -> list:
    root = resources.files("leforge") / "catalog"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_job(source: str) -> dict:
    """Read a job document from a path or ``catalog:<name>``."""
    if source.startswith("catalog:"):
        name = source.split(":", 1)[1]
        ref = resources.files("leforge") / "catalog" / f"{name}.json"
        if not ref.is_file():
            raise ParseError(f"no catalog job named {name!r}")
        text = ref.read_text(encoding="utf-8")
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read job file: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(doc, dict):
        raise ParseError("job document must be a JSON object")
    return doc


def _require(doc: dict, key: str, kind):
    if key not in doc:
        raise ParseError(f"job is missing {key!r}")
    if not isinstance(doc[key], kind):
        raise ParseError(f"job field {key!r} has the wrong type")
    return doc[key]


def _linear_arrangement(f: Poly) -> Parameterization | None:
    """Normalization of a product of distinct linear forms: one hyperplane per branch."""
    import sympy

    ring = f.ring
    syms = sympy.symbols(ring.vars)
    expr = sympy.sympify(str(f).replace("^", "**"), locals=dict(zip(ring.vars, syms)))
    _, factors = sympy.factor_list(expr, *syms)
    branches = []
    for fac, mult in factors:
        poly = sympy.Poly(fac, *syms)
        if mult != 1 or poly.total_degree() != 1 or poly.coeff_monomial(1) != 0:
            return None
        coeffs = [as_rational(str(poly.coeff_monomial(s))) for s in syms]
        piv = next(i for i, c in enumerate(coeffs) if c)
        free = [v for i, v in enumerate(ring.vars) if i != piv]
        src = VarRing(free)
        comps = []
        for i, v in enumerate(ring.vars):
            if i != piv:
                comps.append(src.var(v))
            else:
                acc = src.zero()
                for j, w in enumerate(ring.vars):
                    if j != piv and coeffs[j]:
                        acc = acc - src.var(w) * (coeffs[j] / coeffs[piv])
                comps.append(acc)
        branches.append(Branch(src, tuple(comps)))
    return Parameterization(ring, branches)


def parse_job(doc: dict) -> JobSpec:
    """Validate a job document; malformed input raises :class:`ParseError`."""
    ring = VarRing(_require(doc, "ring", list))
    obj = _require(doc, "object", dict)
    kind = obj.get("kind")
    f = pi = None
    if kind == "hypersurface":
        f = ring.parse(_require(obj, "f", str))
    elif kind == "map":
        comps = _require(obj, "components", list)
        pi = Parameterization.parse(_require(obj, "source_vars", list), ring.vars, comps)
    else:
        raise ParseError("object kind must be 'hypersurface' or 'map'")
    tasks = _require(doc, "tasks", list)
    if not tasks:
        raise ParseError("task list is empty")
    for t in tasks:
        if t not in TASKS:
            raise ParseError(f"unknown task {t!r}")
    coords_doc = doc.get("coords", "generic")
    if coords_doc == "generic":
        if FAMILY_TASKS & set(tasks):
            coords = deform.family_coords(ring)
        else:
            coords = CoordTuple.generic(ring)
    elif isinstance(coords_doc, list):
        coords = CoordTuple.parse(ring, coords_doc)
    else:
        raise ParseError("coords must be a list of linear forms or 'generic'")
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise ParseError("options must be an object")
    return JobSpec(doc.get("name", ""), ring, kind, f, pi, coords, list(tasks), options, doc)


# ---------------------------------------------------------------------------
# tasks


def _need_map(job: JobSpec) -> Parameterization:
    if job.pi is None:
        raise PreconditionError("task needs a parameterization (object kind 'map')")
    return job.pi


def _need_unfolding(job: JobSpec) -> Unfolding:
    pi = _need_map(job)
    ok, why = unfolding_shape(pi)
    if not ok:
        raise PreconditionError(why)
    return Unfolding.from_parameterization(pi)


def _t0s(job: JobSpec) -> list:
    return [as_rational(v) for v in job.options.get("t0", ["1/4", "1/9"])]


def _task_milnor(job: JobSpec) -> dict:
    f = job.hypersurface
    det = local_colength_details(jacobian_ideal(f))
    out = {"f": str(f), "mu": det.value, "colength": det.to_dict()}
    if job.pi is not None and unfolding_shape(job.pi)[0]:
        f0 = f.restrict_zero([job.ring.vars[0]])
        d0 = local_colength_details(jacobian_ideal(f0))
        out["central"] = {"f": str(f0), "mu": d0.value, "colength": d0.to_dict()}
    return out


def _task_ndot(job: JobSpec) -> dict:
    pi = job.pi
    if pi is None:
        pi = _linear_arrangement(job.hypersurface)
        if pi is None:
            raise PreconditionError("ndot of a hypersurface needs a parameterization unless it is a hyperplane arrangement")
    if pi.target.nvars == 4:
        return deform.total_ndot(_need_unfolding(job), job.coords)
    return ndot_multiplicities(pi, job.coords).to_dict()


def _task_ipa(job: JobSpec) -> dict:
    f = job.hypersurface
    res = ipa_check(f, job.coords)
    res["tuple"] = is_ipa_tuple(f, job.coords, max(1, f.ring.nvars - 1))
    return res


def run_task(job: JobSpec, task: str):
    """Returns ``(value, verdicts)``."""
    t0s = _t0s(job)
    if task == "milnor":
        return _task_milnor(job), []
    if task == "le-numbers":
        return le_numbers(job.hypersurface, job.coords).to_dict(), []
    if task == "ipa-check":
        return _task_ipa(job), []
    if task == "ndot":
        return _task_ndot(job), []
    if task == "verify-slice":
        return None, verify_slice_formula(job.hypersurface, job.coords)
    if task == "verify-milnor":
        return None, deform.verify_milnor_formula(_need_unfolding(job), t0s[0])
    if task == "verify-eq2":
        return None, [deform.verify_eq2_curve(_need_unfolding(job), t0) for t0 in t0s]
    if task == "verify-ipa2":
        return None, [deform.verify_ipaimplies2(_need_unfolding(job), job.coords)]
    if task == "verify-main":
        if job.pi is None:
            return None, deform.verify_thm_main(f=job.hypersurface, coords=job.coords, t0s=t0s)
        return None, deform.verify_thm_main(_need_unfolding(job), job.coords, t0s=t0s)
    if task == "surface-invariants":
        return deform.surface_invariants(_need_unfolding(job), job.coords, t0s[0]), []
    if task == "verify-surface":
        return None, deform.verify_thm_surface(_need_unfolding(job), job.coords)
    if task == "verify-corollary":
        return None, deform.verify_cor_surface(_need_unfolding(job), job.coords)
    raise ParseError(f"unknown task {task!r}")


def run_job(job: JobSpec | dict, seed: int | None = None, k_max: int | None = None,
            max_degree: int | None = None):
    """Run every task in order; returns ``(report document, exit code)``."""
    overrides = {}
    opts = job.options if isinstance(job, JobSpec) else job.get("options", {})
    env_seed = os.environ.get("LEFORGE_SEED") or None
    for key, flag in (("seed", seed), ("k_max", k_max), ("max_degree", max_degree)):
        val = flag if flag is not None else opts.get(key)
        if val is None and key == "seed":
            val = env_seed
        if val is not None:
            overrides[key] = int(val)
    with config.settings(**overrides) as st:
        if isinstance(job, dict):
            job = parse_job(job)
        results, first_error, failed = [], None, False
        for task in job.tasks:
            entry = {"task": task}
            try:
                value, verdicts = run_task(job, task)
            except LeforgeError as exc:
                entry.update(status="error", error=exc.to_dict(), exit_code=exc.exit_code)
                if first_error is None:
                    first_error = exc
                results.append(entry)
                continue
            if value is not None:
                entry["value"] = value
            if verdicts:
                entry["verdicts"] = [v.to_dict() for v in verdicts]
                ok = all(v.passed for v in verdicts)
                failed = failed or not ok
                entry["status"] = "pass" if ok else "fail"
            else:
                entry["status"] = "ok"
            results.append(entry)
        code = first_error.exit_code if first_error is not None else (1 if failed else 0)
        doc = {
            "leforge": __version__,
            "job": job.raw,
            "seed": st.seed,
            "settings": {"k_max": st.k_max, "max_degree": st.max_degree},
            "coords": [str(fm) for fm in job.coords.forms],
            "results": results,
            "exit_code": code,
        }
    return jsonable(doc), code


# ---------------------------------------------------------------------------
# output


def print_report(doc: dict, fmt: str = "json", stream=None) -> str:
    """Render a report; JSON is canonical (sorted keys, integers only)."""
    if fmt == "json":
        text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    else:
        text = _render_text(doc)
    if stream is not None:
        stream.write(text)
    return text


def _render_text(doc: dict) -> str:
    name = doc.get("job", {}).get("name", "")
    lines = [f"leforge {doc['leforge']}  job {name or '-'}  seed {doc['seed']}"]
    rows = []
    for entry in doc.get("results", []):
        task = entry["task"]
        if entry["status"] == "error":
            err = entry["error"]
            rows.append((task, f"ERROR {err['kind']}: {err['message']}"))
            continue
        for v in entry.get("verdicts", []):
            vd = Verdict(v["name"], v["lhs"], v["rhs"])
            rows.append((f"{task} {v['name']}", vd.render()))
        if "value" in entry:
            rows.append((task, json.dumps(entry["value"], sort_keys=True, ensure_ascii=False)))
    width = max((len(r[0]) for r in rows), default=0)
    lines += [f"{a.ljust(width)}  {b}" for a, b in rows]
    lines.append(f"exit {doc['exit_code']}")
    return "\n".join(lines) + "\n"


def _error_doc(exc: LeforgeError) -> dict:
    return {"leforge": __version__, "error": exc.to_dict(), "exit_code": exc.exit_code}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="leforge", description="Exact Lê-number and deformation-formula checks.")
    parser.add_argument("--version", action="version", version=f"leforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a job file or catalog:<name>")
    run.add_argument("job")
    run.add_argument("--format", choices=("json", "text"), default="json")
    run.add_argument("--seed", type=int)
    run.add_argument("--kmax", type=int)
    run.add_argument("--max-degree", type=int)
    sub.add_parser("catalog", help="list bundled jobs")
    args = parser.parse_args(argv)

    if args.command == "catalog":
        for name in catalog_names():
            print(name)
        return 0
    try:
        doc = load_job(args.job)
        report, code = run_job(doc, seed=args.seed, k_max=args.kmax, max_degree=args.max_degree)
    except LeforgeError as exc:
        print(f"leforge: {exc}", file=sys.stderr)
        if args.format == "json":
            print_report(_error_doc(exc), "json", sys.stdout)
        else:
            print(f"ERROR {exc.kind}: {exc}")
        return exc.exit_code
    print_report(report, args.format, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
