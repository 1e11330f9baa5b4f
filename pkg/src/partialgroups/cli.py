"""Command-line front end: structure documents in, verification reports out.

A structure document is a JSON object ``{"format": "partialgroups/1",
"declarations": [...]}`` validated against ``schema.json``.  Declarations
run in order; every constructed object is verified before it can be used,
and ``check`` declarations run named property suites on earlier objects.

Exit codes: 0 when every verification and check passes, 1 otherwise, 2 when
the document (or a saved report) cannot be read.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cache
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .errors import (
    CarrierMismatchError,
    DocumentError,
    FixtureInvalidError,
    HypothesisError,
    InvalidInputError,
    PartialGroupError,
    VerificationError,
)
from .groups import cayley_group, cyclic_group, generated, permutation_group, subgroups, sylow_subgroup
from .locality import Locality, check_locality, locality_from_group
from .locality_products import (
    ProductLocality,
    external_semidirect_locality,
    group_semidirect_locality,
    strongly_closed_counterexample,
)
from .morphisms import ActionHom, action_report, find_isomorphism, is_isomorphism
from .oracles import ExplicitBounded, Full
from .partial_group import PartialGroup, verify_axioms
from .properties import (
    action_kernel_report,
    conjugation_calculus_report,
    conjugation_inverse_report,
    external_split_report,
    homomorphism_report,
    locality_structure_report,
    partial_group_identities,
    product_locality_report,
    semidirect_structure_report,
)
from .report import CheckResult, VerificationReport, render_label
from .semidirect import canonical_parts, check_internal_semidirect, external_semidirect, internal_to_external_iso
from .wreath import (
    DirectProductLocality,
    centralizer_lemma_report,
    direct_product_localities,
    direct_product_partial_group,
    wreath_product,
)

FORMAT = "partialgroups/1"
REPORT_FORMAT = "partialgroups-report/1"
VERBS = ("verify", "build", "check", "report")

#: fields of each declaration kind that name earlier declarations
REFERENCE_FIELDS = {
    "action": ("actor", "target"),
    "locality": ("group",),
    "construction": ("actor", "target", "action", "factors", "permutations", "locality"),
    "check": ("subject", "other"),
}


# -- documents ---------------------------------------------------------


@dataclass
class StructureDocument:
    declarations: list = field(default_factory=list)
    description: str | None = None

    def to_tree(self) -> dict:
        tree = {"format": FORMAT}
        if self.description is not None:
            tree["description"] = self.description
        tree["declarations"] = self.declarations
        return tree


@cache
def schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("schema.json").read_text(encoding="utf-8"))


def render_document(doc: StructureDocument) -> str:
    return json.dumps(doc.to_tree(), indent=2, ensure_ascii=False) + "\n"


def parse_document(path) -> StructureDocument:
    """Read, schema-validate and reference-check a document file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read document: {exc.strerror}", str(path)) from None
    return parse_text(text, str(path))


def parse_text(text: str, origin: str = "<document>") -> StructureDocument:
    if not text.strip():
        return StructureDocument()
    try:
        tree = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"{origin}:{exc.lineno}:{exc.colno}") from None
    error = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(schema()).iter_errors(tree))
    if error is not None:
        path = list(error.absolute_path)
        raise DocumentError(error.message, _location(origin, text, path))
    decls = tree["declarations"]
    seen: dict[str, int] = {}
    for i, d in enumerate(decls):
        for key in REFERENCE_FIELDS.get(d["kind"], ()):
            refs = d.get(key)
            for j, ref in enumerate(refs if isinstance(refs, list) else [refs]):
                if ref is None:
                    continue
                if ref not in seen:
                    where = ["declarations", i, key] + ([j] if isinstance(refs, list) else [])
                    raise DocumentError(f"undeclared reference {ref!r}", _location(origin, text, where))
        if d["name"] in seen:
            raise DocumentError(
                f"name {d['name']!r} is already declared", _location(origin, text, ["declarations", i, "name"])
            )
        seen[d["name"]] = i
    return StructureDocument(decls, tree.get("description"))


def _location(origin: str, text: str, path: list) -> str:
    pointer = "/" + "/".join(str(p) for p in path)
    line = _declaration_line(text, path[1]) if len(path) >= 2 and path[0] == "declarations" else None
    return f"{origin}:{line}: {pointer}" if line else f"{origin}: {pointer}"


def _declaration_line(text: str, index: int) -> int | None:
    """Line on which the index-th entry of the top-level declarations array starts."""
    dec = json.JSONDecoder()
    ws = " \t\r\n"

    def skip(pos, extra=""):
        while pos < len(text) and text[pos] in ws + extra:
            pos += 1
        return pos

    try:
        pos = skip(0)
        if text[pos] != "{":
            return None
        pos += 1
        while True:
            pos = skip(pos, ",")
            if text[pos] == "}":
                return None
            key, pos = dec.raw_decode(text, pos)
            pos = skip(skip(pos), ":")
            if key != "declarations":
                _, pos = dec.raw_decode(text, pos)
                continue
            if text[pos] != "[":
                return None
            pos += 1
            for i in range(index + 1):
                pos = skip(pos, ",")
                if i == index:
                    return text.count("\n", 0, pos) + 1
                _, pos = dec.raw_decode(text, pos)
    except (ValueError, IndexError):
        return None


# -- building ----------------------------------------------------------


@dataclass
class Entity:
    name: str
    kind: str
    type: str
    value: object
    extra: dict = field(default_factory=dict)

    @property
    def size(self) -> int | None:
        if isinstance(self.value, (PartialGroup, Locality)):
            return len(self.value)
        return None


@dataclass
class RunOptions:
    max_len: int = 4
    seed: int = 0
    jobs: int = 1


def declared_type(d: dict) -> str:
    """The sub-kind of a declaration as shown in reports."""
    kind = d["kind"]
    if kind == "group":
        return next(k for k in ("permutations", "cyclic", "table") if k in d)
    if kind == "partial_group":
        return "explicit"
    if kind == "action":
        return "trivial" if d.get("trivial") else "images"
    if kind == "locality":
        return d.get("carrier", "restricted")
    if kind == "construction":
        return d["type"]
    return d["suite"]


def group_check_bound(order: int, max_len: int) -> int:
    """Word-length bound for the automatic axiom check of a declared group."""
    if order <= 24:
        return max_len
    return min(max_len, 3 if order <= 100 else 2)


def _partial_group(entity: Entity) -> PartialGroup:
    v = entity.value
    if isinstance(v, PartialGroup):
        return v
    if isinstance(v, Locality):
        return v.L
    raise InvalidInputError(f"{entity.name} is not a partial group")


def _locality(entity: Entity) -> Locality:
    if isinstance(entity.value, Locality):
        return entity.value
    raise InvalidInputError(f"{entity.name} is not a locality")


def _action(entity: Entity) -> ActionHom:
    if isinstance(entity.value, ActionHom):
        return entity.value
    raise InvalidInputError(f"{entity.name} is not an action")


def _element(L: PartialGroup, text: str):
    for x in L.labels:
        if render_label(x) == text:
            return x
    raise InvalidInputError(f"{text!r} is not an element of {L.name}")


def _subgroup(L: PartialGroup, gens: list) -> frozenset:
    H = generated(L, [_element(L, g) for g in gens])
    if H is None:
        raise InvalidInputError(f"the elements {gens} do not generate a subgroup of {L.name}")
    return H


def _same_carrier(A: PartialGroup, B: PartialGroup, what: str) -> None:
    if A is not B and (A.labels != B.labels or not np.array_equal(A.binary, B.binary)):
        raise CarrierMismatchError(f"{what} is declared on {B.name}, not on {A.name}")


class Runner:
    """Executes the declarations of one document in order."""

    def __init__(self, options: RunOptions | None = None):
        self.options = options or RunOptions()
        self.entities: dict[str, Entity] = {}

    # builders return (entity, [reports])

    def build_group(self, d):
        name = d["name"]
        if "permutations" in d:
            spec = d["permutations"]
            G = permutation_group(spec["generators"], spec["degree"], name=name)
        elif "cyclic" in d:
            spec = d["cyclic"]
            G = cyclic_group(spec["order"], spec.get("generator", "a"), name=name)
        else:
            spec = d["table"]
            G = cayley_group(spec["elements"], spec["rows"], name=name)
        return Entity(name, "group", declared_type(d), G), [verify_axioms(G, group_check_bound(len(G), self.options.max_len))]

    def build_partial_group(self, d):
        labels = d["elements"]
        pos = {x: i for i, x in enumerate(labels)}
        n = len(labels)

        def index(x):
            if x not in pos:
                raise InvalidInputError(f"{x!r} is not a listed element")
            return pos[x]

        if len(d["rows"]) != n or any(len(r) != n for r in d["rows"]):
            raise InvalidInputError("the table must be square over the listed elements")
        binary = [[-1 if x is None else index(x) for x in row] for row in d["rows"]]
        missing = [x for x in labels if x not in d["inverse"]]
        if missing:
            raise InvalidInputError(f"no inverse given for {missing[0]!r}")
        inverse = [index(d["inverse"][x]) for x in labels]
        index(d["identity"])
        dom = d["domain"]
        if dom == "full":
            oracle, bound = Full(n), self.options.max_len
        else:
            oracle = ExplicitBounded(n, dom["bound"], [[index(x) for x in w] for w in dom["words"]])
            bound = min(self.options.max_len, dom["bound"])
        L = PartialGroup(labels, d["identity"], inverse, binary, oracle, name=d["name"])
        return Entity(d["name"], "partial_group", "explicit", L), [verify_axioms(L, max(bound, 2))]

    def build_action(self, d):
        X = _partial_group(self.entities[d["actor"]])
        N = _partial_group(self.entities[d["target"]])
        if d.get("trivial"):
            phi = ActionHom.trivial(X, N)
        else:
            images = {
                _element(X, g): {_element(N, f): _element(N, h) for f, h in img.items()}
                for g, img in d["images"].items()
            }
            phi = ActionHom.from_generators(X, N, images)
        return Entity(d["name"], "action", declared_type(d), phi), [action_report(phi, self.options.max_len)]

    def build_locality(self, d):
        G = _partial_group(self.entities[d["group"]])
        p = d["prime"]
        S = _subgroup(G, d["sylow"]) if "sylow" in d else sylow_subgroup(G, p)
        objects = d["objects"]
        if objects == "all":
            delta = subgroups(G, S)
        elif isinstance(objects, dict):
            delta = [P for P in subgroups(G, S) if len(P) >= objects["order_at_least"]]
        else:
            delta = [_subgroup(G, gens) for gens in objects]
        carrier = d.get("carrier", "restricted")
        ml = self.options.max_len
        if carrier == "restricted":
            try:
                _, loc = locality_from_group(G, p, S, delta, ml, name=d["name"])
            except FixtureInvalidError as exc:
                report = exc.report if exc.report.entries else check_locality(G, p, S, delta, ml)
                if report.ok:
                    report.add(CheckResult("restricted-carrier", False, counterexample=[str(exc)], detail=str(exc)))
                raise VerificationError(str(exc), report) from None
        else:
            report = check_locality(G, p, S, delta, ml)
            if not report.ok:
                raise VerificationError(f"{G.name} is not a locality: {report.failures()[0].check} fails", report)
            loc = Locality(G, p, S, delta, report, {"group": G.name})
        return Entity(d["name"], "locality", carrier, loc), [loc.report]

    def build_construction(self, d):
        name, kind, ml = d["name"], d["type"], self.options.max_len
        ents = self.entities
        if kind == "semidirect":
            X, N = _partial_group(ents[d["actor"]]), _partial_group(ents[d["target"]])
            phi = _action(ents[d["action"]])
            _same_carrier(X, phi.actor, "the action")
            _same_carrier(N, phi.target, "the action")
            E = external_semidirect(X, N, phi, name=name, max_len=ml)
            wit = check_internal_semidirect(E, *canonical_parts(E), max_len=ml)
            recognition = VerificationReport(f"internal structure of {name}")
            recognition.extend(wit.report)
            extra = {"action": phi, "witness": wit if wit else None}
            return Entity(name, "construction", kind, E, extra), [verify_axioms(E, ml), recognition]
        if kind == "semidirect_locality":
            actor, N_loc = ents[d["actor"]], _locality(ents[d["target"]])
            phi = _action(ents[d["action"]])
            _same_carrier(N_loc.L, phi.target, "the action")
            if isinstance(actor.value, Locality):
                _same_carrier(actor.value.L, phi.actor, "the action")
                loc = external_semidirect_locality(actor.value, N_loc, phi, d["variant"], ml, name=name)
            else:
                X = _partial_group(actor)
                _same_carrier(X, phi.actor, "the action")
                loc = group_semidirect_locality(X, phi, N_loc, d["variant"], ml, name=name)
            return Entity(name, "construction", kind, loc, {"action": phi}), [loc.report, verify_axioms(loc.L, ml)]
        if kind == "direct":
            factors = [ents[f] for f in d["factors"]]
            if all(isinstance(f.value, Locality) for f in factors):
                loc = direct_product_localities([f.value for f in factors], ml, name=name)
                return Entity(name, "construction", kind, loc), [loc.report, verify_axioms(loc.L, ml)]
            if any(isinstance(f.value, Locality) for f in factors):
                raise InvalidInputError("direct factors must be all localities or all partial groups")
            L = direct_product_partial_group([_partial_group(f) for f in factors], name=name)
            return Entity(name, "construction", kind, L), [verify_axioms(L, ml)]
        X = _partial_group(ents[d["permutations"]])
        N_loc = _locality(ents[d["locality"]])
        loc = wreath_product(X, N_loc, d["degree"], d["variant"], ml, name=name)
        return Entity(name, "construction", kind, loc), [loc.report, verify_axioms(loc.L, ml)]

    # checks

    def _witness(self, entity: Entity):
        if "witness" not in entity.extra:
            loc = entity.value
            if not isinstance(loc, ProductLocality):
                raise InvalidInputError(f"{entity.name} is not a semidirect construction")
            wit = check_internal_semidirect(loc.L, loc.hat_X.L.labels, loc.hat_N.L.labels, max_len=self.options.max_len)
            entity.extra["witness"] = wit if wit else None
        wit = entity.extra["witness"]
        if wit is None:
            raise InvalidInputError(f"{entity.name} is not recognised as an internal semidirect product")
        return wit

    def run_check(self, d) -> tuple[Entity, list[VerificationReport]]:
        suite = d["suite"]
        subject = self.entities[d["subject"]]
        ml = d.get("max_len", self.options.max_len)
        seed = self.options.seed
        out: list[VerificationReport] = []
        if suite == "axioms":
            out.append(verify_axioms(_partial_group(subject), ml))
        elif suite == "partial-group-identities":
            out.append(partial_group_identities(_partial_group(subject), ml, d.get("samples"), seed))
        elif suite == "conjugation-inverse":
            out.append(conjugation_inverse_report(_partial_group(subject)))
        elif suite == "action":
            phi = _action(subject)
            out += [action_report(phi, ml), action_kernel_report(phi)]
        elif suite == "isomorphism":
            if "other" not in d:
                raise InvalidInputError("the isomorphism suite needs 'other'")
            A, B = _partial_group(subject), _partial_group(self.entities[d["other"]])
            iso = find_isomorphism(A, B)
            found = VerificationReport(f"isomorphism {A.name} -> {B.name}")
            found.add(
                CheckResult(
                    "isomorphism-found",
                    iso is not None,
                    counterexample=None if iso is not None else [A.name, B.name],
                    detail="exhaustive search for a bijection preserving domain and products",
                )
            )
            if iso is not None:
                found.add(CheckResult("isomorphism", is_isomorphism(iso, ml), bound=ml))
                found.extend(homomorphism_report(iso, ml))
            out.append(found)
        elif suite == "locality":
            loc = _locality(subject)
            out.append(check_locality(loc.L, loc.p, loc.S, loc.delta, ml))
            out.append(locality_structure_report(loc, d.get("samples", 200), min(ml, 3), seed))
        elif suite == "semidirect-structure":
            wit = self._witness(subject)
            rep = semidirect_structure_report(wit)
            iso, _ = internal_to_external_iso(wit, ml)
            rep.add(
                CheckResult(
                    "internal-external-isomorphism",
                    is_isomorphism(iso, ml),
                    bound=ml,
                    instances=len(wit.ambient),
                    detail="the ambient partial group is isomorphic to the external product of its parts",
                )
            )
            out.append(rep)
        elif suite == "conjugation-calculus":
            out.append(conjugation_calculus_report(self._witness(subject)))
        elif suite == "split-words":
            if subject.type != "semidirect":
                raise InvalidInputError(f"{subject.name} is not an external semidirect product")
            out.append(external_split_report(subject.value, subject.extra["action"], min(ml, 3)))
        elif suite == "delta-families":
            loc = subject.value
            if not isinstance(loc, ProductLocality):
                raise InvalidInputError(f"{subject.name} is not a product of localities")
            out.append(product_locality_report(loc, min(ml, 3)))
        elif suite == "centralizer":
            loc = subject.value
            if not (isinstance(loc, ProductLocality) and isinstance(loc.N_loc, DirectProductLocality)):
                raise InvalidInputError(f"{subject.name} is not a wreath product")
            H = _subgroup(loc.L, d["subgroup"]) if "subgroup" in d else None
            out.append(centralizer_lemma_report(loc, H))
        else:  # strongly-closed
            loc = _locality(subject)
            if "subgroup" not in d:
                raise InvalidInputError("the strongly-closed suite needs 'subgroup'")
            S0 = _subgroup(loc.L, d["subgroup"])
            cex = strongly_closed_counterexample(loc, S0)
            rep = VerificationReport(f"strong closure in {loc.name}")
            rep.add(
                CheckResult(
                    "strongly-closed",
                    cex is None,
                    counterexample=cex,
                    instances=len(loc.L),
                    detail="x ∈ S0 ∩ S_f implies x^f ∈ S0",
                )
            )
            out.append(rep)
        return Entity(d["name"], "check", suite, None), out

    def execute(self, d) -> dict:
        """Run one declaration; never raises for package errors."""
        builder = {
            "group": self.build_group,
            "partial_group": self.build_partial_group,
            "action": self.build_action,
            "locality": self.build_locality,
            "construction": self.build_construction,
            "check": self.run_check,
        }[d["kind"]]
        record = {
            "name": d["name"],
            "kind": d["kind"],
            "type": declared_type(d),
            "size": None,
            "ok": False,
            "reports": [],
            "error": None,
        }
        try:
            entity, reports = builder(d)
        except HypothesisError as exc:
            rep = VerificationReport(f"hypotheses of {d['name']}")
            rep.add(CheckResult(exc.bullet, False, counterexample=exc.counterexample, detail=str(exc)))
            record["reports"] = [rep.to_dict()]
            record["error"] = {"kind": exc.kind, "message": str(exc)}
            return record
        except VerificationError as exc:
            record["reports"] = [exc.report.to_dict()]
            record["error"] = {"kind": exc.kind, "message": str(exc)}
            return record
        except PartialGroupError as exc:
            record["error"] = {"kind": exc.kind, "message": str(exc)}
            return record
        record["size"] = entity.size
        record["reports"] = [r.to_dict() for r in reports]
        record["ok"] = all(r.ok for r in reports)
        if d["kind"] != "check":
            self.entities[entity.name] = entity
            if not record["ok"]:
                record["error"] = {"kind": "verification-failed", "message": f"{d['name']} failed verification"}
        return record


def _batches(decls: list) -> list[list]:
    """Consecutive checks form one batch; every other declaration is alone."""
    out: list[list] = []
    for d in decls:
        if d["kind"] == "check" and out and out[-1][0]["kind"] == "check":
            out[-1].append(d)
        else:
            out.append([d])
    return out


def run(doc: StructureDocument, options: RunOptions | None = None, verb: str = "verify", origin: str = "") -> dict:
    """Execute a document and assemble its report.

    A declaration that raises or fails verification stops the run; a failed
    check does not.  Consecutive checks may run concurrently; their records
    are assembled in document order.
    """
    options = options or RunOptions()
    runner = Runner(options)
    records, aborted = [], False
    decls = [d for d in doc.declarations if d["kind"] != "check"] if verb == "build" else doc.declarations
    pool = ThreadPoolExecutor(options.jobs) if options.jobs > 1 else None
    try:
        for batch in _batches(decls):
            results = list(pool.map(runner.execute, batch)) if pool and len(batch) > 1 else map(runner.execute, batch)
            for rec in results:
                records.append(rec)
                if rec["error"] is not None:
                    aborted = True
                    break
            if aborted:
                break
    finally:
        if pool:
            pool.shutdown()
    shown = [r for r in records if r["kind"] == "check" or r["error"] is not None] if verb == "check" else records
    return {
        "format": REPORT_FORMAT,
        "document": origin,
        "verb": verb,
        "seed": options.seed,
        "max_len": options.max_len,
        "ok": not aborted and all(r["ok"] for r in records),
        "aborted": aborted,
        "declarations": shown,
    }


# -- rendering -----------------------------------------------------------


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render_text(report: dict) -> str:
    lines = [
        f"document {report['document'] or '<none>'} ({report['verb']}, seed {report['seed']}, max_len {report['max_len']})"
    ]
    for rec in report["declarations"]:
        size = f", {rec['size']} elements" if rec["size"] is not None else ""
        lines.append(f"[{'ok' if rec['ok'] else 'FAIL'}] {rec['kind']} {rec['name']} ({rec['type']}{size})")
        for rep in rec["reports"]:
            lines.append(f"  {rep['subject']}: {'ok' if rep['ok'] else 'FAILED'}")
            for e in rep["entries"]:
                bound = "exact" if e["bound"] is None else f"len<={e['bound']}"
                count = f"{e['instances']} instance" + ("" if e["instances"] == 1 else "s")
                line = f"    {'pass' if e['passed'] else 'FAIL'} {e['check']} [{bound}] {count}"
                if not e["passed"]:
                    line += f"; counterexample {json.dumps(e['counterexample'], ensure_ascii=False)}"
                lines.append(line)
        if rec["error"]:
            lines.append(f"  error ({rec['error']['kind']}): {rec['error']['message']}")
    verdict = "ok" if report["ok"] else ("aborted" if report["aborted"] else "FAILED")
    lines.append(f"result: {verdict}")
    return "\n".join(lines) + "\n"


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partialgroups", description=__doc__.split("\n\n")[0])
    parser.add_argument("verb", choices=VERBS, help="verify: everything; build: declarations only; "
                        "check: report only the checks; report: re-render a saved JSON report")
    parser.add_argument("path", help="structure document (or saved JSON report for 'report')")
    parser.add_argument("--max-len", type=int, default=4, help="word-length bound of the sweeps (default 4)")
    parser.add_argument("--seed", type=int, default=0, help="seed of the sampled suites (default 0)")
    parser.add_argument("--jobs", type=int, default=1, help="worker threads for consecutive checks")
    parser.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_len < 2 or args.jobs < 1:
        print("error: --max-len must be at least 2 and --jobs at least 1", file=sys.stderr)
        return 2
    try:
        if args.verb == "report":
            try:
                report = json.loads(Path(args.path).read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise DocumentError(f"cannot read report: {exc}", args.path) from None
            if not isinstance(report, dict) or report.get("format") != REPORT_FORMAT:
                raise DocumentError("not a saved run report", args.path)
        else:
            doc = parse_document(args.path)
            report = run(doc, RunOptions(args.max_len, args.seed, args.jobs), args.verb, args.path)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render_json(report) if args.format == "json" else render_text(report))
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
