"""Command line surface.

Thirteen subcommands, each a thin wrapper over module operations, emitting
deterministic key: value reports (or the same data as JSON with --json).
Rationals are always printed exactly, never as decimals.

Exit status: 0 success, 1 domain error (a named invariant or precondition
failed), 2 usage error (bad arguments, unknown fixture, unreadable file).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import complexes, connect_sum, fixtures, invariants, lattice, polyid
from .complexes import InvalidDataError, Kind
from .connect_sum import SignConfig, SignSearchError
from .fixtures import FixtureError, ParseError, SemanticError
from .homology import (DegreeMismatch, DescentObstruction, boundary_basis,
                       cycle_basis, euler_characteristic_mod2,
                       homology as graded_homology, pair, reduce_to_homology)
from .lattice import LatticeError
from .linalg import RatMatrix, format_rational

# Where each public operation is surfaced.  One home per operation; shared
# plumbing (validation, fixture loading) naturally also runs elsewhere.
COMMAND_TABLE = {
    "validate": ("complexes.validate", "complexes.require_valid",
                 "complexes.u_chain_residual", "fixtures.parse"),
    "homology": ("homology.homology", "homology.cycle_basis",
                 "homology.boundary_basis", "homology.euler_characteristic_mod2"),
    "reduce": ("homology.reduce_to_homology", "homology.class_coordinates"),
    "dualize": ("complexes.dualize", "complexes.structurally_equal"),
    "connect-sum": ("connect_sum.connected_sum_complex", "connect_sum.sign_search"),
    "disjoint-union": ("connect_sum.disjoint_union_complex",
                       "connect_sum.extended_u", "connect_sum.kernel_symmetry_check"),
    "phi": ("invariants.phi_span", "invariants.phi_filtration",
            "invariants.phi_report", "invariants.nilpotency_order"),
    "h": ("invariants.h_invariant", "invariants.triangular_independence",
          "homology.pair", "complexes.evaluate_functional"),
    "eta": ("lattice.eta", "lattice.congruent_vectors", "lattice.same_class",
            "lattice.norm", "lattice.parse_vector", "lattice.require_member"),
    "extremal": ("lattice.is_extremal", "lattice.is_member",
                 "lattice.min_charge_k", "lattice.from_coords", "lattice.zero",
                 "lattice.concat"),
    "verify-sum-bound": ("connect_sum.verify_sum_bound",
                         "connect_sum.build_pair_cycle",
                         "connect_sum.build_triple_cycle",
                         "connect_sum.triple_cycle_condition",
                         "connect_sum.product_functional"),
    "poly-identities": ("polyid.verify_telescoping", "polyid.verify_triple_identity"),
    "fixtures": ("fixtures.fixture_names", "fixtures.builtin",
                 "fixtures.split_fixture_spec", "fixtures.fixture_description",
                 "fixtures.distinguished_generators", "fixtures.serialize",
                 "fixtures.random_admissible", "fixtures.random_homology_sphere",
                 "fixtures.random_valid", "fixtures.random_nilpotent_phi"),
}


class UsageError(Exception):
    pass


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return " ".join(_fmt(v) for v in value) if value else "none"
    return str(value)


def _json_value(value):
    if isinstance(value, bool) or value is None or isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return str(value)


def _dims(dims: dict):
    items = [(r, d) for r, d in sorted(dims.items()) if d]
    if not items:
        return None
    return ["%d:%d" % (r, d) for r, d in items]


class Report:
    def __init__(self, command: str):
        self.pairs = [("command", command)]
        self.document = None

    def add(self, key: str, value) -> "Report":
        self.pairs.append((key, value))
        return self

    def emit(self, as_json: bool, out=None) -> None:
        out = out or sys.stdout
        if as_json:
            payload = {k: _json_value(v) for k, v in self.pairs}
            if self.document is not None:
                payload["document"] = self.document
            out.write(json.dumps(payload, indent=2) + "\n")
            return
        for key, value in self.pairs:
            out.write("%s: %s\n" % (key, _fmt(value)))
        if self.document is not None:
            out.write("\n" + self.document)


# ---------------------------------------------------------------------------
# shared loading


def _load_data(fixture, path, u_param, check=True):
    """Returns (data, source description)."""
    if fixture and path:
        raise UsageError("pass --fixture or --file, not both")
    if fixture:
        data = fixtures.builtin(fixture, u_param=u_param)
        return data, "fixture %s (u-param %d)" % (fixture, u_param)
    if path:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError("cannot read %s: %s" % (path, exc)) from None
        return fixtures.parse(text, check=check), "file %s" % path
    raise UsageError("pass --fixture NAME or --file PATH")


def _load_input(args, check=True):
    return _load_data(args.fixture, args.file, args.u_param, check=check)


def _load_factor(label, spec, path, u_param):
    if not spec and not path:
        raise UsageError("missing %s factor: pass a fixture spec or a document path"
                         % label)
    return _load_data(spec, path, u_param)


def _generator_index(data, name: str) -> int:
    try:
        return data.complex.index_of(name)
    except (KeyError, ValueError):
        raise UsageError("no generator named %r; have %s"
                         % (name, " ".join(data.complex.names))) from None


def _class_vector(spec: str) -> lattice.LatticeVector:
    try:
        return lattice.parse_vector(spec)
    except (LatticeError, ValueError) as exc:
        raise UsageError("bad --class %r: %s" % (spec, exc)) from None


def _parse_signs(text: str) -> SignConfig:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 5:
        raise UsageError("--signs takes five comma-separated values, e.g. 1,1,1,1,-1")
    try:
        return SignConfig(*(int(p) for p in parts))
    except ValueError as exc:
        raise UsageError("bad --signs: %s" % exc) from None


# ---------------------------------------------------------------------------
# command handlers


def cmd_validate(args) -> int:
    data, source = _load_input(args, check=False)
    rep = Report("validate")
    rep.add("source", source)
    rep.add("kind", data.kind.value)
    rep.add("generators", data.size)
    rep.add("dims", _dims(data.complex.dims_by_degree()))
    rep.add("u-chain-residual-zero", complexes.u_chain_residual(data).is_zero())
    result = complexes.validate(data)
    rep.add("valid", result.ok)
    for v in result.violations:
        rep.add("violation " + v.invariant, v.detail)
    rep.emit(args.json)
    return 0 if result.ok else 1


def cmd_homology(args) -> int:
    data, source = _load_input(args)
    complexes.require_valid(data)
    space = graded_homology(data.complex)
    rep = Report("homology")
    rep.add("source", source)
    rep.add("dims", _dims(space.dims))
    rep.add("total-dim", space.total_dim)
    for r in range(8):
        cyc = len(cycle_basis(data.complex, r))
        bnd = len(boundary_basis(data.complex, r))
        if cyc or bnd:
            rep.add("degree %d" % r,
                    "cycles %d boundaries %d homology %d" % (cyc, bnd, space.dims[r]))
    rep.add("euler-by-parity", euler_characteristic_mod2(space.dims))
    rep.emit(args.json)
    return 0


def cmd_reduce(args) -> int:
    data, source = _load_input(args)
    reduced = reduce_to_homology(data)
    rep = Report("reduce")
    rep.add("source", source)
    rep.add("kind", reduced.kind.value)
    rep.add("dims", _dims(reduced.complex.dims_by_degree()))
    rep.add("generators", reduced.size)
    rep.document = fixtures.serialize(reduced)
    rep.emit(args.json)
    return 0


def cmd_dualize(args) -> int:
    data, source = _load_input(args)
    dual = complexes.dualize(data)
    rep = Report("dualize")
    rep.add("source", source)
    rep.add("kind", dual.kind.value)
    rep.add("dims", _dims(dual.complex.dims_by_degree()))
    rep.add("involution-exact", complexes.dualize(dual) == data)
    rep.add("self-dual", complexes.structurally_equal(dual, data))
    rep.document = fixtures.serialize(dual)
    rep.emit(args.json)
    return 0


def cmd_connect_sum(args) -> int:
    a, desc_a = _load_factor("left", args.a, args.file_a, args.u_param)
    b, desc_b = _load_factor("right", args.b, args.file_b, args.u_param)
    signs = _parse_signs(args.signs) if args.signs else None
    built = connect_sum.connected_sum_complex(a, b, signs=signs)
    rep = Report("connect-sum")
    rep.add("left", desc_a)
    rep.add("right", desc_b)
    rep.add("summands", [str(t) for t in built.shape])
    rep.add("generators", built.total.size)
    rep.add("signs", ["%+d" % s for s in built.signs.as_tuple()])
    if args.homology:
        rep.add("homology-dims", _dims(graded_homology(built.total).dims))
    if args.search:
        accepted = connect_sum.sign_search(a, b)
        rep.add("accepted-configs", len(accepted))
        dims_seen = set()
        for i, cfg in enumerate(accepted):
            rep.add("config %d" % i, ["%+d" % s for s in cfg.as_tuple()])
            built_i = connect_sum.connected_sum_complex(a, b, signs=cfg)
            dims_seen.add(tuple(sorted(graded_homology(built_i.total).dims.items())))
        rep.add("dims-invariant-across-configs", len(dims_seen) == 1)
    rep.emit(args.json)
    return 0


def cmd_disjoint_union(args) -> int:
    a, desc_a = _load_factor("left", args.a, args.file_a, args.u_param)
    b, desc_b = _load_factor("right", args.b, args.file_b, args.u_param)
    built = connect_sum.disjoint_union_complex(a, b)
    rep = Report("disjoint-union")
    rep.add("left", desc_a)
    rep.add("right", desc_b)
    rep.add("generators", built.total.size)
    ue = connect_sum.extended_u(built)
    d = built.total.differential
    rep.add("extended-u-commutes", (d @ ue - ue @ d).is_zero())
    if args.homology:
        rep.add("homology-dims", _dims(graded_homology(built.total).dims))
    # u-placement symmetry holds on classes of the homology-level complex,
    # so sample cycles with the factors reduced first
    ra = reduce_to_homology(a)
    rb = reduce_to_homology(b)
    reduced_union = connect_sum.disjoint_union_complex(ra, rb)
    samples = []
    for r in range(8):
        for z in cycle_basis(reduced_union.total, r):
            samples.append(z)
        if len(samples) >= 6:
            break
    results = [connect_sum.kernel_symmetry_check(reduced_union, z)
               for z in samples[:6]]
    rep.add("kernel-symmetry-samples", len(results))
    rep.add("kernel-symmetry-all-true", all(results))
    rep.emit(args.json)
    return 0


def cmd_phi(args) -> int:
    data, source = _load_input(args)
    reduced = False
    if not data.complex.differential.is_zero():
        data = reduce_to_homology(data)
        reduced = True
    class_name = args.cls
    if class_name is None:
        if not args.fixture:
            raise UsageError("--class is required for file input")
        role = "vector" if args.mode == "minus" else "functional"
        class_name = fixtures.distinguished_generators(args.fixture).get(role)
        if class_name is None:
            raise UsageError("fixture %s has no distinguished %s; pass --class"
                             % (args.fixture, role))
    idx = _generator_index(data, class_name)
    start = {idx: Fraction(1)}
    if args.mode == "minus":
        report = invariants.phi_report(data.u, start, mode="vector")
    else:
        report = invariants.phi_report(data.u.transpose(), start, mode="functional")
    rep = Report("phi")
    rep.add("source", source)
    rep.add("reduced-first", reduced)
    rep.add("mode", args.mode)
    rep.add("class", class_name)
    rep.add("span-dim", report.span_dim)
    rep.add("nilpotent-on-cyclic-subspace", report.nilpotent_on_cycle)
    rep.add("filtration-order", report.filtration_order)
    rep.add("agree", report.agree)
    n_map = data.u @ data.u - RatMatrix.identity(data.size).scale(4)
    try:
        rep.add("nilpotency-order-global", invariants.nilpotency_order(n_map))
    except invariants.NotNilpotent:
        rep.add("nilpotency-order-global", None)
    rep.emit(args.json)
    return 0


def cmd_h(args) -> int:
    data, source = _load_input(args)
    reduced = False
    if not data.complex.differential.is_zero():
        data = reduce_to_homology(data)
        reduced = True
    result = invariants.h_invariant(data)
    rep = Report("h")
    rep.add("source", source)
    rep.add("reduced-first", reduced)
    rep.add("dim-functional-span", result.dim_functional_span)
    rep.add("dim-vector-span", result.dim_vector_span)
    rep.add("h", result.h)
    rep.add("mutual-triviality", result.mutual_triviality)
    if not result.mutual_triviality:
        sys.stderr.write("warning: both spans are nonzero; genuine data "
                         "should have at least one trivial\n")
    alpha = dict(data.delta_prime)
    rep.add("delta-on-delta-prime", pair(data.delta, alpha))
    u2 = data.u @ data.u
    rep.add("delta-on-u2-delta-prime",
            complexes.evaluate_functional(data.delta, u2.apply(alpha)))
    rep.add("triangular-independence-bound",
            invariants.triangular_independence(data.delta, alpha, data.u))
    rep.emit(args.json)
    return 0


def cmd_eta(args) -> int:
    w = _class_vector(args.cls)
    if args.blocks is not None and w.blocks != args.blocks:
        raise UsageError("--blocks %d does not match the %d-block class"
                         % (args.blocks, w.blocks))
    lattice.require_member(w)
    rep = Report("eta")
    rep.add("class", args.cls)
    rep.add("blocks", w.blocks)
    rep.add("norm", lattice.norm(w))
    result = lattice.eta(w, workers=args.workers)
    rep.add("vectors", len(result.vectors))
    rep.add("count", result.count)
    rep.add("all-in-class", all(lattice.same_class(v, w) for v in result.vectors))
    if args.list:
        for i, v in enumerate(result.vectors):
            rep.add("vector %d" % i, [format_rational(c) for c in v.coords])
    rep.emit(args.json)
    return 0


def cmd_extremal(args) -> int:
    w = _class_vector(args.cls)
    rep = Report("extremal")
    rep.add("class", args.cls)
    rep.add("blocks", w.blocks)
    rep.add("member", lattice.is_member(w))
    rep.add("norm", lattice.norm(w))
    rep.add("extremal", lattice.is_extremal(w))
    try:
        rep.add("min-charge-k", lattice.min_charge_k(w))
    except LatticeError:
        rep.add("min-charge-k", None)
    rep.emit(args.json)
    return 0


def _bound_factor(label, spec, path, u_param, functional_name):
    if not spec and not path:
        raise UsageError("missing %s factor: pass a fixture spec or a document path"
                         % label)
    data, _ = _load_data(spec, path, u_param)
    if not data.complex.differential.is_zero():
        data = reduce_to_homology(data)
    f = None
    if functional_name:
        f = {_generator_index(data, functional_name): Fraction(1)}
    elif data.delta:
        f = dict(data.delta)
    elif spec:
        name = fixtures.distinguished_generators(spec).get("functional")
        if name is not None:
            f = {_generator_index(data, name): Fraction(1)}
    if f is None:
        raise UsageError("%s factor has no boundary functional; pass "
                         "--functional-%s GENERATOR" % (label, label[0]))
    return data, f


def cmd_verify_sum_bound(args) -> int:
    a, fa = _bound_factor("left", args.a, args.file_a, args.u_param,
                          args.functional_a)
    b, fb = _bound_factor("right" if not args.c and not args.file_c else "middle",
                          args.b, args.file_b, args.u_param, args.functional_b)
    c = fc = None
    if args.c or args.file_c:
        c, fc = _bound_factor("right", args.c, args.file_c, args.u_param,
                              args.functional_c)
    result = connect_sum.verify_sum_bound(a, b, c, n=args.n, fa=fa, fb=fb, fc=fc)
    rep = Report("verify-sum-bound")
    rep.add("mode", result.mode)
    rep.add("n", result.n)
    rep.add("orders", list(result.orders))
    rep.add("level", result.level)
    rep.add("cycle-ok", result.cycle_ok)
    rep.add("pairing", result.pairing)
    rep.add("witness-values", list(result.witness_values))
    rep.add("expected", result.expected)
    rep.add("product-matches", result.product_matches)
    rep.add("nonzero", result.nonzero)
    rep.emit(args.json)
    return 0 if (result.cycle_ok and result.product_matches) else 1


def cmd_poly_identities(args) -> int:
    rep = Report("poly-identities")
    rep.add("max-n", args.max_n)
    all_ok = True
    for n in range(1, args.max_n + 1):
        t = polyid.verify_telescoping(n)
        rep.add("telescoping n=%d corrected" % n, t.corrected_ok)
        rep.add("telescoping n=%d printed" % n, t.printed_ok)
        all_ok = all_ok and t.corrected_ok
    for n in range(1, min(args.max_n, 3) + 1):
        ok = polyid.verify_triple_identity(n)
        rep.add("triple n=%d" % n, ok)
        all_ok = all_ok and ok
    rep.emit(args.json)
    return 0 if all_ok else 1


def _emit_document(rep: Report, document: str, as_json: bool) -> int:
    """Raw document on stdout in text mode so output redirects to a
    loadable file; the full report shape is still available with --json."""
    if as_json:
        rep.document = document
        rep.emit(True)
    else:
        sys.stdout.write(document)
    return 0


def cmd_fixtures(args) -> int:
    rep = Report("fixtures")
    if args.emit:
        name, order = fixtures.split_fixture_spec(args.emit)
        rep.add("fixture", args.emit)
        rep.add("u-param", args.u_param)
        if order is not None:
            rep.add("order", order)
        data = fixtures.builtin(args.emit, u_param=args.u_param)
        return _emit_document(rep, fixtures.serialize(data), args.json)
    if args.random:
        import random as _random
        rng = _random.Random(args.seed)
        rep.add("random", args.random)
        rep.add("seed", args.seed)
        trailer = "# generated: %s seed %d\n" % (args.random, args.seed)
        if args.random == "admissible":
            data = fixtures.random_admissible(rng)
        elif args.random == "sphere":
            data = fixtures.random_homology_sphere(rng)
        elif args.random == "valid":
            data = fixtures.random_valid(rng)
        else:  # nilpotent
            if args.order is None:
                raise UsageError("--random nilpotent needs --order K")
            data, psi = fixtures.random_nilpotent_phi(rng, args.order)
            names = data.complex.names
            pairs = ["%s:%s" % (names[i], format_rational(psi[i]))
                     for i in sorted(psi)]
            rep.add("psi", pairs)
            trailer += "# psi %s\n" % " ".join(pairs)
        return _emit_document(rep, fixtures.serialize(data) + trailer, args.json)
    names = fixtures.fixture_names()
    if args.describe:
        base, _ = fixtures.split_fixture_spec(args.describe)
        if base not in names:
            raise UsageError("unknown fixture %r" % (args.describe,))
        names = [base]
    rep.add("fixtures", names)
    for name in names:
        rep.add(name, fixtures.fixture_description(name))
        spec = name + ":1" if name in ("nPplusModel", "NilpotentLadder") else name
        roles = fixtures.distinguished_generators(spec)
        rep.add(name + "-distinguished",
                ["%s=%s" % (k, v if v else "none") for k, v in sorted(roles.items())])
    rep.emit(args.json)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_input_args(p):
    p.add_argument("--fixture", help="builtin fixture name, e.g. Pplus or NilpotentLadder:2")
    p.add_argument("--file", help="path to a fixture document")
    p.add_argument("--u-param", type=int, default=0,
                   help="unconstrained u entry for the P fixtures (default 0)")
    p.add_argument("--json", action="store_true", help="structured output")


def _add_pair_args(p, third=False):
    p.add_argument("--a", help="left factor fixture spec")
    p.add_argument("--b", help="right factor fixture spec")
    p.add_argument("--file-a", help="left factor document path")
    p.add_argument("--file-b", help="right factor document path")
    if third:
        p.add_argument("--c", help="third factor fixture spec")
        p.add_argument("--file-c", help="third factor document path")
    p.add_argument("--u-param", type=int, default=0)
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="floer-workbench",
        description="exact chain-level calculator for u-equipped graded complexes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="structural invariants of one input")
    _add_input_args(p)

    p = sub.add_parser("homology", help="graded homology of one input")
    _add_input_args(p)

    p = sub.add_parser("reduce", help="reduce to homology-level data")
    _add_input_args(p)

    p = sub.add_parser("dualize", help="orientation-reversal dual")
    _add_input_args(p)

    p = sub.add_parser("connect-sum", help="four-summand sum complex")
    _add_pair_args(p)
    p.add_argument("--signs", help="five signs, e.g. 1,1,1,1,-1")
    p.add_argument("--search", action="store_true",
                   help="enumerate every sign configuration that squares to zero")
    p.add_argument("--homology", action="store_true", help="include homology dims")

    p = sub.add_parser("disjoint-union", help="two-summand union complex")
    _add_pair_args(p)
    p.add_argument("--homology", action="store_true", help="include homology dims")

    p = sub.add_parser("phi", help="span and filtration readings of phi")
    _add_input_args(p)
    p.add_argument("--class", dest="cls", help="generator name (default: distinguished)")
    p.add_argument("--mode", choices=("plus", "minus"), default="minus",
                   help="minus pairs a vector, plus a functional")

    p = sub.add_parser("h", help="signed span difference of reduced data")
    _add_input_args(p)

    p = sub.add_parser("eta", help="congruent-vector count in the E8-block lattice")
    p.add_argument("--class", dest="cls", required=True,
                   help="w0, w0^n, zero^n, or comma-separated coordinates")
    p.add_argument("--blocks", type=int, help="expected block count (checked)")
    p.add_argument("--sign-rule", choices=("plus",), default="plus")
    p.add_argument("--list", action="store_true", help="list the vectors")
    p.add_argument("--workers", type=int, help="enumeration workers (default: env)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("extremal", help="extremality and minimal charge index")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify-sum-bound", help="kernel cycle pairing at the shifted level")
    _add_pair_args(p, third=True)
    p.add_argument("--n", type=int, help="nilpotency exponent (default: inferred)")
    p.add_argument("--functional-l", dest="functional_a", help="left functional generator")
    p.add_argument("--functional-m", dest="functional_b", help="middle/right functional generator")
    p.add_argument("--functional-r", dest="functional_c", help="right functional generator")

    p = sub.add_parser("poly-identities", help="telescoping and triple identities")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("fixtures", help="list, emit, or generate fixture documents")
    p.add_argument("--describe", help="show one fixture")
    p.add_argument("--emit", help="print a builtin as a document")
    p.add_argument("--random", choices=("admissible", "sphere", "valid", "nilpotent"),
                   help="generate a random document")
    p.add_argument("--order", type=int, help="order for --random nilpotent")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--u-param", type=int, default=0)
    p.add_argument("--json", action="store_true")

    return parser


_HANDLERS = {
    "validate": cmd_validate,
    "homology": cmd_homology,
    "reduce": cmd_reduce,
    "dualize": cmd_dualize,
    "connect-sum": cmd_connect_sum,
    "disjoint-union": cmd_disjoint_union,
    "phi": cmd_phi,
    "h": cmd_h,
    "eta": cmd_eta,
    "extremal": cmd_extremal,
    "verify-sum-bound": cmd_verify_sum_bound,
    "poly-identities": cmd_poly_identities,
    "fixtures": cmd_fixtures,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handler = _HANDLERS[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        sys.stderr.write("usage error: %s\n" % exc)
        return 2
    except FixtureError as exc:
        sys.stderr.write("usage error: %s\n" % (exc.args[0] if exc.args else exc,))
        return 2
    except (ParseError, SemanticError, InvalidDataError, SignSearchError,
            invariants.NotNilpotent, DescentObstruction,
            DegreeMismatch, LatticeError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
