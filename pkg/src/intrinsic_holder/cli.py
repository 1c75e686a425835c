"""Command-line front end.

Every subcommand writes one report ``{command, inputs_digest, claims}``
(or a CSV table with ``--format csv``).  Exit status: 0 when every claim
passes, 1 when some claim fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import algebra as alg
from . import holder as H
from . import io
from . import regularity as R
from .errors import DegenerateMasses, HolderError, InputError, ParameterError, PremiseFailed
from .extension import (
    build_machinery,
    extend_partial_section,
    partial_holder_constant,
    section_from_level_set,
)
from .metric import HolderParams, full_positions
from .suite import Claim, run_suite

INPUT_FLAGS = ("space", "quotient", "section", "section2", "base_section", "measure", "fibered", "normed")


def _claim(name, anchor, verdict, measured=None, bound=None, witnesses=None):
    return Claim(name, anchor, bool(verdict), measured, bound, list(witnesses or []))


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise InputError(f"--{n.replace('_', '-')} is required for '{args.command}'")


def _resolve(ids, text, what="point"):
    for p in ids:
        if str(p) == text or repr(p) == text:
            return p
    raise InputError(f"unknown {what} {text!r}")


def _params(args):
    return HolderParams(args.L, args.alpha)


def _instance(args, sections=("section",)):
    _need(args, "space", "quotient")
    S = io.load_space(args.space)
    Q = io.load_quotient(args.quotient, S)
    secs = [io.load_section(getattr(args, s), S, Q) if getattr(args, s) else None for s in sections]
    return S, Q, secs


def _rgrid(args, default=(0.25, 0.5, 0.75, 1.0)):
    if args.rgrid is None:
        return list(default)
    try:
        radii = [float(x) for x in args.rgrid.split(",") if x.strip()]
    except ValueError:
        raise ParameterError(f"--rgrid must be comma-separated numbers, got {args.rgrid!r}") from None
    if not radii or any(not r > 0 for r in radii):
        raise ParameterError("--rgrid radii must be positive")
    return radii


# subcommands ----------------------------------------------------------------


def cmd_validate(args):
    _need(args, "space")
    S = io.load_space(args.space)
    claims = [_claim("metric_valid", "finite metric axioms", True,
                     {"points": S.n, "diameter": S.diameter, "path_metric": S.path_metric})]
    if args.quotient:
        Q = io.load_quotient(args.quotient, S)
        claims.append(_claim("quotient_valid", "fibers partition the points", True, {"fibers": Q.m}))
        for flag in ("section", "section2", "base_section"):
            if getattr(args, flag):
                io.load_section(getattr(args, flag), S, Q)
                claims.append(_claim(f"{flag}_valid", "one point per fiber", True))
    return claims, None


def cmd_check(args):
    S, Q, (sec,) = _instance(args)
    _need(args, "section")
    cert = H.check_holder(S, Q, sec, _params(args), args.tol)
    c = _claim("holder_check", "intrinsic two-term Hölder condition", cert.verdict,
               cert.to_dict(), {"L": args.L, "alpha": args.alpha},
               [list(cert.failing_pair)] if cert.failing_pair else [])
    rows = ("y1", "y2", "slack"), list(cert.slack_rows())
    return [c], rows


def cmd_fit(args):
    S, Q, (sec,) = _instance(args)
    _need(args, "section")
    a = HolderParams(1.0, args.alpha).alpha
    L, pair = H.minimal_holder_constant(S, Q, sec, a)
    K, kpair = H.minimal_global_constant(S, Q, sec, a)
    k = H.diameter_bound_k(S, Q, sec)
    bound = H.bound_K_from_L(L, a, k)
    claims = [
        _claim("minimal_holder_constant", "smallest two-term constant", True, L, None, [list(pair or [])]),
        # the bound's proof walks along chains, so it is only asserted on path metrics
        _claim("global_constant_bound", "bounded base: global constant <= L + 3(floor(k)+1)",
               K <= bound or not S.path_metric,
               {"K": K, "k": k, "path_metric": S.path_metric, "within_bound": K <= bound},
               bound if S.path_metric else None, [list(kpair or [])]),
        _claim("two_term_from_global", "global constant gives two-term condition at L=K",
               H.check_holder(S, Q, sec, HolderParams(max(K, 1e-300), a), tol=0.0).verdict, K),
    ]
    return claims, None


def cmd_cones(args):
    S, Q, (sec,) = _instance(args)
    p = _params(args)
    claims = []
    apexes = [_resolve(S.point_ids, args.anchor)] if args.anchor else []
    if sec is not None and not apexes:
        apexes = list(sec.choice.values())
    rows = []
    for x in apexes:
        cone = H.cone_points(S, Q, x, p)
        claims.append(_claim(f"cone[{x}]", "points inside the intrinsic cone", True,
                             {"members": sorted(map(str, cone.members), key=str),
                              "horizontal": sorted(map(str, cone.horizontal_members)),
                              "vertical": sorted(map(str, cone.vertical_members))}))
        rows.extend((str(x), str(m)) for m in sorted(cone.members, key=repr))
    if sec is not None:
        cert = H.check_holder(S, Q, sec, p, args.tol)
        av = H.cone_avoidance_check(S, Q, sec, p, args.tol)
        claims.append(_claim("cone_avoidance", "graph avoids cones of its points", av.holds, None, None,
                             [list(map(str, av.witness))] if av.witness else []))
        claims.append(_claim("cone_equivalence", "cone avoidance agrees with the Hölder check",
                             av.holds == cert.verdict, {"holder": cert.verdict, "cones": av.holds}))
    return claims, (("apex", "member"), rows)


def cmd_relate(args):
    S, Q, (phi, psi, eta) = _instance(args, ("section", "section2", "base_section"))
    _need(args, "section", "section2", "anchor")
    y0 = _resolve(Q.fiber_ids, args.anchor, "fiber")
    p = _params(args)
    weak = H.check_wrt(S, Q, phi, psi, y0, p, args.tol)
    strong = H.check_wrt_strong(S, Q, phi, psi, y0, p, args.tol)
    back = H.check_wrt_strong(S, Q, psi, phi, y0, p, args.tol)
    claims = [
        _claim("weak_relation", "phi related to psi", weak.verdict, weak.to_dict(), args.L,
               weak.failing_fibers),
        _claim("strong_relation", "phi strongly related to psi", strong.verdict, strong.to_dict(), args.L,
               strong.failing_fibers),
        _claim("strong_relation_symmetric", "strong relation is symmetric", strong.verdict == back.verdict,
               {"forward": strong.verdict, "backward": back.verdict}),
    ]
    if eta is not None:
        try:
            rep = H.strong_transitivity_check(S, Q, phi, psi, eta, y0, args.L, args.L, args.alpha, args.tol)
            claims.append(_claim("strong_relation_transitive", "composition at 2 max(L1, L2)", rep.verdict,
                                 rep.to_dict(), rep.composed_L))
        except PremiseFailed as exc:
            claims.append(_claim("strong_relation_transitive", "composition at 2 max(L1, L2)", True,
                                 {"skipped": str(exc)}))
        classes, _, _ = H.equivalence_classes(S, Q, [phi, psi, eta], psi, y0, args.alpha)
        claims.append(_claim("equivalence_classes", "classes of the strong relation", True,
                             [[{str(k): str(v) for k, v in s.choice.items()} for s in c] for c in classes]))
    if args.L >= 1 and H.check_holder(S, Q, psi, p, args.tol).verdict:
        L1 = max(H.minimal_wrt_constant(S, Q, phi, psi, y0, args.alpha), 1e-3)
        fwd = H.wrt_pointbound_equivalence(S, Q, phi, psi, y0, "forward", L=args.L, alpha=args.alpha,
                                           L1=L1, beta=1.0, tol=args.tol)
        L2 = max(H.point_bound_constant(S, Q, phi, y0, args.alpha), 1e-3)
        rev = H.wrt_pointbound_equivalence(S, Q, phi, psi, y0, "reverse", L=args.L, alpha=args.alpha,
                                           L2=L2, gamma=args.alpha, tol=args.tol)
        claims.append(_claim("point_bound_forward", "relation gives anchored point bound", fwd.verdict,
                             fwd.to_dict(), fwd.asserted_constant))
        claims.append(_claim("point_bound_reverse", "anchored point bound gives relation", rev.verdict,
                             rev.to_dict(), rev.asserted_constant))
    return claims, None


def cmd_family(args):
    S, Q, secs = _instance(args, ("section", "section2", "base_section"))
    fam = [s for s in secs if s is not None]
    if not fam:
        raise InputError("'family' needs at least --section")
    p = _params(args)
    y0 = _resolve(Q.fiber_ids, args.anchor, "fiber") if args.anchor else Q.fiber_ids[0]
    eps = args.eps if args.eps is not None else 0.5 * (p.L + 1)
    claims = []
    for i, s in enumerate(fam):
        holds, r, worst = H.verify_continuity(S, Q, s, p, eps, args.tol)
        claims.append(_claim(f"continuity[{i}]", "displacement <= eps within r(eps)", holds,
                             {"radius": r, "worst": worst}, eps))
    K = sorted({s.choice[y0] for s in fam}, key=repr)
    eq = H.family_equibound_check(S, Q, fam, p, y0, K, args.tol)
    claims.append(_claim("family_equibound", "uniform bound on family graphs", eq.verdict,
                         eq.max_lhs, eq.bound))
    opened = H.uniform_openness_radius(S, Q, K, y0, eps)
    claims.append(_claim("uniform_openness", "fibers within eps of every K point", True,
                         [str(f) for f in opened]))
    lim = H.limit_closure_check(S, Q, fam, p, args.tol)
    claims.append(_claim("limit_closure", "limit stays Hölder", lim.verdict,
                         {"subsequence": lim.subsequence}))
    return claims, None


def cmd_algebra(args):
    _need(args, "normed", "section")
    nq = io.load_normed(args.normed)
    phi = io.load_linear_section(args.section, nq)
    a = HolderParams(1.0, args.alpha).alpha
    claims, rows = [], []
    K = alg.linear_global_constant(nq, phi, a)
    claims.append(_claim("global_constant", "global constant of phi", True, K))
    lam = args.lam if args.lam is not None else 2.0
    sc = alg.scale_section(nq, phi, lam, a, K)
    Ks = alg.linear_global_constant(sc.quotient, sc.section, a)
    claims.append(_claim("scaling", "scaled section has constant |lambda|^(1-alpha) K",
                         Ks <= sc.derived_L * (1 + 1e-9) + 1e-12, Ks, sc.derived_L))
    if args.section2 and args.base_section:
        _need(args, "anchor")
        eta = io.load_linear_section(args.section2, nq)
        psi = io.load_linear_section(args.base_section, nq)
        j = int(args.anchor)
        Lp = alg.linear_minimal_wrt_constant(nq, phi, psi, j, a)
        Le = alg.linear_minimal_wrt_constant(nq, eta, psi, j, a)
        t = args.t if args.t is not None else 0.5
        comb = alg.affine_combine(nq, phi, eta, t)
        bound = t * (Lp - Le) + Le + 1e-9
        cert = alg.linear_check_wrt(nq, comb, psi, j, bound, a)
        claims.append(_claim("affine_combination", "combination related at t(L_phi-L_eta)+L_eta",
                             cert.verdict, cert.minimal_L, bound))
        s = alg.sum_sections(nq, phi, eta, psi, j, a, Lp, Le)
        sc2 = alg.linear_check_wrt(s.quotient, s.section, s.base, j, s.asserted_L + 1e-9, a)
        claims.append(_claim("sum_of_sections", "sum related at 2^(1-alpha) max", sc2.verdict,
                             s.certificate.minimal_L, s.asserted_L))
        rows = [tuple(r) for r in comb.table]
    return claims, (tuple(f"x{i}" for i in range(nq.A.shape[1])), rows)


def cmd_levelset(args):
    _need(args, "fibered", "z0")
    S, Q, _ = _instance(args, ())
    f = io.load_fibered(args.fibered, S)
    res = section_from_level_set(S, Q, f, args.z0, args.L, args.alpha, args.tol)
    c = res.certificate
    claims = [
        _claim("fibered_claims", "f is Hölder and biLipschitz on fibers", res.claims.verdict,
               res.claims.to_dict(), args.L),
        _claim("level_set_section", "level set is a (lambda^2, beta) section", c.verdict, c.to_dict(),
               {"L": args.L**2, "alpha": args.alpha}),
    ]
    rows = [(str(k), str(v)) for k, v in res.section.choice.items()]
    return claims, (("fiber", "point"), rows)


def cmd_extend(args):
    _need(args, "fibered", "section")
    S, Q, _ = _instance(args, ())
    phi = io.load_section(args.section, S, Q, partial=True)
    tau = io.load_fibered(args.fibered, S)
    L = max(1.0, args.L, partial_holder_constant(S, Q, phi, args.alpha))
    m = build_machinery(S, Q, np.asarray(tau.values), args.alpha, L=L)
    res = extend_partial_section(m, phi)
    claims = [_claim(name, "extension of a partial section", ok, res.measured.get(name), None)
              for name, ok in res.checks.items()]
    claims.append(_claim("extension_summary", "zero set and constants", True, res.to_dict(), res.asserted))
    rows = [(str(p), float(v)) for p, v in zip(S.point_ids, res.values)]
    return claims, (("point", "f"), rows)


def cmd_regularity(args):
    S, Q, (phi, psi) = _instance(args, ("section", "section2"))
    _need(args, "section")
    mu = io.load_measure(args.measure, Q) if args.measure else R.make_measure(Q)
    p = _params(args)
    radii = _rgrid(args)
    local = [r for r in radii if r <= R.R0]
    claims = []
    bad = []
    for x in phi.choice.values():
        for r in local:
            b = R.check_ball_inclusion(S, Q, phi, p, x, r, args.tol)
            if not b.verdict:
                bad.append({"center": str(x), "r": r, "missing": [str(f) for f in b.missing()]})
    claims.append(_claim("ball_inclusion_local", "ball images within (L+1) r^alpha, r <= 1", not bad,
                         {"violations": len(bad)}, 0, bad))
    comp = R.measure_compatibility(S, Q, mu, radii)
    claims.append(_claim("measure_compatibility", "compatibility constant on the grid", True,
                         {"C": comp.C, "worst": [str(w) for w in comp.worst] if comp.worst else None}))
    center = _resolve(S.point_ids, args.anchor) if args.anchor else phi.choice[Q.fiber_ids[0]]
    rows = []
    try:
        prof = R.fit_ahlfors_exponent(S, Q, phi, mu, center, radii)
        claims.append(_claim("growth_fit", "log-log fit of ball masses", True, prof.to_dict()))
        rows = prof.rows()
    except DegenerateMasses as exc:
        claims.append(_claim("growth_fit", "log-log fit of ball masses", True, {"skipped": str(exc)}))
    if psi is not None:
        rep = R.transfer_regularity_check(S, Q, phi, psi, p, mu, args.ell, radii, tol=args.tol)
        claims.append(_claim("transfer_upper_bound", "upper growth bound transfers", rep.verdict,
                             rep.to_dict(), rep.exponent,
                             [list(map(str, rep.worst))] if not rep.verdict else []))
    return claims, (("r", "mass"), rows)


def cmd_suite(args):
    claims = run_suite()
    return claims, (("name", "verdict"), [(c.name, "pass" if c.verdict else "fail") for c in claims])


COMMANDS = {
    "validate": cmd_validate,
    "check": cmd_check,
    "fit": cmd_fit,
    "cones": cmd_cones,
    "relate": cmd_relate,
    "family": cmd_family,
    "algebra": cmd_algebra,
    "levelset": cmd_levelset,
    "extend": cmd_extend,
    "regularity": cmd_regularity,
    "suite": cmd_suite,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="intrinsic-holder", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    for name in ("space", "quotient", "section", "section2", "base-section", "measure", "fibered", "normed"):
        ap.add_argument(f"--{name}", type=Path)
    ap.add_argument("--L", type=float, default=1.0)
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--t", type=float)
    ap.add_argument("--lambda", dest="lam", type=float)
    ap.add_argument("--z0", type=float)
    ap.add_argument("--anchor")
    ap.add_argument("--rgrid")
    ap.add_argument("--eps", type=float)
    ap.add_argument("--ell", type=float, default=1.0)
    ap.add_argument("--tol", type=float)
    ap.add_argument("--out", type=Path)
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    return ap


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        claims, table = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except HolderError as exc:
        claims = [_claim(type(exc).__name__, "premise or construction failure", False, str(exc))]
        table = None
    paths = [getattr(args, f) for f in INPUT_FLAGS if getattr(args, f) is not None]
    if args.format == "csv":
        header, rows = table or (("name", "verdict"), [(c.name, "pass" if c.verdict else "fail") for c in claims])
        _emit(io.rows_to_csv(header, rows), args.out)
    else:
        report = {
            "command": args.command,
            "inputs_digest": io.digest_files(paths),
            "claims": [c.to_dict() for c in claims],
        }
        _emit(io.canonical_json(report), args.out)
    failed = [c.name for c in claims if not c.verdict]
    if failed:
        print(f"failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
