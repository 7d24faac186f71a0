"""Command-line front end.

    shintani decompose -D 5
    shintani check -D 5 --trials 50
    shintani lvalue --preset dedekind -D 5 -k 1
    shintani lvalue --preset riemann -k 3 -p 5
    shintani class-number -D 5

Options may also come from a JSON config file (``--config``); flags override
the file. Exit codes: 0 success, 1 check failure, 2 input error,
3 precision or convergence failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field as dfield, fields
from fractions import Fraction

from . import oracles
from .cocycle import chi_cocycle_check, cocycle_check, norm_identity_check
from .cones import (
    SignedDecomposition,
    cone_volume_identity_check,
    dual_decomposition,
    is_effective,
    partition_check,
    regulator,
    shintani_sum_check,
    sigma_decomposition,
)
from .errors import InputError, NonApplicable, PrecisionError, ShintaniError
from .field import FLattice, NumberField, UnitSystem, prime_ideal, validate_units
from .genfun import TestFunction, fundamental_identity_check
from .kernel.cyclotomic import Cyclotomic
from .lvalues import (
    I_k,
    auto_prime,
    hecke_special,
    integrality_check,
    l_special_exact,
    order_zero_at_origin,
)
from . import presets

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3
SUITES = ("partition", "cocycle", "shintani-sum", "fundamental-identity", "norm-identity", "cone-volume")
PRESETS = ("trivial", "riemann", "dirichlet", "dedekind", "genus")


@dataclass
class RunConfig:
    poly: list | None = None
    disc: int | None = None
    units: list | None = None
    index: int | None = None
    totally_positive: bool = False
    preset: str | None = None
    modulus: int | None = None
    character: int = 1
    support: list | None = None
    period: list | None = None
    values: list | None = None
    psi: list | None = None
    k: list = dfield(default_factory=lambda: [1])
    prime: int | None = None
    root: int | None = None
    checks: list = dfield(default_factory=lambda: list(SUITES))
    trials: int = 20
    K: int = 8
    tol: float = 1e-8
    seed: int = 0
    h: int = 1
    tamper: int | None = None
    machine: bool = False

    @classmethod
    def keys(cls) -> set:
        return {f.name for f in fields(cls)}

    def validate(self) -> "RunConfig":
        if self.preset is not None and self.preset not in PRESETS:
            raise InputError(f"unknown preset {self.preset!r}; choose from {', '.join(PRESETS)}")
        unknown = [c for c in self.checks if c not in SUITES]
        if unknown:
            raise InputError(f"unknown check suites: {unknown}")
        if any(not isinstance(k, int) or k < 0 for k in self.k):
            raise InputError("k values must be non-negative integers")
        if self.trials < 0:
            raise InputError("trials must be non-negative")
        if self.poly is not None and self.disc is not None:
            raise InputError("give either a minimal polynomial or a discriminant, not both")
        if self.units is not None and self.index is None:
            raise InputError("explicit unit generators need their index [U_F : V]")
        return self


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise InputError("config file must hold a JSON object")
    bad = set(data) - RunConfig.keys()
    if bad:
        raise InputError(f"unknown config keys: {sorted(bad)}")
    return data


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def _vectors(text: str) -> list[list[str]]:
    return [[t for t in part.split(",") if t] for part in text.split(";") if part]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("field and units")
    g.add_argument("--config", help="JSON config file (keys as in RunConfig)")
    g.add_argument("--poly", type=_ints, help="min-poly coefficients, constant term first, e.g. -1,-1,1")
    g.add_argument("-D", "--disc", type=int, help="fundamental discriminant of a real quadratic field")
    g.add_argument("--units", type=_vectors, help="unit generators as coordinate lists, e.g. '0,1;1,1'")
    g.add_argument("--index", type=int, help="[U_F : V] for explicit units")
    g.add_argument("--totally-positive", action="store_true", default=None, help="use a totally positive V")
    t = common.add_argument_group("test function")
    t.add_argument("--preset", choices=PRESETS)
    t.add_argument("--modulus", type=int, help="Dirichlet modulus for --preset dirichlet")
    t.add_argument("--character", type=int, help="index of the character mod the modulus (0 = trivial)")
    t.add_argument("--psi", type=_ints, help="sign vector a in {0,1}^n")
    t.add_argument("-k", type=int, action="append", dest="k", help="special point s = -k (repeatable)")
    t.add_argument("-p", "--prime", type=int, help="smoothing prime (default: automatic)")
    t.add_argument("--root", type=int, help="root c of the min-poly mod p selecting q = (p, theta - c)")
    c = common.add_argument_group("checks and output")
    c.add_argument("--checks", type=lambda s: s.split(","), help="comma list from " + ",".join(SUITES))
    c.add_argument("--trials", type=int)
    c.add_argument("-K", type=int, help="unit enumeration bound")
    c.add_argument("--tol", type=float)
    c.add_argument("--seed", type=int)
    c.add_argument("--h", type=int, help="class number (class-number command)")
    c.add_argument("--tamper", type=int, help="flip the coefficient of this cone (negative test)")
    c.add_argument("--machine", action="store_true", default=None, help="line-delimited JSON output")

    ap = argparse.ArgumentParser(prog="shintani", description="Shintani cone decompositions and L-values")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("decompose", parents=[common], help="build the signed cone decomposition")
    sub.add_parser("check", parents=[common], help="run identity checks")
    sub.add_parser("lvalue", parents=[common], help="special values at negative integers")
    sub.add_parser("class-number", parents=[common], help="leading term at s = 0")
    return ap


def make_config(ns: argparse.Namespace) -> RunConfig:
    data = load_config(ns.config)
    for key in RunConfig.keys():
        v = getattr(ns, key, None)
        if v is not None:
            data[key] = v
    return RunConfig(**data).validate()


# ---------------------------------------------------------------- output

class Out:
    def __init__(self, machine: bool, stream=None):
        self.machine = machine
        self.stream = stream or sys.stdout

    def record(self, tag: str, **payload):
        if self.machine:
            payload = {"record": tag, **payload}
            self.stream.write(json.dumps(payload, sort_keys=True, default=str) + "\n")
        else:
            self.stream.write(f"[{tag}]\n")
            for key in payload:
                self.stream.write(f"  {key}: {_human(payload[key])}\n")

    def warn(self, msg: str):
        self.record("warning", message=msg)


def _human(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}={_human(x)}" for k, x in v.items())
    if isinstance(v, list):
        return "[" + ", ".join(_human(x) for x in v) + "]"
    return str(v)


def _exact(x) -> dict:
    if isinstance(x, Cyclotomic) and x.is_rational():
        return {"text": str(x), "N": 1, "coefficients": [str(x.to_rational())]}
    if isinstance(x, Cyclotomic):
        return {"text": str(x), "N": x.N, "coefficients": [str(c) for c in x.coeffs]}
    return {"text": str(x)}


# ---------------------------------------------------------------- setup

def build_field(cfg: RunConfig) -> NumberField:
    if cfg.poly is not None:
        return NumberField(cfg.poly)
    if cfg.disc is not None:
        return presets.quadratic_field(cfg.disc)
    if cfg.preset in ("riemann", "dirichlet"):
        return presets.rational_field()
    raise InputError("no field given: use --poly, -D or a rational preset")


def build_units(cfg: RunConfig, F: NumberField, totally_positive: bool | None = None) -> UnitSystem:
    tp = cfg.totally_positive if totally_positive is None else totally_positive
    if cfg.units is not None:
        etas = tuple(F([Fraction(c) for c in v]) for v in cfg.units)
        return validate_units(UnitSystem(F, etas, cfg.index)).units
    return presets.unit_group(F, tp)


def build_decomposition(cfg: RunConfig, U: UnitSystem) -> SignedDecomposition:
    D = sigma_decomposition(U)
    if cfg.tamper is not None:
        terms = list(D.terms)
        if not 0 <= cfg.tamper < len(terms):
            raise InputError(f"--tamper must be in [0, {len(terms)})")
        B, c = terms[cfg.tamper]
        terms[cfg.tamper] = (B, -c)
        D = SignedDecomposition(tuple(terms), D.field, note="tampered")
    return D


def build_phi(cfg: RunConfig, F: NumberField):
    """Test function and, when known, the Dirichlet character behind it."""
    O = presets.maximal_order(F)
    if cfg.values is not None:
        sup = FLattice(F, [F([Fraction(c) for c in v]) for v in (cfg.support or [])]) if cfg.support else O
        per = FLattice(F, [F([Fraction(c) for c in v]) for v in cfg.period]) if cfg.period else sup
        table = {}
        for entry in cfg.values:
            rep = F([Fraction(c) for c in entry["rep"]])
            N = int(entry.get("N", 1))
            table[rep] = Cyclotomic.from_coeffs(N, [Fraction(c) for c in entry["value"]])
        N = max((v.N for v in table.values()), default=1)
        table = {r: (v if v.N == N else v.lift(N)) for r, v in table.items()}
        return TestFunction(F, sup, per, table, cfg.psi, N), None
    preset = cfg.preset or "trivial"
    if preset == "dirichlet":
        if F.n != 1:
            raise InputError("the dirichlet preset lives on Q")
        if cfg.modulus is None:
            raise InputError("--preset dirichlet needs --modulus")
        chars = oracles.characters_mod(cfg.modulus)
        if not 0 <= cfg.character < len(chars):
            raise InputError(f"character index must be in [0, {len(chars)})")
        chi = chars[cfg.character]
        return presets.dirichlet_test_function(chi), chi
    if preset == "genus":
        return TestFunction.indicator(F, O, psi=(1,) * F.n), None
    return TestFunction.indicator(F, O, psi=cfg.psi), None


def smoothing_prime(cfg: RunConfig, phi: TestFunction, D: SignedDecomposition, k: int):
    F = phi.field
    if cfg.prime is None:
        q, p, _ = auto_prime(phi, D, k)
        return q, p
    if F.n == 1:
        return prime_ideal(F, cfg.prime, 0), cfg.prime
    from .field import degree_one_roots

    roots = degree_one_roots(F, cfg.prime)
    c = cfg.root if cfg.root is not None else (roots[0] if roots else None)
    if c is None:
        raise InputError(f"{cfg.prime} has no degree-one prime above it")
    return prime_ideal(F, cfg.prime, c), cfg.prime


# ---------------------------------------------------------------- commands

def cmd_decompose(cfg: RunConfig, out: Out) -> int:
    F = build_field(cfg)
    U = build_units(cfg, F)
    D = build_decomposition(cfg, U)
    out.record("decomposition", field=F.poly if hasattr(F, "poly") else None, index=U.index,
               cones=D.to_records(), effective=is_effective(D), note=D.note)
    return EXIT_OK


def _random_tuple(rng: random.Random, n: int) -> list[list[int]]:
    """n + 1 integer points whose n-element faces all lie in U."""
    from .cones import ConeBasis
    from .errors import DegenerateBasis

    while True:
        pts = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n + 1)]
        try:
            for i in range(n + 1):
                ConeBasis(pts[:i] + pts[i + 1:]).require_U()
        except DegenerateBasis:
            continue
        return pts


def cmd_check(cfg: RunConfig, out: Out) -> int:
    F = build_field(cfg)
    U = build_units(cfg, F)
    D = build_decomposition(cfg, U)
    rng = random.Random(cfg.seed)
    failed = False
    if cfg.trials == 0:
        out.warn("trials = 0: every suite passes vacuously")
        for name in cfg.checks:
            out.record("check", suite=name, ok=True, detail="vacuous")
        return EXIT_OK

    def report(name, ok, detail):
        nonlocal failed
        failed |= not ok
        out.record("check", suite=name, ok=bool(ok), detail=detail)

    for name in cfg.checks:
        if name == "partition":
            fails = 0
            for B in D.bases():
                fails += len(partition_check(B, cfg.trials, rng).failures)
            report(name, fails == 0, {"bases": len(D.bases()), "trials": cfg.trials, "failures": fails})
        elif name == "cocycle":
            ok, done = True, 0
            for dim in (2, 3):
                for _ in range(max(1, cfg.trials // 10)):
                    pts = _random_tuple(rng, dim)
                    ok &= cocycle_check(pts, 20, rng).ok and chi_cocycle_check(pts, 20, rng).ok
                    done += 1
            report(name, ok, {"tuples": done})
        elif name == "shintani-sum":
            ok, done, bad = True, 0, 0
            for Dx in (D, dual_decomposition(D)):
                for _ in range(max(1, cfg.trials // 4)):
                    x = [Fraction(rng.randint(-40, 40), rng.randint(1, 13)) for _ in range(F.n)]
                    y = [Fraction(rng.choice((-1, 1)) * rng.randint(1, 40), rng.randint(1, 13)) for _ in range(F.n)]
                    if any(c == 0 for c in x):
                        continue
                    r = shintani_sum_check(Dx, U, x, y)
                    done += 1
                    if not r.equal:
                        ok, bad = False, bad + 1
            report(name, ok, {"points": done, "mismatches": bad})
        elif name == "fundamental-identity":
            phi = TestFunction.indicator(F, presets.maximal_order(F))
            worst = 0.0
            ok = True
            for _ in range(max(1, cfg.trials // 10)):
                y = [Fraction(rng.choice((-1, 1)) * rng.randint(8, 20), 10) + Fraction(1, 997)
                     for _ in range(F.n)]
                r = fundamental_identity_check(phi, D, U, y, K=cfg.K, cutoff=30, tol=max(cfg.tol, 1e-8))
                worst = max(worst, float(r.difference))
                ok &= r.ok
            report(name, ok, {"max_difference": f"{worst:.3g}"})
        elif name == "norm-identity":
            if F.n != 2:
                out.warn("norm-identity runs for n = 2 only; skipped")
                continue
            Ut = presets.unit_group(F, True) if cfg.units is None else U
            r = norm_identity_check(sigma_decomposition(Ut), Ut, (1, 2), [6, 8, 10])
            last = r.residuals[max(r.residuals)]
            report(name, r.decreasing and last < 1e-6, r.as_dict())
        elif name == "cone-volume":
            if F.n != 2:
                out.warn("cone-volume runs for n = 2 only; skipped")
                continue
            Ut = presets.unit_group(F, True) if cfg.units is None else U
            r = cone_volume_identity_check(Ut)
            report(name, r.difference < 1e-9, r.as_dict())
    return EXIT_FAIL if failed else EXIT_OK


def _oracle_for(cfg: RunConfig, F: NumberField, k: int, chi):
    if cfg.preset == "riemann" or (F.n == 1 and chi is None and cfg.values is None):
        return oracles.zeta_negative(k)
    if cfg.preset == "dirichlet" and chi is not None:
        return oracles.dirichlet_l_negative(chi, k)
    if cfg.preset in (None, "dedekind", "trivial") and F.n == 2 and cfg.disc and k % 2 == 1 and cfg.values is None:
        return oracles.dedekind_zeta_negative(cfg.disc, k)
    if cfg.preset == "genus" and cfg.disc:
        for d1 in range(-cfg.disc, 0):
            if cfg.disc % d1 == 0 and oracles.is_fundamental(d1) and oracles.is_fundamental(cfg.disc // d1):
                if cfg.disc // d1 < 0:
                    a = oracles.dirichlet_l_negative(oracles.kronecker_character(d1), k)
                    b = oracles.dirichlet_l_negative(oracles.kronecker_character(cfg.disc // d1), k)
                    return (a * b).to_rational()
    return None


def cmd_lvalue(cfg: RunConfig, out: Out) -> int:
    F = build_field(cfg)
    phi, chi = build_phi(cfg, F)
    n = F.n
    status = EXIT_OK
    mode = "exact" if n <= 2 else "numeric"
    for k in cfg.k:
        if I_k(phi.psi, k):
            out.record("lvalue", k=k, error=f"I_k = {I_k(phi.psi, k)} is not empty; the value is a zero of order >= {len(I_k(phi.psi, k))}")
            status = max(status, EXIT_INPUT)
            continue
        hecke = cfg.preset in ("dedekind", "genus") or (cfg.preset in (None, "trivial") and n == 2 and cfg.values is None)
        if hecke:
            U = build_units(cfg, F, totally_positive=False)
            if U.index != 2:
                raise InputError("Hecke values need V of index 2 in U_F")
            D = build_decomposition(cfg, U)
            q, p = smoothing_prime(cfg, phi, D, k)
            setup = presets.principal_setup(phi, D, k, q)
            v = hecke_special(setup, k, D, U)
        else:
            U = build_units(cfg, F)
            D = build_decomposition(cfg, U)
            q, p = smoothing_prime(cfg, phi, D, k)
            if chi is not None:
                chi_q = chi(p)
            elif n == 1:
                chi_q = phi(F(p)) * phi.psi_of(F(p))
            else:
                chi_q = None
            v = l_special_exact(phi, k, D, U, q, chi_q=chi_q, mode=mode,
                                denominator_bound=10**6 if mode == "numeric" else None)
        try:
            integral = integrality_check(v)
        except NonApplicable as exc:
            integral = f"n/a ({exc})"
        oracle = _oracle_for(cfg, F, k, chi)
        match = None
        if oracle is not None and v.divided is not None:
            match = v.divided == oracle
            if not match:
                status = max(status, EXIT_FAIL)
        rec = {"k": k, "p": p, "raw": _exact(v.value), "euler_factor": _exact(v.euler_factor),
               "value": _exact(v.divided) if v.divided is not None else None,
               "integrality": integral, "mode": v.mode}
        if oracle is not None:
            rec["oracle"] = _exact(oracle)
            rec["oracle_match"] = match
        if v.notes:
            rec["notes"] = v.notes
        out.record("lvalue", **rec)
    return status


def cmd_class_number(cfg: RunConfig, out: Out) -> int:
    F = build_field(cfg)
    U = build_units(cfg, F, totally_positive=True)
    phi = TestFunction.indicator(F, presets.maximal_order(F))
    r = order_zero_at_origin(phi, U)
    lead = r.leading * cfg.h
    rec = {"order": r.order, "h": cfg.h, "regulator": str(regulator(U).reg_UF), "leading": str(lead)}
    status = EXIT_OK
    if F.n == 2 and cfg.disc:
        o = oracles.dedekind_zeta_derivative_at_zero(cfg.disc)
        diff = abs(float(lead.mid) - float(o))
        rec.update(oracle=f"{float(o):.15g}", difference=f"{diff:.3g}", ok=diff < 1e-6)
        status = EXIT_OK if diff < 1e-6 else EXIT_FAIL
    out.record("class-number", **rec)
    return status


COMMANDS = {"decompose": cmd_decompose, "check": cmd_check, "lvalue": cmd_lvalue, "class-number": cmd_class_number}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "--class-number":
        argv[0] = "class-number"
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = Out(bool(getattr(ns, "machine", False)))
    try:
        cfg = make_config(ns)
        out.machine = cfg.machine
        return COMMANDS[ns.command](cfg, out)
    except PrecisionError as exc:
        out.record("error", error=type(exc).__name__, message=str(exc))
        return EXIT_PRECISION
    except (InputError, json.JSONDecodeError, OSError, ValueError, TypeError) as exc:
        out.record("error", error=type(exc).__name__, message=str(exc))
        return EXIT_INPUT
    except ShintaniError as exc:
        out.record("error", error=type(exc).__name__, message=str(exc))
        return EXIT_PRECISION if "Generic" in type(exc).__name__ else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
