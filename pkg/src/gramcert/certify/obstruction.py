"""Replay of principal-submatrix forcing chains that rule out coercive Gram matrices.

A script fixes a basis order, a reference Gram matrix G0, the changes that
are forced to carry a coefficient 2*delta (delta > 0), and the remaining
free changes as named parameters. Each step names a principal submatrix,
the variable it constrains, and the claimed consequence of that minor
being nonnegative. The engine recomputes every minor symbolically and
derives the consequence itself; a claim is accepted only if it matches.

Derivation rules for a minor m >= 0 in the variable v:
  m = -k (v - e)^2 with k > 0          =>  v = e
  m = k v + r with k = +-(positive)     =>  v >= -r/k  or  v <= -r/k
  m free of v and -m provably positive  =>  contradiction
Lower and upper bounds that coincide are turned into a substitution; a
lower bound exceeding an upper bound by a provably positive amount is a
contradiction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..forms import Form, SosExpression, noncoercive_quartic, noncoercive_sextic, sos_expand
from ..forms.parse import parse_poly
from ..forms import cone_quartic, f_rho
from ..gramlin import RepMatrix, change_basis, gram_from_sos, pair_classes, principal_minor_det, rep_to_form
from ..scalarfield import MPoly, RatFunc
from ..symtensor import MultiIndex, enumerate_basis, complex_rankone_parts
from .bases import cone_quartic_null_basis, f_rho_null_basis
from .coercive import forced_delta_analysis
from .uniqueness import UNIQUE, interval_sign, uniqueness_pipeline

NONCOERCIVE_CONFIRMED = "NONCOERCIVE_CONFIRMED"
STEP_FAILED = "STEP_FAILED"
PRECONDITION_FAILED = "PRECONDITION_FAILED"

DELTA = "delta"


@dataclass(frozen=True)
class ScriptStep:
    submatrix: tuple  # 1-based indices; empty for a constraint step
    solve_for: str
    claim: str  # "v >= expr", "v <= expr", "v = expr" or "contradiction"
    justification: str = ""

    @property
    def label(self) -> str:
        if not self.submatrix:
            return "constraint"
        inner = " ".join(str(i) for i in self.submatrix)
        return f"det[{inner}]" if len(self.submatrix) > 1 else f"[{inner}]"


@dataclass(frozen=True)
class FixedBlock:
    """Entries whose indices avoid `dropped` variables are fixed by uniqueness."""

    dropped: tuple  # 0-based variable positions set to zero
    description: str


@dataclass(frozen=True)
class ObstructionScript:
    name: str
    n: int
    p: int
    order: tuple  # multi-index labels of the principal submatrix
    witness: tuple  # complex root as strings, e.g. ("1", "i", "0", ...)
    forced: tuple  # changes with coefficient 2*delta: tuples of (coeff, alpha, beta)
    parameters: tuple  # (name, change) with change as in `forced`
    constraints: tuple  # linear relations among parameters, "a + b + c + d = 0"
    steps: tuple
    fixed_blocks: tuple = ()
    positive: tuple = (DELTA,)


@dataclass
class StepRecord:
    index: int
    label: str
    polynomial: MPoly | None
    reduced: MPoly | None
    derived: str
    claim: str
    ok: bool
    justification: str = ""
    notes: list = field(default_factory=list)


@dataclass
class ReplayResult:
    verdict: str
    failed_step: int | None
    transcript: list
    substitutions: dict
    preconditions: list = field(default_factory=list)
    matrix: list | None = None

    def __str__(self):
        return self.verdict if self.failed_step is None else f"{self.verdict}({self.failed_step})"


# -- scripts ----------------------------------------------------------------

QUARTIC_SCRIPT = ObstructionScript(
    name="noncoercive-quartic",
    n=6,
    p=2,
    # vw, u^2, v^2, w^2, x^2, uv, uw, vx, ux
    order=("011000", "200000", "020000", "002000", "000200",
           "110000", "101000", "010100", "100100"),
    witness=("1", "i", "0", "0", "0", "0"),
    forced=(((Fraction(-1, 2), "200000", "020000"), (Fraction(1, 2), "110000", "110000")),),
    parameters=(
        ("a", ((1, "011000", "011000"), (-1, "020000", "002000"))),
        ("b", ((1, "020000", "000200"), (-1, "010100", "010100"))),
        ("c", ((1, "110000", "101000"), (-1, "200000", "011000"))),
        ("d", ((1, "101000", "101000"), (-1, "200000", "002000"))),
        ("e", ((1, "200000", "000200"), (-1, "100100", "100100"))),
    ),
    constraints=(),
    steps=(
        ScriptStep((1, 3), "a", "a >= 0", "2x2 principal minor"),
        ScriptStep((3, 4, 5), "b", "b = a*gamma", "minor is minus a square"),
        ScriptStep((8,), "a", "a <= 0", "diagonal entry -2b"),
        ScriptStep((1, 2, 3), "c", "c = delta", "minor is minus a square once a = 0"),
        ScriptStep((6, 7), "d", "d >= delta/4", "forces d > 0"),
        ScriptStep((2, 4, 5), "e", "e = d*gamma", "minor is minus a square"),
        ScriptStep((9,), "d", "contradiction", "diagonal entry -2e = -2 d gamma"),
    ),
    fixed_blocks=(FixedBlock((0, 1), "restriction to w,x,y,z has a unique Gram matrix"),),
    positive=(DELTA, "gamma"),
)

SEXTIC_SCRIPT = ObstructionScript(
    name="noncoercive-sextic",
    n=4,
    p=3,
    order=("1200", "3000", "1020", "2100", "0300", "0120", "0030", "2010", "0210", "1110"),
    witness=("1", "i", "0", "0"),
    forced=(
        ((Fraction(1, 2), "1200", "1200"), (Fraction(-1, 2), "2100", "0300")),
        ((Fraction(1, 2), "2100", "2100"), (Fraction(-1, 2), "1200", "3000")),
    ),
    # pair coordinates of the class w^2 x^2 y^2; the four sum to zero
    parameters=(
        ("a", ((1, "1200", "1020"),)),
        ("b", ((1, "2100", "0120"),)),
        ("c", ((1, "2010", "0210"),)),
        ("d", ((1, "1110", "1110"),)),
    ),
    constraints=("a + b + c + d = 0",),
    steps=(
        ScriptStep((1, 2, 3), "a", "a = delta", "minor is minus a square"),
        ScriptStep((4, 5, 6), "b", "b = delta", "minor is minus a square"),
        ScriptStep((7, 8, 9), "c", "c = 0", "minor is minus a square"),
        ScriptStep((), "d", "d = -2*delta", "pair coordinates of one class sum to zero"),
        ScriptStep((10,), "d", "contradiction", "diagonal entry 2d, the pair coordinate doubled"),
    ),
    fixed_blocks=(
        FixedBlock((1,), "restriction to w,y,z has a unique Gram matrix"),
        FixedBlock((0,), "restriction to x,y,z has a unique Gram matrix"),
    ),
)

SCRIPTS = {QUARTIC_SCRIPT.name: QUARTIC_SCRIPT, SEXTIC_SCRIPT.name: SEXTIC_SCRIPT}


# -- building the parametric matrix -----------------------------------------


def _mi(label: str) -> MultiIndex:
    return MultiIndex(int(ch) for ch in label)


def change_matrix(order, terms, coeff=1) -> RepMatrix:
    """sum coeff * c * E_alpha (x)_s E_beta over the given terms."""
    m = RepMatrix.zero(order)
    for c, a, b in terms:
        m = m + RepMatrix.sym_pair(order, _mi(a), _mi(b), Fraction(c))
    return m.scale(coeff) if coeff != 1 else m


def parametric_submatrix(script: ObstructionScript, g0: RepMatrix) -> list[list[MPoly]]:
    """Principal submatrix of G0 + 2 delta sum(forced) + sum(param * change)."""
    order = g0.order
    idx = [order.index(_mi(lab)) for lab in script.order]
    k = len(idx)
    out = [[MPoly.coerce(g0[i, j]) for j in idx] for i in idx]
    delta = MPoly.var(DELTA)
    pieces = [(delta * 2, terms) for terms in script.forced]
    pieces += [(MPoly.var(name), terms) for name, terms in script.parameters]
    for coeff, terms in pieces:
        ch = change_matrix(order, terms)
        for r in range(k):
            for c in range(k):
                v = ch[idx[r], idx[c]]
                if v:
                    out[r][c] = out[r][c] + coeff * v
    return out


# -- the forcing engine -----------------------------------------------------


class _State:
    def __init__(self, positive):
        self.positive = set(positive)
        self.subs: dict[str, MPoly] = {}
        self.lower: dict[str, MPoly] = {}
        self.upper: dict[str, MPoly] = {}

    def apply(self, e: MPoly) -> MPoly:
        return e.subs(self.subs) if self.subs else e

    def positive_expr(self, e: MPoly) -> bool:
        return e.is_provably_positive(self.positive)

    def substitute(self, v: str, e: MPoly):
        self.subs = {k: x.subs({v: e}) for k, x in self.subs.items()}
        self.subs[v] = e
        self.lower = {k: x.subs({v: e}) for k, x in self.lower.items() if k != v}
        self.upper = {k: x.subs({v: e}) for k, x in self.upper.items() if k != v}

    def bound(self, v: str, e: MPoly, lower: bool) -> str | None:
        """Record a bound; return 'contradiction' or 'equal' when bounds meet."""
        if v in self.subs:
            val = self.subs[v]
            gap = (val - e) if lower else (e - val)
            return "contradiction" if self.positive_expr(-gap) else None
        (self.lower if lower else self.upper)[v] = e
        if v in self.lower and v in self.upper:
            gap = self.lower[v] - self.upper[v]
            if gap.is_zero():
                self.substitute(v, self.lower[v])
                return "equal"
            if self.positive_expr(gap):
                return "contradiction"
        return None


def _is_scaled_monomial(k: MPoly) -> bool:
    return len(k.terms) == 1


def derive(expr: MPoly, v: str, st: _State):
    """(kind, value) from expr >= 0, kind in {'=', '>=', '<=', 'contradiction', None}."""
    deg = expr.degree_in(v)
    if deg == 0:
        if st.positive_expr(-expr):
            return "contradiction", None
        return None, None
    if deg == 2:
        A, B, C = expr.coeff_in(v, 2), expr.coeff_in(v, 1), expr.coeff_in(v, 0)
        k = -A
        if not (_is_scaled_monomial(k) and st.positive_expr(k)):
            return None, None
        try:
            e = B.exact_div(k * 2)
        except ArithmeticError:
            return None, None
        if C != -(k * e * e):
            return None, None
        return "=", e
    if deg == 1:
        k, r = expr.coeff_in(v, 1), expr.coeff_in(v, 0)
        if not _is_scaled_monomial(k):
            return None, None
        try:
            e = (-r).exact_div(k)
        except ArithmeticError:
            return None, None
        if st.positive_expr(k):
            return ">=", e
        if st.positive_expr(-k):
            return "<=", e
    return None, None


def _parse_claim(claim: str, values: dict):
    claim = claim.strip()
    if claim == "contradiction":
        return "contradiction", None, None
    for op in (">=", "<=", "="):
        if op in claim:
            lhs, rhs = claim.split(op, 1)
            e = parse_poly(rhs)
            if values:
                e = e.subs(values)
            return op, lhs.strip(), e
    raise ValueError(f"cannot parse claim {claim!r}")


def _fmt(kind, v, e):
    if kind == "contradiction":
        return "contradiction"
    if kind is None:
        return "no relation"
    return f"{v} {kind} {e.to_str()}"


def _solve_constraint(c: str, v: str, st: _State) -> MPoly | None:
    lhs, rhs = c.split("=", 1)
    e = st.apply(parse_poly(lhs) - parse_poly(rhs))
    if e.degree_in(v) != 1:
        return None
    k, r = e.coeff_in(v, 1), e.coeff_in(v, 0)
    if not k.is_constant():
        return None
    return r / (-k.constant_term())


def replay_steps(script: ObstructionScript, matrix, values: dict | None = None, positive=None) -> ReplayResult:
    """Run the forcing chain on an explicit parametric matrix."""
    values = dict(values or {})
    positive = [s for s in (positive or script.positive) if s not in values]
    st = _State(positive)
    transcript = []
    for k, step in enumerate(script.steps, start=1):
        notes = []
        if step.submatrix:
            raw = principal_minor_det(matrix, list(step.submatrix))
            red = st.apply(raw)
            kind, e = derive(red, step.solve_for, st)
        else:
            raw = red = None
            kind, e = None, None
            for c in script.constraints:
                sol = _solve_constraint(c, step.solve_for, st)
                if sol is not None:
                    kind, e = "=", sol
                    notes.append(f"from {c}")
                    break
        ck, cv, ce = _parse_claim(step.claim, values)
        outcome = None
        if kind == "=":
            st.substitute(step.solve_for, e)
        elif kind in (">=", "<="):
            outcome = st.bound(step.solve_for, e, lower=kind == ">=")
            if outcome == "equal":
                notes.append(f"{step.solve_for} = {st.subs[step.solve_for].to_str()} from matching bounds")
        derived = _fmt(kind, step.solve_for, e)
        if outcome == "contradiction":
            derived += "; contradiction with an earlier bound"
        if ck == "contradiction":
            ok = kind == "contradiction" or outcome == "contradiction"
        else:
            ok = kind == ck and cv == step.solve_for and (e - ce).is_zero()
        transcript.append(StepRecord(k, step.label, raw, red, derived, step.claim, ok, step.justification, notes))
        if not ok:
            return ReplayResult(STEP_FAILED, k, transcript, dict(st.subs))
        if ck == "contradiction":
            if k != len(script.steps):
                transcript[-1].notes.append("contradiction reached before the final step")
            return ReplayResult(NONCOERCIVE_CONFIRMED, None, transcript, dict(st.subs))
    return ReplayResult(STEP_FAILED, len(script.steps), transcript, dict(st.subs))


# -- preconditions ----------------------------------------------------------


def restrict_form(f: Form, dropped: Sequence[int]) -> Form:
    """Set the dropped variables to zero and remove them."""
    keep = [i for i in range(f.n) if i not in dropped]
    terms = {}
    for a, c in f.terms.items():
        if any(a[i] for i in dropped):
            continue
        terms[MultiIndex(a[i] for i in keep)] = c
    names = tuple(f.varnames[i] for i in keep) if f.varnames else ()
    return Form(len(keep), f.degree, terms, names)


def _entry_classes(script: ObstructionScript, order):
    """Class and pair count for each script entry used by some step."""
    classes = {k: pairs for k, pairs in pair_classes(order)}
    used = set()
    for s in script.steps:
        for i in s.submatrix:
            for j in s.submatrix:
                used.add((min(i, j), max(i, j)))
    out = {}
    for i, j in sorted(used):
        a, b = _mi(script.order[i - 1]), _mi(script.order[j - 1])
        kappa = a + b
        out[(i, j)] = (kappa, classes[kappa])
    return out


def check_preconditions(script: ObstructionScript, g0: RepMatrix, restricted_unique: Callable[[FixedBlock], tuple]) -> list[tuple[str, bool, str]]:
    """Each used entry of the submatrix may only move by the script's own parameters.

    `restricted_unique(block)` returns (ok, detail) for a fixed block.
    """
    from ..scalarfield import parse_gauss

    order = g0.order
    checks = []
    z = [parse_gauss(s) for s in script.witness]
    r, q = complex_rankone_parts(z, script.p, order)
    in_null = g0.apply(r).is_zero() and g0.apply(q).is_zero()
    checks.append(("witness in null space of G0", in_null, "real and imaginary parts of z^(tensor p)"))

    forced = forced_delta_analysis(order, z)
    forced_ok = len(forced) == len(script.forced)
    for terms in script.forced:
        ch = change_matrix(order, terms)
        forced_ok = forced_ok and any(_proportional(ch, f.element) for f in forced)
    checks.append(("forced changes are exactly those seen by z", forced_ok, f"{len(forced)} basis element(s)"))

    coords = {name for name, t in script.parameters if not rep_to_form(change_matrix(order, t)).is_zero()}
    param_ok = all(_is_pair_coordinate(t) for name, t in script.parameters if name in coords)
    tied = set()
    for c in script.constraints:
        param_ok = param_ok and _constraint_is_class_sum(c, script, order)
        tied |= parse_poly(c.split("=")[0]).variables()
    param_ok = param_ok and coords <= tied
    checks.append(("parameters move only change directions", param_ok,
                   "pair coordinates tied by their class sum" if coords else "each parameter is a change"))

    block_status = {}
    for blk in script.fixed_blocks:
        block_status[blk] = restricted_unique(blk)
        ok, detail = block_status[blk]
        checks.append((blk.description, ok, detail))

    param_classes = {}
    for name, terms in list(script.parameters) + [(DELTA, t) for t in script.forced]:
        for _, a, b in terms:
            param_classes.setdefault(_mi(a) + _mi(b), set()).add(name)
    for (i, j), (kappa, pairs) in _entry_classes(script, order).items():
        entry = f"entry ({i},{j}) class {kappa.label()}"
        if len(pairs) == 1:
            checks.append((entry, True, "no change touches this class"))
            continue
        names = param_classes.get(kappa, set())
        fixed = [blk for blk in script.fixed_blocks if all(kappa[d] == 0 for d in blk.dropped)]
        if fixed:
            ok = any(block_status[b][0] for b in fixed)
            checks.append((entry, ok, "fixed by " + fixed[0].description))
            continue
        need = len(pairs) - 1
        tied = sum(1 for c in script.constraints if parse_poly(c.split("=")[0]).variables() <= names)
        have = len(names) - tied
        ok = bool(names) and have >= need
        checks.append((entry, ok, f"{len(pairs)} pairs, moved by {', '.join(sorted(names)) or 'nothing'}"))
    return checks


def _is_pair_coordinate(terms) -> bool:
    return len(terms) == 1 and Fraction(terms[0][0]) == 1


def _constraint_is_class_sum(c: str, script: ObstructionScript, order) -> bool:
    """'a + b + ... = 0' over pair coordinates covering one whole class."""
    lhs, rhs = c.split("=", 1)
    e = parse_poly(lhs) - parse_poly(rhs)
    if e.constant_term() or any(len(m) != 1 or m[0][1] != 1 or k != 1 for m, k in e.terms.items()):
        return False
    terms = dict(script.parameters)
    names = e.variables()
    if not names <= set(terms):
        return False
    kappas = {_mi(terms[v][0][1]) + _mi(terms[v][0][2]) for v in names}
    if len(kappas) != 1:
        return False
    kappa = kappas.pop()
    pairs = dict(pair_classes(order))[kappa]
    return len(pairs) == len(names)


def _proportional(m1: RepMatrix, m2: RepMatrix) -> bool:
    ratio = None
    for row1, row2 in zip(m1.entries, m2.entries):
        for x, y in zip(row1, row2):
            if bool(x) != bool(y):
                return False
            if x:
                r = Fraction(x) / Fraction(y)
                if ratio is None:
                    ratio = r
                elif r != ratio:
                    return False
    return ratio is not None


# -- the two concrete replays -----------------------------------------------


def _gamma_symbol(gamma):
    return MPoly.var("gamma") if gamma is None else Fraction(gamma)


def replay_quartic(gamma=None, preconditions: bool = True) -> ReplayResult:
    """Replay the quartic chain; gamma=None keeps gamma symbolic and positive."""
    script = QUARTIC_SCRIPT
    g = _gamma_symbol(gamma)
    g0 = gram_from_sos(noncoercive_quartic(g))
    mat = parametric_submatrix(script, g0)
    values = {} if gamma is None else {"gamma": MPoly.const(Fraction(gamma))}
    res = replay_steps(script, mat, values)
    res.matrix = mat
    if preconditions:
        res.preconditions = check_preconditions(script, g0, lambda blk: _quartic_block(gamma))
        if res.verdict == NONCOERCIVE_CONFIRMED and not all(ok for _, ok, _ in res.preconditions):
            res.verdict = PRECONDITION_FAILED
    return res


def _quartic_block(gamma):
    """Restriction to w,x,y,z is a cone quartic with parameter 3*gamma."""
    if gamma is None:
        g = RatFunc.param("gamma")
        lo, hi = Fraction(0), Fraction(1, 3)
    else:
        g = Fraction(gamma)
    full = restrict_form(sos_expand(noncoercive_quartic(g)), (0, 1))
    cone = cone_quartic(3 * g, (Fraction(1, 9), 1, 1, 1))
    if full != sos_expand(cone).with_names(full.varnames):
        return False, "restricted form is not the expected cone quartic"
    gram = gram_from_sos(cone)
    try:
        if gamma is None:
            rep = uniqueness_pipeline(gram, cone_quartic_null_basis(3 * g),
                                      sign=interval_sign(lo, hi), check_psd=False)
        else:
            rep = uniqueness_pipeline(gram, cone_quartic_null_basis(3 * g))
    except ValueError as exc:
        return False, f"uniqueness pipeline failed: {exc}"
    where = "for 0 < gamma < 1/3" if gamma is None else f"at gamma = {gamma}"
    return rep.verdict == UNIQUE, f"uniqueness pipeline: {rep.verdict} {where}"


def replay_sextic(preconditions: bool = True) -> ReplayResult:
    script = SEXTIC_SCRIPT
    g0 = gram_from_sos(noncoercive_sextic())
    mat = parametric_submatrix(script, g0)
    res = replay_steps(script, mat)
    res.matrix = mat
    if preconditions:
        res.preconditions = check_preconditions(script, g0, _sextic_block)
        if res.verdict == NONCOERCIVE_CONFIRMED and not all(ok for _, ok, _ in res.preconditions):
            res.verdict = PRECONDITION_FAILED
    return res


def _sextic_block(blk: FixedBlock):
    g = sos_expand(noncoercive_sextic())
    restricted = restrict_form(g, blk.dropped)
    f = sos_expand(f_rho(Fraction(-1)))
    if restricted != f.with_names(restricted.varnames):
        return False, "restricted form is not f_rho at rho = -1"
    rep = uniqueness_pipeline(gram_from_sos(f_rho(Fraction(-1))), f_rho_null_basis(Fraction(-1)))
    return rep.verdict == UNIQUE, f"uniqueness pipeline: {rep.verdict} at rho = -1"
