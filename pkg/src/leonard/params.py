"""q-Racah parameter tuples, their parameter arrays and the scalar data derived from them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .report import Check, Report
from .scalars import FieldConfig, ParseError, Q, ZeroInverse


class InadmissibleTuple(ValueError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class InvalidArray(ValueError):
    pass


class DegenerateQ(ArithmeticError):
    pass


class NoRootInField(ArithmeticError):
    """The quadratic for c has no root in the ground field (c lives in an extension)."""


class InconsistentCoefficients(ArithmeticError):
    pass


_SUP = str.maketrans("-0123456789", "⁻⁰¹²³⁴⁵⁶⁷⁸⁹")


def _pow_text(base: str, e: int) -> str:
    if e == 0:
        return "1"
    if e == 1:
        return base
    return base + str(e).translate(_SUP)


@dataclass(frozen=True)
class QRacahTuple:
    """The tuple (a, b, c; q) together with the diameter d and the ground field."""

    a: object
    b: object
    c: object
    q: object
    d: int
    field: FieldConfig = Q

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 3:
            raise ValueError(f"diameter must be an integer >= 3, got {self.d!r}")
        for name in "abcq":
            object.__setattr__(self, name, self.field(getattr(self, name)))

    @property
    def scalars(self):
        return (self.a, self.b, self.c, self.q)

    def replace(self, a=None, b=None, c=None, q=None) -> "QRacahTuple":
        return QRacahTuple(
            self.a if a is None else a,
            self.b if b is None else b,
            self.c if c is None else c,
            self.q if q is None else q,
            self.d,
            self.field,
        )

    def key(self):
        """Canonical sort key: the textual forms of a, b, c, q."""
        return tuple(self.field.format(x) for x in self.scalars)

    def text(self) -> str:
        a, b, c, q = self.key()
        return f"({a},{b},{c};{q})"

    def __str__(self):
        return f"{self.text()} d={self.d} over {self.field}"

    def to_json(self):
        a, b, c, q = self.key()
        return {"a": a, "b": b, "c": c, "q": q, "d": self.d, "field": str(self.field)}

    @classmethod
    def from_json(cls, obj, default_field: FieldConfig | None = None) -> "QRacahTuple":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise ParseError(f"malformed tuple record: {exc}") from None
        if not isinstance(obj, dict):
            raise ParseError("tuple record must be an object")
        fld = obj.get("field")
        if fld is None:
            fld = default_field or Q
        elif isinstance(fld, str):
            fld = FieldConfig.from_string(fld)
        try:
            vals = [obj[k] for k in "abcq"]
            d = obj["d"]
        except KeyError as exc:
            raise ParseError(f"tuple record missing {exc.args[0]!r}") from None
        if not isinstance(d, int) or isinstance(d, bool):
            raise ParseError(f"d must be an integer, got {d!r}")
        if not all(isinstance(v, str) for v in vals):
            raise ParseError("scalars must be given as strings")
        try:
            return cls(*[fld.parse(v) for v in vals], d, fld)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc)) from None


@dataclass(frozen=True)
class ParameterArray:
    theta: tuple
    theta_star: tuple
    varphi: tuple
    phi: tuple

    def __post_init__(self):
        for name in ("theta", "theta_star", "varphi", "phi"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def d(self) -> int:
        return len(self.theta) - 1

    def to_json(self, fld: FieldConfig):
        f = fld.format
        return {
            "theta": [f(x) for x in self.theta],
            "theta_star": [f(x) for x in self.theta_star],
            "varphi": [f(x) for x in self.varphi],
            "phi": [f(x) for x in self.phi],
        }

    @classmethod
    def from_json(cls, obj, fld: FieldConfig):
        try:
            return cls(*[[fld.parse(s) for s in obj[k]] for k in ("theta", "theta_star", "varphi", "phi")])
        except (KeyError, TypeError):
            raise ParseError("parameter array needs theta, theta_star, varphi, phi") from None


@dataclass(frozen=True)
class TripleEigenData:
    theta: tuple
    theta_star: tuple
    theta_eps: tuple


@dataclass(frozen=True)
class AWCoefficients:
    beta: object
    gamma: object
    gamma_star: object
    varrho: object
    varrho_star: object
    omega: object
    eta: object
    eta_star: object

    def astuple(self):
        return (self.beta, self.gamma, self.gamma_star, self.varrho,
                self.varrho_star, self.omega, self.eta, self.eta_star)


@dataclass(frozen=True)
class Z3Constants:
    alpha: object
    alpha_star: object
    alpha_eps: object
    psi: object
    kappa: object


@dataclass(frozen=True)
class DerivedScalars:
    a_seq: tuple
    a_star_seq: tuple


# admissibility


def _exponent_hit(x, q, exps):
    """First e in exps with x == q**e, else None."""
    for e in exps:
        if x == q**e:
            return e
    return None


def _admissibility(t: QRacahTuple, prefix: str, include_c: bool) -> Report:
    rep = Report()
    a, b, c, q, d = t.a, t.b, t.c, t.q, t.d
    zero = next((n for n, v in zip("abcq", t.scalars) if not v), None)
    rep.add(Check(f"{prefix}1", zero is None, None if zero is None else f"{zero}=0"))
    if zero is not None:
        why = "not evaluated: zero parameter"
        for k in (2, 3, 4):
            rep.add(Check(f"{prefix}{k}", False, why))
        return rep

    bad = next((i for i in range(1, d + 1) if q ** (2 * i) == 1), None)
    rep.add(Check(f"{prefix}2", bad is None, None if bad is None else f"{_pow_text('q', 2 * bad)}=1"))

    even = [2 * d - 2 - 2 * k for k in range(2 * d - 1)]
    names = [("a", a), ("b", b)] + ([("c", c)] if include_c else [])
    wit = None
    for n, x in names:
        e = _exponent_hit(x * x, q, even)
        if e is not None:
            wit = f"{n}²={_pow_text('q', e)}"
            break
    rep.add(Check(f"{prefix}3", wit is None, wit))

    odd = [d - 1 - 2 * k for k in range(d)]
    products = [
        ("abc", a * b * c),
        ("a⁻¹bc", b * c / a),
        ("ab⁻¹c", a * c / b),
        ("abc⁻¹", a * b / c),
    ]
    wit = None
    for n, x in products:
        e = _exponent_hit(x, q, odd)
        if e is not None:
            wit = f"{n}={_pow_text('q', e)}"
            break
    rep.add(Check(f"{prefix}4", wit is None, wit))
    return rep


def check_pair_admissible(t: QRacahTuple) -> Report:
    return _admissibility(t, "RQRAC", include_c=False)


def check_triple_admissible(t: QRacahTuple) -> Report:
    return _admissibility(t, "T-RQRAC", include_c=True)


def require_pair_admissible(t):
    rep = check_pair_admissible(t)
    if not rep.overall:
        bad = rep.first_failure()
        raise InadmissibleTuple(f"{t.text()} is not pair-admissible: {bad}", rep)


def require_triple_admissible(t):
    rep = check_triple_admissible(t)
    if not rep.overall:
        bad = rep.first_failure()
        raise InadmissibleTuple(f"{t.text()} is not triple-admissible: {bad}", rep)


# eigenvalues and arrays


def eigen_sequence(x, q, d: int) -> list:
    """``x q^(2i-d) + x^-1 q^(d-2i)`` for i = 0..d."""
    if not x or not q:
        raise ZeroInverse("eigen_sequence needs x and q nonzero")
    return [x * q ** (2 * i - d) + q ** (d - 2 * i) / x for i in range(d + 1)]


def _split_sequence(u, v, w, q, d, i):
    """Common shape of the split sequences: scale u, then the pair (v, w) in the last two factors."""
    return (
        u
        * q ** (d + 1)
        * (q**i - q**-i)
        * (q ** (i - d - 1) - q ** (d - i + 1))
        * (q**-i - v * q ** (i - d - 1))
        * (q**-i - w * q ** (i - d - 1))
    )


def varphi_sequence(a, b, c, q, d):
    return [_split_sequence(1 / (a * b), a * b * c, a * b / c, q, d, i) for i in range(1, d + 1)]


def phi_sequence(a, b, c, q, d):
    return [_split_sequence(a / b, b * c / a, b / (a * c), q, d, i) for i in range(1, d + 1)]


def parameter_array(t: QRacahTuple) -> ParameterArray:
    require_pair_admissible(t)
    a, b, c, q, d = t.a, t.b, t.c, t.q, t.d
    return ParameterArray(
        eigen_sequence(a, q, d),
        eigen_sequence(b, q, d),
        varphi_sequence(a, b, c, q, d),
        phi_sequence(a, b, c, q, d),
    )


def triple_eigen_data(t: QRacahTuple) -> TripleEigenData:
    return TripleEigenData(
        tuple(eigen_sequence(t.a, t.q, t.d)),
        tuple(eigen_sequence(t.b, t.q, t.d)),
        tuple(eigen_sequence(t.c, t.q, t.d)),
    )


def _first_repeat(seq):
    seen = {}
    for i, x in enumerate(seq):
        if x in seen:
            return seen[x], i
        seen[x] = i
    return None


def partial_sum_direct(theta, i):
    """``sum_{h<i} (th_h - th_{d-h}) / (th_0 - th_d)``."""
    d = len(theta) - 1
    return sum((theta[h] - theta[d - h] for h in range(i)), theta[0] * 0) / (theta[0] - theta[d])


def partial_sum_closed(q, d, i):
    return (q**i - q**-i) * (q ** (d - i + 1) - q ** (i - d - 1)) / ((q - 1 / q) * (q**d - q**-d))


def pa5_ratios(seq):
    return [(seq[i - 2] - seq[i + 1]) / (seq[i - 1] - seq[i]) for i in range(2, len(seq) - 1)]


def validate_parameter_array(p: ParameterArray, q_hint=None) -> Report:
    """PA1-PA5 by exact evaluation, plus direct vs closed-form partial sums when q is known."""
    rep = Report()
    th, ts, vp, ph = p.theta, p.theta_star, p.varphi, p.phi
    d = p.d
    if len(ts) != d + 1 or len(vp) != d or len(ph) != d:
        raise InvalidArray("sequence lengths do not match the diameter")

    wit = None
    for name, seq in (("theta", th), ("theta_star", ts)):
        r = _first_repeat(seq)
        if r:
            wit = f"{name}[{r[0]}]={name}[{r[1]}]"
            break
    rep.add(Check("PA1", wit is None, wit))

    wit = None
    for name, seq in (("varphi", vp), ("phi", ph)):
        k = next((i for i, x in enumerate(seq) if not x), None)
        if k is not None:
            wit = f"{name}[{k + 1}]=0"
            break
    rep.add(Check("PA2", wit is None, wit))

    if rep["PA1"].passed:
        bad3 = bad4 = None
        for i in range(1, d + 1):
            s = partial_sum_direct(th, i)
            if bad3 is None and vp[i - 1] != ph[0] * s + (ts[i] - ts[0]) * (th[i - 1] - th[d]):
                bad3 = i
            if bad4 is None and ph[i - 1] != vp[0] * s + (ts[i] - ts[0]) * (th[d - i + 1] - th[0]):
                bad4 = i
        rep.add(Check("PA3", bad3 is None, None if bad3 is None else f"i={bad3}"))
        rep.add(Check("PA4", bad4 is None, None if bad4 is None else f"i={bad4}"))

        rt, rs = pa5_ratios(th), pa5_ratios(ts)
        wit = None
        if rt != rs:
            k = next(k for k in range(len(rt)) if rt[k] != rs[k])
            wit = f"ratio mismatch at i={k + 2}"
        elif len(set(rt)) > 1:
            k = next(k for k in range(1, len(rt)) if rt[k] != rt[0])
            wit = f"ratio not constant at i={k + 2}"
        elif q_hint is not None and rt and rt[0] != q_hint**2 + 1 + q_hint**-2:
            wit = "ratio differs from q²+1+q⁻²"
        rep.add(Check("PA5", wit is None, wit))

        if q_hint is not None:
            bad = next(
                (i for i in range(1, d + 1) if partial_sum_direct(th, i) != partial_sum_closed(q_hint, d, i)),
                None,
            )
            rep.add(Check("partial-sum closed form", bad is None, None if bad is None else f"i={bad}"))
    else:
        for name in ("PA3", "PA4", "PA5"):
            rep.add(Check(name, False, "not evaluated: PA1 fails"))
    return rep


def recover_a(theta0, theta1, q, d: int):
    if not q or q**2 == q**-2:
        raise DegenerateQ("q^2 = q^-2")
    return (q**d * theta1 - q ** (d - 2) * theta0) / (q**2 - q**-2)


def kappa_value(a, b, q, d, phi1):
    return a / b * q ** (d - 1) + b / a * q ** (1 - d) + phi1 / ((q - 1 / q) * (q**d - q**-d))


def recover_c(a, b, q, d: int, phi1, fld: FieldConfig | None = None):
    """Both roots (c, 1/c) of ``x^2 - kappa x + 1``; raises NoRootInField if they are not in the field."""
    if fld is None:
        from .scalars import field_of

        fld = field_of(a)
    k = kappa_value(a, b, q, d, phi1)
    disc = k * k - 4
    r = fld.sqrt(disc)
    if r is None:
        raise NoRootInField(f"kappa^2 - 4 = {disc} is not a square in {fld}")
    two = fld(2)
    return ((k + r) / two, (k - r) / two)


def derived_scalars(p: ParameterArray) -> DerivedScalars:
    return DerivedScalars(
        tuple(_diag_scalars(p.theta, p.theta_star, p.varphi)),
        tuple(_diag_scalars(p.theta_star, p.theta, p.varphi)),
    )


def _diag_scalars(th, ts, vp):
    d = len(th) - 1
    out = [th[0] + vp[0] / (ts[0] - ts[1])]
    for i in range(1, d):
        out.append(th[i] + vp[i - 1] / (ts[i] - ts[i - 1]) + vp[i] / (ts[i] - ts[i + 1]))
    out.append(th[d] + vp[d - 1] / (ts[d] - ts[d - 1]))
    return out


# Askey-Wilson and Z3 data


def _traces(t):
    a, b, c, q, d = t.a, t.b, t.c, t.q, t.d
    return a + 1 / a, b + 1 / b, c + 1 / c, q ** (d + 1) + q ** (-d - 1)


def aw_coefficients(t: QRacahTuple) -> AWCoefficients:
    require_pair_admissible(t)
    q = t.q
    A, B, C, Qd = _traces(t)
    rho = -((q**2 - q**-2) ** 2)
    zero = q * 0
    k = (q - 1 / q) * (q**2 - q**-2)
    return AWCoefficients(
        beta=q**2 + q**-2,
        gamma=zero,
        gamma_star=zero,
        varrho=rho,
        varrho_star=rho,
        omega=-((q - 1 / q) ** 2) * (A * B + C * Qd),
        eta=k * (C * A + B * Qd),
        eta_star=k * (B * C + A * Qd),
    )


def _extend(seq, beta, gamma):
    """Sequence padded with the recurrence values at index -1 and d+1; returns a lookup."""
    d = len(seq) - 1
    lo = gamma + beta * seq[0] - seq[1]
    hi = gamma + beta * seq[d] - seq[d - 1]
    return lambda i: lo if i == -1 else hi if i == d + 1 else seq[i]


def _all_equal(vals, what):
    if any(v != vals[0] for v in vals):
        k = next(k for k, v in enumerate(vals) if v != vals[0])
        raise InconsistentCoefficients(f"{what} not constant (first disagreement at position {k})")
    return vals[0]


def aw_coefficients_from_array(p: ParameterArray) -> AWCoefficients:
    """The Askey-Wilson octuple computed from eigenvalue and diagonal data only.

    Every scalar is evaluated at each index it is defined for; disagreement
    raises InconsistentCoefficients.
    """
    th, ts = p.theta, p.theta_star
    d = p.d
    if d < 3:
        raise InvalidArray("need d >= 3")
    ratios = pa5_ratios(th) + pa5_ratios(ts)
    beta = _all_equal(ratios, "beta + 1") - 1
    gamma = _all_equal([th[i - 1] - beta * th[i] + th[i + 1] for i in range(1, d)], "gamma")
    gamma_s = _all_equal([ts[i - 1] - beta * ts[i] + ts[i + 1] for i in range(1, d)], "gamma*")
    varrho = _all_equal(
        [th[i - 1] ** 2 - beta * th[i - 1] * th[i] + th[i] ** 2 - gamma * (th[i - 1] + th[i]) for i in range(1, d + 1)],
        "varrho",
    )
    varrho_s = _all_equal(
        [ts[i - 1] ** 2 - beta * ts[i - 1] * ts[i] + ts[i] ** 2 - gamma_s * (ts[i - 1] + ts[i]) for i in range(1, d + 1)],
        "varrho*",
    )
    ds = derived_scalars(p)
    a, a_s = ds.a_seq, ds.a_star_seq
    T = _extend(th, beta, gamma)
    S = _extend(ts, beta, gamma_s)
    om1 = [a_s[i] * (T(i) - T(i + 1)) + a_s[i - 1] * (T(i - 1) - T(i - 2)) - gamma_s * (T(i) + T(i - 1))
           for i in range(1, d + 1)]
    om2 = [a[i] * (S(i) - S(i + 1)) + a[i - 1] * (S(i - 1) - S(i - 2)) - gamma * (S(i) + S(i - 1))
           for i in range(1, d + 1)]
    omega = _all_equal(om1 + om2, "omega")
    eta = _all_equal(
        [a_s[i] * (T(i) - T(i - 1)) * (T(i) - T(i + 1)) - gamma_s * T(i) ** 2 - omega * T(i) for i in range(d + 1)],
        "eta",
    )
    eta_s = _all_equal(
        [a[i] * (S(i) - S(i - 1)) * (S(i) - S(i + 1)) - gamma * S(i) ** 2 - omega * S(i) for i in range(d + 1)],
        "eta*",
    )
    return AWCoefficients(beta, gamma, gamma_s, varrho, varrho_s, omega, eta, eta_s)


def z3_constants(t: QRacahTuple) -> Z3Constants:
    a, b, c, q, d = t.a, t.b, t.c, t.q, t.d
    A, B, C, Qd = _traces(t)
    psi = (q + 1 / q) ** 2 - Qd**2 - A**2 - B**2 - C**2 - A * B * C * Qd
    phi1 = phi_sequence(a, b, c, q, d)[0]
    return Z3Constants(
        alpha=B * C + A * Qd,
        alpha_star=C * A + B * Qd,
        alpha_eps=A * B + C * Qd,
        psi=psi,
        kappa=kappa_value(a, b, q, d, phi1),
    )


# the D4 action on arrays


def array_star(p: ParameterArray) -> ParameterArray:
    d = p.d
    return ParameterArray(p.theta_star, p.theta, p.varphi, [p.phi[d - i] for i in range(1, d + 1)])


def array_down(p: ParameterArray) -> ParameterArray:
    d = p.d
    return ParameterArray(
        p.theta,
        [p.theta_star[d - i] for i in range(d + 1)],
        [p.phi[d - i] for i in range(1, d + 1)],
        [p.varphi[d - i] for i in range(1, d + 1)],
    )


def array_Down(p: ParameterArray) -> ParameterArray:
    d = p.d
    return ParameterArray([p.theta[d - i] for i in range(d + 1)], p.theta_star, p.phi, p.varphi)


ARRAY_ACTIONS = {"star": array_star, "down": array_down, "Down": array_Down}
