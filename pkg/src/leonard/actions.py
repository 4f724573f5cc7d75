"""Group actions on q-Racah tuples, equivalent tuples, twins and the hat invariant."""

from __future__ import annotations

from dataclasses import dataclass

from .params import (
    InadmissibleTuple,
    QRacahTuple,
    require_pair_admissible,
    require_triple_admissible,
)

LETTERS = ("star", "eps", "harpoon", "down", "Down")
PAIR_LETTERS = frozenset({"star", "down", "Down"})

_ALIASES = {"*": "star", "ε": "eps", "⇃": "harpoon", "↓": "down", "⇓": "Down"}


def _star(t):
    return t.replace(a=1 / t.b, b=1 / t.a, c=1 / t.c, q=1 / t.q)


def _eps(t):
    return t.replace(a=1 / t.c, b=1 / t.b, c=1 / t.a, q=1 / t.q)


def _harpoon(t):
    return t.replace(c=1 / t.c)


def _down(t):
    return t.replace(b=1 / t.b)


def _Down(t):
    return t.replace(a=1 / t.a)


GENERATORS = {"star": _star, "eps": _eps, "harpoon": _harpoon, "down": _down, "Down": _Down}


@dataclass(frozen=True)
class GroupWord:
    """A word in the five generators, applied left to right."""

    letters: tuple = ()

    def __post_init__(self):
        letters = tuple(_ALIASES.get(x, x) for x in self.letters)
        for x in letters:
            if x not in GENERATORS:
                raise ValueError(f"unknown generator {x!r}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        text = text.strip()
        if not text:
            return cls(())
        if "," in text or " " in text:
            return cls(tuple(x for x in text.replace(",", " ").split()))
        return cls(tuple(text))  # symbol string such as "*↓*"

    def __add__(self, other):
        return GroupWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)


def _as_word(w) -> GroupWord:
    if isinstance(w, GroupWord):
        return w
    if isinstance(w, str):
        return GroupWord((w,)) if w in GENERATORS else GroupWord.parse(w)
    return GroupWord(tuple(w))


def apply_word(w, t: QRacahTuple) -> QRacahTuple:
    w = _as_word(w)
    if set(w.letters) <= PAIR_LETTERS:
        require_pair_admissible(t)
    else:
        require_triple_admissible(t)
    for x in w.letters:
        t = GENERATORS[x](t)
    return t


def canonical(tuples):
    """Deduplicate and sort by textual form."""
    uniq = {}
    for t in tuples:
        uniq.setdefault(t.key(), t)
    return [uniq[k] for k in sorted(uniq)]


def pair_equivalents(t: QRacahTuple) -> list:
    """The eight tuples sharing the parameter array of ``t``, in table order."""
    require_pair_admissible(t)
    a, b, c, q = t.scalars
    s = -1 if t.d % 2 else 1
    rows = []
    for aa, bb, cc, qq in ((a, b, c, q), (a, b, 1 / c, q), (1 / a, 1 / b, 1 / c, 1 / q), (1 / a, 1 / b, c, 1 / q)):
        rows.append((aa, bb, cc, qq))
        rows.append((s * aa, s * bb, -s * cc, -qq))
    return [t.replace(*r) for r in rows]


def triple_orbit(t: QRacahTuple) -> list:
    """All eight sign-inversion patterns (a^±1, b^±1, c^±1; q), canonically ordered."""
    require_triple_admissible(t)
    out = []
    for ea in (1, -1):
        for eb in (1, -1):
            for ec in (1, -1):
                out.append(t.replace(t.a**ea, t.b**eb, t.c**ec))
    return canonical(out)


def twin_case(t: QRacahTuple) -> str:
    """"i" when none of abc, a^-1bc, ab^-1c, abc^-1 is of the form -q^(d-1-2k), else "ii"."""
    a, b, c, q, d = t.a, t.b, t.c, t.q, t.d
    targets = [-(q ** (d - 1 - 2 * k)) for k in range(d)]
    prods = (a * b * c, b * c / a, a * c / b, a * b / c)
    return "ii" if any(x in targets for x in prods) else "i"


def twins(t: QRacahTuple) -> list:
    require_triple_admissible(t)
    a, b, c, q = t.scalars
    members = [t, t.replace(1 / a, 1 / b, 1 / c, 1 / q)]
    if twin_case(t) == "i":
        s = -1 if t.d % 2 else 1
        members += [t.replace(s * a, s * b, s * c, -q), t.replace(s / a, s / b, s / c, -1 / q)]
    return canonical(members)


def hat_invariant(t: QRacahTuple):
    return (t.a + 1 / t.a, t.b + 1 / t.b, t.c + 1 / t.c, t.q)


def hat_text(t: QRacahTuple) -> str:
    f = t.field.format
    h = [f(x) for x in hat_invariant(t)]
    return f"({h[0]},{h[1]},{h[2]};{h[3]})"


def orbit(t: QRacahTuple, group: str = "z2cubed") -> list:
    """Orbit under "z2cubed", the D4 subgroup "d4", or the full group "full"."""
    if group == "z2cubed":
        return triple_orbit(t)
    if group == "d4":
        require_pair_admissible(t)
        gens = [GENERATORS[x] for x in ("star", "down", "Down")]
    elif group == "full":
        require_triple_admissible(t)
        gens = list(GENERATORS.values())
    else:
        raise ValueError(f"unknown group {group!r}")
    seen = {t.key(): t}
    frontier = [t]
    while frontier:
        nxt = []
        for u in frontier:
            for g in gens:
                v = g(u)
                if v.key() not in seen:
                    seen[v.key()] = v
                    nxt.append(v)
        frontier = nxt
    return canonical(seen.values())


def orbit_key(t: QRacahTuple) -> str:
    """Lexicographically least textual form over the (Z2)^3 orbit."""
    return min(u.text() for u in triple_orbit(t))


__all__ = [
    "GroupWord",
    "InadmissibleTuple",
    "apply_word",
    "canonical",
    "hat_invariant",
    "hat_text",
    "orbit",
    "orbit_key",
    "pair_equivalents",
    "triple_orbit",
    "twin_case",
    "twins",
]
