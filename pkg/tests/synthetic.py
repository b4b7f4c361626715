"""Synthetic geometries whose rank-one pieces have no cross homs."""

from __future__ import annotations

import random
from dataclasses import dataclass

MODULI_CHOICES = (
    "point",
    "projective(n+a-1)",
    "projective(n)",
    "projective(2n+a)",
    "grassmannian(2,n+a+1)",
    "product(projective(n),projective(a))",
    "flag(n+2)",
)

EXT_CHOICES = ("0", "1", "2", "n", "n+a", "a+1", "2n+a-1", "n-1")

DIM_CHOICES = ("2n+2a-5", "2n+2a", "n+a", "4n-1", "-3", "0")

# The divisible layout covers distinct pairs and the half-class strata.
DIVISIBLE = """\
[params]
n a
[pairing]
n
[class]
A1 degree=1 chi=a rank=1 moduli=projective(n+a-1) stabilizer=Gm
A2 degree=2 chi=2a rank=1 moduli=projective(n+2a-1) stabilizer=Gm
A3 degree=3 chi=3a rank=1 moduli=grassmannian(2,n+a) stabilizer=Gm
B degree=4 chi=4a rank=2
[hom]
A1 A3 off 0
A3 A1 off 0
A2 A2 off 0
A2 A2 diag 1
[ext1]
A3 A1 off n+a
A1 A3 off 2
A2 A2 off n-1
A2 A2 diag n+a
[ambient]
B 2n+2a-3
[dims]
B d2 2n+2a
B d4 2n+2a+1
[dt]
1 1
"""

INDIVISIBLE = """\
[params]
n a
[pairing]
n
[class]
A1 degree=1 chi=a rank=1 moduli=projective(n+a-1) stabilizer=Gm
A2 degree=2 chi=2a rank=1 moduli=grassmannian(2,n+a) stabilizer=Gm
B degree=3 chi=3a rank=2
[hom]
A1 A2 off 0
A2 A1 off 0
[ext1]
A2 A1 off n+a
A1 A2 off 1
[ambient]
B 2n+2a-4
"""


@dataclass(frozen=True)
class SyntheticChoice:
    divisible: bool
    moduli: tuple[str, str, str]
    ext: tuple[str, str, str, str]
    dims: tuple[str | None, str | None, str | None, str | None]
    ambient: str


def render_config(choice: SyntheticChoice) -> str:
    m1, m2, m3 = choice.moduli
    lines = ["[params]", "n a", "[pairing]", "n", "[class]"]
    lines.append(f"A1 degree=1 chi=a rank=1 moduli={m1} stabilizer=Gm")
    lines.append(f"A2 degree=2 chi=2a rank=1 moduli={m2} stabilizer=Gm")
    if choice.divisible:
        lines.append(f"A3 degree=3 chi=3a rank=1 moduli={m3} stabilizer=Gm")
        lines.append("B degree=4 chi=4a rank=2")
        big = "A3"
    else:
        lines.append("B degree=3 chi=3a rank=2")
        big = "A2"
    e_fwd, e_bwd, e_off, e_diag = choice.ext
    lines += ["[hom]", f"A1 {big} off 0", f"{big} A1 off 0"]
    if choice.divisible:
        lines += ["A2 A2 off 0", "A2 A2 diag 1"]
    lines += ["[ext1]", f"{big} A1 off {e_fwd}", f"A1 {big} off {e_bwd}"]
    if choice.divisible:
        lines += [f"A2 A2 off {e_off}", f"A2 A2 diag {e_diag}"]
    lines += ["[ambient]", f"B {choice.ambient}", "[dims]"]
    for key, value in zip(("d1", "d2", "d3", "d4"), choice.dims):
        if value is not None:
            lines.append(f"B {key} {value}")
    return "\n".join(lines) + "\n"


def random_choice(rng: random.Random) -> SyntheticChoice:
    return SyntheticChoice(
        divisible=rng.random() < 0.6,
        moduli=tuple(rng.choice(MODULI_CHOICES) for _ in range(3)),  # type: ignore[arg-type]
        ext=tuple(rng.choice(EXT_CHOICES) for _ in range(4)),  # type: ignore[arg-type]
        dims=tuple(rng.choice((None,) + DIM_CHOICES) for _ in range(4)),  # type: ignore[arg-type]
        ambient=rng.choice(DIM_CHOICES),
    )
