"""Derivation traces: an ordered log of rewriting steps with stable renderings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

# Every tag a trace step may carry, mapped to the operation that implements it.
TAG_REGISTRY: dict[str, str] = {
    "strata.explicit": "hallstack.hall.delta_ss_rank2",
    "strata.localize": "hallstack.hall.localize_torus_quotient",
    "strata.generic": "hallstack.hall.generic_delta_pieces",
    "strata.stable-locus": "hallstack.hall.delta_ss_rank2",
    "hall.product": "hallstack.hall.hall_product",
    "epsilon.assemble": "hallstack.hall.epsilon_rank2",
    "sf.torus-decompose": "hallstack.stackfun.torus_decompose",
    "sf.chi-relation": "hallstack.stackfun.apply_chi_relation",
    "sf.normalize": "hallstack.stackfun.normalize",
    "psi.behrend": "hallstack.hall.lie_morphism_psi",
    "formula.closed-form": "hallstack.pipeline.compute_formula",
    "wallcrossing.rank2": "hallstack.wallcrossing.wallcrossing_rank2",
    "wallcrossing.general": "hallstack.wallcrossing.wallcrossing_general",
    "wallcrossing.half-class-chi": "hallstack.wallcrossing.joyce_song_chi",
    "poincare.fibration": "hallstack.motivic.fibration_base",
}


class UnknownTag(KeyError):
    pass


@dataclass(frozen=True)
class TraceStep:
    operation: str
    tag: str
    input_text: str
    output_text: str
    assertions: tuple[str, ...] = ()
    input_latex: str = ""
    output_latex: str = ""


@dataclass
class DerivationTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def record(
        self,
        operation: str,
        tag: str,
        input_text: str,
        output_text: str,
        assertions: tuple[str, ...] = (),
        input_latex: str = "",
        output_latex: str = "",
    ) -> None:
        if tag not in TAG_REGISTRY:
            raise UnknownTag(f"trace tag {tag!r} is not registered")
        self.steps.append(TraceStep(operation, tag, input_text, output_text, tuple(assertions), input_latex, output_latex))

    def last_tag(self) -> Optional[str]:
        return self.steps[-1].tag if self.steps else None

    def render(self, latex: bool = False) -> str:
        lines = []
        for i, step in enumerate(self.steps, 1):
            src = step.input_latex if latex else step.input_text
            dst = step.output_latex if latex else step.output_text
            lines.append(f"[{i}] {step.operation} <{step.tag}>")
            lines.append(f"    in:  {src}")
            lines.append(f"    out: {dst}")
            for a in step.assertions:
                lines.append(f"    assert: {a}")
        return "\n".join(lines) + ("\n" if lines else "")


def resolve_tag_target(tag: str) -> object:
    """Import the callable registered for ``tag``."""
    import importlib

    module_name, _, attr = TAG_REGISTRY[tag].rpartition(".")
    return getattr(importlib.import_module(module_name), attr)
