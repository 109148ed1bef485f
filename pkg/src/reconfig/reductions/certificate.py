from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import ValidationError
from ..instances import ReconfigSequence
from ..valuation import sequence_value


def fmt_value(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator} ({float(x):.4f})"
    return str(x)


@dataclass
class Claim:
    text: str
    bound: Fraction | None
    holds: bool | None  # None = not applicable / not checkable


@dataclass
class ReductionCertificate:
    name: str
    input_summary: dict
    output_summary: dict
    params: dict = field(default_factory=dict)
    completeness_witness: ReconfigSequence | None = None
    witness_value: Fraction | None = None
    claims: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def attach_witness(self, inst, seq: ReconfigSequence) -> Fraction:
        """Validate ``seq`` on the output instance and record its value."""
        self.completeness_witness = seq
        self.witness_value = sequence_value(inst, seq)
        return self.witness_value

    def check(self, inst) -> None:
        if self.completeness_witness is not None:
            val = sequence_value(inst, self.completeness_witness)
            if val != self.witness_value:
                raise ValidationError("recorded witness value does not match")
        for c in self.claims:
            if c.holds is False:
                raise ValidationError(f"claim failed: {c.text}")

    def to_text(self, witness_path: str | None = None) -> str:
        out = [f"reduction = {self.name}"]
        for key, val in self.input_summary.items():
            out.append(f"input.{key} = {fmt_value(val)}")
        for key, val in self.output_summary.items():
            out.append(f"output.{key} = {fmt_value(val)}")
        for key, val in self.params.items():
            out.append(f"param.{key} = {fmt_value(val)}")
        for c in self.claims:
            status = {True: "holds", False: "FAILS", None: "not applicable"}[c.holds]
            b = "" if c.bound is None else f" [{fmt_value(c.bound)}]"
            out.append(f"claim = {c.text}{b}: {status}")
        if self.completeness_witness is not None:
            out.append(f"witness.length = {len(self.completeness_witness)}")
            out.append(f"witness.value = {fmt_value(self.witness_value)}")
            if witness_path:
                out.append(f"witness.path = {witness_path}")
        for w in self.warnings:
            out.append(f"warning = {w}")
        return "\n".join(out) + "\n"
