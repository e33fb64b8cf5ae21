"""The JSON instance format shared by the CLI and the verifier.

An instance is ``{"model": "Z7", "ell": 2, "sets": [[...], ...]}`` or the same
with ``"sequence": [...]`` in place of ``"sets"``. Elements use the model's
JSON element encoding (integers, lists for products of cyclic groups, lists of
``[generator, exponent]`` pairs for free words).
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .groups import GroupModel, parse_model
from .seqset import ElementSequence, SetSequence


class InstanceError(ValueError):
    pass


@dataclass
class Instance:
    model: GroupModel
    ell: int | None
    sets: SetSequence | None = None
    sequence: ElementSequence | None = None

    @property
    def payload(self):
        return self.sets if self.sets is not None else self.sequence

    @property
    def m(self) -> int:
        return self.payload.m

    def to_json(self) -> dict:
        out = {"model": str(self.model)}
        if self.ell is not None:
            out["ell"] = self.ell
        if self.sets is not None:
            out["sets"] = self.sets.to_json()
        else:
            out["sequence"] = self.sequence.to_json()
        return out

    def dumps(self) -> str:
        return dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "Instance":
        if not isinstance(data, dict):
            raise InstanceError("an instance is a JSON object")
        try:
            model = parse_model(data["model"]) if isinstance(data["model"], str) \
                else GroupModel.from_json(data["model"])
        except KeyError:
            raise InstanceError("instance has no 'model'") from None
        ell = data.get("ell")
        if ell is not None and (isinstance(ell, bool) or not isinstance(ell, int)):
            raise InstanceError("'ell' must be an integer")
        if ("sets" in data) == ("sequence" in data):
            raise InstanceError("give exactly one of 'sets' and 'sequence'")
        if "sets" in data:
            return cls(model, ell, sets=SetSequence.from_json(model, data["sets"]))
        return cls(model, ell, sequence=ElementSequence.from_json(model, data["sequence"]))

    @classmethod
    def loads(cls, text: str) -> "Instance":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"invalid JSON: {exc}") from None
        return cls.from_json(data)


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, no extra whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def sets_instance(seq: SetSequence, ell: int | None) -> Instance:
    return Instance(seq.model, ell, sets=seq)


def sequence_instance(a: ElementSequence, ell: int | None) -> Instance:
    return Instance(a.model, ell, sequence=a)
