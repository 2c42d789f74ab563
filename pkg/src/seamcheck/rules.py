"""Rule deck parsing and validation.

The deck is a YAML document with the row/site grid, per-layer width and
spacing rules (DBU), the DPT layer set, and hotspot pattern definitions:

    row_height: 576
    site_width: 8
    interaction_distance: 200
    layers:
      M1: {min_width: 32, min_spacing_any_mask: 32,
           min_spacing_same_mask: 64, dpt: true}
    hotspot_patterns:
      - {name: quad_alternating, layer: M1, masks: [E1, E2, E1, E2],
         max_gap: 80, min_run_length: 100}
"""

from __future__ import annotations

from dataclasses import dataclass

import yaml

from .errors import (InconsistentSpacingError, MissingLayerRuleError,
                     ParseError)
from .geometry import Mask


@dataclass(frozen=True)
class LayerRule:
    layer: str
    min_width: int
    min_spacing_any_mask: int
    # Required for double-patterned layers, absent otherwise.
    min_spacing_same_mask: int | None = None
    dpt: bool = False


@dataclass(frozen=True)
class HotspotPattern:
    """A fab-learned weak configuration: track_count parallel tracks with a
    fixed mask sequence, each adjacent gap at most max_gap and a common
    parallel run of at least min_run_length."""

    name: str
    layer: str
    masks: tuple[Mask, ...]
    max_gap: int
    min_run_length: int

    @property
    def track_count(self) -> int:
        return len(self.masks)


@dataclass(frozen=True)
class RuleDeck:
    row_height: int
    site_width: int
    interaction_distance: int
    layers: dict[str, LayerRule]
    hotspot_patterns: tuple[HotspotPattern, ...] = ()
    name: str = "rules"

    def layer_rule(self, layer: str) -> LayerRule | None:
        return self.layers.get(layer)

    @property
    def dpt_layers(self) -> list[str]:
        return [name for name, r in sorted(self.layers.items()) if r.dpt]


def _require(mapping: dict, key: str, where: str):
    if key not in mapping:
        raise MissingLayerRuleError(f"{where}: missing required key {key!r}")
    return mapping[key]


def _positive_int(value, key: str, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
        raise ParseError(f"{where}: {key} must be a positive integer DBU, "
                         f"got {value!r}")
    return value


def _parse_mask(token, where: str) -> Mask:
    try:
        mask = Mask(str(token))
    except ValueError:
        raise ParseError(f"{where}: unknown mask {token!r}, expected E1 or "
                         f"E2") from None
    if mask is Mask.NONE:
        raise ParseError(f"{where}: pattern masks must be E1 or E2")
    return mask


def parse_rules(text: str) -> RuleDeck:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"rule deck is not valid YAML: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("rule deck must be a mapping at top level")

    row_height = _positive_int(_require(doc, "row_height", "deck"),
                               "row_height", "deck")
    site_width = _positive_int(_require(doc, "site_width", "deck"),
                               "site_width", "deck")
    interaction = _positive_int(_require(doc, "interaction_distance", "deck"),
                                "interaction_distance", "deck")

    raw_layers = _require(doc, "layers", "deck")
    if not isinstance(raw_layers, dict) or not raw_layers:
        raise MissingLayerRuleError("deck: layers must be a non-empty mapping")
    layers: dict[str, LayerRule] = {}
    for lname, raw in raw_layers.items():
        where = f"layer {lname}"
        if not isinstance(raw, dict):
            raise ParseError(f"{where}: rule entry must be a mapping")
        dpt = bool(raw.get("dpt", False))
        if dpt or "min_spacing_same_mask" in raw:
            same_mask = _positive_int(
                _require(raw, "min_spacing_same_mask", where),
                "min_spacing_same_mask", where)
        else:
            same_mask = None
        rule = LayerRule(
            layer=str(lname),
            min_width=_positive_int(_require(raw, "min_width", where),
                                    "min_width", where),
            min_spacing_any_mask=_positive_int(
                _require(raw, "min_spacing_any_mask", where),
                "min_spacing_any_mask", where),
            min_spacing_same_mask=same_mask,
            dpt=dpt,
        )
        if same_mask is not None and same_mask < rule.min_spacing_any_mask:
            raise InconsistentSpacingError(
                f"{where}: min_spacing_same_mask {same_mask}"
                f" < min_spacing_any_mask {rule.min_spacing_any_mask}")
        layers[str(lname)] = rule

    patterns: list[HotspotPattern] = []
    for i, raw in enumerate(doc.get("hotspot_patterns") or []):
        where = f"hotspot pattern #{i + 1}"
        if not isinstance(raw, dict):
            raise ParseError(f"{where}: must be a mapping")
        pname = str(_require(raw, "name", where))
        layer = str(_require(raw, "layer", where))
        if layer not in layers:
            raise MissingLayerRuleError(
                f"{where}: layer {layer} has no rule entry")
        raw_masks = _require(raw, "masks", where)
        if not isinstance(raw_masks, list) or len(raw_masks) < 2:
            raise ParseError(f"{where}: masks must list at least 2 tracks")
        masks = tuple(_parse_mask(tok, where) for tok in raw_masks)
        patterns.append(HotspotPattern(
            name=pname, layer=layer, masks=masks,
            max_gap=_positive_int(_require(raw, "max_gap", where),
                                  "max_gap", where),
            min_run_length=_positive_int(
                _require(raw, "min_run_length", where),
                "min_run_length", where)))

    reach = max([r.min_spacing_same_mask for r in layers.values()
                 if r.min_spacing_same_mask is not None]
                + [r.min_spacing_any_mask for r in layers.values()]
                + [p.max_gap for p in patterns])
    if interaction < reach:
        raise InconsistentSpacingError(
            f"interaction_distance {interaction} is below the largest rule "
            f"reach {reach}")

    return RuleDeck(row_height=row_height, site_width=site_width,
                    interaction_distance=interaction, layers=layers,
                    hotspot_patterns=tuple(patterns),
                    name=str(doc.get("name", "rules")))
