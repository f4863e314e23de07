"""
JSON interchange for CPA expressions.

Schema: {"d": int, "expr": node} with
node = {"op": "leaf", "grad": [rat, ...], "offset": rat}
     | {"op": "min" | "max", "args": [node, node, ...]}
and rat = "p/q" or "p".
"""

import json
from typing import Annotated, Any, Dict, List, Literal, Union

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, ValidationError

from cpa.expression import CpaExpr, Leaf, Max, Min
from geometry.rational import AffineMap, format_rational, parse_rational
from utils.exceptions import ConstructionError, CpaParseError


def _check_rational(text: str) -> str:
    try:
        parse_rational(text)
    except ConstructionError as exc:
        raise ValueError(str(exc)) from exc
    return text


RationalText = Annotated[str, AfterValidator(_check_rational)]


class LeafNode(BaseModel):
    model_config = ConfigDict(extra='forbid', strict=True)

    op: Literal['leaf']
    grad: List[RationalText] = Field(min_length=1)
    offset: RationalText


class ExtremumNode(BaseModel):
    model_config = ConfigDict(extra='forbid', strict=True)

    op: Literal['min', 'max']
    args: List['ExprNode'] = Field(min_length=2)


ExprNode = Annotated[Union[LeafNode, ExtremumNode], Field(discriminator='op')]
ExtremumNode.model_rebuild()


class CpaDocument(BaseModel):
    model_config = ConfigDict(extra='forbid', strict=True)

    d: int = Field(ge=1)
    expr: ExprNode


def cpa_to_dict(e: CpaExpr) -> Dict[str, Any]:
    return {"d": e.dim, "expr": _node_to_dict(e)}


def affine_to_dict(f: AffineMap) -> Dict[str, Any]:
    return {
        "op": "leaf",
        "grad": [format_rational(g) for g in f.gradient],
        "offset": format_rational(f.offset),
    }


def _node_to_dict(e: CpaExpr) -> Dict[str, Any]:
    if isinstance(e, Leaf):
        return affine_to_dict(e.map)
    return {"op": "min" if isinstance(e, Min) else "max", "args": [_node_to_dict(c) for c in e.args]}


def cpa_to_json(e: CpaExpr, indent: int = 2) -> str:
    return json.dumps(cpa_to_dict(e), indent=indent)


def cpa_from_dict(data: Any) -> CpaExpr:
    try:
        document = CpaDocument.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        position = ".".join(str(part) for part in first['loc']) or "document"
        raise CpaParseError(first['msg'], position) from exc
    return _build(document.expr, document.d, "expr")


def cpa_from_json(text: str) -> CpaExpr:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CpaParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    return cpa_from_dict(data)


def _build(node: Union[LeafNode, ExtremumNode], d: int, path: str) -> CpaExpr:
    if isinstance(node, LeafNode):
        if len(node.grad) != d:
            raise CpaParseError(f"leaf gradient has {len(node.grad)} entries, document says d={d}", f"{path}.grad")
        return Leaf(AffineMap(tuple(parse_rational(g) for g in node.grad), parse_rational(node.offset)))
    children = tuple(_build(child, d, f"{path}.args.{i}") for i, child in enumerate(node.args))
    return Min(children) if node.op == 'min' else Max(children)


__all__ = ['CpaDocument', 'affine_to_dict', 'cpa_to_dict', 'cpa_to_json', 'cpa_from_dict', 'cpa_from_json']
