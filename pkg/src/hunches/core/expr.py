"""Closed arithmetic expressions over a single variable.

Used by Value hunches ("v * 2" means every scoped value should be doubled)
and by custom model curves (expressions over "x"). The grammar is limited
to +, -, *, / with numeric constants and the one variable; parsing is
deterministic and division by a constant zero is rejected up front.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from functools import lru_cache

from ..errors import EvaluationError, ExprError

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


@dataclass(frozen=True)
class Expr:
    """A parsed expression in canonical textual form."""

    text: str
    variable: str = "v"

    def __call__(self, value: float) -> float:
        return eval_expr(self, value)

    def to_json_dict(self) -> dict:
        return {"text": self.text, "variable": self.variable}

    @classmethod
    def from_json_dict(cls, d) -> "Expr":
        return parse_expr(d["text"], variable=d.get("variable", "v"))


def parse_expr(text: str, variable: str = "v") -> Expr:
    """Parse and canonicalize; raises ExprError on anything outside the grammar."""
    node = _compile(text, variable)
    return Expr(text=ast.unparse(node), variable=variable)


@lru_cache(maxsize=512)
def _compile(text: str, variable: str) -> ast.expr:
    if not isinstance(text, str) or not text.strip():
        raise ExprError("empty expression")
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as e:
        raise ExprError(f"cannot parse expression {text!r}: {e.msg}") from None
    _check(tree.body, variable)
    return tree.body


def _check(node: ast.expr, variable: str) -> None:
    if isinstance(node, ast.BinOp):
        if type(node.op) not in _BINOPS:
            raise ExprError(f"operator {type(node.op).__name__} not allowed")
        _check(node.left, variable)
        _check(node.right, variable)
        if isinstance(node.op, ast.Div):
            denom = _fold_constant(node.right)
            if denom == 0:
                raise ExprError("division by a zero constant")
    elif isinstance(node, ast.UnaryOp):
        if not isinstance(node.op, (ast.UAdd, ast.USub)):
            raise ExprError(f"operator {type(node.op).__name__} not allowed")
        _check(node.operand, variable)
    elif isinstance(node, ast.Constant):
        if not isinstance(node.value, (int, float)) or isinstance(node.value, bool):
            raise ExprError(f"constant {node.value!r} is not numeric")
    elif isinstance(node, ast.Name):
        if node.id != variable:
            raise ExprError(f"unknown name {node.id!r}; only {variable!r} is allowed")
    else:
        raise ExprError(f"{type(node).__name__} not allowed in expressions")


def _fold_constant(node: ast.expr):
    """Value of a constant-only subtree, or None if it mentions the variable."""
    if isinstance(node, ast.Constant):
        return node.value
    if isinstance(node, ast.UnaryOp):
        v = _fold_constant(node.operand)
        if v is None:
            return None
        return -v if isinstance(node.op, ast.USub) else +v
    if isinstance(node, ast.BinOp):
        left, right = _fold_constant(node.left), _fold_constant(node.right)
        if left is None or right is None:
            return None
        try:
            return _BINOPS[type(node.op)](left, right)
        except ZeroDivisionError:
            raise ExprError("division by a zero constant") from None
    return None


def eval_expr(expr: Expr, value: float) -> float:
    node = _compile(expr.text, expr.variable)
    try:
        return _eval(node, expr.variable, value)
    except ZeroDivisionError:
        raise EvaluationError(
            f"division by zero evaluating {expr.text!r} at {expr.variable}={value!r}"
        ) from None


def _eval(node: ast.expr, variable: str, value: float):
    if isinstance(node, ast.Constant):
        return node.value
    if isinstance(node, ast.Name):
        return value
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, variable, value)
        return -v if isinstance(node.op, ast.USub) else +v
    if isinstance(node, ast.BinOp):
        return _BINOPS[type(node.op)](
            _eval(node.left, variable, value), _eval(node.right, variable, value)
        )
    raise EvaluationError(f"unexpected node {type(node).__name__}")
